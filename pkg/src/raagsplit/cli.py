"""Command-line front end.

Exit codes: 0 all certifications pass, 1 a certification failed or is
indeterminate, 2 bad input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import bass_serre as bs
from . import graph_core as gc
from . import raag_words as rw
from . import splittings as sp
from . import theorem_checker as tc

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_graph(path: str) -> gc.Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return gc.parse_graph(text)
    except gc.GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _vertex_list(text: str | None, g: gc.Graph) -> frozenset[str]:
    if text is None:
        return frozenset()
    names = [t for t in text.replace(",", " ").split() if t]
    for v in names:
        if v not in g:
            raise InputError(f"unknown vertex {v!r}")
    return frozenset(names)


def _word(text: str, g: gc.Graph) -> rw.Word:
    try:
        return rw.parse_word(text, g)
    except rw.WordError as exc:
        raise InputError(str(exc)) from None


def _splitting(args, g: gc.Graph) -> sp.AmalgamSplitting:
    if getattr(args, "splitting", None):
        try:
            return sp.AmalgamSplitting.from_dict(g, _read_json(args.splitting))
        except (sp.SplittingError, gc.GraphError) as exc:
            raise InputError(str(exc)) from None
    lam = _vertex_list(args.lam, g)
    pick = args.pick
    if pick is None:
        rest = [v for v in g.vertices if v not in lam]
        if not rest:
            raise InputError("lambda contains every vertex; nothing to split")
        pick = rest[0]
    try:
        return sp.amalgam_from_separator(g, lam, pick)
    except (sp.SplittingError, gc.GraphError) as exc:
        raise InputError(str(exc)) from None


def _config(args) -> tc.Config:
    budget = args.budget
    if budget is None:
        budget = int(os.environ.get("RAAG_BUDGET", bs.DEFAULT_BUDGET))
    try:
        return tc.Config(L=args.L, N=args.N, budget=budget, output_format=args.format, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(args, payload, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _fmt_set(g, s) -> str:
    return "{" + ",".join(g.sort(s)) + "}"


# -- graph -----------------------------------------------------------------


def cmd_graph(args) -> int:
    g = _read_graph(args.file)
    if args.action == "info":
        comps = gc.components(g)
        payload = {
            "vertices": list(g.vertices),
            "edges": g.to_dict()["edges"],
            "complete": gc.is_complete(g),
            "connected": len(comps) <= 1,
            "components": [g.sort(c) for c in comps],
        }
        text = "\n".join(
            [
                f"vertices: {' '.join(g.vertices)}",
                f"edges: {len(g.edges)}",
                f"complete={str(payload['complete']).lower()}",
                f"connected={str(payload['connected']).lower()}",
            ]
        )
    elif args.action == "separators":
        try:
            seps = gc.minimal_separators(g, args.bound)
        except gc.BoundExceeded as exc:
            raise InputError(str(exc)) from None
        payload = {"minimal_separators": [g.sort(s) for s in seps]}
        text = "\n".join(_fmt_set(g, s) for s in seps) or "none"
    elif args.action == "cut-vertices":
        cv = gc.cut_vertices(g)
        payload = {"cut_vertices": g.sort(cv)}
        text = " ".join(g.sort(cv)) or "none"
    else:
        cc = gc.cut_cliques(g, args.bound)
        payload = {"cut_cliques": [g.sort(s) for s in cc]}
        text = "\n".join(_fmt_set(g, s) for s in cc) or "none"
    _emit(args, payload, text)
    return EXIT_OK


# -- word ------------------------------------------------------------------


def cmd_word(args) -> int:
    g = _read_graph(args.graph)
    words = [_word(w, g) for w in args.words]
    need = {"nf": 1, "equal": 2, "support": 1, "member": 1}[args.action]
    if len(words) != need:
        raise InputError(f"word {args.action} takes {need} word(s)")
    if args.action == "nf":
        nf = rw.normal_form(g, words[0])
        payload, text = {"normal_form": str(nf)}, str(nf)
    elif args.action == "equal":
        eq = rw.equal(g, *words)
        payload, text = {"equal": eq}, str(eq).lower()
    elif args.action == "support":
        sup = rw.support(g, words[0])
        payload, text = {"support": g.sort(sup)}, " ".join(g.sort(sup)) or "none"
    else:
        lam = _vertex_list(args.lam, g)
        mem = rw.in_special_subgroup(g, lam, words[0])
        payload, text = {"member": mem, "lambda": g.sort(lam)}, str(mem).lower()
    _emit(args, payload, text)
    return EXIT_OK


# -- split -----------------------------------------------------------------


def cmd_split(args) -> int:
    g = _read_graph(args.graph)
    s = _splitting(args, g)
    if args.action == "make":
        payload = s.to_dict()
        text = f"lambda {_fmt_set(g, s.lam)}  side1 {_fmt_set(g, s.side1)}  side2 {_fmt_set(g, s.side2)}"
    else:
        if args.word is None:
            raise InputError("split classify needs a word")
        w = _word(args.word, g)
        c = sp.classify(s, w)
        payload = c.to_dict()
        payload["syllables"] = [[side, str(sy)] for side, sy in sp.syllable_decompose(s, w)]
        text = f"{c.kind.value}, translation length {c.translation_length}"
    _emit(args, payload, text)
    return EXIT_OK


# -- tree ------------------------------------------------------------------


def cmd_tree(args) -> int:
    g = _read_graph(args.graph)
    s = _splitting(args, g)
    budget = args.budget if args.budget is not None else bs.default_budget()
    w = _word(args.word, g) if args.word is not None else None
    seeds = None if w is None else [w, w**2, w.inverse()]
    if args.action != "ball" and w is None:
        raise InputError(f"tree {args.action} needs a word")
    ball = bs.build_ball(s, args.L, seeds=seeds if args.action != "ball" else None,
                         radius=min(args.L, 2), budget=budget)
    if args.action == "ball":
        payload = ball.to_dict()
        payload["is_tree"] = ball.is_tree()
        text = f"{len(ball.vertices)} vertices, {len(ball.edges)} edges, tree={str(ball.is_tree()).lower()}"
    elif args.action == "fix":
        fixed = [v for v in ball.sorted_vertices() if bs.fixes_vertex(s, w, v)]
        payload = {"word": str(w), "fixed": [{"side": v.side, "rep": str(v.rep)} for v in fixed]}
        text = "\n".join(str(v) for v in fixed) or "none"
    else:
        try:
            axis = bs.axis_vertices(s, w, ball)
        except bs.TreeError as exc:
            raise InputError(str(exc)) from None
        axis = [v for v in ball.sorted_vertices() if v in axis]
        payload = {
            "word": str(w),
            "translation_length": sp.classify(s, w).translation_length,
            "axis": [{"side": v.side, "rep": str(v.rep)} for v in axis],
        }
        text = "\n".join(str(v) for v in axis) or "none"
    _emit(args, payload, text)
    return EXIT_OK


# -- check -----------------------------------------------------------------


def _action(args, cfg) -> tc.Action:
    if args.hom:
        if not args.base:
            raise InputError("--hom needs --base")
        if args.graph is None:
            raise InputError("--hom needs the source graph file")
        source = _read_graph(args.graph)
        base = _read_json(args.base)
        if args.target:
            target = _read_graph(args.target)
        elif "graph" in base:
            gd = base["graph"]
            target = gc.Graph(gd["vertices"], gd.get("edges", []))
        else:
            raise InputError("target graph: pass --target or embed 'graph' in the base file")
        try:
            split = sp.AmalgamSplitting.from_dict(target, base)
            hom = sp.RaagHom.from_dict(source, target, _read_json(args.hom))
        except (sp.SplittingError, gc.GraphError, rw.WordError) as exc:
            raise InputError(str(exc)) from None
        bad = hom.violations()
        if bad:
            raise InputError(f"not a homomorphism: images of {bad[0][0]},{bad[0][1]} do not commute")
        return tc.Action.from_induced(sp.InducedAction(hom, split))
    if args.graph is None:
        raise InputError("check theorem needs a graph file")
    g = _read_graph(args.graph)
    if args.phi:
        try:
            return tc.Action.from_line(sp.LineAction(g, rw.parse_vector(args.phi, g)))
        except (sp.SplittingError, rw.WordError, ValueError) as exc:
            raise InputError(str(exc)) from None
    return tc.Action.direct(_splitting(args, g))


def _report_text(report: tc.TheoremReport) -> str:
    g = report.source_graph
    lines = [f"case: {report.case}", f"lambda: {_fmt_set(g, report.lam)}"]
    if report.witness_edge is not None:
        lines.append(f"witness edge: {report.witness_edge} A(lambda)")
    if report.separated_pair is not None:
        lines.append(f"separated: {report.separated_pair[0]} | {report.separated_pair[1]}")
    for c in report.checks:
        mark = {True: "PASS", False: "FAIL", None: "INDETERMINATE"}[c.passed]
        extra = f" [{c.bound}]" if c.bound is not None else ""
        lines.append(f"  {mark:13} {c.name}{extra}")
    lines += [f"  note: {n}" for n in report.notes]
    return "\n".join(lines)


def cmd_check(args) -> int:
    cfg = _config(args)
    if args.action == "abelian":
        if args.graph is None:
            raise InputError("check abelian needs a graph file")
        g = _read_graph(args.graph)
        rep = tc.abelian_splitting_report(g)
        text = "\n".join(
            [f"verdict: {rep['verdict']}"] + [f"  cut clique {{{','.join(c)}}}" for c in rep["cut_cliques"]]
        )
        _emit(args, rep, text)
        return EXIT_OK
    if args.action == "lemmas":
        return _check_lemmas(args, cfg)
    if args.all_separators:
        return _check_all(args, cfg)
    report = tc.verify_theorem(_action(args, cfg), cfg)
    _emit(args, report.to_dict(), _report_text(report))
    if any(c.name == "budget" for c in report.checks):
        return EXIT_BUDGET
    return EXIT_OK if report.ok else EXIT_FAIL


def _check_all(args, cfg) -> int:
    g = _read_graph(args.graph)
    rows = []
    for lam in gc.minimal_separators(g):
        pick = next(v for v in g.vertices if v not in lam)
        report = tc.verify_theorem(tc.Action.direct(sp.amalgam_from_separator(g, lam, pick)), cfg)
        rows.append((lam, report))
    payload = {
        "results": [
            {"separator": g.sort(lam), "report": r.to_dict(), "pass": r.ok} for lam, r in rows
        ]
    }
    text = "\n".join(
        f"{_fmt_set(g, lam):16} {r.case:16} lambda={_fmt_set(g, r.lam)} {'PASS' if r.ok else 'FAIL'}"
        for lam, r in rows
    ) or "no separators"
    _emit(args, payload, text)
    return EXIT_OK if all(r.ok for _, r in rows) else EXIT_FAIL


def _check_lemmas(args, cfg) -> int:
    if args.graph is None:
        raise InputError("check lemmas needs a graph file")
    g = _read_graph(args.graph)
    s = _splitting(args, g)
    rng = random.Random(cfg.seed)
    pairs = [
        (rw.Word.gen(u), rw.Word.gen(v))
        for u in g.vertices
        for v in g.vertices
        if g.index(u) < g.index(v) and g.adjacent(u, v)
    ]
    pairs += tc.sample_commuting_pairs(g, rng, args.samples)
    tally = {"pass": 0, "fail": 0, "vacuous": 0}
    failures = []
    for x, y in pairs:
        seeds = [x, y, x**2, y**2, x.inverse(), y.inverse()]
        seeds += [sp.classify(s, w).conjugator for w in (x, y)]
        ball = bs.build_ball(s, cfg.L + max(len(w) for w in seeds), seeds=seeds, radius=1, budget=cfg.budget)
        for c in tc.lemma_checks(s, x, y, ball):
            key = {True: "pass", False: "fail", None: "vacuous"}[c.passed]
            tally[key] += 1
            if c.passed is False:
                failures.append({"pair": [str(x), str(y)], "check": c.name})
    payload = {"pairs": len(pairs), **tally, "failures": failures}
    text = f"{len(pairs)} commuting pairs: {tally['pass']} pass, {tally['fail']} fail, {tally['vacuous']} vacuous"
    _emit(args, payload, text)
    return EXIT_OK if not failures else EXIT_FAIL


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    split_opts = argparse.ArgumentParser(add_help=False)
    split_opts.add_argument("--lambda", dest="lam", default=None, help="separator, e.g. 'a,c'")
    split_opts.add_argument("--pick", default=None, help="vertex whose component forms side 1")
    split_opts.add_argument("--splitting", default=None, help="splitting descriptor JSON")

    p = argparse.ArgumentParser(prog="raagsplit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("graph", parents=[common])
    pg.add_argument("action", choices=["info", "separators", "cut-vertices", "cut-cliques"])
    pg.add_argument("file")
    pg.add_argument("--bound", type=int, default=gc.DEFAULT_SEPARATOR_BOUND)
    pg.set_defaults(func=cmd_graph)

    pw = sub.add_parser("word", parents=[common])
    pw.add_argument("action", choices=["nf", "equal", "support", "member"])
    pw.add_argument("graph")
    pw.add_argument("words", nargs="+")
    pw.add_argument("--lambda", dest="lam", default=None)
    pw.set_defaults(func=cmd_word)

    ps = sub.add_parser("split", parents=[common, split_opts])
    ps.add_argument("action", choices=["make", "classify"])
    ps.add_argument("graph")
    ps.add_argument("word", nargs="?")
    ps.set_defaults(func=cmd_split)

    pt = sub.add_parser("tree", parents=[common, split_opts])
    pt.add_argument("action", choices=["ball", "fix", "axis"])
    pt.add_argument("graph")
    pt.add_argument("word", nargs="?")
    pt.add_argument("--L", type=int, default=2)
    pt.add_argument("--budget", type=int, default=None)
    pt.set_defaults(func=cmd_tree)

    pc = sub.add_parser("check", parents=[common, split_opts])
    pc.add_argument("action", choices=["theorem", "lemmas", "abelian"])
    pc.add_argument("graph", nargs="?")
    pc.add_argument("--phi", default=None, help="homomorphism to Z, e.g. 1,1,1")
    pc.add_argument("--hom", default=None, help="JSON map vertex -> word")
    pc.add_argument("--base", default=None, help="base splitting JSON over the target graph")
    pc.add_argument("--target", default=None, help="target graph file for --hom")
    pc.add_argument("--all-separators", action="store_true")
    pc.add_argument("--samples", type=int, default=100)
    pc.add_argument("--L", type=int, default=tc.Config.L)
    pc.add_argument("--N", type=int, default=tc.Config.N)
    pc.add_argument("--budget", type=int, default=None)
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    # a trailing word after options is not matched by an optional positional
    if len(extra) == 1 and getattr(args, "word", "") is None and not extra[0].startswith("--"):
        args.word = extra[0]
    elif extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (gc.GraphError, rw.WordError, sp.SplittingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except bs.BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
