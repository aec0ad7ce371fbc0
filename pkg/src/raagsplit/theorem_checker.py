"""Run the splitting theorem's proof on a concrete action and certify the result.

Given an action of A(Gamma) on a tree (directly through an amalgam, through
a homomorphism into an amalgam, or on a line through a map to Z), the
checker finds a separating vertex set ``lambda`` and a tree edge that
A(lambda) fixes.  Every conclusion is re-verified exactly; anything that can
only be checked up to a bound says so in its ``bound`` field.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import bass_serre as bs
from . import graph_core as gc
from .graph_core import Graph
from .raag_words import IDENTITY, Word, commute, normal_form
from .splittings import (
    AmalgamSplitting,
    Classification,
    InducedAction,
    LineAction,
    classify,
    syllable_decompose,
)

ALL_ELLIPTIC = "AllElliptic"
SOME_HYPERBOLIC = "SomeHyperbolic"
LINE_EXCLUDED = "LineExcluded"
PRECONDITION_FAILED = "PreconditionFailed"
INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Config:
    L: int = 2
    N: int = 8
    budget: int = bs.DEFAULT_BUDGET
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.L <= 0 or self.N <= 0 or self.budget <= 0:
            raise ValueError("bounds must be positive")


@dataclass(frozen=True)
class Action:
    variant: str  # "direct", "induced" or "line"
    source_graph: Graph
    splitting: AmalgamSplitting | None = None
    induced: InducedAction | None = None
    line: LineAction | None = None

    @classmethod
    def direct(cls, s: AmalgamSplitting) -> Action:
        return cls("direct", s.ambient, splitting=s)

    @classmethod
    def from_induced(cls, ia: InducedAction) -> Action:
        return cls("induced", ia.hom.source, splitting=ia.base, induced=ia)

    @classmethod
    def from_line(cls, la: LineAction) -> Action:
        return cls("line", la.ambient, line=la)

    def image(self, w: Word) -> Word:
        """The element of the base amalgam through which ``w`` acts."""
        if self.variant == "line":
            raise ValueError("line actions have no amalgam")
        if self.induced is not None:
            return normal_form(self.splitting.ambient, self.induced.hom.apply(w))
        return normal_form(self.splitting.ambient, w)

    def generator(self, v: str) -> Word:
        return self.image(Word.gen(v))


@dataclass
class Check:
    name: str
    passed: bool | None
    bound: str | int | None = None
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed, "bound": self.bound}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class TheoremReport:
    case: str
    source_graph: Graph
    lam: frozenset[str] = frozenset()
    witness_edge: bs.TreeEdge | None = None
    separated_pair: tuple[str, str] | None = None
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        good_case = self.case in (ALL_ELLIPTIC, SOME_HYPERBOLIC, LINE_EXCLUDED)
        return good_case and all(c.passed is True for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "lambda": self.source_graph.sort(self.lam),
            "witness_edge": None if self.witness_edge is None else str(self.witness_edge),
            "separated": None if self.separated_pair is None else list(self.separated_pair),
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def classify_generators(a: Action) -> dict[str, Classification]:
    if a.variant == "line":
        raise ValueError("generators of a line action are classified by translation only")
    return {v: classify(a.splitting, a.generator(v)) for v in a.source_graph.vertices}


def run_ball(a: Action, config: Config, classes: dict[str, Classification] | None = None) -> bs.TreeBall:
    """Ball holding every generator's witness fixed point and a period of every axis."""
    classes = classify_generators(a) if classes is None else classes
    g = a.splitting.ambient
    seeds = []
    for v, c in classes.items():
        img = a.generator(v)
        seeds += [img, c.conjugator, normal_form(g, c.conjugator * c.core)]
        if not c.elliptic:
            seeds += [normal_form(g, img**2), normal_form(g, img.inverse())]
    longest = max((len(w) for w in seeds), default=0)
    return bs.build_ball(a.splitting, max(config.L, longest), seeds=seeds, radius=config.L, budget=config.budget)


# -- preconditions ---------------------------------------------------------


@dataclass
class Preconditions:
    non_trivial: Check
    not_a_line: Check

    @property
    def checks(self) -> list[Check]:
        return [self.non_trivial, self.not_a_line]


def _preserves_axis(s: AmalgamSplitting, g: Word, w: Word, n: int) -> bool:
    """Does ``w`` map the axis of ``g`` into itself on the segment ``[g^-n x, g^n x]``?"""
    length = classify(s, g).translation_length
    return all(bs.on_axis(s, g, bs.act(s, w, y), length) for y in bs.axis_segment(s, g, n))


def _fixes_axis(s: AmalgamSplitting, g: Word, h: Word, n: int) -> bool:
    return all(bs.fixes_vertex(s, h, y) for y in bs.axis_segment(s, g, n))


def check_preconditions(a: Action, ball: bs.TreeBall, config: Config = Config()) -> Preconditions:
    if a.variant == "line":
        raise ValueError("line actions are excluded before preconditions are checked")
    s = a.splitting
    verts = a.source_graph.vertices
    classes = classify_generators(a)
    hyper = [v for v in verts if not classes[v].elliptic]

    if hyper:
        non_trivial = Check("non_trivial", True, None, f"{hyper[0]} acts hyperbolically")
    else:
        non_trivial = Check("non_trivial", False, None, "all generators share a fixed point")
        for u, v in itertools.combinations(verts, 2):
            try:
                seg = bs.fixed_segments(s, a.generator(u), a.generator(v), ball)
            except bs.TreeError:
                non_trivial = Check("non_trivial", None, f"L={ball.radius_words}", "fixed point outside ball")
                break
            if seg.disjoint:
                non_trivial = Check("non_trivial", True, None, f"Fix({u}) and Fix({v}) are disjoint")
                break

    if not hyper:
        not_a_line = Check("not_a_line", True, None, "no hyperbolic generator")
    else:
        v = hyper[0]
        g = a.generator(v)
        mover = next(
            (w for w in verts if not _preserves_axis(s, g, a.generator(w), config.N)), None
        )
        if mover is None:
            not_a_line = Check(
                "not_a_line", False, f"N={config.N}", f"every generator preserves the axis of {v}"
            )
        else:
            not_a_line = Check("not_a_line", True, None, f"{mover} moves the axis of {v}")
    return Preconditions(non_trivial, not_a_line)


# -- the two cases of the proof --------------------------------------------


def _edge_checks(a: Action, lam: Iterable[str], e: bs.TreeEdge) -> Check:
    s = a.splitting
    bad = [v for v in a.source_graph.sort(lam) if not bs.fixes_edge(s, a.generator(v), e)]
    return Check("lambda_fixes_edge", not bad, None, f"not fixed: {bad}" if bad else None)


def run_elliptic_case(a: Action, ball: bs.TreeBall) -> TheoremReport:
    s = a.splitting
    gr = a.source_graph
    for u, v in itertools.combinations(gr.vertices, 2):
        seg = bs.fixed_segments(s, a.generator(u), a.generator(v), ball)
        if not seg.disjoint:
            continue
        e = ball.edge_between(seg.path[seg.first_end], seg.path[seg.first_end + 1])
        lam = frozenset(w for w in gr.vertices if bs.fixes_edge(s, a.generator(w), e))
        report = TheoremReport(ALL_ELLIPTIC, gr, lam, e, (u, v))
        report.checks.append(
            Check("fixed_sets_disjoint", True, None, f"segments end/start at {seg.first_end}/{seg.second_start}")
        )
        report.checks.append(Check("separates_pair", gc.separates(gr, lam, u, v)))
        report.checks.append(_edge_checks(a, lam, e))
        if not lam:
            report.notes.append("lambda is empty: the graph is disconnected (free product)")
        return report
    raise RuntimeError("no pair of generators with disjoint fixed sets despite a non-trivial action")


def axis_edge(s: AmalgamSplitting, g: Word) -> bs.TreeEdge:
    """The edge leaving the core's base point along the axis of ``g``."""
    c = classify(s, g)
    first = syllable_decompose(s, c.core)[0][1]
    return bs.edge_of(s, c.conjugator * first)


def run_hyperbolic_case(a: Action, v: str, ball: bs.TreeBall, N: int) -> TheoremReport:
    s = a.splitting
    gr = a.source_graph
    classes = classify_generators(a)
    if classes[v].elliptic:
        raise ValueError(f"{v} acts elliptically")
    g = a.generator(v)
    length = classes[v].translation_length

    lam = set()
    bounded = []
    for h in gr.vertices:
        if h == v or not classes[h].elliptic:
            continue
        if commute(gr, Word.gen(h), Word.gen(v)):
            lam.add(h)
        elif _fixes_axis(s, g, a.generator(h), N):
            lam.add(h)
            bounded.append(h)
    lam = frozenset(lam)

    e = axis_edge(s, g)
    report = TheoremReport(SOME_HYPERBOLIC, gr, lam, e)
    ends = bs.endpoints(s, e)
    report.checks.append(
        Check("witness_edge_on_axis", all(bs.on_axis(s, g, x, length) for x in ends))
    )
    report.checks.append(Check("witness_edge_in_ball", e in ball.edges, f"L={ball.radius_words}"))
    if bounded:
        report.notes.append(f"{gr.sort(bounded)} fix the axis of {v} only up to N={N}")
    report.checks.append(_edge_checks(a, lam, e))

    comp = gc.component_of(gr, lam, v)
    same_axis = all(
        not classes[w].elliptic and _preserves_axis(s, g, a.generator(w), N)
        and _preserves_axis(s, a.generator(w), g, N)
        for w in gr.sort(comp)
    )
    report.checks.append(Check("component_shares_axis", same_axis, f"N={N}"))

    mover = next(
        (w for w in gr.vertices if not _preserves_axis(s, g, a.generator(w), N)), None
    )
    if mover is None:
        report.case = INDETERMINATE
        report.checks.append(Check("separates_pair", None, f"N={N}", "no generator moves the axis"))
        return report
    report.separated_pair = (v, mover)
    report.checks.append(Check("separates_pair", gc.separates(gr, lam, v, mover)))
    return report


# -- independent re-verification -------------------------------------------


def _splits_by_union_find(g: Graph, lam: frozenset[str]) -> bool:
    rest = [v for v in g.vertices if v not in lam]
    parent = {v: v for v in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        x, y = tuple(e)
        if x in parent and y in parent:
            parent[find(x)] = find(y)
    return len({find(x) for x in rest}) >= 2


def _fixes_both_ends(a: Action, lam, e: bs.TreeEdge) -> bool:
    s = a.splitting
    ends = bs.endpoints(s, e)
    return all(bs.fixes_vertex(s, a.generator(v), x) for v in lam for x in ends)


def verify_theorem(a: Action, config: Config = Config()) -> TheoremReport:
    if a.variant == "line":
        report = TheoremReport(LINE_EXCLUDED, a.source_graph)
        report.checks.append(Check("line_action", True, None, "the tree is a line"))
        return report

    classes = classify_generators(a)
    try:
        ball = run_ball(a, config, classes)
    except bs.BudgetExceeded as exc:
        report = TheoremReport(INDETERMINATE, a.source_graph)
        report.checks.append(Check("budget", None, config.budget, str(exc)))
        return report

    pre = check_preconditions(a, ball, config)
    if any(c.passed is None for c in pre.checks):
        report = TheoremReport(INDETERMINATE, a.source_graph, checks=pre.checks)
        return report
    if not all(c.passed for c in pre.checks):
        return TheoremReport(PRECONDITION_FAILED, a.source_graph, checks=pre.checks)

    hyper = [v for v in a.source_graph.vertices if not classes[v].elliptic]
    if hyper:
        report = run_hyperbolic_case(a, hyper[0], ball, config.N)
    else:
        report = run_elliptic_case(a, ball)
    report.checks[:0] = pre.checks
    report.notes.append("minimality is assumed, not certified")

    if report.witness_edge is not None:
        report.checks.append(
            Check("conclusion_separating", _splits_by_union_find(a.source_graph, report.lam))
        )
        report.checks.append(
            Check("conclusion_edge_stabilized", _fixes_both_ends(a, report.lam, report.witness_edge))
        )
    return report


def abelian_splitting_report(g: Graph) -> dict:
    cliques = gc.cut_cliques(g)
    complete = gc.is_complete(g)
    connected = len(gc.components(g)) <= 1
    if complete:
        verdict = "excluded: complete graph"
    elif cliques or not connected:
        verdict = "abelian splitting exists"
    else:
        verdict = "no abelian splitting"
    return {
        "complete": complete,
        "cut_cliques": [g.sort(c) for c in cliques],
        "verdict": verdict,
    }


# -- lemma harness ---------------------------------------------------------


def lemma_checks(s: AmalgamSplitting, g: Word, h: Word, ball: bs.TreeBall) -> list[Check]:
    """Axis/fixed-set relations for a commuting pair, inside ``ball``.

    Returns one check per applicable statement; a ``None`` result means the
    ball held no witness and the statement was vacuous there.
    """
    gr = s.ambient
    if not commute(gr, g, h):
        raise ValueError(f"{g} and {h} do not commute")
    cg, ch = classify(s, g), classify(s, h)
    out = []
    if not cg.elliptic and ch.elliptic:
        out.append(_axis_in_fix(s, g, h, ball))
    elif cg.elliptic and not ch.elliptic:
        out.append(_axis_in_fix(s, h, g, ball))
    elif not cg.elliptic and not ch.elliptic:
        ag, ah = bs.axis_vertices(s, g, ball), bs.axis_vertices(s, h, ball)
        ok = all(bs.on_axis(s, h, v, ch.translation_length) for v in ag) and all(
            bs.on_axis(s, g, v, cg.translation_length) for v in ah
        )
        dom = [v for v in ball.vertices if bs.act(s, g, v) in ball and bs.act(s, h, v) in ball]
        ok = ok and {v for v in dom if v in ag} == {v for v in dom if v in ah}
        out.append(Check("commuting_hyperbolics_share_axis", ok if ag else None, f"L={ball.radius_words}"))
    else:
        try:
            seg = bs.fixed_segments(s, g, h, ball)
            res = not seg.disjoint
        except bs.TreeError:
            res = None
        out.append(Check("commuting_elliptics_fixed_sets_meet", res, f"L={ball.radius_words}"))
    return out


def _axis_in_fix(s, g, h, ball) -> Check:
    axis = bs.axis_vertices(s, g, ball)
    ok = all(bs.fixes_vertex(s, h, v) for v in axis)
    return Check("axis_inside_fixed_set", ok if axis else None, f"L={ball.radius_words}")


def sample_commuting_pairs(g: Graph, rng, count: int, max_len: int = 2) -> list[tuple[Word, Word]]:
    """Commuting pairs ``(u x^m u^-1, u y^n u^-1)`` with ``x``, ``y`` commuting words.

    ``y`` is either a power of ``x`` or a word over the common link of ``x``.
    """
    verts = list(g.vertices)
    pairs = []
    if not verts:
        return pairs
    while len(pairs) < count:
        x = _random_word(g, rng, rng.randint(1, max_len))
        if not x.letters:
            continue
        link = [v for v in verts if all(g.adjacent(v, y) for y in x.vertices())]
        if link and rng.random() < 0.5:
            y = Word.gen(rng.choice(link), rng.choice([1, -1, 2]))
        else:
            y = x ** rng.choice([-1, 1, 2])
        u = _random_word(g, rng, rng.randint(0, 2))
        m = rng.choice([1, 2])
        gg = normal_form(g, u * x**m * u.inverse())
        hh = normal_form(g, u * y * u.inverse())
        if gg.letters and hh.letters:
            pairs.append((gg, hh))
    return pairs


def _random_word(g: Graph, rng, n: int) -> Word:
    return Word((rng.choice(g.vertices), rng.choice((1, -1))) for _ in range(n))
