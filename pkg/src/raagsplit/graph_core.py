"""Finite simple graphs and the separator notions used to split A(Gamma).

Vertices are string labels kept in declaration order; that order is the
ambient order used for canonical words and for every sorted output.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable

DEFAULT_SEPARATOR_BOUND = 16


class GraphError(ValueError):
    """Malformed graph or a vertex label the graph does not know."""


class BoundExceeded(ValueError):
    pass


class Graph:
    """Immutable finite simple graph with ordered vertex labels."""

    __slots__ = ("vertices", "edges", "_index", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError(f"duplicate vertex labels in {vertices}")
        index = {v: i for i, v in enumerate(vertices)}
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        pairs = set()
        for e in edges:
            u, v = tuple(e)
            if u not in index or v not in index:
                raise GraphError(f"edge ({u}, {v}) uses an unknown vertex")
            if u == v:
                raise GraphError(f"loop at {u}")
            pairs.add(frozenset((u, v)))
            adj[u].add(v)
            adj[v].add(u)
        self.vertices = vertices
        self.edges = frozenset(pairs)
        self._index = index
        self._adj = {v: frozenset(n) for v, n in adj.items()}

    def __repr__(self):
        es = sorted(tuple(self.sort(e)) for e in self.edges)
        return f"Graph({list(self.vertices)}, {es})"

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> frozenset[str]:
        self.index(v)
        return self._adj[v]

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adj[u]

    def sort(self, vs: Iterable[str]) -> list[str]:
        """Vertices of `vs` in declaration order."""
        return sorted(vs, key=self.index)

    def check_subset(self, s: Iterable[str]) -> frozenset[str]:
        s = frozenset(s)
        for v in s:
            self.index(v)
        return s

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted(self.sort(e) for e in self.edges),
        }


def induced_subgraph(g: Graph, s: Iterable[str]) -> Graph:
    s = g.check_subset(s)
    vs = [v for v in g.vertices if v in s]
    return Graph(vs, [e for e in g.edges if e <= s])


def complement(g: Graph, s: Iterable[str]) -> frozenset[str]:
    s = g.check_subset(s)
    return frozenset(v for v in g.vertices if v not in s)


def components(g: Graph) -> list[frozenset[str]]:
    """Connected components, ordered by their least vertex."""
    seen: set[str] = set()
    parts = []
    for root in g.vertices:
        if root in seen:
            continue
        part = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y not in part:
                    part.add(y)
                    stack.append(y)
        seen |= part
        parts.append(frozenset(part))
    return parts


def _components_without(g: Graph, s: frozenset[str]) -> list[frozenset[str]]:
    return components(induced_subgraph(g, complement(g, s)))


def is_separating(g: Graph, s: Iterable[str]) -> bool:
    s = g.check_subset(s)
    return len(_components_without(g, s)) >= 2


def separates(g: Graph, s: Iterable[str], u: str, v: str) -> bool:
    s = g.check_subset(s)
    g.index(u)
    g.index(v)
    if u in s or v in s:
        raise GraphError(f"{u!r} and {v!r} must lie outside the separator")
    for part in _components_without(g, s):
        if u in part:
            return v not in part
    raise AssertionError("unreachable")


def component_of(g: Graph, s: Iterable[str], v: str) -> frozenset[str]:
    s = g.check_subset(s)
    if v in s:
        raise GraphError(f"{v!r} lies in the removed set")
    for part in _components_without(g, s):
        if v in part:
            return part
    raise GraphError(f"unknown vertex {v!r}")


def is_complete(g: Graph) -> bool:
    n = len(g)
    return len(g.edges) == n * (n - 1) // 2


def is_clique(g: Graph, s: Iterable[str]) -> bool:
    return is_complete(induced_subgraph(g, s))


def vertex_set_key(g: Graph, s: Iterable[str]):
    """Sort key: size first, then lexicographic in vertex order."""
    idx = sorted(g.index(v) for v in s)
    return (len(idx), idx)


def _subsets(g: Graph):
    for r in range(len(g) + 1):
        for combo in itertools.combinations(g.vertices, r):
            yield frozenset(combo)


def separating_sets(g: Graph, bound: int = DEFAULT_SEPARATOR_BOUND) -> list[frozenset[str]]:
    if len(g) > bound:
        raise BoundExceeded(f"{len(g)} vertices exceeds the subset-scan bound {bound}")
    return [s for s in _subsets(g) if is_separating(g, s)]


def minimal_separators(g: Graph, bound: int = DEFAULT_SEPARATOR_BOUND) -> list[frozenset[str]]:
    """Inclusion-minimal separating vertex sets, by exhaustive subset scan.

    Subsets come out size-ordered, so a separating set is minimal exactly
    when no previously kept separator is contained in it.
    """
    kept: list[frozenset[str]] = []
    for s in separating_sets(g, bound):
        if not any(t <= s for t in kept):
            kept.append(s)
    return sorted(kept, key=lambda s: vertex_set_key(g, s))


def cut_vertices(g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if is_separating(g, {v}))


def cut_cliques(g: Graph, bound: int = DEFAULT_SEPARATOR_BOUND) -> list[frozenset[str]]:
    """Separating vertex sets inducing complete subgraphs (empty set included)."""
    if len(g) > bound:
        raise BoundExceeded(f"{len(g)} vertices exceeds the subset-scan bound {bound}")
    found = [s for s in _subsets(g) if is_clique(g, s) and is_separating(g, s)]
    return sorted(found, key=lambda s: vertex_set_key(g, s))


# -- text formats -----------------------------------------------------------

_DOT_HEAD = re.compile(r"^\s*(strict\s+)?graph\s*\w*\s*\{", re.S)


def parse_graph(text: str) -> Graph:
    """Parse the line format or the undirected DOT subset."""
    if _DOT_HEAD.match(text):
        return _parse_dot(text)
    lines = text.splitlines()
    header = None
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if header is None:
            if not line:
                continue
            header = line.split()
            continue
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = parts
        if u not in header or v not in header:
            raise GraphError(f"line {lineno}: unknown vertex in {raw!r}")
        if u == v:
            raise GraphError(f"line {lineno}: loop at {u}")
        edges.append((u, v))
    if header is None:
        return Graph([])
    try:
        return Graph(header, edges)
    except GraphError as exc:
        raise GraphError(f"line 1: {exc}") from None


def _parse_dot(text: str) -> Graph:
    body = text[text.index("{") + 1 : text.rindex("}")]
    vertices: list[str] = []
    edges = []

    def add(v):
        v = v.strip().strip('"')
        if not re.fullmatch(r"[\w.]+", v):
            raise GraphError(f"bad DOT vertex id {v!r}")
        if v not in vertices:
            vertices.append(v)
        return v

    for stmt in re.split(r"[;\n]", body):
        stmt = re.sub(r"\[.*?\]", "", stmt).strip()
        if not stmt or "=" in stmt:
            continue
        if "->" in stmt:
            raise GraphError("directed edges are not supported")
        chain = [add(v) for v in stmt.split("--")]
        for u, v in zip(chain, chain[1:]):
            if u == v:
                raise GraphError(f"loop at {u}")
            edges.append((u, v))
    return Graph(vertices, edges)


def format_graph(g: Graph) -> str:
    lines = [" ".join(g.vertices)]
    lines += [" ".join(g.sort(e)) for e in sorted(g.edges, key=lambda e: sorted(g.index(v) for v in e))]
    return "\n".join(lines) + "\n"
