"""Exact finite pieces of the Bass-Serre tree of an amalgam.

Vertices are cosets ``rep A(side_i)`` and edges are cosets ``rep A(lam)``;
every coset is stored under its unique shortest representative, so two
stored objects are the same point of the tree iff their keys agree.  A
:class:`TreeBall` is a finite connected subtree containing the base edge
``A(lam)``: paths inside it are geodesics of the whole tree.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import NamedTuple

from .raag_words import (
    IDENTITY,
    Word,
    coset_representative,
    in_special_subgroup,
    normal_form,
)
from .splittings import EDGE_GROUP, AmalgamSplitting, classify, syllable_decompose

DEFAULT_BUDGET = 100_000


class BudgetExceeded(RuntimeError):
    pass


class TreeError(ValueError):
    pass


class FixedSetsIntersect(TreeError):
    """The two fixed segments on the connecting geodesic overlap."""


class TreeVertex(NamedTuple):
    side: int
    rep: Word

    def __str__(self):
        return f"{self.rep}.A{self.side}"


class TreeEdge(NamedTuple):
    rep: Word

    def __str__(self):
        return str(self.rep)


def default_budget() -> int:
    env = os.environ.get("RAAG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def vertex_of(s: AmalgamSplitting, w: Word, side: int) -> TreeVertex:
    return TreeVertex(side, coset_representative(s.ambient, w, s.side(side)))


def edge_of(s: AmalgamSplitting, w: Word) -> TreeEdge:
    return TreeEdge(coset_representative(s.ambient, w, s.lam))


def endpoints(s: AmalgamSplitting, e: TreeEdge) -> tuple[TreeVertex, TreeVertex]:
    return vertex_of(s, e.rep, 1), vertex_of(s, e.rep, 2)


BASE_EDGE = TreeEdge(IDENTITY)


def same_coset(s: AmalgamSplitting, w1: Word, w2: Word, side: int) -> bool:
    """Membership-based coset equality; independent of the canonical keys."""
    return in_special_subgroup(s.ambient, s.side(side), w1.inverse() * w2)


def act(s: AmalgamSplitting, g: Word, v: TreeVertex) -> TreeVertex:
    return vertex_of(s, g * v.rep, v.side)


def act_edge(s: AmalgamSplitting, g: Word, e: TreeEdge) -> TreeEdge:
    return edge_of(s, g * e.rep)


def fixes_vertex(s: AmalgamSplitting, g: Word, v: TreeVertex) -> bool:
    return in_special_subgroup(s.ambient, s.side(v.side), v.rep.inverse() * g * v.rep)


def fixes_edge(s: AmalgamSplitting, g: Word, e: TreeEdge) -> bool:
    return in_special_subgroup(s.ambient, s.lam, e.rep.inverse() * g * e.rep)


def distance(s: AmalgamSplitting, x: TreeVertex, y: TreeVertex) -> int:
    """Exact tree distance, read off the syllables of ``x.rep^-1 y.rep``."""
    h = x.rep.inverse() * y.rep
    sylls = syllable_decompose(s, h)
    if not sylls or sylls[0][0] == EDGE_GROUP:
        return 0 if x.side == y.side else 1
    if sylls[-1][0] == y.side:
        sylls = sylls[:-1]
    if not sylls:
        return 0 if x.side == y.side else 1
    n = len(sylls)
    return n if sylls[0][0] == x.side else n + 1


def on_axis(s: AmalgamSplitting, g: Word, v: TreeVertex, length: int | None = None) -> bool:
    if length is None:
        length = classify(s, g).translation_length
    return length > 0 and distance(s, v, act(s, g, v)) == length


@dataclass
class TreeBall:
    splitting: AmalgamSplitting
    radius_words: int
    vertices: frozenset[TreeVertex]
    edges: frozenset[TreeEdge]
    adjacency: dict[TreeVertex, list[tuple[TreeVertex, TreeEdge]]]
    _parent: dict = field(default_factory=dict, repr=False)
    _depth: dict = field(default_factory=dict, repr=False)

    def __contains__(self, item):
        return item in self.vertices or item in self.edges

    @property
    def root(self) -> TreeVertex:
        return TreeVertex(1, IDENTITY)

    def _index(self):
        if self._parent:
            return
        root = self.root
        self._parent[root] = None
        self._depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, _ in self.adjacency[x]:
                if y not in self._depth:
                    self._depth[y] = self._depth[x] + 1
                    self._parent[y] = x
                    queue.append(y)

    def path(self, x: TreeVertex, y: TreeVertex) -> list[TreeVertex]:
        if x not in self.vertices or y not in self.vertices:
            raise TreeError(f"{x} or {y} is outside the ball")
        self._index()
        left, right = [x], [y]
        while left[-1] != right[-1]:
            a, b = left[-1], right[-1]
            if self._depth[a] >= self._depth[b]:
                left.append(self._parent[a])
            else:
                right.append(self._parent[b])
        return left + right[-2::-1]

    def dist(self, x: TreeVertex, y: TreeVertex) -> int:
        return len(self.path(x, y)) - 1

    def edge_between(self, x: TreeVertex, y: TreeVertex) -> TreeEdge:
        for z, e in self.adjacency[x]:
            if z == y:
                return e
        raise TreeError(f"{x} and {y} are not adjacent")

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        self._index()
        return len(self._depth) == len(self.vertices)

    def sorted_vertices(self) -> list[TreeVertex]:
        g = self.splitting.ambient
        return sorted(self.vertices, key=lambda v: _word_key(g, v.rep) + (v.side,))

    def to_dict(self) -> dict:
        g = self.splitting.ambient
        vs = self.sorted_vertices()
        pos = {v: i for i, v in enumerate(vs)}
        es = sorted(self.edges, key=lambda e: _word_key(g, e.rep))
        return {
            "splitting": self.splitting.to_dict(),
            "L": self.radius_words,
            "vertices": [{"id": i, "side": v.side, "rep": str(v.rep)} for i, v in enumerate(vs)],
            "edges": [
                {"rep": str(e.rep), "ends": [pos[a] for a in endpoints(self.splitting, e)]}
                for e in es
            ],
            "adjacency": {str(pos[v]): sorted(pos[y] for y, _ in self.adjacency[v]) for v in vs},
        }


def _word_key(g, w: Word):
    return (len(w), tuple((g.index(v), s) for v, s in w))


def _elements_up_to(s: AmalgamSplitting, radius: int, budget: int) -> set[Word]:
    g = s.ambient
    gens = [Word([(v, e)]) for v in g.vertices for e in (1, -1)]
    seen = {IDENTITY}
    frontier = [IDENTITY]
    for k in range(radius):
        nxt = []
        for u in frontier:
            for x in gens:
                w = normal_form(g, u * x)
                if len(w) == k + 1 and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if len(seen) > budget:
            raise BudgetExceeded(f"more than {budget} words of length <= {k + 1}")
        frontier = nxt
    return seen


def build_ball(
    s: AmalgamSplitting,
    L: int,
    seeds: Iterable[Word] | None = None,
    radius: int | None = None,
    budget: int | None = None,
) -> TreeBall:
    """Finite subtree spanned by the edges ``u A(lam)`` for enumerated words ``u``.

    Without seeds, ``u`` runs over every element of normal-form length at
    most ``L``.  With seeds, ``u`` runs over the normal-form prefixes (up to
    length ``L``) of each seed, plus all elements of length at most
    ``radius`` (default 1).  Consecutive prefixes give adjacent edges, so a
    seed's walk contains the geodesic from the base edge to ``seed A(lam)``.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    budget = default_budget() if budget is None else budget
    g = s.ambient
    if seeds is None:
        words = _elements_up_to(s, L, budget)
    else:
        words = _elements_up_to(s, min(L, 1 if radius is None else radius), budget)
        for seed in seeds:
            letters = normal_form(g, seed).letters
            for k in range(min(L, len(letters)) + 1):
                words.add(Word(letters[:k]))

    edges: set[TreeEdge] = set()
    for u in words:
        edges.add(edge_of(s, u))
        if 2 * len(edges) > budget:
            raise BudgetExceeded(f"ball exceeds the vertex budget {budget}")
    adjacency: dict[TreeVertex, list] = {}
    for e in edges:
        a, b = endpoints(s, e)
        adjacency.setdefault(a, []).append((b, e))
        adjacency.setdefault(b, []).append((a, e))

    # keep the component of the base edge
    start = endpoints(s, BASE_EDGE)[0]
    keep = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y, _ in adjacency[x]:
            if y not in keep:
                keep.add(y)
                queue.append(y)
    if len(keep) > budget:
        raise BudgetExceeded(f"ball exceeds the vertex budget {budget}")
    key = lambda pair: (_word_key(g, pair[0].rep), pair[0].side)
    adjacency = {v: sorted(adjacency[v], key=key) for v in keep}
    kept_edges = frozenset(e for v in keep for _, e in adjacency[v])
    return TreeBall(s, L, frozenset(keep), kept_edges, adjacency)


def fixed_vertices(s: AmalgamSplitting, g: Word, ball: TreeBall) -> frozenset[TreeVertex]:
    return frozenset(v for v in ball.vertices if fixes_vertex(s, g, v))


def geodesic(ball: TreeBall, x: TreeVertex, y: TreeVertex) -> list[TreeVertex]:
    return ball.path(x, y)


def fixed_point_in_ball(s: AmalgamSplitting, g: Word, ball: TreeBall) -> TreeVertex | None:
    """The classification's witness vertex if it lies in the ball, else the least fixed vertex."""
    c = classify(s, g)
    if not c.elliptic:
        return None
    witness = vertex_of(s, c.conjugator, c.side)
    if witness in ball.vertices:
        return witness
    fixed = fixed_vertices(s, g, ball)
    if not fixed:
        return None
    gr = s.ambient
    return min(fixed, key=lambda v: _word_key(gr, v.rep) + (v.side,))


@dataclass(frozen=True)
class Segments:
    """Fixed segments of two elements along the geodesic between their fixed points."""

    path: list
    first_end: int  # last index fixed by the first element
    second_start: int  # first index fixed by the second element

    @property
    def disjoint(self) -> bool:
        return self.first_end < self.second_start


def fixed_segments(s: AmalgamSplitting, u: Word, v: Word, ball: TreeBall) -> Segments:
    x = fixed_point_in_ball(s, u, ball)
    y = fixed_point_in_ball(s, v, ball)
    if x is None or y is None:
        raise TreeError("no fixed vertex in the ball for one of the elements")
    path = ball.path(x, y)
    a = 0
    while a + 1 < len(path) and fixes_vertex(s, u, path[a + 1]):
        a += 1
    b = len(path) - 1
    while b - 1 >= 0 and fixes_vertex(s, v, path[b - 1]):
        b -= 1
    return Segments(path, a, b)


def bridge_edge(s: AmalgamSplitting, u: Word, v: Word, ball: TreeBall) -> TreeEdge:
    """First edge after Fix(u) on the geodesic towards Fix(v).

    Fixed sets are subtrees, so each meets the geodesic in a segment; if the
    segments are disjoint, Helly's property for subtrees gives
    Fix(u) and Fix(v) disjoint in the whole tree.
    """
    seg = fixed_segments(s, u, v, ball)
    if not seg.disjoint:
        raise FixedSetsIntersect(f"fixed sets of {u} and {v} meet")
    return ball.edge_between(seg.path[seg.first_end], seg.path[seg.first_end + 1])


def displacement(s: AmalgamSplitting, g: Word, ball: TreeBall) -> int:
    best = None
    for v in ball.vertices:
        gv = act(s, g, v)
        if gv in ball.vertices:
            d = ball.dist(v, gv)
            if best is None or d < best:
                best = d
    if best is None:
        raise TreeError(f"no vertex v in the ball has {g} v in the ball")
    return best


def axis_vertices(s: AmalgamSplitting, g: Word, ball: TreeBall) -> frozenset[TreeVertex]:
    c = classify(s, g)
    if c.elliptic:
        raise TreeError(f"{g} is elliptic and has no axis")
    out = set()
    for v in ball.vertices:
        gv = act(s, g, v)
        if gv in ball.vertices and ball.dist(v, gv) == c.translation_length:
            out.add(v)
    return frozenset(out)


def axis_segment(s: AmalgamSplitting, g: Word, n: int) -> list[TreeVertex]:
    """Vertices of the axis from ``g^-n x`` to ``g^n x``, ``x`` the core's base point.

    With ``g = c k c^-1`` and ``k`` cyclically reduced, the geodesic from
    ``c A_i`` to ``g c A_i`` follows the syllable prefixes of ``k``.
    """
    c = classify(s, g)
    if c.elliptic:
        raise TreeError(f"{g} is elliptic and has no axis")
    gr = s.ambient
    sylls = syllable_decompose(s, c.core)
    side = sylls[0][0]
    base = [vertex_of(s, c.conjugator, side)]
    prefix = c.conjugator
    for _, sy in sylls:
        prefix = normal_form(gr, prefix * sy)
        side = 3 - side
        base.append(vertex_of(s, prefix, side))
    period = base[:-1]
    out = []
    for k in range(-n, n):
        gk = g ** k
        out.extend(act(s, gk, v) for v in period)
    out.append(act(s, g ** n, period[0]))
    return out
