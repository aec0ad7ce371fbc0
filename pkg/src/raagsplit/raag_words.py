"""Words in A(Gamma) and their canonical normal form.

A word is a plain tuple of letters ``(vertex, sign)``.  Nothing normalizes
implicitly: concatenation and inversion keep the spelling, and
:func:`normal_form` has to be called explicitly.

The normal form is computed in two passes.  Free reduction cancels
``x^e ... x^-e`` whenever every intervening letter commutes with ``x``;
the survivors are then re-ordered, using only commutations, into the
lexicographically least spelling under the graph's vertex order.  Two words
are equal in A(Gamma) exactly when the results coincide.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from functools import lru_cache

from .graph_core import Graph, GraphError

Letter = tuple[str, int]


class WordError(ValueError):
    pass


class Word:
    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        letters = tuple((str(v), int(s)) for v, s in letters)
        for v, s in letters:
            if s not in (1, -1):
                raise WordError(f"letter sign must be +1 or -1, got {s} on {v!r}")
        self.letters = letters

    @classmethod
    def gen(cls, v: str, power: int = 1) -> Word:
        s = 1 if power > 0 else -1
        return cls([(v, s)] * abs(power))

    @classmethod
    def parse(cls, text: str, g: Graph | None = None) -> Word:
        return parse_word(text, g)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(v if s > 0 else f"{v}^-1" for v, s in self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item])
        return self.letters[item]

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> Word:
        if n < 0:
            return self.inverse() ** -n
        return Word(self.letters * n)

    def __lt__(self, other: Word):
        return self.letters < other.letters

    def inverse(self) -> Word:
        return Word((v, -s) for v, s in reversed(self.letters))

    def vertices(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.letters)


IDENTITY = Word()

_POWER = re.compile(r"^([^\s^]+)\^(-?\d+)$")


def parse_word(text: str, g: Graph | None = None) -> Word:
    """Parse ``a b a^-1``; ``A`` also denotes ``a^-1`` when unambiguous."""
    letters: list[Letter] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _POWER.match(tok)
        if m:
            name, power = m.group(1), int(m.group(2))
        else:
            name, power = tok, 1
            if g is not None:
                if tok not in g and tok.lower() in g and tok != tok.lower():
                    name, power = tok.lower(), -1
            elif tok != tok.lower():
                name, power = tok.lower(), -1
        if g is not None and name not in g:
            raise WordError(f"unknown generator {name!r} in {text!r}")
        letters.extend(Word.gen(name, power).letters)
    return Word(letters)


def _check(g: Graph, w: Word):
    for v, _ in w.letters:
        if v not in g:
            raise GraphError(f"unknown vertex {v!r} in word {w}")


def _free_reduce(g: Graph, letters) -> list[Letter]:
    out: list[Letter] = []
    for x, e in letters:
        i = len(out) - 1
        cancelled = False
        while i >= 0:
            y, f = out[i]
            if y == x:
                if f == -e:
                    del out[i]
                    cancelled = True
                break
            if not g.adjacent(x, y):
                break
            i -= 1
        if not cancelled:
            out.append((x, e))
    return out


def _lex_least(g: Graph, letters: list[Letter]) -> tuple[Letter, ...]:
    """Greedy lexicographically least linearization under commutation.

    At each step the available letters are those that commute past all
    earlier remaining letters; picking the smallest one is optimal because
    every linearization must start with an available letter.
    """
    rest = list(letters)
    out = []
    while rest:
        best = None
        seen: list[str] = []
        for i, (x, _) in enumerate(rest):
            adj = g.neighbors(x)
            if all(y in adj for y in seen):
                if best is None or g.index(x) < g.index(rest[best][0]):
                    best = i
            seen.append(x)
        out.append(rest.pop(best))
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _nf(g: Graph, letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return _lex_least(g, _free_reduce(g, letters))


def normal_form(g: Graph, w: Word) -> Word:
    _check(g, w)
    return Word(_nf(g, w.letters))


def equal(g: Graph, w1: Word, w2: Word) -> bool:
    return not normal_form(g, w1 * w2.inverse()).letters


def commute(g: Graph, w1: Word, w2: Word) -> bool:
    return equal(g, w1 * w2, w2 * w1)


def support(g: Graph, w: Word) -> frozenset[str]:
    return normal_form(g, w).vertices()


def in_special_subgroup(g: Graph, lam: Iterable[str], w: Word) -> bool:
    lam = g.check_subset(lam)
    return support(g, w) <= lam


def retract(g: Graph, lam: Iterable[str], w: Word) -> Word:
    lam = g.check_subset(lam)
    _check(g, w)
    return Word((v, s) for v, s in w.letters if v in lam)


def coset_representative(g: Graph, w: Word, s: Iterable[str]) -> Word:
    """Shortest element of the coset ``w A(s)``, in normal form.

    Strips every letter of ``s`` that can be commuted to the right end; the
    minimal-length representative of a coset of a special subgroup is
    unique, so the result is canonical for the coset.
    """
    s = g.check_subset(s)
    return Word(_coset_rep(g, normal_form(g, w).letters, s))


@lru_cache(maxsize=1 << 18)
def _coset_rep(g: Graph, letters: tuple[Letter, ...], s: frozenset[str]) -> tuple[Letter, ...]:
    rest = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(rest) - 1, -1, -1):
            x = rest[i][0]
            if x not in s:
                continue
            adj = g.neighbors(x)
            if all(y in adj for y, _ in rest[i + 1 :]):
                del rest[i]
                changed = True
                break
    return _nf(g, tuple(rest))


def abelianization(g: Graph, w: Word) -> dict[str, int]:
    _check(g, w)
    vec = {v: 0 for v in g.vertices}
    for v, s in w.letters:
        vec[v] += s
    return vec


def z_image(g: Graph, phi: Mapping[str, int], w: Word) -> int:
    ab = abelianization(g, w)
    return sum(phi.get(v, 0) * n for v, n in ab.items())


def parse_vector(text: str, g: Graph) -> dict[str, int]:
    """``1,0,-2`` in vertex order, or ``a=1,b=0``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if parts and all("=" in p for p in parts):
        vec = {v: 0 for v in g.vertices}
        for p in parts:
            k, val = p.split("=", 1)
            g.index(k.strip())
            vec[k.strip()] = int(val)
        return vec
    if len(parts) != len(g):
        raise WordError(f"expected {len(g)} integers, got {len(parts)}")
    return dict(zip(g.vertices, (int(p) for p in parts)))
