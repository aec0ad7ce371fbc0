"""Splittings of A(Gamma) and how elements act on their trees.

An amalgam ``A(side1) *_{A(lam)} A(side2)`` comes from a separating vertex
set; a line action comes from a homomorphism to Z given by an integer per
vertex; an induced action pulls an amalgam back along a homomorphism
between right-angled Artin groups.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from . import graph_core as gc
from .graph_core import Graph
from .raag_words import (
    IDENTITY,
    Word,
    commute,
    in_special_subgroup,
    normal_form,
    parse_word,
    z_image,
)

EDGE_GROUP = 0  # syllable tag for elements of A(lam)


class SplittingError(ValueError):
    pass


@dataclass(frozen=True)
class AmalgamSplitting:
    ambient: Graph
    lam: frozenset[str]
    side1: frozenset[str]
    side2: frozenset[str]

    def __post_init__(self):
        g = self.ambient
        for s in (self.lam, self.side1, self.side2):
            g.check_subset(s)
        if self.side1 & self.side2 != self.lam:
            raise SplittingError("sides must intersect exactly in lambda")
        if self.side1 | self.side2 != frozenset(g.vertices):
            raise SplittingError("sides must cover every vertex")
        if self.side1 == self.lam or self.side2 == self.lam:
            raise SplittingError("both sides must reach outside lambda")
        for e in g.edges:
            u, v = tuple(e)
            only1, only2 = self.side1 - self.lam, self.side2 - self.lam
            if (u in only1 and v in only2) or (u in only2 and v in only1):
                raise SplittingError(f"edge {u}-{v} joins the two sides")

    def side(self, i: int) -> frozenset[str]:
        return {1: self.side1, 2: self.side2, EDGE_GROUP: self.lam}[i]

    def letter_side(self, v: str) -> int:
        if v in self.lam:
            return EDGE_GROUP
        return 1 if v in self.side1 else 2

    def to_dict(self) -> dict:
        g = self.ambient
        return {
            "lambda": g.sort(self.lam),
            "side1": g.sort(self.side1),
            "side2": g.sort(self.side2),
        }

    @classmethod
    def from_dict(cls, g: Graph, data: Mapping) -> AmalgamSplitting:
        try:
            return cls(g, frozenset(data["lambda"]), frozenset(data["side1"]), frozenset(data["side2"]))
        except KeyError as exc:
            raise SplittingError(f"splitting descriptor is missing {exc}") from None


@dataclass(frozen=True)
class LineAction:
    ambient: Graph
    phi: Mapping[str, int]

    def __post_init__(self):
        self.ambient.check_subset(self.phi)
        if not any(self.phi.values()):
            raise SplittingError("the zero homomorphism gives the trivial action")

    def __hash__(self):
        return hash((self.ambient, tuple(sorted(self.phi.items()))))


@dataclass(frozen=True)
class RaagHom:
    source: Graph
    target: Graph
    images: Mapping[str, Word]

    def __post_init__(self):
        missing = set(self.source.vertices) - set(self.images)
        if missing:
            raise SplittingError(f"no image given for {sorted(missing)}")
        for v, w in self.images.items():
            self.source.index(v)
            for x, _ in w:
                self.target.index(x)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.images.items()))))

    def apply(self, w: Word) -> Word:
        out = IDENTITY
        for v, s in w:
            out = out * (self.images[v] if s > 0 else self.images[v].inverse())
        return out

    def violations(self) -> list[tuple[str, str]]:
        bad = []
        for e in self.source.edges:
            u, v = self.source.sort(e)
            if not commute(self.target, self.images[u], self.images[v]):
                bad.append((u, v))
        return sorted(bad, key=lambda p: (self.source.index(p[0]), self.source.index(p[1])))

    def to_dict(self) -> dict:
        return {v: str(self.images[v]) for v in self.source.vertices}

    @classmethod
    def from_dict(cls, source: Graph, target: Graph, data: Mapping[str, str]) -> RaagHom:
        images = {}
        for v, text in data.items():
            images[v] = parse_word(text or "", target)
        return cls(source, target, images)

    @classmethod
    def identity(cls, g: Graph) -> RaagHom:
        return cls(g, g, {v: Word.gen(v) for v in g.vertices})


@dataclass(frozen=True)
class InducedAction:
    hom: RaagHom
    base: AmalgamSplitting

    def __post_init__(self):
        if self.hom.target != self.base.ambient:
            raise SplittingError("hom target must be the base splitting's ambient graph")


class Kind(enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class Classification:
    """How an element acts on the tree of an amalgam.

    The element equals ``conjugator * core * conjugator^-1``.  For elliptic
    elements the core lies in the vertex group of ``side`` and so
    ``conjugator A(side)`` is a fixed vertex; for hyperbolic ones the core
    is cyclically reduced with ``translation_length`` syllables.
    """

    kind: Kind
    translation_length: int
    conjugator: Word = field(default=IDENTITY)
    core: Word = field(default=IDENTITY)
    side: int = 1

    @property
    def elliptic(self) -> bool:
        return self.kind is Kind.ELLIPTIC

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind.value,
            "translation_length": self.translation_length,
            "conjugator": str(self.conjugator),
            "core": str(self.core),
        }
        if self.elliptic:
            d["side"] = self.side
        return d


def amalgam_from_separator(g: Graph, lam: Iterable[str], pick: str) -> AmalgamSplitting:
    lam = g.check_subset(lam)
    g.index(pick)
    if pick in lam:
        raise SplittingError(f"pick {pick!r} lies in lambda")
    if not gc.is_separating(g, lam):
        raise SplittingError(f"{g.sort(lam)} does not separate the graph")
    part = gc.component_of(g, lam, pick)
    everything = frozenset(g.vertices)
    return AmalgamSplitting(g, lam, part | lam, (everything - part) | lam)


def syllable_decompose(s: AmalgamSplitting, w: Word) -> list[tuple[int, Word]]:
    """Reduced alternating factorization of ``w``.

    Works on the normal form: letters outside lambda fix the side of the
    current syllable, lambda letters join whatever syllable is open (leading
    ones join the first).  A subword of a reduced word is reduced, so any
    syllable containing a side letter is outside A(lam).  A lone syllable
    inside A(lam) is tagged ``EDGE_GROUP``.
    """
    letters = normal_form(s.ambient, w).letters
    if not letters:
        return []
    sylls: list[tuple[int, list]] = []
    pending: list = []
    for x, e in letters:
        side = s.letter_side(x)
        if side == EDGE_GROUP:
            if sylls:
                sylls[-1][1].append((x, e))
            else:
                pending.append((x, e))
            continue
        if sylls and sylls[-1][0] == side:
            sylls[-1][1].append((x, e))
        else:
            sylls.append((side, pending + [(x, e)]))
            pending = []
    if not sylls:
        return [(EDGE_GROUP, Word(pending))]
    return [(side, Word(ls)) for side, ls in sylls]


def classify(s: AmalgamSplitting, w: Word) -> Classification:
    """Elliptic/hyperbolic dichotomy via cyclic reduction of syllables."""
    g = s.ambient
    current = normal_form(g, w)
    conj = IDENTITY
    sylls = syllable_decompose(s, current)
    budget = len(sylls)
    while len(sylls) >= 2 and sylls[0][0] == sylls[-1][0]:
        if budget <= 0:
            raise RuntimeError(f"cyclic reduction of {w} did not terminate")
        budget -= 1
        first = sylls[0][1]
        conj = normal_form(g, conj * first)
        current = normal_form(g, first.inverse() * current * first)
        sylls = syllable_decompose(s, current)
    if len(sylls) <= 1:
        side = sylls[0][0] if sylls else 1
        return Classification(Kind.ELLIPTIC, 0, conj, current, side if side != EDGE_GROUP else 1)
    return Classification(Kind.HYPERBOLIC, len(sylls), conj, current)


def line_translation(action: LineAction, w: Word) -> int:
    return z_image(action.ambient, action.phi, w)


def check_hom(h: RaagHom) -> bool:
    return not h.violations()


def induced_classify(ia: InducedAction, w: Word) -> Classification:
    return classify(ia.base, ia.hom.apply(w))


def lambda_from_hom(ia: InducedAction) -> frozenset[str]:
    base, hom = ia.base, ia.hom
    return frozenset(
        v for v in hom.source.vertices if in_special_subgroup(base.ambient, base.lam, hom.images[v])
    )


def proper_containment_witness(ia: InducedAction, w: Word) -> bool:
    """True when ``w`` certifies that A(lambda_1) is strictly smaller than the pulled-back edge group.

    ``w`` must map into A(lam_2) while its own normal form leaves lambda_1.
    """
    lam1 = lambda_from_hom(ia)
    maps_in = in_special_subgroup(ia.base.ambient, ia.base.lam, ia.hom.apply(w))
    return maps_in and not in_special_subgroup(ia.hom.source, lam1, w)
