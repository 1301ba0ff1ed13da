"""
Additive and twisted completions of the deformed gentle algebra.

A twisted complex is a list of shifted arcs with an odd differential whose
constant part is strictly upper triangular; entries with coefficients in
the maximal ideal may sit anywhere. Products insert the differentials of
the complexes involved in every possible way.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.core.exceptions import (
    AngleTooLong, ArcMismatch, CyclicDelta, IdentityAngle, InvalidInputError, ShiftInconsistent
)
from app.core.status_codes import ErrorMessages
from app.services.coeffring import PuncSeries
from app.services.gtl import Angle, GentleAlgebra, GtlMorphism

logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


@dataclass(frozen=True)
class Summand:
    arc: str
    shift: int
    label: str = ""


class TwistedComplex:
    """Shifted arcs with a differential; entry (i, j) maps summand j to summand i."""

    def __init__(
        self,
        algebra: GentleAlgebra,
        summands: Sequence[Summand],
        delta: Optional[Mapping[Entry, GtlMorphism]] = None,
        name: str = "X",
    ):
        self.algebra = algebra
        self.summands = tuple(Summand(s.arc, s.shift % 2, s.label) for s in summands)
        self.name = name
        self.delta: Dict[Entry, GtlMorphism] = {}
        for (i, j), m in (delta or {}).items():
            if m.is_zero():
                continue
            if m.source != self.summands[j].arc or m.target != self.summands[i].arc:
                raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(m.signature(), f"entry ({i}, {j})"))
            self.delta[(i, j)] = m
        self._validate()

    def __len__(self) -> int:
        return len(self.summands)

    def __repr__(self) -> str:
        return f"TwistedComplex({self.name}: {len(self)} summands, {len(self.delta)} entries)"

    def _validate(self) -> None:
        for (i, j), m in self.delta.items():
            for angle, coeff in m.terms.items():
                if (angle.parity + self.summands[i].shift - self.summands[j].shift) % 2 != 1:
                    raise ShiftInconsistent(ErrorMessages.SHIFT_INCONSISTENT.format((i, j)))
                if i >= j and coeff.constant_term():
                    raise CyclicDelta(ErrorMessages.CYCLIC_DELTA.format((i, j)))

    def entry(self, i: int, j: int) -> GtlMorphism:
        return self.delta.get((i, j), self.algebra.zero(self.summands[j].arc, self.summands[i].arc))

    def leading(self) -> Dict[Entry, GtlMorphism]:
        """Constant part of the differential."""
        out = {}
        for key, m in self.delta.items():
            terms = {a: c.at_zero() for a, c in m.terms.items()}
            part = GtlMorphism(m.ring, m.source, m.target, terms)
            if part:
                out[key] = part
        return out

    def infinitesimal(self) -> Dict[Entry, GtlMorphism]:
        out = {}
        for key, m in self.delta.items():
            terms = {a: c - c.at_zero() for a, c in m.terms.items()}
            part = GtlMorphism(m.ring, m.source, m.target, terms)
            if part:
                out[key] = part
        return out

    def with_delta(self, delta: Mapping[Entry, GtlMorphism], name: Optional[str] = None) -> "TwistedComplex":
        return TwistedComplex(self.algebra, self.summands, delta, name or self.name)

    def identity(self) -> "TwMorphism":
        entries = {
            (i, i): self.algebra.morphism(self.algebra.identity(s.arc))
            for i, s in enumerate(self.summands)
        }
        return TwMorphism(self, self, entries)

    def degree(self, i: int, j: int, angle: Angle) -> int:
        """Degree of `angle` placed from summand j to summand i of this complex."""
        return (angle.parity + self.summands[i].shift - self.summands[j].shift) % 2


class TwMorphism:
    """Matrix of gentle morphisms; entry (i, j) maps source summand j to target summand i."""

    def __init__(self, source: TwistedComplex, target: TwistedComplex, entries: Optional[Mapping[Entry, GtlMorphism]] = None):
        self.source = source
        self.target = target
        self.entries: Dict[Entry, GtlMorphism] = {}
        for (i, j), m in (entries or {}).items():
            if m.is_zero():
                continue
            if m.source != source.summands[j].arc or m.target != target.summands[i].arc:
                raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(m.signature(), f"entry ({i}, {j})"))
            self.entries[(i, j)] = m

    @property
    def algebra(self) -> GentleAlgebra:
        return self.source.algebra

    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, i: int, j: int) -> GtlMorphism:
        return self.entries.get(
            (i, j), self.algebra.zero(self.source.summands[j].arc, self.target.summands[i].arc)
        )

    def _check(self, other: "TwMorphism") -> None:
        if self.source is not other.source or self.target is not other.target:
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(self.source.name, other.source.name))

    def __add__(self, other: "TwMorphism") -> "TwMorphism":
        self._check(other)
        entries = dict(self.entries)
        for key, m in other.entries.items():
            entries[key] = entries[key] + m if key in entries else m
        return TwMorphism(self.source, self.target, entries)

    def __neg__(self) -> "TwMorphism":
        return TwMorphism(self.source, self.target, {k: -m for k, m in self.entries.items()})

    def __sub__(self, other: "TwMorphism") -> "TwMorphism":
        return self + (-other)

    def scale(self, factor) -> "TwMorphism":
        return TwMorphism(self.source, self.target, {k: m.scale(factor) for k, m in self.entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwMorphism):
            return NotImplemented
        return (self - other).is_zero() if self.source is other.source and self.target is other.target \
            else (self.is_zero() and other.is_zero())

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, hash(m)) for k, m in self.entries.items())))

    def degree(self) -> Optional[int]:
        degrees = {
            (a.parity + self.target.summands[i].shift - self.source.summands[j].shift) % 2
            for (i, j), m in self.entries.items() for a in m.terms
        }
        if len(degrees) > 1:
            raise ArcMismatch(f"mixed degrees in morphism {self.source.name} -> {self.target.name}")
        return degrees.pop() if degrees else None

    def terms(self) -> Iterable[Tuple[Entry, Angle, PuncSeries]]:
        for key in sorted(self.entries):
            m = self.entries[key]
            for angle in sorted(m.terms):
                yield key, angle, m.terms[angle]

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for (i, j) in sorted(self.entries):
            parts.append(f"[{i}<-{j}] {self.algebra.morphism_text(self.entries[(i, j)])}")
        return "; ".join(parts)

    def __repr__(self) -> str:
        return f"TwMorphism({self.source.name}->{self.target.name}: {self.text()})"


def elementary(source: TwistedComplex, target: TwistedComplex, row: int, col: int, angle: Angle, coefficient=1) -> TwMorphism:
    """A single angle from summand `col` of source to summand `row` of target."""
    return TwMorphism(source, target, {(row, col): source.algebra.morphism(angle, coefficient)})


# ----------------------------------------------------------------------
# products


def _expand(m: Mapping[Entry, GtlMorphism]) -> Dict[int, List[Tuple[int, Angle, PuncSeries]]]:
    by_col: Dict[int, List[Tuple[int, Angle, PuncSeries]]] = {}
    for (i, j) in sorted(m):
        for angle in sorted(m[(i, j)].terms):
            by_col.setdefault(j, []).append((i, angle, m[(i, j)].terms[angle]))
    return by_col


def _viable(seq: List[Tuple[Angle, int]], guaranteed: int) -> bool:
    """Necessary conditions for a nonzero higher product of the finished sequence."""
    if guaranteed < 3:
        return True
    for (a, _), (b, _) in zip(seq, seq[1:]):
        if a.is_identity or b.is_identity or a.target.opposite() != b.source:
            return False
    return not seq[0][0].is_identity


class _InsertionProduct:
    """Depth-first expansion of a twisted product into additive products of basis angles."""

    def __init__(self, algebra: GentleAlgebra, complexes: List[TwistedComplex], inputs: List[TwMorphism], with_delta: bool, delta_of=None):
        self.algebra = algebra
        self.ring = algebra.ring
        self.complexes = complexes
        self.inputs = [_expand(a.entries) for a in inputs]
        self.k = len(inputs)
        pick = delta_of or (lambda X: X.delta)
        self.deltas = [_expand(pick(X)) if with_delta else {} for X in complexes]
        self.result: Dict[Entry, Dict[Angle, PuncSeries]] = {}
        self.sequences = 0

    def run(self) -> Dict[Entry, Dict[Angle, PuncSeries]]:
        for start in range(len(self.complexes[0].summands)):
            self._visit(0, start, start, [], self.ring.one())
        return self.result

    def _visit(self, slot: int, summand: int, start: int, seq, coeff: PuncSeries) -> None:
        if slot == self.k and len(seq) >= 2:
            self._record(summand, start, seq, coeff)
        shift = self.complexes[slot].summands[summand].shift
        for row, angle, c in self.deltas[slot].get(summand, ()):
            value = coeff * c
            if not value:
                continue
            extended = seq + [(angle, shift)]
            if _viable(extended, len(extended) + self.k - slot):
                self._visit(slot, row, start, extended, value)
        if slot < self.k:
            for row, angle, c in self.inputs[slot].get(summand, ()):
                value = coeff * c
                if not value:
                    continue
                extended = seq + [(angle, shift)]
                if _viable(extended, len(extended) + self.k - slot - 1):
                    self._visit(slot + 1, row, start, extended, value)

    def _record(self, row: int, col: int, seq, coeff: PuncSeries) -> None:
        self.sequences += 1
        first_shift = seq[0][1]
        exponent = sum((a.parity + 1) * (s - first_shift) for a, s in seq) % 2
        sign = -1 if exponent else 1
        angles = [a for a, _ in seq]
        if len(angles) == 2:
            composed = self.algebra.compose_basis(angles[1], angles[0])
            outputs = {} if composed is None else {composed[0]: self.ring.constant(composed[1])}
        else:
            outputs = self.algebra.mu_basis(angles)
        if not outputs:
            return
        bucket = self.result.setdefault((row, col), {})
        for angle, weight in outputs.items():
            value = weight * coeff * sign
            bucket[angle] = bucket[angle] + value if angle in bucket else value


def _assemble(source: TwistedComplex, target: TwistedComplex, raw: Dict[Entry, Dict[Angle, PuncSeries]]) -> TwMorphism:
    algebra = source.algebra
    entries = {}
    for (i, j), terms in raw.items():
        m = GtlMorphism(algebra.ring, source.summands[j].arc, target.summands[i].arc, terms)
        if m:
            entries[(i, j)] = m
    return TwMorphism(source, target, entries)


def _chain(args: Sequence[TwMorphism]) -> Tuple[List[TwMorphism], List[TwistedComplex]]:
    applied = list(reversed(args))
    for x, y in zip(applied, applied[1:]):
        if x.target is not y.source:
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(y.source.name, x.target.name))
    complexes = [applied[0].source] + [a.target for a in applied]
    return applied, complexes


def add_product(*args: TwMorphism) -> TwMorphism:
    """
    mu^k in the additive completion: entrywise products with the shift sign

    Args:
        *args: TwMorphisms a_k, ..., a_1

    Returns:
        TwMorphism: from the source of a_1 to the target of a_k
    """
    applied, complexes = _chain(args)
    if len(applied) < 2:
        return TwMorphism(complexes[0], complexes[-1])
    engine = _InsertionProduct(applied[0].algebra, complexes, applied, with_delta=False)
    return _assemble(complexes[0], complexes[-1], engine.run())


def tw_product(*args: TwMorphism) -> TwMorphism:
    """
    mu^k in the twisted completion: all insertions of the differentials

    Args:
        *args: TwMorphisms a_k, ..., a_1 (k >= 1)

    Returns:
        TwMorphism: from the source of a_1 to the target of a_k; completeness is
        recorded on the algebra
    """
    applied, complexes = _chain(args)
    algebra = applied[0].algebra
    engine = _InsertionProduct(algebra, complexes, applied, with_delta=True)
    raw = engine.run()
    logger.debug("twisted product of arity %d expanded %d sequences", len(applied), engine.sequences)
    return _assemble(complexes[0], complexes[-1], raw)


def total_curvature(X: TwistedComplex) -> TwMorphism:
    """Sum of mu^k(delta, ..., delta) for k >= 0, including the curvature of every summand."""
    algebra = X.algebra
    engine = _InsertionProduct(algebra, [X], [], with_delta=True)
    raw = engine.run()
    for i, s in enumerate(X.summands):
        bucket = raw.setdefault((i, i), {})
        for angle, coeff in algebra.curvature_arc(s.arc).terms.items():
            bucket[angle] = bucket[angle] + coeff if angle in bucket else coeff
    return _assemble(X, X, raw)


def maurer_cartan(X: TwistedComplex) -> TwMorphism:
    """Undeformed Maurer-Cartan expression of the constant part of the differential."""
    algebra = X.algebra
    engine = _InsertionProduct(algebra, [X], [], with_delta=True, delta_of=lambda Y: Y.leading())
    raw = engine.run()
    constant = {key: {a: c.at_zero() for a, c in terms.items()} for key, terms in raw.items()}
    return _assemble(X, X, constant)


# ----------------------------------------------------------------------
# bands and uncurving


@dataclass(frozen=True)
class BandSegment:
    """Arc at one position of a closed curve and the angle joining it to the next position."""

    arc: str
    angle: Angle
    scalar: int = 1


def build_band(
    algebra: GentleAlgebra,
    segments: Sequence[BandSegment],
    shifts: Optional[Sequence[int]] = None,
    name: str = "band",
) -> TwistedComplex:
    """
    Stitch a closed curve into a twisted complex

    Args:
        algebra (GentleAlgebra): ambient algebra
        segments (Sequence[BandSegment]): cyclic list of arcs with connecting angles
        shifts (Optional[Sequence[int]]): explicit shifts per position, computed when omitted
        name (str): complex name

    Returns:
        TwistedComplex: summands ordered so that the differential is upper triangular

    Raises:
        IdentityAngle, InvalidInputError, ShiftInconsistent, CyclicDelta
    """
    n = len(segments)
    if n == 0:
        raise InvalidInputError("a band needs at least one segment")
    edges = []
    for i, seg in enumerate(segments):
        nxt = (i + 1) % n
        if seg.angle.is_identity:
            raise IdentityAngle(ErrorMessages.IDENTITY_ANGLE.format(algebra.angle_text(seg.angle)))
        here, there = seg.arc, segments[nxt].arc
        if seg.angle.source_arc == here and seg.angle.target_arc == there:
            edges.append((i, nxt, seg))
        elif seg.angle.source_arc == there and seg.angle.target_arc == here:
            edges.append((nxt, i, seg))
        else:
            raise InvalidInputError(
                f"angle {algebra.angle_text(seg.angle)} does not join {here} and {there}"
            )

    if shifts is None:
        values = [0] * n
        for i in range(n - 1):
            src, tgt, seg = edges[i]
            if src == i:
                values[tgt] = (values[src] + 1 + seg.angle.parity) % 2
            else:
                values[src] = (values[tgt] + 1 + seg.angle.parity) % 2
    else:
        values = [s % 2 for s in shifts]
    for src, tgt, seg in edges:
        if (values[tgt] - values[src] - 1 - seg.angle.parity) % 2:
            raise ShiftInconsistent(ErrorMessages.SHIFT_INCONSISTENT.format((tgt, src)))

    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((tgt, src) for src, tgt, _ in edges)
    sources = {src for src, _, _ in edges}
    try:
        order = list(nx.lexicographical_topological_sort(graph, key=lambda v: (v in sources, v)))
    except nx.NetworkXUnfeasible:
        raise CyclicDelta(ErrorMessages.CYCLIC_DELTA.format(name))
    position = {v: k for k, v in enumerate(order)}

    summands = [Summand(segments[v].arc, values[v], f"{segments[v].arc}#{v}") for v in order]
    delta: Dict[Entry, GtlMorphism] = {}
    for src, tgt, seg in edges:
        key = (position[tgt], position[src])
        m = algebra.morphism(seg.angle, seg.scalar)
        delta[key] = delta[key] + m if key in delta else m
    logger.debug("built band %s with order %s", name, order)
    return TwistedComplex(algebra, summands, delta, name)


def complementary_angle(algebra: GentleAlgebra, angle: Angle) -> Angle:
    """The angle completing `angle` to a full turn around its puncture."""
    if angle.is_identity:
        raise IdentityAngle(ErrorMessages.IDENTITY_ANGLE.format(algebra.angle_text(angle)))
    if angle.length >= angle.valence:
        raise AngleTooLong(ErrorMessages.ANGLE_TOO_LONG.format(algebra.angle_text(angle)))
    return algebra.angle(angle.puncture, angle.start + angle.length, angle.valence - angle.length)


def uncurve_complementary(
    X: TwistedComplex,
    parameters: Optional[Mapping[str, PuncSeries]] = None,
    name: Optional[str] = None,
) -> TwistedComplex:
    """
    Insert complementary angles at transposed positions

    Every constant term c * alpha of the differential at (i, j) contributes
    c * r_p * alpha' at (j, i), where alpha' completes alpha to a full turn
    around p and r_p defaults to the puncture variable q_p.

    Raises:
        AngleTooLong, IdentityAngle
    """
    algebra = X.algebra
    r = {p: (parameters or {}).get(p, algebra.ring.var(p)) for p in algebra.dimer.punctures}
    delta = dict(X.delta)
    for (i, j), m in X.leading().items():
        for angle, coeff in m.terms.items():
            prime = complementary_angle(algebra, angle)
            c = coeff.constant_term()
            if c not in (1, -1):
                raise InvalidInputError("complementary angles need unit transition scalars")
            extra = algebra.morphism(prime, r[angle.puncture] * c)
            delta[(j, i)] = delta[(j, i)] + extra if (j, i) in delta else extra
    return X.with_delta(delta, name or f"{X.name}_q")
