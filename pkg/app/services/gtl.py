"""
The deformed gentle A-infinity algebra of an arc system.

Objects are arcs, morphisms are angles winding counterclockwise around a
puncture (plus arc identities), and higher products count immersed disks
weighted by the punctures they cover. Products take their arguments in
reverse application order, mu(a_k, ..., a_1), as in the usual notation.
"""

import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import ArcMismatch, DecompositionAmbiguity, InvalidInputError
from app.core.status_codes import ErrorMessages
from app.services.coeffring import PuncSeries, SeriesRing
from app.services.disks import DiskEngine
from app.services.surface import HEAD, TAIL, ArcIncidence, Dimer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Angle:
    """A basis morphism: an identity (length 0) or a winding around one puncture."""

    puncture: str
    start: int
    length: int
    valence: int
    source: ArcIncidence
    target: ArcIncidence

    @property
    def is_identity(self) -> bool:
        return self.length == 0

    @property
    def source_arc(self) -> str:
        return self.source.arc

    @property
    def target_arc(self) -> str:
        return self.target.arc

    @property
    def parity(self) -> int:
        return 0 if self.is_identity else int(self.source.end != self.target.end)

    @property
    def reduced_parity(self) -> int:
        return (self.parity + 1) % 2

    @property
    def full_turns(self) -> int:
        return 0 if self.is_identity else self.length // self.valence

    @property
    def corner(self) -> Tuple[str, int, int]:
        return (self.puncture, self.start, self.length)

    @property
    def key(self) -> tuple:
        return (self.is_identity, self.puncture, self.source_arc, self.start, self.length)

    def __lt__(self, other: "Angle") -> bool:
        return self.key < other.key


class GtlMorphism:
    """Linear combination of angles with series coefficients, all between the same two arcs."""

    __slots__ = ("ring", "source", "target", "terms")

    def __init__(self, ring: SeriesRing, source: str, target: str, terms: Optional[Dict[Angle, PuncSeries]] = None):
        self.ring = ring
        self.source = source
        self.target = target
        self.terms = {a: c for a, c in (terms or {}).items() if c}

    @property
    def parity(self) -> Optional[int]:
        parities = {a.parity for a in self.terms}
        if len(parities) > 1:
            raise ArcMismatch(f"mixed parities in {self}")
        return parities.pop() if parities else None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: "GtlMorphism") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(self.signature(), other.signature()))

    def signature(self) -> str:
        return f"{self.source}->{self.target}"

    def __add__(self, other: "GtlMorphism") -> "GtlMorphism":
        self._check(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms[a] + c if a in terms else c
        return GtlMorphism(self.ring, self.source, self.target, terms)

    def __neg__(self) -> "GtlMorphism":
        return GtlMorphism(self.ring, self.source, self.target, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "GtlMorphism") -> "GtlMorphism":
        return self + (-other)

    def scale(self, factor) -> "GtlMorphism":
        return GtlMorphism(self.ring, self.source, self.target, {a: c * factor for a, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, GtlMorphism):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"GtlMorphism({self.signature()}: {len(self.terms)} terms)"


def _is_simple_coefficient(coeff: PuncSeries) -> bool:
    return len(coeff.terms()) == 1


class GentleAlgebra:
    """
    Product engine of Gtl_q over a fixed arc system.

    Args:
        dimer (Dimer): validated arc system
        truncation (int): total degree kept in the deformation base
        area_cap (int): largest disk area searched
    """

    def __init__(self, dimer: Dimer, truncation: int, area_cap: int):
        self.dimer = dimer
        self.ring = SeriesRing(dimer.punctures, truncation)
        self.area_cap = area_cap
        self.disks = DiskEngine(dimer)
        self.complete = True
        self._cache: Dict[Tuple[Angle, ...], Dict[Angle, PuncSeries]] = {}

    @property
    def truncation(self) -> int:
        return self.ring.truncation

    # ------------------------------------------------------------------
    # basis

    def angle(self, puncture: str, start: int, length: int) -> Angle:
        val = self.dimer.valence(puncture)
        if length < 1:
            raise InvalidInputError(f"winding angle at {puncture} needs positive length")
        start %= val
        return Angle(
            puncture, start, length, val,
            self.dimer.incidence(puncture, start),
            self.dimer.incidence(puncture, start + length),
        )

    def identity(self, arc: str) -> Angle:
        inc = ArcIncidence(arc, HEAD)
        return Angle("", 0, 0, 0, inc, inc)

    def angle_from(self, source: ArcIncidence, target: ArcIncidence, full_turns: int = 0) -> Angle:
        """The winding from one incidence to another at their common puncture."""
        p, s = self.dimer.position[source]
        q, t = self.dimer.position[target]
        if p != q:
            raise InvalidInputError(f"{source.text()} and {target.text()} are at different punctures")
        val = self.dimer.valence(p)
        step = (t - s) % val
        if step == 0:
            step = val
            full_turns = max(full_turns - 1, 0)
        return self.angle(p, s, step + full_turns * val)

    def full_turn(self, inc: ArcIncidence) -> Angle:
        p, s = self.dimer.position[inc]
        return self.angle(p, s, self.dimer.valence(p))

    def indecomposables(self) -> List[Angle]:
        return [self.angle(p, j, 1) for p in self.dimer.punctures for j in range(self.dimer.valence(p))]

    def angles_from_arc(self, arc: str, max_turns: int) -> List[Angle]:
        """All windings starting at either end of `arc` with fewer than max_turns + 1 full turns."""
        out = []
        for end in (HEAD, TAIL):
            p, s = self.dimer.position[ArcIncidence(arc, end)]
            val = self.dimer.valence(p)
            out.extend(self.angle(p, s, m) for m in range(1, val * (max_turns + 1)))
        return out

    def morphism(self, angle: Angle, coefficient=1) -> GtlMorphism:
        coeff = coefficient if isinstance(coefficient, PuncSeries) else self.ring.constant(coefficient)
        return GtlMorphism(self.ring, angle.source_arc, angle.target_arc, {angle: coeff})

    def zero(self, source: str, target: str) -> GtlMorphism:
        return GtlMorphism(self.ring, source, target)

    # ------------------------------------------------------------------
    # text

    def angle_text(self, angle: Angle) -> str:
        if angle.is_identity:
            return f"id_{angle.source_arc}"
        names = [self.dimer.angle_name((angle.puncture, angle.start + i)) for i in range(angle.length)]
        if all(names):
            return "".join(reversed(names))
        return f"{angle.puncture}:{angle.start}+{angle.length}"

    def morphism_text(self, morphism: GtlMorphism) -> str:
        if morphism.is_zero():
            return "0"
        pieces = []
        for angle in sorted(morphism.terms):
            coeff = morphism.terms[angle]
            body = self.angle_text(angle)
            if coeff == 1:
                pieces.append(("+", body))
            elif coeff == -1:
                pieces.append(("-", body))
            elif _is_simple_coefficient(coeff):
                text = coeff.text()
                sign = "-" if text.startswith("-") else "+"
                pieces.append((sign, f"{text.lstrip('-')}*{body}"))
            else:
                pieces.append(("+", f"({coeff.text()})*{body}"))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def parse_angle(self, text: str) -> Angle:
        """Parse 'id_<arc>', 'P:s+m' or a word of angle names in composition order."""
        text = text.strip()
        if text.startswith("id_") and text[3:] in self.dimer.arcs:
            return self.identity(text[3:])
        match = re.fullmatch(r"(.+):(\d+)\+(\d+)", text)
        if match and match.group(1) in self.dimer.rotation:
            return self.angle(match.group(1), int(match.group(2)), int(match.group(3)))
        by_name = {name: corner for corner, name in self.dimer.angle_names.items()}
        parts = []
        rest = text
        while rest:
            for name in sorted(by_name, key=len, reverse=True):
                if rest.startswith(name):
                    parts.append(by_name[name])
                    rest = rest[len(name):]
                    break
            else:
                raise InvalidInputError(f"cannot parse angle '{text}'")
        parts.reverse()
        p, s = parts[0]
        angle = self.angle(p, s, len(parts))
        for i, (q, t) in enumerate(parts):
            if q != p or t % angle.valence != (s + i) % angle.valence:
                raise InvalidInputError(f"'{text}' is not a composable word of angles")
        return angle

    # ------------------------------------------------------------------
    # products

    def compose_basis(self, a: Angle, b: Angle) -> Optional[Tuple[Angle, int]]:
        """mu^2 on basis angles: (angle, sign) or None."""
        if b.is_identity:
            return (a, 1) if a.source_arc == b.target_arc else None
        if a.is_identity:
            return (b, (-1) ** b.parity) if a.source_arc == b.target_arc else None
        if a.puncture != b.puncture or b.target != a.source:
            return None
        return self.angle(b.puncture, b.start, b.length + a.length), (-1) ** b.parity

    def compose2(self, a: GtlMorphism, b: GtlMorphism) -> GtlMorphism:
        """
        mu^2(a, b) = (-1)^{|b|} a b, extended bilinearly

        Raises:
            ArcMismatch: when b does not end where a starts
        """
        if b.target != a.source:
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(a.signature(), b.signature()))
        terms: Dict[Angle, PuncSeries] = {}
        for x, cx in a.terms.items():
            for y, cy in b.terms.items():
                result = self.compose_basis(x, y)
                if result is None:
                    continue
                angle, sign = result
                value = cx * cy * sign
                terms[angle] = terms[angle] + value if angle in terms else value
        return GtlMorphism(self.ring, b.source, a.target, terms)

    def _weight(self, disks) -> PuncSeries:
        total = self.ring.zero()
        for disk in disks:
            total = total + self.ring.monomial(dict(disk.covered))
        return total

    def _disks(self, word) -> PuncSeries:
        search = self.disks.find_disks(word, self.area_cap, self.truncation)
        if not search.complete:
            self.complete = False
        return self._weight(search.disks)

    def mu_basis(self, applied: Sequence[Angle]) -> Dict[Angle, PuncSeries]:
        """
        Higher product of basis angles given in application order a_1, ..., a_k (k >= 3)

        Returns:
            Dict[Angle, PuncSeries]: output angles with their disk-count coefficients
        """
        key = tuple(applied)
        if key in self._cache:
            return self._cache[key]
        k = len(applied)
        out: Dict[Angle, PuncSeries] = {}
        if any(a.is_identity for a in applied):
            self._cache[key] = out
            return out

        def add(angle: Angle, coeff: PuncSeries) -> None:
            if coeff:
                out[angle] = out[angle] + coeff if angle in out else coeff

        matches = []
        first, last = applied[0], applied[-1]

        weight = self._disks(tuple(a.corner for a in applied))
        if weight:
            add(self.identity(first.source_arc), weight)
            matches.append(("all-in", weight))

        p, s, m = last.corner
        for j in range(1, m):
            if self.dimer.incidence(p, s + j) != first.source.opposite():
                continue
            head = (p, s, j)
            weight = self._disks(tuple(a.corner for a in applied[:-1]) + (head,))
            if weight:
                add(self.angle(p, s + j, m - j), weight)
                matches.append((f"final-out/{j}", weight))

        p, s, m = first.corner
        for j in range(1, m):
            if self.dimer.incidence(p, s + m - j) != last.target.opposite():
                continue
            tail = (p, s + m - j, j)
            weight = self._disks((tail,) + tuple(a.corner for a in applied[1:]))
            if weight:
                gamma = self.angle(p, s, m - j)
                add(gamma, weight * ((-1) ** gamma.parity))
                matches.append((f"first-out/{j}", weight))

        if self.truncation == 0 and len(matches) > 1:
            names = [label for label, _ in matches]
            raise DecompositionAmbiguity(ErrorMessages.AMBIGUOUS_DISK.format(key, names[0], names[1]))
        self._cache[key] = out
        return out

    def mu(self, *args: GtlMorphism) -> GtlMorphism:
        """
        mu_q^k(a_k, ..., a_1) for k >= 1, multilinear in the morphisms

        Raises:
            ArcMismatch: when consecutive morphisms are not composable
        """
        if not args:
            raise InvalidInputError("use curvature_arc for the zeroth product")
        applied = list(reversed(args))
        for x, y in zip(applied, applied[1:]):
            if x.target != y.source:
                raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(y.signature(), x.signature()))
        source, target = applied[0].source, applied[-1].target
        k = len(applied)
        if k == 1:
            return self.zero(source, target)
        if k == 2:
            return self.compose2(args[0], args[1])
        terms: Dict[Angle, PuncSeries] = {}
        for combo in itertools.product(*(list(m.terms.items()) for m in applied)):
            angles = tuple(a for a, _ in combo)
            coeff = self.ring.one()
            for _, c in combo:
                coeff = coeff * c
            if not coeff:
                continue
            for angle, weight in self.mu_basis(angles).items():
                value = weight * coeff
                terms[angle] = terms[angle] + value if angle in terms else value
        return GtlMorphism(self.ring, source, target, terms)

    def curvature_arc(self, arc: str) -> GtlMorphism:
        """mu^0 of an arc: the full turns around its head and tail weighted by those punctures."""
        a = self.dimer.arcs[arc]
        terms: Dict[Angle, PuncSeries] = {}
        for inc, puncture in ((ArcIncidence(arc, HEAD), a.head), (ArcIncidence(arc, TAIL), a.tail)):
            turn = self.full_turn(inc)
            coeff = self.ring.var(puncture)
            terms[turn] = terms[turn] + coeff if turn in terms else coeff
        return GtlMorphism(self.ring, arc, arc, terms)

    # ------------------------------------------------------------------
    # curved A-infinity relations

    def check_cainf(
        self,
        tuples: Iterable[Sequence[GtlMorphism]],
        mu: Optional[Callable[..., GtlMorphism]] = None,
    ) -> "CainfReport":
        """
        Evaluate the curved A-infinity relation on each tuple (product order)

        Args:
            tuples: morphism tuples a_k, ..., a_1
            mu: product to test; defaults to this engine's mu

        Returns:
            CainfReport: nonzero residuals and the number of tuples checked
        """
        product = mu or self.mu
        report = CainfReport()
        for args in tuples:
            residual = cainf_residual(self, list(args), product)
            report.checked += 1
            if not residual.is_zero():
                report.failures.append((tuple(args), residual))
        report.complete = self.complete
        logger.debug("cA-infinity check: %d tuples, %d failures", report.checked, len(report.failures))
        return report


@dataclass
class CainfReport:
    checked: int = 0
    failures: List[Tuple[tuple, GtlMorphism]] = field(default_factory=list)
    complete: bool = True

    @property
    def passed(self) -> bool:
        return not self.failures


def cainf_residual(algebra: GentleAlgebra, args: List[GtlMorphism], product) -> GtlMorphism:
    """Sum over all nested insertions, including the curvature of every intermediate arc."""
    applied = list(reversed(args))
    k = len(applied)
    source, target = applied[0].source, applied[-1].target
    total = algebra.zero(source, target)
    reduced = []
    for a in applied:
        parity = a.parity
        reduced.append(0 if parity is None else (parity + 1) % 2)
    for i in range(k + 1):
        sign = (-1) ** sum(reduced[:i])
        for n in range(0, k - i + 1):
            outer_arity = k - n + 1
            if outer_arity < 2 or n == 1:
                continue
            if n == 0:
                arc = applied[i - 1].target if i > 0 else source
                inner = algebra.curvature_arc(arc)
            else:
                inner = product(*reversed(applied[i:i + n]))
            if inner.is_zero():
                continue
            outer_applied = applied[:i] + [inner] + applied[i + n:]
            value = product(*reversed(outer_applied))
            total = total + (value if sign > 0 else -value)
    return total
