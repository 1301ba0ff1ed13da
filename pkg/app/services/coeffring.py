"""
Truncated deformation base: integer polynomials in one variable per
puncture, cut off above a total degree.
"""

import logging
from typing import Dict, Iterable, Tuple, Union

from sympy import Symbol
from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from app.core.exceptions import TruncationMismatch
from app.core.status_codes import ErrorMessages

logger = logging.getLogger(__name__)

INFINITY = float("inf")

Monomial = Tuple[int, ...]


class SeriesRing:
    """The truncated ring Z[q_p : p in punctures] / (total degree > N)."""

    def __init__(self, punctures: Iterable[str], truncation: int):
        self.punctures = tuple(str(p) for p in punctures)
        self.truncation = int(truncation)
        self.index = {p: i for i, p in enumerate(self.punctures)}
        self.poly_ring = PolyRing([Symbol(p) for p in self.punctures], ZZ, lex)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesRing)
            and self.punctures == other.punctures
            and self.truncation == other.truncation
        )

    def __hash__(self) -> int:
        return hash((self.punctures, self.truncation))

    def __repr__(self) -> str:
        return f"SeriesRing({', '.join(self.punctures)}; N={self.truncation})"

    def _wrap(self, poly) -> "PuncSeries":
        bound = self.truncation
        if any(sum(m) > bound for m in poly.keys()):
            poly = self.poly_ring.from_dict({m: c for m, c in poly.items() if sum(m) <= bound})
        return PuncSeries(self, poly)

    def zero(self) -> "PuncSeries":
        return PuncSeries(self, self.poly_ring.zero)

    def one(self) -> "PuncSeries":
        return self.constant(1)

    def constant(self, c: int) -> "PuncSeries":
        return PuncSeries(self, self.poly_ring.ground_new(ZZ(int(c))))

    def var(self, puncture: str) -> "PuncSeries":
        return self.monomial({puncture: 1})

    def monomial(self, exponents: Dict[str, int], coefficient: int = 1) -> "PuncSeries":
        exps = [0] * len(self.punctures)
        for p, e in exponents.items():
            exps[self.index[str(p)]] += int(e)
        return self.from_terms({tuple(exps): coefficient})

    def from_terms(self, terms: Dict[Monomial, int]) -> "PuncSeries":
        clean = {tuple(m): ZZ(int(c)) for m, c in terms.items() if c}
        return self._wrap(self.poly_ring.from_dict(clean) if clean else self.poly_ring.zero)

    def truncated(self, n: int) -> "SeriesRing":
        return SeriesRing(self.punctures, n)


class PuncSeries:
    """An element of a SeriesRing; immutable."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: SeriesRing, poly):
        self.ring = ring
        self.poly = poly

    def _coerce(self, other) -> "PuncSeries":
        if isinstance(other, PuncSeries):
            if other.ring != self.ring:
                raise TruncationMismatch(ErrorMessages.TRUNCATION_MISMATCH.format(self.ring, other.ring))
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PuncSeries(self.ring, self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PuncSeries(self.ring, self.poly - other.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PuncSeries(self.ring, -self.poly)

    def __mul__(self, other):
        if isinstance(other, int):
            return PuncSeries(self.ring, self.poly * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring._wrap(self.poly * other.poly)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.poly == self.ring.poly_ring.ground_new(ZZ(other))
        if not isinstance(other, PuncSeries):
            return NotImplemented
        return self.ring == other.ring and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.ring, tuple(sorted(self.poly.items()))))

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __repr__(self) -> str:
        return f"PuncSeries({self.text()})"

    def __str__(self) -> str:
        return self.text()

    def is_zero(self) -> bool:
        return not self.poly

    def terms(self) -> Dict[Monomial, int]:
        return {m: int(c) for m, c in self.poly.items()}

    def constant_term(self) -> int:
        return int(self.poly.get((0,) * len(self.ring.punctures), 0))

    def madic_order(self) -> Union[int, float]:
        """Lowest total degree of a nonzero term; infinity for zero."""
        if not self.poly:
            return INFINITY
        return min(sum(m) for m in self.poly.keys())

    def part(self, k: int) -> "PuncSeries":
        """Homogeneous part of total degree k."""
        return self.ring.from_terms({m: c for m, c in self.terms().items() if sum(m) == k})

    def truncate(self, n: int) -> "PuncSeries":
        target = self.ring.truncated(n)
        return target.from_terms({m: c for m, c in self.terms().items() if sum(m) <= n})

    def at_zero(self) -> "PuncSeries":
        """Set every puncture variable to 0."""
        return self.ring.constant(self.constant_term())

    def text(self) -> str:
        """Canonical rendering, terms ordered lexicographically on multidegree."""
        if not self.poly:
            return "0"
        pieces = []
        for monom in sorted(self.poly.keys()):
            coeff = int(self.poly[monom])
            factors = []
            for name, e in zip(self.ring.punctures, monom):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                word = str(abs(coeff))
            elif abs(coeff) == 1:
                word = body
            else:
                word = f"{abs(coeff)}*{body}"
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, word))
        first_sign, first_word = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_word
        for sign, word in pieces[1:]:
            out += f" {sign} {word}"
        return out
