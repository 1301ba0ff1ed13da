"""
Deformed minimal model of the zigzag category.

Cohomology basis elements are lifted to deformed counterparts, the
deformed codifferential and projection are solved order by order against
the undeformed splitting, and higher products are signed sums over planar
trees whose leaves carry counterparts, whose inner nodes apply the
codifferential after a twisted product and whose root projects back to
cohomology.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from app.core.exceptions import ArcMismatch, DZeroViolated, InvalidInputError, NotInImage, UnsolvableResidual
from app.core.status_codes import ErrorMessages
from app.services.coeffring import Monomial, PuncSeries
from app.services.splitting import Decomposition, HLabel, ZigzagCategory
from app.services.twisted import tw_product
from app.services.zigzag import ElementaryKey

logger = logging.getLogger(__name__)

QVector = Dict[ElementaryKey, PuncSeries]


# ----------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class TreeShape:
    """Rooted planar tree; a node without children is a leaf."""

    children: Tuple["TreeShape", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaves(self) -> int:
        return 1 if self.is_leaf else sum(c.leaves for c in self.children)

    @property
    def internal_nodes(self) -> int:
        """Inner nodes below the root."""
        return sum(c._inner() for c in self.children)

    def _inner(self) -> int:
        return 0 if self.is_leaf else 1 + sum(c._inner() for c in self.children)

    def text(self) -> str:
        if self.is_leaf:
            return "*"
        return "(" + ",".join(c.text() for c in self.children) + ")"


LEAF = TreeShape()


def _compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _trees(n: int) -> Tuple[TreeShape, ...]:
    if n == 1:
        return (LEAF,)
    shapes = []
    splits = sorted(c for parts in range(2, n + 1) for c in _compositions(n, parts))
    for split in splits:
        for children in itertools.product(*(_trees(k) for k in split)):
            shapes.append(TreeShape(tuple(children)))
    return tuple(shapes)


def enumerate_trees(n: int) -> List[TreeShape]:
    """
    All rooted planar trees with n leaves and at least two children per inner node

    Args:
        n (int): number of leaves, at least 2

    Returns:
        List[TreeShape]: ordered by the leaf counts of the subtrees, leftmost first
    """
    if n < 2:
        raise InvalidInputError("trees need at least two leaves")
    return list(_trees(n))


# ----------------------------------------------------------------------
# deformed splitting


class BasisElement(NamedTuple):
    """A cohomology basis element of the hom space from path `first` to path `second`."""

    first: int
    second: int
    label: HLabel

    def text(self) -> str:
        return f"{self.label.text()}[L{self.first}->L{self.second}]"


def _add(target: QVector, source: Mapping[ElementaryKey, PuncSeries], factor=None) -> None:
    for k, v in source.items():
        value = v if factor is None else v * factor
        value = target[k] + value if k in target else value
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class DeformedSplitting:
    """
    Order-by-order deformed counterparts, codifferential and projection

    Every solver step takes the homogeneous part of a residual at one
    monomial, decomposes it with the undeformed splitting and lifts the
    pieces by that monomial.
    """

    def __init__(self, category: ZigzagCategory):
        self.category = category
        self.ring = category.ring
        self._counterparts: Dict[BasisElement, QVector] = {}

    # ------------------------------------------------------------------
    # helpers

    def mu1(self, first: int, second: int, vector: Mapping[ElementaryKey, PuncSeries]) -> QVector:
        c = self.category
        if not vector:
            return {}
        return c.vector(first, second, tw_product(c.morphism(first, second, vector)))

    def _monomial(self, m: Monomial) -> PuncSeries:
        return self.ring.from_terms({m: 1})

    def _lift(self, vector: Mapping[ElementaryKey, Fraction], m: Monomial) -> QVector:
        out = {}
        for k, c in vector.items():
            if Fraction(c).denominator != 1:
                raise UnsolvableResidual(f"non-integral coefficient {c} while lifting at {m}")
            out[k] = self.ring.from_terms({m: int(c)})
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def _parts(vector: QVector, degree: int) -> Dict[Monomial, Dict[ElementaryKey, Fraction]]:
        out: Dict[Monomial, Dict[ElementaryKey, Fraction]] = {}
        for k, series in vector.items():
            for m, c in series.terms().items():
                if sum(m) == degree and c:
                    out.setdefault(m, {})[k] = Fraction(c)
        return out

    @staticmethod
    def _lowest(vector: QVector) -> float:
        return min((s.madic_order() for s in vector.values()), default=float("inf"))

    def _text(self, vector: Mapping[ElementaryKey, object]) -> str:
        a = self.category.algebra
        return " + ".join(f"({c})*{a.angle_text(k.angle)}[{k.source}->{k.target}]" for k, c in sorted(vector.items())[:4])

    # ------------------------------------------------------------------
    # counterparts

    def counterpart(self, element: BasisElement) -> QVector:
        """
        h - eps_h with mu_q^1 vanishing up to the truncation

        Raises:
            DZeroViolated: a residual has a cohomology component
            UnsolvableResidual: a residual has a complement component
        """
        if element in self._counterparts:
            return self._counterparts[element]
        first, second, label = element
        hom = self.category.hom(first, second)
        x: QVector = {k: self.ring.constant(int(v)) for k, v in hom.h_vector(label).items()}
        for order in range(0, self.category.truncation + 1):
            residual = self.mu1(first, second, x)
            if self._lowest(residual) < order:
                raise UnsolvableResidual(ErrorMessages.UNSOLVABLE.format(order, self._text(residual)))
            for m, part in sorted(self._parts(residual, order).items()):
                decomposition = hom.split(part)
                if any(decomposition.h.values()):
                    raise DZeroViolated(order, self._text(part))
                if any(decomposition.r.values()):
                    raise UnsolvableResidual(ErrorMessages.UNSOLVABLE.format(order, self._text(decomposition.r)))
                _add(x, self._lift(decomposition.r_prime, m), -1)
        if self.mu1(first, second, x):
            raise UnsolvableResidual(ErrorMessages.UNSOLVABLE.format(self.category.truncation, "final check"))
        logger.debug("counterpart of %s has %d terms", element.text(), len(x))
        self._counterparts[element] = x
        return x

    # ------------------------------------------------------------------
    # decomposition

    def decompose(self, first: int, second: int, x: Mapping[ElementaryKey, PuncSeries]) -> "DeformedDecomposition":
        """x = sum_h c_h (h - eps_h) + mu_q^1(r') + r with series coefficients."""
        hom = self.category.hom(first, second)
        out = DeformedDecomposition()
        for order in range(0, self.category.truncation + 1):
            residual = dict(x)
            _add(residual, self.recompose(first, second, out), -1)
            if self._lowest(residual) < order:
                raise UnsolvableResidual(ErrorMessages.UNSOLVABLE.format(order, self._text(residual)))
            for m, part in sorted(self._parts(residual, order).items()):
                d: Decomposition = hom.split(part)
                mono = self._monomial(m)
                for label, c in d.h.items():
                    if Fraction(c).denominator != 1:
                        raise UnsolvableResidual(f"non-integral cohomology coefficient {c}")
                    value = mono * int(c)
                    out.h[label] = out.h[label] + value if label in out.h else value
                _add(out.r_prime, self._lift(d.r_prime, m))
                _add(out.r, self._lift(d.r, m))
        out.h = {k: v for k, v in out.h.items() if v}
        residual = dict(x)
        _add(residual, self.recompose(first, second, out), -1)
        if residual:
            raise UnsolvableResidual(ErrorMessages.UNSOLVABLE.format(self.category.truncation, self._text(residual)))
        return out

    def recompose(self, first: int, second: int, d: "DeformedDecomposition") -> QVector:
        total: QVector = {}
        for label, c in d.h.items():
            _add(total, self.counterpart(BasisElement(first, second, label)), c)
        _add(total, self.mu1(first, second, d.r_prime))
        _add(total, d.r)
        return total

    def codifferential(self, first: int, second: int, x: Mapping[ElementaryKey, PuncSeries]) -> QVector:
        """
        The unique r in B(x)R with mu_q^1(r) = x

        Raises:
            NotInImage: x has a cohomology or complement component
        """
        d = self.decompose(first, second, x)
        if d.h or d.r:
            raise NotInImage(ErrorMessages.NOT_IN_IMAGE.format(
                ", ".join(l.text() for l in d.h) or self._text(d.r)
            ))
        return d.r_prime

    def projection(self, first: int, second: int, x: Mapping[ElementaryKey, PuncSeries]) -> QVector:
        """The deformed cohomology component of x."""
        d = self.decompose(first, second, x)
        total: QVector = {}
        for label, c in d.h.items():
            _add(total, self.counterpart(BasisElement(first, second, label)), c)
        return total

    def cohomology_coefficients(self, first: int, second: int, x: Mapping[ElementaryKey, PuncSeries]) -> Dict[HLabel, PuncSeries]:
        return self.decompose(first, second, x).h


@dataclass
class DeformedDecomposition:
    h: Dict[HLabel, PuncSeries] = field(default_factory=dict)
    r_prime: QVector = field(default_factory=dict)
    r: QVector = field(default_factory=dict)


# ----------------------------------------------------------------------
# minimal products


@dataclass
class ProductResult:
    first: int
    second: int
    values: Dict[HLabel, PuncSeries] = field(default_factory=dict)
    complete: bool = True

    def text(self) -> str:
        if not self.values:
            return "0"
        return " + ".join(f"({c.text()})*{label.text()}" for label, c in sorted(self.values.items()))


def _check_chain(inputs: Sequence[BasisElement]) -> None:
    for later, earlier in zip(inputs, inputs[1:]):
        if later.first != earlier.second:
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(later.text(), earlier.text()))


class _TreeEvaluator:
    def __init__(self, splitting: DeformedSplitting, inputs: Sequence[BasisElement]):
        self.splitting = splitting
        self.category = splitting.category
        self.inputs = list(inputs)
        self._memo: Dict[Tuple[TreeShape, int], QVector] = {}

    def ends(self, lo: int, hi: int) -> Tuple[int, int]:
        return self.inputs[hi - 1].first, self.inputs[lo].second

    def product(self, shape: TreeShape, lo: int) -> Tuple[QVector, int, int]:
        args = []
        pos = lo
        for child in shape.children:
            value = self.value(child, pos)
            args.append((value,) + self.ends(pos, pos + child.leaves))
            pos += child.leaves
        morphisms = [self.category.morphism(f, s, v) for v, f, s in args]
        first, second = self.ends(lo, pos)
        return self.category.vector(first, second, tw_product(*morphisms)), first, second

    def value(self, shape: TreeShape, lo: int) -> QVector:
        if shape.is_leaf:
            return self.splitting.counterpart(self.inputs[lo])
        key = (shape, lo)
        if key not in self._memo:
            product, first, second = self.product(shape, lo)
            self._memo[key] = self.splitting.decompose(first, second, product).r_prime
        return self._memo[key]


def unit_product(ring, inputs: Sequence[BasisElement]) -> Optional[ProductResult]:
    """
    Strict unit: mu^2(h, id) = h, mu^2(id, h) = (-1)^|h| h, and longer products with an identity vanish

    Returns None when no input is an identity.
    """
    identities = [e.label.kind == "id" for e in inputs]
    if not any(identities):
        return None
    result = ProductResult(inputs[-1].first, inputs[0].second)
    if len(inputs) == 2:
        later, earlier = inputs
        if identities[1]:
            result.values[later.label] = ring.one()
        else:
            result.values[earlier.label] = ring.constant((-1) ** earlier.label.parity)
    return result


def minimal_product(splitting: DeformedSplitting, inputs: Sequence[BasisElement]) -> ProductResult:
    """
    Higher product of cohomology basis elements in the deformed minimal model

    Args:
        splitting (DeformedSplitting): solver over the zigzag category
        inputs (Sequence[BasisElement]): h_k, ..., h_1 with h_1 applied first

    Returns:
        ProductResult: cohomology coefficients of the hom space from the source
        of h_1 to the target of h_k, with the completeness of the disk searches
    """
    k = len(inputs)
    if k < 2:
        raise InvalidInputError("minimal products need at least two inputs")
    _check_chain(inputs)
    category = splitting.category
    ring = splitting.ring
    first, second = inputs[-1].first, inputs[0].second
    result = ProductResult(first, second)

    unit = unit_product(ring, inputs)
    if unit is not None:
        unit.complete = category.complete
        return unit

    evaluator = _TreeEvaluator(splitting, inputs)
    total: Dict[HLabel, PuncSeries] = {}
    for shape in enumerate_trees(k):
        product, f, s = evaluator.product(shape, 0)
        coefficients = splitting.cohomology_coefficients(f, s, product)
        sign = (-1) ** shape.internal_nodes
        for label, c in coefficients.items():
            value = c * sign
            total[label] = total[label] + value if label in total else value
        logger.debug("tree %s contributes %d cohomology terms", shape.text(), len(coefficients))
    result.values = {label: c for label, c in total.items() if c}
    result.complete = category.complete
    return result
