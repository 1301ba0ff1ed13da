"""
The zigzag category and the homological splitting of its hom spaces.

Hom spaces are windowed: the elementary basis E_N holds the angles of at
most N full turns between positions of two paths. Every hom space is
split as H + I + R, where R is spanned by the complement roles of the
situations, I = mu^1(R) and H by the cohomology basis elements. A single
winding-zero elementary morphism is split along its row of the standard
splitting; everything else by exact rational elimination over the
columns [H | mu^1(R_N) | R_{N+1}].
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from app.core.exceptions import UnclassifiedTerm
from app.core.status_codes import ErrorMessages
from app.services.coeffring import PuncSeries
from app.services.gtl import GentleAlgebra
from app.services.surface import Dimer
from app.services.twisted import TwistedComplex, TwMorphism, elementary, tw_product
from app.services.zigzag import (
    ElementaryKey, Role, Situation, SituationTable, ZigzagPath, build_zigzag, enumerate_zigzags,
    intersections, summand_positions
)

logger = logging.getLogger(__name__)

Vector = Dict[ElementaryKey, Fraction]

COMPLEMENT_ROLES = {
    "A": {"beta", "gamma beta"},
    "B": {"turn tail", "turn head", "id", "alpha3", "alpha1"},
    "C": {"beta'", "beta", "alpha1 beta'", "beta alpha3"},
    "D": {"alpha'", "turn source", "id"},
}

# winding-zero roles equal to mu^1 of a complement role up to H and R terms;
# None marks rows without an image part
SPLIT_ROWS = {
    "A": {"beta alpha": "beta", "gamma beta alpha": "gamma beta"},
    "B": {"alpha2 alpha1": "alpha1", "alpha3 alpha4": "alpha3", "alpha2": "id", "alpha4": None},
    "C": {"beta' alpha2": "beta'", "alpha4 beta": "beta", "id": None},
}


def _qq(value) -> "QQ":
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


class ExactSolver:
    """
    Solves b = sum_k x_k * column_k over the rationals for fixed columns

    The columns are reduced once together with an identity block, so every
    later solve is a sparse matrix-vector product.
    """

    def __init__(self, columns: Sequence[Mapping[Hashable, Fraction]]):
        self.ncols = len(columns)
        keys = sorted({k for column in columns for k, v in column.items() if v})
        self.rows = {k: r for r, k in enumerate(keys)}
        m, n = len(keys), self.ncols
        self.rank = 0
        self.pivots: List[Tuple[int, int]] = []
        self.transform: List[Dict[int, Fraction]] = [{r: Fraction(1)} for r in range(m)]
        if m == 0 or n == 0:
            return
        data = [[QQ(0)] * n for _ in range(m)]
        for c, column in enumerate(columns):
            for k, v in column.items():
                if v:
                    data[self.rows[k]][c] = _qq(v)
        matrix = DomainMatrix(data, (m, n), QQ)
        augmented = matrix.hstack(DomainMatrix.eye(m, QQ))
        reduced, pivots = augmented.rref()
        dense = reduced.to_Matrix()
        self.rank = sum(1 for p in pivots if p < n)
        self.pivots = [(r, pivots[r]) for r in range(self.rank)]
        self.transform = [
            {c: _fraction(dense[r, n + c]) for c in range(m) if dense[r, n + c] != 0}
            for r in range(m)
        ]
        logger.debug("exact solver: %d rows, %d columns, rank %d", m, n, self.rank)

    @property
    def independent(self) -> bool:
        return self.rank == self.ncols

    def solve(self, target: Mapping[Hashable, Fraction]) -> Optional[List[Fraction]]:
        """One solution, or None when the target is outside the column span."""
        b: Dict[int, Fraction] = {}
        for k, v in target.items():
            if not v:
                continue
            if k not in self.rows:
                return None
            b[self.rows[k]] = Fraction(v)
        y = [sum((t[c] * v for c, v in b.items() if c in t), Fraction(0)) for t in self.transform]
        if any(y[r] for r in range(self.rank, len(y))):
            return None
        x = [Fraction(0)] * self.ncols
        for r, col in self.pivots:
            x[col] = y[r]
        return x


class HLabel(NamedTuple):
    """A cohomology basis element: B/C intersections, the co-identity or the identity."""

    kind: str
    first: int = -1
    second: int = -1

    @property
    def parity(self) -> int:
        return 1 if self.kind in ("B", "coid") else 0

    def text(self) -> str:
        if self.kind in ("B", "C"):
            return f"{self.kind}({self.first},{self.second})"
        return self.kind


@dataclass
class Decomposition:
    """x = sum h + mu^1(r_prime) + r."""

    h: Dict[HLabel, Fraction] = field(default_factory=dict)
    r_prime: Vector = field(default_factory=dict)
    r: Vector = field(default_factory=dict)

    @property
    def in_image(self) -> bool:
        return not any(self.h.values()) and not any(self.r.values())


@dataclass
class SplittingReport:
    first: int
    second: int
    winding: int
    dimension: int
    expected: int
    direct: bool
    closed: bool
    missing: int
    repeated: int

    @property
    def passed(self) -> bool:
        return self.direct and self.closed and self.dimension == self.expected \
            and not self.missing and not self.repeated

    def to_dict(self) -> dict:
        return {
            "first": self.first, "second": self.second, "winding": self.winding,
            "dimension": self.dimension, "expected": self.expected, "direct": self.direct,
            "closed": self.closed, "missing": self.missing, "repeated": self.repeated,
        }


def _winding_of(key: ElementaryKey) -> int:
    a = key.angle
    return 0 if a.is_identity else -(-a.length // a.valence)


def _add_into(target: Vector, source: Mapping[ElementaryKey, Fraction], factor=1) -> None:
    for k, v in source.items():
        value = target.get(k, Fraction(0)) + v * factor
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class ZigzagCategory:
    """
    Zigzag complexes of a dimer, undeformed and deformed, with their hom spaces

    Args:
        dimer (Dimer): validated dimer
        truncation (int): truncation N of the deformation base
        winding (int): winding cap W of the splitting windows
        area_cap (int): disk area cap of both gentle algebras
        max_winding (Optional[int]): largest window the solvers may widen to
    """

    def __init__(self, dimer: Dimer, truncation: int, winding: int, area_cap: int, max_winding: Optional[int] = None):
        self.dimer = dimer
        self.winding = winding
        self.max_winding = max_winding if max_winding is not None else winding + truncation + 1
        self.paths = enumerate_zigzags(dimer)
        self.flat = GentleAlgebra(dimer, 0, area_cap)
        self.algebra = GentleAlgebra(dimer, truncation, area_cap)
        self.flat_complexes = {p.index: build_zigzag(self.flat, p) for p in self.paths}
        self.complexes = {p.index: build_zigzag(self.algebra, p, deformed=True) for p in self.paths}
        self.positions = {i: summand_positions(X) for i, X in self.flat_complexes.items()}
        self.path_at = {i: {k: pos for pos, k in table.items()} for i, table in self.positions.items()}
        self._homs: Dict[Tuple[int, int], "HomSpace"] = {}

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def truncation(self) -> int:
        return self.algebra.truncation

    @property
    def complete(self) -> bool:
        return self.flat.complete and self.algebra.complete

    def path(self, index: int) -> ZigzagPath:
        return self.paths[index]

    def hom(self, first: int, second: int) -> "HomSpace":
        key = (first, second)
        if key not in self._homs:
            self._homs[key] = HomSpace(self, self.paths[first], self.paths[second], self.winding)
        return self._homs[key]

    # ------------------------------------------------------------------
    # conversions between key vectors and twisted morphisms

    def morphism(self, first: int, second: int, vector: Mapping[ElementaryKey, object], deformed: bool = True) -> TwMorphism:
        """Twisted morphism from path `first` to path `second`; coefficients int, Fraction or series."""
        complexes = self.complexes if deformed else self.flat_complexes
        algebra = self.algebra if deformed else self.flat
        source, target = complexes[first], complexes[second]
        out = TwMorphism(source, target)
        for key, coeff in vector.items():
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise UnclassifiedTerm(f"non-integral coefficient {coeff} on {algebra.angle_text(key.angle)}")
                coeff = int(coeff)
            if not coeff:
                continue
            out = out + elementary(
                source, target, self.positions[second][key.target], self.positions[first][key.source],
                key.angle, coeff,
            )
        return out

    def vector(self, first: int, second: int, x: TwMorphism) -> Dict[ElementaryKey, PuncSeries]:
        """Series coefficients of a twisted morphism by elementary key."""
        out: Dict[ElementaryKey, PuncSeries] = {}
        for (row, col), angle, coeff in x.terms():
            key = ElementaryKey(self.path_at[first][col], self.path_at[second][row], angle)
            out[key] = out[key] + coeff if key in out else coeff
        return {k: v for k, v in out.items() if v}

    def flat_vector(self, first: int, second: int, x: TwMorphism) -> Vector:
        return {k: Fraction(v.constant_term()) for k, v in self.vector(first, second, x).items() if v.constant_term()}


class HomSpace:
    """Windowed hom space between two zigzag complexes with its splitting."""

    def __init__(self, category: ZigzagCategory, first: ZigzagPath, second: ZigzagPath, winding: int):
        self.category = category
        self.first = first
        self.second = second
        self.table = SituationTable(category.flat, first, second, winding + 1)
        self.h_basis: List[Tuple[HLabel, Vector]] = self._cohomology_basis()
        self._images: Dict[ElementaryKey, Vector] = {}
        self.winding = -1
        self.solver: Optional[ExactSolver] = None
        self._layout: Tuple[List[ElementaryKey], List[ElementaryKey]] = ([], [])
        self._build(winding)

    @property
    def same(self) -> bool:
        return self.first.index == self.second.index

    def _sign(self, angle) -> int:
        return (-1) ** self.category.dimer.spin_of((angle.puncture, angle.start))

    def _cohomology_basis(self) -> List[Tuple[HLabel, Vector]]:
        out = []
        for s in self.table.situations:
            i, j = s.junctions
            if s.kind == "B":
                a3, a4 = s.role("alpha3").key, s.role("alpha4").key
                vec = {a3: Fraction(-self._sign(a3.angle)), a4: Fraction(self._sign(a4.angle))}
                out.append((HLabel("B", i, j), vec))
            elif s.kind == "C":
                out.append((HLabel("C", i, j), {s.role("id").key: Fraction(1)}))
        if self.same:
            c0 = self.first.coidentity_at
            d = next(s for s in self.table.situations if s.kind == "D" and s.junctions == (c0, c0))
            alpha = d.role("alpha").key
            out.append((HLabel("coid"), {alpha: Fraction(-self._sign(alpha.angle))}))
            ids = {s.role("id").key: Fraction(1) for s in self.table.situations if s.kind == "D"}
            out.append((HLabel("id"), ids))
        return out

    def is_complement(self, situation: Situation, role: Role) -> bool:
        if role.name not in COMPLEMENT_ROLES[situation.kind]:
            return False
        if situation.kind == "D" and role.name == "id":
            return situation.junctions[0] != self.first.identity_at
        return True

    def complement_keys(self, winding: int) -> List[ElementaryKey]:
        keys = []
        for s in self.table.situations:
            for role in s.roles:
                if _winding_of(role.key) <= winding and self.is_complement(s, role):
                    keys.append(role.key)
        return list(dict.fromkeys(keys))

    def differential(self, vector: Mapping[ElementaryKey, Fraction]) -> Vector:
        """Undeformed mu^1 through the twisted product."""
        c = self.category
        x = c.morphism(self.first.index, self.second.index, vector, deformed=False)
        return c.flat_vector(self.first.index, self.second.index, tw_product(x))

    def _image(self, key: ElementaryKey) -> Vector:
        if key not in self._images:
            self._images[key] = self.differential({key: Fraction(1)})
        return self._images[key]

    def _build(self, winding: int) -> None:
        self.table.extend(winding + 1)
        inner = self.complement_keys(winding)
        outer = self.complement_keys(winding + 1)
        columns = [vec for _, vec in self.h_basis]
        columns += [self._image(k) for k in inner]
        columns += [{k: Fraction(1)} for k in outer]
        self.solver = ExactSolver(columns)
        self._layout = (inner, outer)
        self.winding = winding
        logger.debug(
            "hom %s->%s at winding %d: |H|=%d |R_N|=%d |R_N+1|=%d rank=%d",
            self.first.name, self.second.name, winding, len(self.h_basis), len(inner), len(outer), self.solver.rank,
        )

    def ensure(self, winding: int) -> None:
        if winding <= self.winding:
            return
        if winding > self.category.max_winding:
            raise UnclassifiedTerm(ErrorMessages.UNCLASSIFIED.format(f"of winding {winding}", self.category.max_winding))
        self._build(winding)

    def split(self, vector: Mapping[ElementaryKey, Fraction]) -> Decomposition:
        """
        Decompose an undeformed vector as h + mu^1(r') + r

        Raises:
            NotElementary, UnclassifiedTerm
        """
        vector = {k: Fraction(v) for k, v in vector.items() if v}
        if not vector:
            return Decomposition()
        for key in vector:
            self.table.classify(key)
        self.ensure(max(self.category.winding, max(_winding_of(k) for k in vector)))
        out = self._split_by_row(vector)
        if out is None:
            out = self._split_by_elimination(vector)
        check: Vector = {}
        for (label, vec) in self.h_basis:
            _add_into(check, vec, out.h.get(label, 0))
        for key, c in out.r_prime.items():
            _add_into(check, self._image(key), c)
        _add_into(check, out.r)
        if check != vector:
            raise UnclassifiedTerm(ErrorMessages.UNCLASSIFIED.format("reconstruction", self.winding))
        return out

    def _split_by_row(self, vector: Vector) -> Optional[Decomposition]:
        if len(vector) != 1:
            return None
        (key, value), = vector.items()
        situation, role = self.table.classify(key)
        row = self.row(situation, role)
        if row is None:
            return None
        return Decomposition(
            {label: c * value for label, c in row.h.items()},
            {k: c * value for k, c in row.r_prime.items()},
            {k: c * value for k, c in row.r.items()},
        )

    def row(self, situation: Situation, role: Role) -> Optional[Decomposition]:
        """
        Split a winding-zero elementary morphism along its row of the standard splitting

        Complement roles lie in R. The other A, B and C roles are mu^1 of the
        role named in SPLIT_ROWS plus H and R terms: the image coefficient is
        read off the evaluated differential, the H part off the pivot key of
        every cohomology vector.

        Returns:
            Optional[Decomposition]: None for D situations, higher windings and
            degenerate configurations, which are left to elimination
        """
        if role.winding or situation.kind not in SPLIT_ROWS:
            return None
        key = role.key
        if self.is_complement(situation, role):
            return Decomposition(r={key: Fraction(1)})
        if role.name not in SPLIT_ROWS[situation.kind]:
            return None
        out = Decomposition()
        rest: Vector = {key: Fraction(1)}
        preimage = SPLIT_ROWS[situation.kind][role.name]
        if preimage is not None:
            try:
                y = situation.role(preimage).key
            except KeyError:
                return None
            image = self._image(y)
            if not image.get(key):
                return None
            c = 1 / image[key]
            out.r_prime[y] = c
            _add_into(rest, image, -c)
        complement = set(self.complement_keys(self.winding + 1))
        for label, vec in self.h_basis:
            pivot = next((k for k in sorted(vec) if k not in complement), None)
            if pivot is not None and rest.get(pivot):
                c = rest[pivot] / vec[pivot]
                out.h[label] = c
                _add_into(rest, vec, -c)
        if any(k not in complement for k in rest):
            return None
        out.r = rest
        return out

    def _split_by_elimination(self, vector: Vector) -> Decomposition:
        solution = self.solver.solve(vector)
        if solution is None:
            text = ", ".join(self.category.flat.angle_text(k.angle) for k in sorted(vector)[:3])
            raise UnclassifiedTerm(ErrorMessages.UNCLASSIFIED.format(text, self.winding))
        inner, outer = self._layout
        nh = len(self.h_basis)
        out = Decomposition()
        for (label, _), c in zip(self.h_basis, solution[:nh]):
            if c:
                out.h[label] = c
        for key, c in zip(inner, solution[nh:nh + len(inner)]):
            if c:
                out.r_prime[key] = c
        for key, c in zip(outer, solution[nh + len(inner):]):
            if c:
                out.r[key] = c
        return out

    def h_vector(self, label: HLabel) -> Vector:
        for other, vec in self.h_basis:
            if other == label:
                return vec
        raise KeyError(label)

    def certify(self) -> SplittingReport:
        """Directness by rank, closedness of H, and the situation sweep of the window."""
        conflicts = self.table.conflicts()
        closed = all(not self.differential(vec) for _, vec in self.h_basis)
        return SplittingReport(
            self.first.index, self.second.index, self.winding,
            len(self.h_basis), cohomology_dims(self.first, self.second),
            self.solver.independent, closed, len(conflicts["missing"]), len(conflicts["repeated"]),
        )


def cohomology_dims(first: ZigzagPath, second: ZigzagPath) -> int:
    """#B + #C intersections, plus the identity and co-identity of a path against itself."""
    return len(intersections(first, second)) + (2 if first.index == second.index else 0)
