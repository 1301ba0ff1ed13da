"""
Zigzag paths of a dimer and the objects they define.

A zigzag path turns maximally right and maximally left at the heads of its
arcs, alternately. Junction i of a path sits at the head of its i-th arc;
the small angle there is the indecomposable angle joining arcs i and i+1.
Morphisms between two zigzag complexes are sorted into A, B, C and D
situations by where their angles start and end.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from app.core.exceptions import InvalidInputError, NotElementary, UnclassifiedTerm
from app.core.status_codes import ErrorMessages
from app.services.gtl import Angle, GentleAlgebra
from app.services.surface import COUNTERCLOCKWISE, HEAD, TAIL, ArcIncidence, Dimer
from app.services.twisted import BandSegment, TwistedComplex, build_band, uncurve_complementary

logger = logging.getLogger(__name__)

LEFT = "L"
RIGHT = "R"


def flip(turn: str) -> str:
    return LEFT if turn == RIGHT else RIGHT


def step_forward(dimer: Dimer, arc: str, turn: str) -> str:
    """The arc reached by turning `turn` at the head of `arc`."""
    p, j = dimer.position[ArcIncidence(arc, HEAD)]
    return dimer.incidence(p, j + 1 if turn == RIGHT else j - 1).arc


def step_backward(dimer: Dimer, arc: str, turn: str) -> str:
    """The arc whose head turns `turn` into the tail of `arc`."""
    p, j = dimer.position[ArcIncidence(arc, TAIL)]
    return dimer.incidence(p, j - 1 if turn == RIGHT else j + 1).arc


@dataclass(frozen=True)
class Junction:
    """Small angle of a path: from position `source` to position `target` at one puncture."""

    puncture: str
    start: int
    source: int
    target: int
    source_incidence: ArcIncidence
    target_incidence: ArcIncidence


@dataclass(frozen=True)
class ZigzagPath:
    index: int
    arcs: Tuple[str, ...]
    turns: Tuple[str, ...]
    identity_at: int = 0
    coidentity_at: int = 0

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def name(self) -> str:
        return f"L{self.index}"

    def arc(self, i: int) -> str:
        return self.arcs[i % len(self.arcs)]

    def turn(self, i: int) -> str:
        return self.turns[i % len(self.turns)]

    def junction(self, dimer: Dimer, i: int) -> Junction:
        n = len(self.arcs)
        i %= n
        head = ArcIncidence(self.arcs[i], HEAD)
        tail = ArcIncidence(self.arcs[(i + 1) % n], TAIL)
        p = dimer.puncture_of(head)
        if self.turns[i] == RIGHT:
            return Junction(p, dimer.index_of(head), i, (i + 1) % n, head, tail)
        return Junction(p, dimer.index_of(tail), (i + 1) % n, i, tail, head)

    def small_angle(self, algebra: GentleAlgebra, i: int) -> Angle:
        j = self.junction(algebra.dimer, i)
        return algebra.angle(j.puncture, j.start, 1)

    def spin(self, dimer: Dimer, i: int) -> int:
        j = self.junction(dimer, i)
        return dimer.spin_of((j.puncture, j.start))

    def text(self) -> str:
        return " ".join(f"{a}{t}" for a, t in zip(self.arcs, self.turns))


def _canonical(states: List[Tuple[str, str]]) -> Tuple[Tuple[str, str], ...]:
    n = len(states)
    rotations = [
        tuple(states[i:] + states[:i]) for i in range(n) if states[i][1] == LEFT
    ]
    return min(rotations)


def enumerate_zigzags(dimer: Dimer) -> List[ZigzagPath]:
    """
    All zigzag paths up to shift

    Each path starts at the lexicographically smallest position with a left
    turn; paths are sorted by that canonical form. Identity and co-identity
    locations come from the dimer file and default to position 0.

    Raises:
        InvalidInputError: not a dimer, or a co-identity outside a counterclockwise polygon
    """
    if not dimer.is_dimer:
        raise InvalidInputError(ErrorMessages.NOT_A_DIMER)
    seen = set()
    canonical = []
    for arc in dimer.arc_ids:
        for turn in (LEFT, RIGHT):
            if (arc, turn) in seen:
                continue
            states = []
            state = (arc, turn)
            while state not in seen:
                seen.add(state)
                states.append(state)
                state = (step_forward(dimer, *state), flip(state[1]))
            canonical.append(_canonical(states))
    canonical.sort()
    paths = []
    for index, states in enumerate(canonical):
        n = len(states)
        a0 = dimer.identity_locations.get(index, 0)
        c0 = dimer.coidentity_locations.get(index, 0)
        for location in (a0, c0):
            if not 0 <= location < n:
                raise InvalidInputError(ErrorMessages.LOCATION_RANGE.format(location, index, n))
        path = ZigzagPath(
            index,
            tuple(a for a, _ in states),
            tuple(t for _, t in states),
            a0,
            c0,
        )
        j = path.junction(dimer, c0)
        face, _ = dimer.corner_face[(j.puncture, j.start)]
        if dimer.faces[face].orientation != COUNTERCLOCKWISE:
            raise InvalidInputError(ErrorMessages.COIDENTITY_CONVENTION.format(index, c0))
        paths.append(path)
    logger.debug("%s has %d zigzag paths of lengths %s", dimer.name, len(paths), [len(p) for p in paths])
    return paths


class Intersection(NamedTuple):
    """Positions i of the first and j of the second path on a shared arc with opposite turns."""

    first: int
    second: int
    arc: str
    kind: str

    @property
    def parity(self) -> int:
        return 1 if self.kind == "B" else 0


def intersections(first: ZigzagPath, second: ZigzagPath) -> List[Intersection]:
    """
    Indexed intersections read as morphisms from `first` to `second`

    Kind B when the first path turns left at the head of the shared arc,
    kind C when it turns right. A path against itself lists every
    self-intersection twice, once from each side.
    """
    out = []
    for i, a in enumerate(first.arcs):
        for j, b in enumerate(second.arcs):
            if a == b and first.turns[i] != second.turns[j]:
                out.append(Intersection(i, j, a, "B" if first.turns[i] == LEFT else "C"))
    return out


# ----------------------------------------------------------------------
# zigzag complexes


def build_zigzag(algebra: GentleAlgebra, path: ZigzagPath, deformed: bool = False) -> TwistedComplex:
    """
    The twisted complex of a zigzag path

    Args:
        algebra (GentleAlgebra): ambient algebra
        path (ZigzagPath): the path
        deformed (bool): add the signed complementary angles weighted by the punctures

    Returns:
        TwistedComplex: summands labelled '<arc>#<position>'
    """
    dimer = algebra.dimer
    segments = [
        BandSegment(path.arc(i), path.small_angle(algebra, i), (-1) ** path.spin(dimer, i))
        for i in range(len(path))
    ]
    X = build_band(algebra, segments, shifts=[0] * len(path), name=path.name)
    if deformed:
        X = uncurve_complementary(X, name=f"{path.name}_q")
    return X


def summand_positions(X: TwistedComplex) -> Dict[int, int]:
    """Path position -> summand index of a complex built by build_zigzag."""
    return {int(s.label.rpartition("#")[2]): k for k, s in enumerate(X.summands)}


# ----------------------------------------------------------------------
# situations


class ElementaryKey(NamedTuple):
    """A single angle from position `source` of one path to position `target` of another."""

    source: int
    target: int
    angle: Angle


@dataclass(frozen=True)
class Role:
    name: str
    winding: int
    key: ElementaryKey


@dataclass
class Situation:
    """
    One A, B, C or D situation between two paths

    `positions` names the participating indexed arcs: '1'..'4' for A (1, 2
    on the first path), '1'..'6' for B and C (1, 2, 3 on the first path, 2
    and 5 being the shared arc), '1', '2' for D. `angles` holds the named
    angles of the situation without windings.
    """

    kind: str
    first: ZigzagPath
    second: ZigzagPath
    junctions: Tuple[int, int]
    positions: Dict[str, int]
    angles: Dict[str, Angle] = field(default_factory=dict)
    roles: List[Role] = field(default_factory=list)

    def role(self, name: str, winding: int = 0) -> Role:
        for r in self.roles:
            if r.name == name and r.winding == winding:
                return r
        raise KeyError((name, winding))

    def describe(self) -> str:
        return f"{self.kind}{self.junctions} {self.first.name}->{self.second.name}"


def _angle(algebra: GentleAlgebra, puncture: str, start: int, length: int) -> Optional[Angle]:
    if length < 1:
        return None
    return algebra.angle(puncture, start, length)


class _SituationBuilder:
    def __init__(self, algebra: GentleAlgebra, first: ZigzagPath, second: ZigzagPath, winding: int):
        self.algebra = algebra
        self.dimer = algebra.dimer
        self.first = first
        self.second = second
        self.winding = winding

    def _add(self, situation: Situation, name: str, source: int, target: int, corner, windings) -> None:
        p, start, length = corner
        val = self.dimer.valence(p)
        for k in windings:
            angle = _angle(self.algebra, p, start, length + k * val)
            if angle is not None:
                situation.roles.append(Role(name, k, ElementaryKey(source, target, angle)))

    def a_situations(self) -> Iterator[Situation]:
        d = self.dimer
        W = range(self.winding)
        for i in range(len(self.first)):
            u = self.first.junction(d, i)
            for j in range(len(self.second)):
                v = self.second.junction(d, j)
                if u.puncture != v.puncture:
                    continue
                incs = {u.source_incidence, u.target_incidence, v.source_incidence, v.target_incidence}
                if len(incs) < 4:
                    continue
                p = u.puncture
                val = d.valence(p)
                lb = (v.start - d.index_of(u.target_incidence)) % val
                t1 = d.index_of(u.target_incidence)
                t2 = d.index_of(v.target_incidence)
                s = Situation(
                    "A", self.first, self.second, (i, j),
                    {"1": u.source, "2": u.target, "3": v.source, "4": v.target},
                )
                s.angles = {
                    "alpha": self.algebra.angle(p, u.start, 1),
                    "beta": self.algebra.angle(p, t1, lb),
                    "gamma": self.algebra.angle(p, v.start, 1),
                    "beta'": self.algebra.angle(p, t2, val - lb - 2),
                }
                self._add(s, "beta alpha", u.source, v.source, (p, u.start, 1 + lb), W)
                self._add(s, "gamma beta alpha", u.source, v.target, (p, u.start, 2 + lb), W)
                self._add(s, "beta", u.target, v.source, (p, t1, lb), W)
                self._add(s, "gamma beta", u.target, v.target, (p, t1, lb + 1), W)
                yield s

    def bc_situations(self) -> Iterator[Situation]:
        d = self.dimer
        W = range(self.winding)
        turns = range(1, self.winding + 1)
        for x in intersections(self.first, self.second):
            i, j, e = x.first, x.second, x.arc
            n1, n2 = len(self.first), len(self.second)
            # 1 and 6 meet the head of the shared arc, 3 and 4 its tail
            pos = {
                "1": (i + 1) % n1, "2": i, "3": (i - 1) % n1,
                "4": (j - 1) % n2, "5": j, "6": (j + 1) % n2,
            }
            X, xe = d.position[ArcIncidence(e, TAIL)]
            Y, ye = d.position[ArcIncidence(e, HEAD)]
            vx, vy = d.valence(X), d.valence(Y)
            xa = d.index_of(ArcIncidence(self.first.arc(i - 1), HEAD))
            ya = d.index_of(ArcIncidence(self.first.arc(i + 1), TAIL))
            s = Situation(x.kind, self.first, self.second, (i, j), pos)
            alg = self.algebra
            if x.kind == "B":
                # alpha3 is cut by disks along which the second path runs counterclockwise
                s.angles = {
                    "alpha1": alg.angle(Y, ya, 1), "alpha2": alg.angle(Y, ye, 1),
                    "alpha3": alg.angle(X, xe, 1), "alpha4": alg.angle(X, xa, 1),
                }
                if vx > 2:
                    s.angles["beta"] = alg.angle(X, xe + 1, vx - 2)
                if vy > 2:
                    s.angles["beta'"] = alg.angle(Y, ye + 1, vy - 2)
                self._add(s, "alpha1", pos["1"], pos["5"], (Y, ya, 1), W)
                self._add(s, "alpha2 alpha1", pos["1"], pos["6"], (Y, ya, 2), W)
                self._add(s, "alpha3", pos["2"], pos["4"], (X, xe, 1), W)
                self._add(s, "alpha2", pos["2"], pos["6"], (Y, ye, 1), W)
                self._add(s, "alpha3 alpha4", pos["3"], pos["4"], (X, xa, 2), W)
                self._add(s, "alpha4", pos["3"], pos["5"], (X, xa, 1), W)
            else:
                s.angles = {
                    "alpha1": alg.angle(Y, ye - 1, 1), "alpha2": alg.angle(Y, ye, 1),
                    "alpha3": alg.angle(X, xe, 1), "alpha4": alg.angle(X, xe - 1, 1),
                }
                if vx > 2:
                    s.angles["beta"] = alg.angle(X, xa, vx - 2)
                if vy > 2:
                    s.angles["beta'"] = alg.angle(Y, ya, vy - 2)
                self._add(s, "alpha1 beta'", pos["1"], pos["5"], (Y, ya, vy - 1), W)
                self._add(s, "beta'", pos["1"], pos["6"], (Y, ya, vy - 2), W)
                self._add(s, "beta alpha3", pos["2"], pos["4"], (X, xe, vx - 1), W)
                self._add(s, "beta' alpha2", pos["2"], pos["6"], (Y, ye, vy - 1), W)
                self._add(s, "beta", pos["3"], pos["4"], (X, xa, vx - 2), W)
                self._add(s, "alpha4 beta", pos["3"], pos["5"], (X, xa, vx - 1), W)
            self._add(s, "turn tail", pos["2"], pos["5"], (X, xe, 0), turns)
            self._add(s, "turn head", pos["2"], pos["5"], (Y, ye, 0), turns)
            s.roles.append(Role("id", 0, ElementaryKey(pos["2"], pos["5"], alg.identity(e))))
            yield s

    def d_situations(self) -> Iterator[Situation]:
        if self.first.index != self.second.index:
            return
        d = self.dimer
        W = range(self.winding)
        turns = range(1, self.winding + 1)
        for i in range(len(self.first)):
            u = self.first.junction(d, i)
            p = u.puncture
            val = d.valence(p)
            t = d.index_of(u.target_incidence)
            s = Situation("D", self.first, self.second, (i, i), {"1": u.source, "2": u.target})
            s.angles = {"alpha": self.algebra.angle(p, u.start, 1)}
            if val > 1:
                s.angles["alpha'"] = self.algebra.angle(p, t, val - 1)
            self._add(s, "alpha", u.source, u.target, (p, u.start, 1), W)
            self._add(s, "alpha'", u.target, u.source, (p, t, val - 1), W)
            self._add(s, "turn source", u.source, u.source, (p, u.start, 0), turns)
            self._add(s, "turn target", u.target, u.target, (p, t, 0), turns)
            s.roles.append(Role("id", 0, ElementaryKey(i, i, self.algebra.identity(self.first.arc(i)))))
            yield s


def enumerate_situations(
    algebra: GentleAlgebra, first: ZigzagPath, second: ZigzagPath, winding: int
) -> List[Situation]:
    """
    All situations from `first` to `second` with their roles up to `winding` turns

    D situations appear only when both paths are the same.
    """
    builder = _SituationBuilder(algebra, first, second, winding)
    out = list(builder.a_situations())
    out.extend(builder.bc_situations())
    out.extend(builder.d_situations())
    return out


def elementary_keys(algebra: GentleAlgebra, first: ZigzagPath, second: ZigzagPath, winding: int) -> List[ElementaryKey]:
    """Every angle between positions of the two paths of length at most winding full turns."""
    d = algebra.dimer
    keys = []
    for i, a in enumerate(first.arcs):
        for j, b in enumerate(second.arcs):
            if a == b:
                keys.append(ElementaryKey(i, j, algebra.identity(a)))
            for x in (ArcIncidence(a, HEAD), ArcIncidence(a, TAIL)):
                for y in (ArcIncidence(b, HEAD), ArcIncidence(b, TAIL)):
                    p, sx = d.position[x]
                    q, sy = d.position[y]
                    if p != q:
                        continue
                    val = d.valence(p)
                    base = (sy - sx) % val or val
                    for k in range(winding):
                        keys.append(ElementaryKey(i, j, algebra.angle(p, sx, base + k * val)))
    return keys


class SituationTable:
    """Lookup from elementary keys to their situation roles, extended on demand."""

    def __init__(self, algebra: GentleAlgebra, first: ZigzagPath, second: ZigzagPath, winding: int):
        self.algebra = algebra
        self.first = first
        self.second = second
        self.winding = 0
        self.situations: List[Situation] = []
        self.lookup: Dict[ElementaryKey, List[Tuple[Situation, Role]]] = {}
        self.extend(winding)

    def extend(self, winding: int) -> None:
        if winding <= self.winding:
            return
        self.winding = winding
        self.situations = enumerate_situations(self.algebra, self.first, self.second, winding)
        self.lookup = {}
        for s in self.situations:
            for role in s.roles:
                self.lookup.setdefault(role.key, []).append((s, role))

    def conflicts(self) -> Dict[str, list]:
        """Keys of the window missing from the table or claimed by several roles."""
        keys = elementary_keys(self.algebra, self.first, self.second, self.winding)
        missing = [k for k in keys if k not in self.lookup]
        repeated = [k for k, hits in self.lookup.items() if len(hits) > 1]
        extra = sorted(set(self.lookup) - set(keys), key=lambda k: (k.source, k.target, k.angle))
        return {"missing": missing, "repeated": repeated, "extra": extra}

    def classify(self, key: ElementaryKey) -> Tuple[Situation, Role]:
        """
        The unique situation and role of an elementary morphism

        Raises:
            NotElementary: the angle does not join the two positions
            UnclassifiedTerm: no role, or several roles, claim the angle
        """
        a = self.algebra
        if key.angle.source_arc != self.first.arc(key.source) or key.angle.target_arc != self.second.arc(key.target):
            raise NotElementary(
                ErrorMessages.NOT_ELEMENTARY.format(a.angle_text(key.angle), key.source, key.target)
            )
        if not key.angle.is_identity:
            self.extend(key.angle.length // key.angle.valence + 1)
        hits = self.lookup.get(key, [])
        if len(hits) != 1:
            text = f"{a.angle_text(key.angle)} [{key.source}->{key.target}]"
            if not hits:
                raise UnclassifiedTerm(ErrorMessages.UNCLASSIFIED.format(text, self.winding))
            raise UnclassifiedTerm(ErrorMessages.AMBIGUOUS_ROLE.format(text, len(hits)))
        return hits[0]


def classify(algebra: GentleAlgebra, first: ZigzagPath, second: ZigzagPath, key: ElementaryKey) -> Tuple[Situation, Role]:
    """One-off classification; build a SituationTable for repeated lookups."""
    winding = 1 if key.angle.is_identity else key.angle.length // key.angle.valence + 1
    return SituationTable(algebra, first, second, winding).classify(key)
