"""
Smooth-disk oracle for products between zigzag curves.

Zigzag curves are drawn in the medial complex of the dimer: one vertex per
arc midpoint, one edge per indecomposable angle, one face per puncture and
one per polygon. A curve crosses the edge of each of its small angles, so
a disk bounded by curve segments is a corner word of the medial complex
and the disk engine of the gentle algebra enumerates it unchanged. The
puncture faces a disk covers give its puncture parameter.

Positions on a curve of length n are measured in slots: slot 2i is the
midpoint of the i-th arc, slot 2i+1 the middle of the edge crossed between
arcs i and i+1. Co-identity marks sit on the odd slot of the co-identity
junction, identity marks on the even slot of the identity arc.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from app.core.exceptions import ArcMismatch, InvalidInputError, NonTransversal
from app.core.status_codes import ErrorMessages
from app.services.coeffring import PuncSeries
from app.services.disks import DiskEngine
from app.services.kadeishvili import BasisElement, DeformedSplitting, ProductResult, minimal_product, unit_product
from app.services.splitting import HLabel, ZigzagCategory
from app.services.surface import HEAD, TAIL, Arc, ArcIncidence, Dimer
from app.services.zigzag import LEFT, RIGHT, ZigzagPath, intersections

logger = logging.getLogger(__name__)

TRANSVERSAL = "transversal"
CR = "CR"
ID = "ID"
DS = "DS"
DW = "DW"
SPECIAL_KINDS = (CR, ID, DS, DW)


def _midpoint(arc: str) -> str:
    return f"m:{arc}"


def _edge(puncture: str, j: int) -> str:
    return f"e:{puncture}:{j}"


class MedialComplex:
    """The medial complex of a dimer as a rotation system of its own."""

    def __init__(self, dimer: Dimer):
        self.source = dimer
        arcs = []
        for p in dimer.punctures:
            for j in range(dimer.valence(p)):
                start, end = dimer.incidence(p, j), dimer.incidence(p, j + 1)
                arcs.append(Arc(_edge(p, j), _midpoint(end.arc), _midpoint(start.arc)))
        rotation = {}
        for a in dimer.arc_ids:
            h, ih = dimer.position[ArcIncidence(a, HEAD)]
            t, it = dimer.position[ArcIncidence(a, TAIL)]
            vh, vt = dimer.valence(h), dimer.valence(t)
            rotation[_midpoint(a)] = [
                ArcIncidence(_edge(h, (ih - 1) % vh), HEAD),
                ArcIncidence(_edge(t, it), TAIL),
                ArcIncidence(_edge(t, (it - 1) % vt), HEAD),
                ArcIncidence(_edge(h, ih), TAIL),
            ]
        self.dimer = Dimer([_midpoint(a) for a in dimer.arc_ids], arcs, rotation, name=f"{dimer.name}-medial")
        self.dimer.trace_faces()
        # the edge of (p, j) runs counterclockwise around p, so p's face is on its left
        self.puncture_faces = {self.dimer.left_face(_edge(p, 0))[0]: p for p in dimer.punctures}
        self.engine = DiskEngine(self.dimer)

    def punctures_covered(self, faces: Iterable[Tuple[int, int]]) -> Counter:
        covered = Counter()
        for face, count in faces:
            if face in self.puncture_faces:
                covered[self.puncture_faces[face]] += count
        return covered


@dataclass(frozen=True)
class ZigzagCurve:
    """
    A zigzag path drawn through arc midpoints

    `edges[i]` is the medial edge crossed between arcs i and i+1 and
    `forward[i]` says whether walking the path forward walks that edge in
    its own direction: right turns go counterclockwise around the puncture,
    left turns clockwise.
    """

    path: ZigzagPath
    edges: Tuple[str, ...]
    forward: Tuple[bool, ...]
    punctures: Tuple[str, ...]

    @classmethod
    def of(cls, dimer: Dimer, path: ZigzagPath) -> "ZigzagCurve":
        junctions = [path.junction(dimer, i) for i in range(len(path))]
        return cls(
            path,
            tuple(_edge(j.puncture, j.start) for j in junctions),
            tuple(t == RIGHT for t in path.turns),
            tuple(j.puncture for j in junctions),
        )

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def cuts(self) -> Tuple[Tuple[str, str, str], ...]:
        """(arc, puncture, side) per junction; left turns cut clockwise around the puncture."""
        return tuple(
            (self.path.arc(i), self.punctures[i], "cw" if self.path.turn(i) == LEFT else "ccw")
            for i in range(len(self))
        )

    def step(self, k: int, forward: bool) -> Tuple[str, bool]:
        """Medial edge and its walking direction when crossing edge k of the curve."""
        k %= len(self)
        return self.edges[k], self.forward[k] == forward

    def exit(self, pos: int, forward: bool) -> ArcIncidence:
        edge, fwd = self.step(pos if forward else pos - 1, forward)
        return ArcIncidence(edge, TAIL if fwd else HEAD)

    def entry(self, pos: int, forward: bool) -> ArcIncidence:
        edge, fwd = self.step(pos - 1 if forward else pos, forward)
        return ArcIncidence(edge, HEAD if fwd else TAIL)


class Segment(NamedTuple):
    """A walk of `steps` half-edges along a curve from slot `start` to slot `end`."""

    path: int
    start: int
    end: int
    forward: bool
    steps: int

    def slots(self, n: int) -> Iterable[int]:
        """Slots from which a half-step starts."""
        s = self.start
        for _ in range(self.steps):
            yield s % (2 * n)
            s += 1 if self.forward else -1


@dataclass(frozen=True)
class SmoothDisk:
    """
    A disk bounded by zigzag curve segments

    Inputs are in the order they are applied; segment i runs along the
    source curve of input i, the last one along the target of the last
    input, and the disk lies on the right of the chain.
    """

    kind: str
    inputs: Tuple[BasisElement, ...]
    output: HLabel
    segments: Tuple[Segment, ...]
    covered: Tuple[Tuple[str, int], ...] = ()
    area: int = 0
    sign: int = 0

    def weight(self, ring) -> PuncSeries:
        return ring.monomial(dict(self.covered), -1 if self.sign else 1)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": [e.text() for e in self.inputs],
            "output": self.output.text(),
            "segments": [list(s) for s in self.segments],
            "covered": dict(self.covered),
            "area": self.area,
            "sign": self.sign,
        }


@dataclass
class DiskList:
    disks: List[SmoothDisk] = field(default_factory=list)
    complete: bool = True

    def extend(self, other: "DiskList") -> None:
        self.disks.extend(other.disks)
        self.complete = self.complete and other.complete


def _steps(n: int, start: int, end: int, forward: bool) -> int:
    return ((end - start) if forward else (start - end)) % (2 * n)


class FukayaOracle:
    """
    Disk enumeration between the zigzag curves of a category

    Args:
        category (ZigzagCategory): zigzag paths and their hom spaces
        area_cap (int): area cap of the medial disk search
        periods (int): number of full windings a boundary segment may add,
            raised to the truncation plus one since every extra winding
            covers at least one puncture
    """

    def __init__(self, category: ZigzagCategory, area_cap: int, periods: int):
        self.category = category
        self.dimer = category.dimer
        self.ring = category.ring
        self.area_cap = area_cap
        self.periods = max(1, periods, category.truncation + 1)
        self.medial = MedialComplex(self.dimer)
        self.curves = {p.index: ZigzagCurve.of(self.dimer, p) for p in category.paths}

    # ------------------------------------------------------------------
    # geometry helpers

    def n(self, path: int) -> int:
        return len(self.curves[path])

    def coidentity_slot(self, path: int) -> int:
        return 2 * self.category.path(path).coidentity_at + 1

    def slot(self, element: BasisElement, side: str) -> int:
        """Slot of an input on its source (`first`) or target (`second`) curve."""
        label = element.label
        if label.kind == "coid":
            return self.coidentity_slot(element.first)
        if label.kind == "id":
            return 2 * self.category.path(element.first).identity_at
        return 2 * (label.first if side == "first" else label.second)

    def switch(self, arrive: int, arrive_pos: int, arrive_forward: bool, leave: int, leave_pos: int) -> Optional[bool]:
        """
        Direction forced on curve `leave` by a convex corner

        The corner turns from the arriving curve into the next sector
        counterclockwise at the shared midpoint.
        """
        incoming = self.curves[arrive].entry(arrive_pos, arrive_forward)
        rotation = self.medial.dimer.rotation[_midpoint(self.curves[arrive].path.arc(arrive_pos))]
        outgoing = rotation[(rotation.index(incoming) + 1) % len(rotation)]
        curve = self.curves[leave]
        if outgoing == curve.exit(leave_pos, True):
            return True
        if outgoing == curve.exit(leave_pos, False):
            return False
        return None

    def towards(self, path: int, pos: int) -> bool:
        """Whether the arc at `pos` lies between identity and co-identity going forward."""
        p = self.category.path(path)
        n = len(p)
        offset = (2 * pos - 2 * p.identity_at) % (2 * n)
        return 0 < offset < (2 * p.coidentity_at + 1 - 2 * p.identity_at) % (2 * n)

    # ------------------------------------------------------------------
    # words and signs

    def word(self, segments: Sequence[Segment]) -> Optional[List[Tuple[str, int, int]]]:
        """Corner word of the medial complex traced by a closed chain of segments."""
        steps = []
        for seg in segments:
            curve = self.curves[seg.path]
            n = len(curve)
            for s in seg.slots(n):
                k = (s if seg.forward else s - 1) % (2 * n) // 2
                steps.append((seg.path, k, seg.forward, s % 2 == 1))
        if not steps:
            return None
        first_even = next((i for i, st in enumerate(steps) if not st[3]), None)
        if first_even is None:
            return None
        steps = steps[first_even:] + steps[:first_even]
        moves = []
        for path, k, forward, continued in steps:
            if continued:
                continue
            moves.append(self.curves[path].step(k, forward))
        medial = self.medial.dimer
        out = []
        for (e1, f1), (e2, f2) in zip(moves, moves[1:] + moves[:1]):
            arrive = ArcIncidence(e1, HEAD if f1 else TAIL)
            leave = ArcIncidence(e2, TAIL if f2 else HEAD)
            vertex = medial.puncture_of(arrive)
            if medial.puncture_of(leave) != vertex:
                return None
            i1, i2 = medial.index_of(arrive), medial.index_of(leave)
            m = (i2 - i1) % medial.valence(vertex)
            if m not in (1, 2):
                return None
            out.append((vertex, i1, m))
        return out

    def abouzaid_sign(self, disk: SmoothDisk) -> int:
        """
        Spin signs along the boundary, plus odd inputs whose outgoing curve and
        an odd output whose last curve run counterclockwise with the disk
        """
        sign = 0
        for seg in disk.segments:
            path = self.category.path(seg.path)
            for s in seg.slots(len(path)):
                if s % 2:
                    sign += path.spin(self.dimer, s // 2)
        for i, element in enumerate(disk.inputs):
            if element.label.parity and not disk.segments[i + 1].forward:
                sign += 1
        if disk.output.parity and not disk.segments[-1].forward:
            sign += 1
        return sign % 2

    def _finish(self, kind, inputs, output, segments, covered=(), area=0) -> SmoothDisk:
        disk = SmoothDisk(kind, tuple(inputs), output, tuple(segments), tuple(sorted(covered)), area)
        return replace(disk, sign=self.abouzaid_sign(disk))

    # ------------------------------------------------------------------
    # regular disks

    def _corners(self, applied: Sequence[BasisElement], output: HLabel):
        curves = [applied[0].first] + [e.second for e in applied]
        starts = [self._output_slot(output, curves[0], "first")]
        ends = []
        for e in applied:
            ends.append(self.slot(e, "first"))
            starts.append(self.slot(e, "second"))
        ends.append(self._output_slot(output, curves[-1], "second"))
        return curves, starts, ends

    def _output_slot(self, output: HLabel, path: int, side: str) -> int:
        if output.kind == "coid":
            return self.coidentity_slot(path)
        if output.kind == "id":
            return 2 * self.category.path(path).identity_at
        return 2 * (output.first if side == "first" else output.second)

    def _directions(self, applied, output, curves, first_forward: bool) -> Optional[List[bool]]:
        dirs = [first_forward]
        for i, e in enumerate(applied):
            if e.label.kind == "coid":
                if not dirs[-1]:
                    return None
                dirs.append(True)
                continue
            d = self.switch(curves[i], e.label.first, dirs[-1], curves[i + 1], e.label.second)
            if d is None:
                return None
            dirs.append(d)
        if output.kind == "coid":
            return dirs if dirs[0] and dirs[-1] else None
        if self.switch(curves[-1], output.second, dirs[-1], curves[0], output.first) != dirs[0]:
            return None
        return dirs

    def regular_disks(
        self,
        applied: Sequence[BasisElement],
        output: HLabel,
        kind: str = CR,
        constraints: Optional[Dict[int, bool]] = None,
    ) -> DiskList:
        """
        Disks with nonempty segments between switch corners

        Co-identity inputs are marks on forward-walked co-identity edges;
        consecutive marks on one curve may be joined by empty segments.
        """
        curves, starts, ends = self._corners(applied, output)
        marks = [output.kind == "coid"] + [e.label.kind == "coid" for e in applied] + [output.kind == "coid"]
        result = DiskList()
        for first_forward in (True, False):
            dirs = self._directions(applied, output, curves, first_forward)
            if dirs is None:
                continue
            if constraints and any(dirs[i] != v for i, v in constraints.items()):
                continue
            options = []
            for i, (path, start, end, fwd) in enumerate(zip(curves, starts, ends, dirs)):
                n = self.n(path)
                base = _steps(n, start, end, fwd)
                lengths = [base + 2 * n * t for t in range(self.periods)]
                if base == 0 and not (marks[i] and marks[i + 1]):
                    lengths = [2 * n * t for t in range(1, self.periods + 1)]
                options.append([Segment(path, start, end, fwd, k) for k in lengths])
            for segments in itertools.product(*options):
                word = self.word(segments)
                if word is None:
                    continue
                search = self.medial.engine.find_disks(word, self.area_cap, 4 * self.area_cap)
                result.complete = result.complete and search.complete
                for found in search.disks:
                    covered = self.medial.punctures_covered(found.faces)
                    result.disks.append(self._finish(
                        kind, applied, output, segments, covered.items(), found.area,
                    ))
        if not result.complete:
            logger.warning("disk search for %s is incomplete within caps", output.text())
        return result

    # ------------------------------------------------------------------
    # transversal products

    def outputs(self, first: int, second: int) -> List[HLabel]:
        labels = [HLabel(x.kind, x.first, x.second) for x in intersections(self.category.path(first), self.category.path(second))]
        if first == second:
            labels.append(HLabel("coid"))
        return labels

    def smooth_disks(self, inputs: Sequence[BasisElement]) -> DiskList:
        """
        All smooth disks with the given inputs, over every output

        Args:
            inputs (Sequence[BasisElement]): h_N, ..., h_1 with h_1 applied first

        Returns:
            DiskList: disks and whether the searches were exhaustive
        """
        applied = _applied(inputs)
        if len(applied) < 2:
            raise InvalidInputError("smooth disks need at least two inputs")
        result = DiskList()
        for output in self.outputs(applied[0].first, applied[-1].second):
            if output.kind == "coid":
                continue
            result.extend(self.regular_disks(applied, output, kind=TRANSVERSAL))
        logger.debug("%d smooth disks for %s", len(result.disks), [e.text() for e in inputs])
        return result

    def prefukaya_mu(self, inputs: Sequence[BasisElement]) -> ProductResult:
        """
        Product of a transversal sequence: signed puncture parameters of all smooth disks

        Raises:
            NonTransversal: a path occurs twice, or an input is not an intersection
        """
        applied = _applied(inputs)
        curves = [applied[0].first] + [e.second for e in applied]
        repeated = [c for c, n in Counter(curves).items() if n > 1]
        if repeated:
            raise NonTransversal(ErrorMessages.NON_TRANSVERSAL.format(f"L{repeated[0]}"))
        for e in applied:
            if e.label.kind not in ("B", "C"):
                raise NonTransversal(ErrorMessages.NON_TRANSVERSAL.format(f"L{e.first}"))
        return self._collect(applied, self.smooth_disks(inputs))

    def _collect(self, applied, disks: DiskList) -> ProductResult:
        result = ProductResult(applied[0].first, applied[-1].second)
        for disk in disks.disks:
            value = disk.weight(self.ring)
            if disk.output in result.values:
                value = result.values[disk.output] + value
            result.values[disk.output] = value
        result.values = {k: v for k, v in result.values.items() if v}
        result.complete = disks.complete and self.category.complete
        return result

    # ------------------------------------------------------------------
    # special disks

    def enumerate_special(self, kind: str, inputs: Sequence[BasisElement]) -> DiskList:
        """
        CR, ID, DS or DW disks with the given inputs

        Args:
            kind (str): one of CR, ID, DS, DW
            inputs (Sequence[BasisElement]): h_N, ..., h_1 with h_1 applied first

        Returns:
            DiskList: the disks of that kind
        """
        applied = _applied(inputs)
        if any(e.label.kind == "id" for e in applied):
            return DiskList()
        if kind == CR:
            result = DiskList()
            for output in self.outputs(applied[0].first, applied[-1].second):
                result.extend(self.regular_disks(applied, output, kind=CR))
            return result
        if kind == ID:
            return self._id_disks(applied)
        if kind == DS:
            return self._strip_disks(applied)
        if kind == DW:
            return self._wedge_disks(applied)
        raise InvalidInputError(f"unknown disk kind {kind}")

    def _reverse(self, element: BasisElement) -> HLabel:
        turn = self.category.path(element.second).turn(element.label.second)
        return HLabel("B" if turn == LEFT else "C", element.label.second, element.label.first)

    def _id_disks(self, applied: List[BasisElement]) -> DiskList:
        result = DiskList()
        n_inputs = len(applied)
        home = applied[0].first
        if n_inputs < 2 or applied[-1].second != home:
            return result
        output = HLabel("id")
        last, first = applied[-1], applied[0]
        if last.label.kind in ("B", "C"):
            constraints = {0: True}
            if last.label.kind == "C":
                constraints[n_inputs - 1] = False
            excised = self.regular_disks(applied[:-1], self._reverse(last), kind=ID, constraints=constraints)
            result.complete = excised.complete
            for disk in excised.disks:
                slot = self.slot(last, "second")
                empty = Segment(home, slot, slot, disk.segments[0].forward, 0)
                result.disks.append(self._finish(ID, applied, output, disk.segments + (empty,), disk.covered, disk.area))
        if first.label.kind in ("B", "C"):
            constraints = {n_inputs - 1: False}
            if first.label.kind == "C":
                constraints[0] = True
            excised = self.regular_disks(applied[1:], self._reverse(first), kind=ID, constraints=constraints)
            result.complete = result.complete and excised.complete
            for disk in excised.disks:
                slot = self.slot(first, "first")
                empty = Segment(home, slot, slot, disk.segments[-1].forward, 0)
                result.disks.append(self._finish(ID, applied, output, (empty,) + disk.segments, disk.covered, disk.area))
        return result

    def _pair(self, out: BasisElement, back: BasisElement) -> Optional[Tuple[int, int, int]]:
        """(path, position on it, position on the other curve) of an excursion out and back at one arc."""
        if out.label.kind not in ("B", "C") or back.label.kind not in ("B", "C"):
            return None
        if out.first != back.second or out.second != back.first:
            return None
        if out.label.first != back.label.second or out.label.second != back.label.first:
            return None
        return out.first, out.label.first, out.label.second

    def _walk(self, path: int, start: int, end: int, forward: bool) -> Segment:
        return Segment(path, start, end, forward, _steps(self.n(path), start, end, forward))

    def strip_allowed(self, path: int, a: int, b: int, b_input_final_odd: bool) -> bool:
        """Whether arcs a and b bound a strip in the digon between a curve and its push-off."""
        p = self.category.path(path)
        n = len(p)
        towards = self.towards(path, a)
        if towards != self.towards(path, b):
            return False
        if towards:
            if (a - p.identity_at - 1) % n > (b - p.identity_at - 1) % n:
                return False
        elif (b - p.coidentity_at - 1) % n > (a - p.coidentity_at - 1) % n:
            return False
        if a % n == b % n:
            left = p.turn(a) == LEFT
            if towards:
                return not left or b_input_final_odd
            return left and b_input_final_odd
        return True

    def _strip_disks(self, applied: List[BasisElement]) -> DiskList:
        result = DiskList()
        if len(applied) != 3:
            return result
        h1, h2, h3 = applied
        pair = self._pair(h1, h2)
        if pair is not None and h3.first == pair[0] and h3.label.kind in ("B", "C"):
            path, a, m_pos = pair
            b = h3.label.first
            if self.strip_allowed(path, a, b, bool(h3.label.parity)):
                fwd = self.towards(path, a)
                s0 = self._walk(path, 2 * b, 2 * a, not fwd)
                s1_dir = self.switch(path, a, s0.forward, h1.second, m_pos)
                s2 = self._walk(path, 2 * a, 2 * b, fwd)
                s3_dir = self.switch(path, b, s2.forward, h3.second, h3.label.second)
                if s1_dir is not None and s3_dir is not None:
                    segments = (
                        s0,
                        Segment(h1.second, 2 * m_pos, 2 * m_pos, s1_dir, 0),
                        s2,
                        Segment(h3.second, 2 * h3.label.second, 2 * h3.label.second, s3_dir, 0),
                    )
                    result.disks.append(self._finish(DS, applied, h3.label, segments))
        pair = self._pair(h2, h3)
        if pair is not None and h1.second == pair[0] and h1.label.kind in ("B", "C"):
            path, a, m_pos = pair
            b = h1.label.second
            if self.strip_allowed(path, a, b, False):
                fwd = self.towards(path, a)
                s1 = self._walk(path, 2 * b, 2 * a, not fwd)
                s2_dir = self.switch(path, a, s1.forward, h2.second, m_pos)
                s3 = self._walk(path, 2 * a, 2 * b, fwd)
                s0_dir = self.switch(path, b, s3.forward, h1.first, h1.label.first)
                if s0_dir is not None and s2_dir is not None:
                    segments = (
                        Segment(h1.first, 2 * h1.label.first, 2 * h1.label.first, s0_dir, 0),
                        s1,
                        Segment(h2.second, 2 * m_pos, 2 * m_pos, s2_dir, 0),
                        s3,
                    )
                    result.disks.append(self._finish(DS, applied, h1.label, segments))
        return result

    def _wedge_disks(self, applied: List[BasisElement]) -> DiskList:
        result = DiskList()
        coid = HLabel("coid")
        if len(applied) == 2:
            pair = self._pair(*applied)
            if pair is not None:
                result.disks.extend(self._wedge(applied, pair, before=False, after=False))
        elif len(applied) == 3:
            h1, h2, h3 = applied
            pair = self._pair(h1, h2)
            if pair is not None and h3.label == coid and h3.first == pair[0]:
                path, a, _ = pair
                p = self.category.path(path)
                if not self.towards(path, a) and a % len(p) != (p.coidentity_at + 1) % len(p):
                    result.disks.extend(self._wedge(applied, pair, before=True, after=False))
            pair = self._pair(h2, h3)
            if pair is not None and h1.label == coid and h1.first == pair[0]:
                if self.towards(pair[0], pair[1]):
                    result.disks.extend(self._wedge(applied, pair, before=False, after=True))
        return result

    def _wedge(self, applied, pair, before: bool, after: bool) -> List[SmoothDisk]:
        path, a, m_pos = pair
        c = self.coidentity_slot(path)
        fwd = self.towards(path, a)
        to_a = self._walk(path, c, 2 * a, not fwd)
        arriving = self.switch(path, a, to_a.forward, applied[1 if after else 0].second, m_pos)
        if arriving is None:
            return []
        from_a = self._walk(path, 2 * a, c, fwd)
        segments = [to_a, Segment(applied[1 if after else 0].second, 2 * m_pos, 2 * m_pos, arriving, 0), from_a]
        if before:
            segments.append(Segment(path, c, c, from_a.forward, 0))
        if after:
            segments.insert(0, Segment(path, c, c, to_a.forward, 0))
        return [self._finish(DW, applied, HLabel("coid"), segments)]

    # ------------------------------------------------------------------
    # full products

    def special_mu(self, inputs: Sequence[BasisElement]) -> ProductResult:
        """Signed sum over CR, ID, DS and DW disks, with the strict unit."""
        applied = _applied(inputs)
        unit = unit_product(self.ring, inputs)
        if unit is not None:
            unit.complete = self.category.complete
            return unit
        disks = DiskList()
        for kind in SPECIAL_KINDS:
            disks.extend(self.enumerate_special(kind, inputs))
        return self._collect(applied, disks)

    def product(self, inputs: Sequence[BasisElement]) -> ProductResult:
        if is_transversal(inputs):
            return self.prefukaya_mu(inputs)
        return self.special_mu(inputs)


def _applied(inputs: Sequence[BasisElement]) -> List[BasisElement]:
    applied = list(reversed(list(inputs)))
    for earlier, later in zip(applied, applied[1:]):
        if earlier.second != later.first:
            raise ArcMismatch(ErrorMessages.ARC_MISMATCH.format(later.text(), earlier.text()))
    return applied


def is_transversal(inputs: Sequence[BasisElement]) -> bool:
    applied = list(reversed(list(inputs)))
    curves = [applied[0].first] + [e.second for e in applied]
    return len(set(curves)) == len(curves) and all(e.label.kind in ("B", "C") for e in applied)


# ----------------------------------------------------------------------
# comparison


def basis_tuples(category: ZigzagCategory, arity: int, transversal: bool = True, limit: Optional[int] = None) -> List[Tuple[BasisElement, ...]]:
    """
    Composable tuples of non-identity cohomology basis elements, in application order reversed

    Args:
        category (ZigzagCategory): source of the hom spaces
        arity (int): number of inputs
        transversal (bool): only sequences of pairwise distinct paths
        limit (Optional[int]): stop after this many tuples
    """
    indices = [p.index for p in category.paths]
    out: List[Tuple[BasisElement, ...]] = []
    for curves in itertools.product(indices, repeat=arity + 1):
        if transversal and len(set(curves)) != len(curves):
            continue
        choices = []
        for first, second in zip(curves, curves[1:]):
            labels = [label for label, _ in category.hom(first, second).h_basis if label.kind != "id"]
            choices.append([BasisElement(first, second, label) for label in labels])
        for combo in itertools.product(*choices):
            out.append(tuple(reversed(combo)))
            if limit is not None and len(out) >= limit:
                return out
    return out


@dataclass
class ComparisonRow:
    inputs: Tuple[BasisElement, ...]
    transversal: bool
    minimal: ProductResult
    oracle: ProductResult

    @property
    def match(self) -> bool:
        return self.minimal.values == self.oracle.values

    def to_dict(self) -> dict:
        return {
            "inputs": [e.text() for e in self.inputs],
            "transversal": self.transversal,
            "minimal": self.minimal.text(),
            "oracle": self.oracle.text(),
            "minimal_complete": self.minimal.complete,
            "oracle_complete": self.oracle.complete,
            "match": self.match,
        }


@dataclass
class ComparisonReport:
    rows: List[ComparisonRow] = field(default_factory=list)

    @property
    def mismatches(self) -> List[ComparisonRow]:
        return [r for r in self.rows if not r.match]

    @property
    def complete(self) -> bool:
        return all(r.minimal.complete and r.oracle.complete for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "tuples": len(self.rows),
            "mismatches": len(self.mismatches),
            "complete": self.complete,
            "rows": [r.to_dict() for r in self.rows],
        }


def compare(splitting: DeformedSplitting, oracle: FukayaOracle, tuples: Iterable[Sequence[BasisElement]]) -> ComparisonReport:
    """
    Minimal-model products against the disk oracle, tuple by tuple

    Transversal tuples are compared with smooth disks, all others with the
    CR, ID, DS and DW enumeration.
    """
    report = ComparisonReport()
    for inputs in tuples:
        inputs = tuple(inputs)
        minimal = minimal_product(splitting, inputs)
        value = oracle.product(inputs)
        row = ComparisonRow(inputs, is_transversal(inputs), minimal, value)
        if not row.match:
            logger.warning("mismatch on %s: %s vs %s", [e.text() for e in inputs], minimal.text(), value.text())
        report.rows.append(row)
    logger.info("compared %d tuples, %d mismatches", len(report.rows), len(report.mismatches))
    return report
