"""
Punctured surfaces as rotation systems.

A surface is never embedded: punctures carry the counterclockwise cyclic
order of their arc incidences, and faces, genus and orientation flags are
derived from those tables alone.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from app.core.exceptions import (
    EulerMismatch, FaceTooShort, InconsistentFaceOrientation, MalformedDimer,
    NonClosedFace, SphereTooSmall
)
from app.core.status_codes import ErrorMessages

logger = logging.getLogger(__name__)

HEAD = "head"
TAIL = "tail"

CLOCKWISE = "clockwise"
COUNTERCLOCKWISE = "counterclockwise"
MIXED = "mixed"

Corner = Tuple[str, int]


class ArcIncidence(NamedTuple):
    arc: str
    end: str

    def opposite(self) -> "ArcIncidence":
        return ArcIncidence(self.arc, TAIL if self.end == HEAD else HEAD)

    def text(self) -> str:
        return f"{self.arc}.{self.end}"


class Arc(NamedTuple):
    id: str
    head: str
    tail: str


@dataclass(frozen=True)
class Face:
    """A face traced with its interior on the right of the traversal."""

    index: int
    corners: Tuple[Corner, ...]
    arcs: Tuple[Tuple[str, bool], ...]
    orientation: str

    def __len__(self) -> int:
        return len(self.corners)


class Dimer:
    """Rotation system of a punctured surface, with derived faces.

    Instances are treated as immutable once built.
    """

    def __init__(
        self,
        punctures: Iterable[str],
        arcs: Iterable[Arc],
        rotation: Mapping[str, Sequence[ArcIncidence]],
        name: str = "dimer",
        spin: Optional[Mapping[Corner, int]] = None,
        angle_names: Optional[Mapping[Corner, str]] = None,
        identity_locations: Optional[Mapping[int, int]] = None,
        coidentity_locations: Optional[Mapping[int, int]] = None,
    ):
        self.name = name
        self.punctures = tuple(str(p) for p in punctures)
        self.arcs: Dict[str, Arc] = {}
        for arc in arcs:
            self.arcs[arc.id] = arc
        self.arc_ids = tuple(self.arcs)
        self.rotation = {p: tuple(ArcIncidence(*inc) for inc in rotation[p]) for p in self.punctures}
        self.position: Dict[ArcIncidence, Corner] = {}
        for p, incs in self.rotation.items():
            for j, inc in enumerate(incs):
                self.position[inc] = (p, j)
        self.spin = {k: int(v) % 2 for k, v in (spin or {}).items()}
        self.angle_names = dict(angle_names or {})
        self.identity_locations = dict(identity_locations or {})
        self.coidentity_locations = dict(coidentity_locations or {})
        self.faces: Tuple[Face, ...] = ()
        self.corner_face: Dict[Corner, Tuple[int, int]] = {}
        self.arc_sides: Dict[str, Tuple[Tuple[int, int], Tuple[int, int]]] = {}

    # ------------------------------------------------------------------
    # rotation helpers

    def valence(self, puncture: str) -> int:
        return len(self.rotation[puncture])

    def incidence(self, puncture: str, j: int) -> ArcIncidence:
        rot = self.rotation[puncture]
        return rot[j % len(rot)]

    def index_of(self, inc: ArcIncidence) -> int:
        return self.position[inc][1]

    def puncture_of(self, inc: ArcIncidence) -> str:
        return self.position[inc][0]

    def endpoint(self, inc: ArcIncidence) -> str:
        arc = self.arcs[inc.arc]
        return arc.head if inc.end == HEAD else arc.tail

    def corner_exit(self, corner: Corner) -> ArcIncidence:
        p, j = corner
        return self.incidence(p, j + 1)

    def next_corner(self, corner: Corner) -> Corner:
        """Corner reached by leaving through the exit incidence of `corner`."""
        return self.position[self.corner_exit(corner).opposite()]

    def spin_of(self, corner: Corner) -> int:
        p, j = corner
        return self.spin.get((p, j % self.valence(p)), 0)

    # ------------------------------------------------------------------
    # derived data

    def trace_faces(self) -> None:
        seen = set()
        faces = []
        for p in self.punctures:
            for j in range(self.valence(p)):
                if (p, j) in seen:
                    continue
                corners = []
                arcs = []
                corner = (p, j)
                while corner not in seen:
                    seen.add(corner)
                    corners.append(corner)
                    leave = self.corner_exit(corner)
                    arcs.append((leave.arc, leave.end == TAIL))
                    corner = self.next_corner(corner)
                if corner != corners[0]:
                    raise NonClosedFace(f"Face through corner {corners[0]} does not close")
                forward = [fwd for _, fwd in arcs]
                if all(forward):
                    orientation = CLOCKWISE
                elif not any(forward):
                    orientation = COUNTERCLOCKWISE
                else:
                    orientation = MIXED
                faces.append(Face(len(faces), tuple(corners), tuple(arcs), orientation))
        self.faces = tuple(faces)
        self.corner_face = {}
        for face in self.faces:
            for k, corner in enumerate(face.corners):
                self.corner_face[corner] = (face.index, k)
        sides: Dict[str, Dict[str, Tuple[int, int]]] = {a: {} for a in self.arc_ids}
        for face in self.faces:
            for k, (arc, fwd) in enumerate(face.arcs):
                sides[arc]["R" if fwd else "L"] = (face.index, k)
        self.arc_sides = {a: (s["R"], s["L"]) for a, s in sides.items()}

    @property
    def euler_characteristic(self) -> int:
        return len(self.punctures) - len(self.arcs) + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    @property
    def is_dimer(self) -> bool:
        return all(len(f) >= 3 and f.orientation != MIXED for f in self.faces)

    def right_face(self, arc: str) -> Tuple[int, int]:
        """(face, slot) of the face traversing `arc` forward."""
        return self.arc_sides[arc][0]

    def left_face(self, arc: str) -> Tuple[int, int]:
        return self.arc_sides[arc][1]

    def angle_name(self, corner: Corner) -> Optional[str]:
        p, j = corner
        return self.angle_names.get((p, j % self.valence(p)))

    def to_raw(self) -> dict:
        """Serialize back to the dimer file format."""
        raw = {
            "format": 1,
            "name": self.name,
            "punctures": list(self.punctures),
            "arcs": [{"id": a.id, "head": a.head, "tail": a.tail} for a in self.arcs.values()],
            "rotation": {p: [[inc.arc, inc.end] for inc in self.rotation[p]] for p in self.punctures},
        }
        if self.spin:
            raw["spin"] = {f"{p}:{j}": v for (p, j), v in sorted(self.spin.items()) if v}
        if self.angle_names:
            raw["angle_names"] = {f"{p}:{j}": n for (p, j), n in sorted(self.angle_names.items())}
        if self.identity_locations:
            raw["identity_locations"] = {str(k): v for k, v in sorted(self.identity_locations.items())}
        if self.coidentity_locations:
            raw["coidentity_locations"] = {str(k): v for k, v in sorted(self.coidentity_locations.items())}
        return raw

    def __repr__(self) -> str:
        return f"Dimer({self.name}: V={len(self.punctures)} E={len(self.arcs)} F={len(self.faces)} g={self.genus})"


def _corner_key(text: str) -> Corner:
    p, _, j = str(text).rpartition(":")
    return (p, int(j))


def validate_dimer(raw: Mapping, require_dimer: bool = False) -> Dimer:
    """
    Build a Dimer from its file description and check the structural conditions

    Args:
        raw (Mapping): punctures, arcs, rotation and the optional per-path data
        require_dimer (bool): additionally require uniformly oriented faces

    Returns:
        Dimer: validated rotation system with derived faces

    Raises:
        MalformedDimer, NonClosedFace, FaceTooShort, InconsistentFaceOrientation,
        EulerMismatch, SphereTooSmall
    """
    punctures = [str(p) for p in raw.get("punctures", [])]
    arcs = []
    for entry in raw.get("arcs", []):
        arc = Arc(str(entry["id"]), str(entry["head"]), str(entry["tail"]))
        for end in (arc.head, arc.tail):
            if end not in punctures:
                raise MalformedDimer(ErrorMessages.UNKNOWN_PUNCTURE.format(arc.id, end))
        arcs.append(arc)
    declared = {ArcIncidence(a.id, HEAD): a.head for a in arcs}
    declared.update({ArcIncidence(a.id, TAIL): a.tail for a in arcs})

    rotation: Dict[str, List[ArcIncidence]] = {}
    seen = set()
    raw_rotation = raw.get("rotation", {})
    for p in punctures:
        incs = []
        for item in raw_rotation.get(p, []):
            inc = ArcIncidence(str(item[0]), str(item[1]))
            if inc not in declared:
                raise MalformedDimer(ErrorMessages.MISSING_INCIDENCE.format(inc.text()))
            if inc in seen:
                raise MalformedDimer(ErrorMessages.DUPLICATE_INCIDENCE.format(inc.text()))
            if declared[inc] != p:
                raise MalformedDimer(ErrorMessages.MISPLACED_INCIDENCE.format(inc.text(), p, declared[inc]))
            seen.add(inc)
            incs.append(inc)
        rotation[p] = incs
    missing = sorted(set(declared) - seen)
    if missing:
        raise MalformedDimer(ErrorMessages.MISSING_INCIDENCE.format(missing[0].text()))

    dimer = Dimer(
        punctures,
        arcs,
        rotation,
        name=str(raw.get("name", "dimer")),
        spin={_corner_key(k): v for k, v in (raw.get("spin") or {}).items()},
        angle_names={_corner_key(k): v for k, v in (raw.get("angle_names") or {}).items()},
        identity_locations={int(k): int(v) for k, v in (raw.get("identity_locations") or {}).items()},
        coidentity_locations={int(k): int(v) for k, v in (raw.get("coidentity_locations") or {}).items()},
    )
    dimer.trace_faces()

    for face in dimer.faces:
        if len(face) < 3:
            raise FaceTooShort(ErrorMessages.FACE_TOO_SHORT.format(face.index, len(face)))
        if require_dimer and face.orientation == MIXED:
            raise InconsistentFaceOrientation(ErrorMessages.FACE_ORIENTATION.format(face.index))

    graph = nx.MultiGraph()
    graph.add_nodes_from(punctures)
    graph.add_edges_from((a.tail, a.head) for a in arcs)
    components = nx.number_connected_components(graph) if punctures else 0
    if components != 1:
        raise EulerMismatch(ErrorMessages.DISCONNECTED.format(components))
    chi = dimer.euler_characteristic
    if chi > 2 or (2 - chi) % 2:
        raise EulerMismatch(ErrorMessages.BAD_EULER.format(chi))
    if dimer.genus == 0 and len(punctures) < 3:
        raise SphereTooSmall(ErrorMessages.SPHERE_TOO_SMALL.format(len(punctures)))

    logger.debug("validated %r (dimer=%s)", dimer, dimer.is_dimer)
    return dimer


@dataclass
class TriangulationRefinement:
    """Refined arc system together with the embedding of the old one."""

    original: Dimer
    dimer: Dimer
    added_arcs: List[str] = field(default_factory=list)

    def transport_corner(self, puncture: str, start: int, length: int) -> Tuple[str, int, int]:
        """Image (puncture, start, length) of an old angle in the refined rotation."""
        old_val = self.original.valence(puncture)
        new_val = self.dimer.valence(puncture)
        source = self.original.incidence(puncture, start)
        target = self.original.incidence(puncture, start + length)
        new_start = self.dimer.index_of(source)
        turns, rest = divmod(length, old_val)
        if rest == 0:
            return (puncture, new_start, turns * new_val)
        step = (self.dimer.index_of(target) - new_start) % new_val
        return (puncture, new_start, step + turns * new_val)


def triangulate_refine(dimer: Dimer) -> TriangulationRefinement:
    """
    Cut every face with more than three sides into triangles by a fan of diagonals

    Args:
        dimer (Dimer): validated arc system

    Returns:
        TriangulationRefinement: refined system, added arcs and angle transport
    """
    inserts: Dict[Corner, List[ArcIncidence]] = {}
    new_arcs = list(dimer.arcs.values())
    added = []
    for face in dimer.faces:
        k = len(face)
        if k <= 3:
            continue
        p0, j0 = face.corners[0]
        fan = []
        for j in range(2, k - 1):
            pj, sj = face.corners[j]
            arc_id = f"t{face.index}_{j}"
            new_arcs.append(Arc(arc_id, pj, p0))
            added.append(arc_id)
            inserts.setdefault((pj, sj), []).append(ArcIncidence(arc_id, HEAD))
            fan.append(ArcIncidence(arc_id, TAIL))
        # counterclockwise after the arrival incidence the far diagonals come first
        inserts.setdefault((p0, j0), []).extend(reversed(fan))
    rotation = {}
    for p in dimer.punctures:
        rot = []
        for j, inc in enumerate(dimer.rotation[p]):
            rot.append(inc)
            rot.extend(inserts.get((p, j), []))
        rotation[p] = rot
    refined = Dimer(dimer.punctures, new_arcs, rotation, name=f"{dimer.name}-triangulated")
    refined.trace_faces()
    logger.debug("triangulated %s with %d new arcs", dimer.name, len(added))
    return TriangulationRefinement(dimer, refined, added)
