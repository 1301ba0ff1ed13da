"""
Development of corner words in a cover of the surface.

Arcs get translation vectors from a tree-cotree decomposition: spanning-tree
arcs translate by 0, the 2g leftover generators by unit vectors, and the
cotree arcs are solved from the face relations. On the torus this lattice
is the universal cover; on the sphere the cover is the sphere itself; on
higher genus it is only the maximal abelian cover, which still detects
non-closing boundaries.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.services.surface import TAIL, Dimer

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
CornerWord = Sequence[Tuple[str, int, int]]
CurveKey = Tuple[str, Vector]


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _scale(u: Vector, c: int) -> Vector:
    return tuple(c * a for a in u)


@dataclass
class Region:
    """Face multiplicities of the unique candidate disk bounded by a word."""

    area: int
    faces: Counter = field(default_factory=Counter)
    covered: Counter = field(default_factory=Counter)


class Development:
    """Translation lattice of a dimer and the winding-number development of closed words."""

    def __init__(self, dimer: Dimer):
        self.dimer = dimer
        self.genus = dimer.genus
        self.rank = 2 * self.genus
        self.zero: Vector = (0,) * self.rank
        self.tree_arcs, self.cotree, self.generators = self._tree_cotree()
        self.translation = self._solve_translations()
        self.face_offsets = self._face_offsets()
        self._escapes: Dict[int, Tuple[List[Tuple[CurveKey, int]], Vector]] = {}
        self._cycle: Optional[Tuple[List[Tuple[CurveKey, int]], Vector]] = None
        logger.debug(
            "development of %s: %d tree arcs, %d cotree arcs, generators %s",
            dimer.name, len(self.tree_arcs), self.cotree.number_of_edges(), self.generators,
        )

    # ------------------------------------------------------------------
    # lattice

    def _tree_cotree(self):
        d = self.dimer
        primal = nx.MultiGraph()
        primal.add_nodes_from(d.punctures)
        for arc_id in d.arc_ids:
            arc = d.arcs[arc_id]
            primal.add_edge(arc.tail, arc.head, key=arc_id)
        tree = {k for _, _, k in nx.minimum_spanning_edges(primal, algorithm="kruskal", keys=True, data=False)}

        dual = nx.MultiGraph()
        dual.add_nodes_from(range(len(d.faces)))
        for arc_id in d.arc_ids:
            if arc_id in tree:
                continue
            right, _ = d.right_face(arc_id)
            left, _ = d.left_face(arc_id)
            dual.add_edge(right, left, key=arc_id)
        cotree_edges = list(nx.minimum_spanning_edges(dual, algorithm="kruskal", keys=True, data=False))
        cotree = nx.Graph()
        cotree.add_nodes_from(range(len(d.faces)))
        for u, v, k in cotree_edges:
            cotree.add_edge(u, v, arc=k)
        used = tree | {k for _, _, k in cotree_edges}
        generators = [a for a in d.arc_ids if a not in used]
        return tree, cotree, generators

    def _solve_translations(self) -> Dict[str, Vector]:
        d = self.dimer
        tau: Dict[str, Vector] = {a: self.zero for a in self.tree_arcs}
        for i, arc_id in enumerate(self.generators):
            tau[arc_id] = tuple(1 if j == i else 0 for j in range(self.rank))
        unknown = {data["arc"] for _, _, data in self.cotree.edges(data=True)}
        while unknown:
            progress = False
            for face in d.faces:
                pending = [(arc, fwd) for arc, fwd in face.arcs if arc in unknown]
                if len(pending) != 1:
                    continue
                arc_id, fwd = pending[0]
                total = self.zero
                for other, other_fwd in face.arcs:
                    if other == arc_id:
                        continue
                    total = _add(total, tau[other] if other_fwd else _scale(tau[other], -1))
                tau[arc_id] = _scale(total, -1) if fwd else total
                unknown.discard(arc_id)
                progress = True
            if not progress:
                raise RuntimeError(f"cotree translations of {d.name} are underdetermined")
        return tau

    def _face_offsets(self) -> Dict[int, List[Vector]]:
        offsets = {}
        for face in self.dimer.faces:
            offs = [self.zero]
            for arc_id, fwd in face.arcs[:-1]:
                step = self.translation[arc_id] if fwd else _scale(self.translation[arc_id], -1)
                offs.append(_add(offs[-1], step))
            offsets[face.index] = offs
        return offsets

    # ------------------------------------------------------------------
    # lifting

    def step(self, leave, position: Vector) -> Tuple[CurveKey, int, Vector]:
        """Cross the arc of incidence `leave` from `position`; returns (key, direction, arrival)."""
        tau = self.translation[leave.arc]
        if leave.end == TAIL:
            return (leave.arc, position), 1, _add(position, tau)
        arrival = _sub(position, tau)
        return (leave.arc, arrival), -1, arrival

    def lift(self, word: CornerWord, start: Optional[Vector] = None):
        """Lift a corner word; returns (net arc-copy counts, lifted corner positions, end position)."""
        position = start if start is not None else self.zero
        net: Counter = Counter()
        positions = []
        for p, s, m in word:
            positions.append((p, position))
            leave = self.dimer.incidence(p, s + m)
            key, direction, position = self.step(leave, position)
            net[key] += direction
        return net, positions, position

    def closes(self, word: CornerWord) -> bool:
        return self.lift(word)[2] == self.zero

    # ------------------------------------------------------------------
    # face copies

    def right_copy(self, key: CurveKey) -> Tuple[int, Vector]:
        arc_id, w = key
        face, slot = self.dimer.right_face(arc_id)
        return face, _sub(w, self.face_offsets[face][slot])

    def left_copy(self, key: CurveKey) -> Tuple[int, Vector]:
        arc_id, w = key
        face, slot = self.dimer.left_face(arc_id)
        return face, _sub(_add(w, self.translation[arc_id]), self.face_offsets[face][slot])

    def crossings(self, copy: Tuple[int, Vector]):
        """Yield (key, neighbour copy, sign) for each side; n(neighbour) = n(copy) + sign * net[key]."""
        face_id, base = copy
        face = self.dimer.faces[face_id]
        for slot, (arc_id, fwd) in enumerate(face.arcs):
            corner_pos = _add(base, self.face_offsets[face_id][slot])
            if fwd:
                key = (arc_id, corner_pos)
                yield key, self.left_copy(key), -1
            else:
                key = (arc_id, _sub(corner_pos, self.translation[arc_id]))
                yield key, self.right_copy(key), 1

    def _crossing_to(self, copy, target_face: int):
        for key, neighbour, sign in self.crossings(copy):
            if neighbour[0] == target_face and self.cotree.has_edge(copy[0], target_face) \
                    and self.cotree[copy[0]][target_face]["arc"] == key[0]:
                return key, neighbour, sign
        raise RuntimeError(f"no cotree crossing from face {copy[0]} to {target_face}")

    def _walk(self, faces: List[int], start: Tuple[int, Vector]):
        copy = start
        steps = []
        for target in faces[1:]:
            key, copy, sign = self._crossing_to(copy, target)
            steps.append((key, sign))
        return steps, copy

    def _escape(self, face_id: int):
        if face_id not in self._escapes:
            path = nx.shortest_path(self.cotree, face_id, 0)
            steps, end = self._walk(path, (face_id, self.zero))
            self._escapes[face_id] = (steps, end[1])
        return self._escapes[face_id]

    def _generator_cycle(self):
        if self._cycle is None:
            for arc_id in self.generators:
                right, _ = self.dimer.right_face(arc_id)
                left, _ = self.dimer.left_face(arc_id)
                steps, copy = self._walk(nx.shortest_path(self.cotree, 0, right), (0, self.zero))
                for key, neighbour, sign in self.crossings(copy):
                    if key[0] == arc_id and neighbour[0] == left:
                        steps.append((key, sign))
                        copy = neighbour
                        break
                back, copy = self._walk(nx.shortest_path(self.cotree, left, 0), copy)
                steps.extend(back)
                if copy[1] != self.zero:
                    self._cycle = (steps, copy[1])
                    break
            else:
                raise RuntimeError(f"{self.dimer.name} has no translating dual cycle")
        return self._cycle

    def _far_multiplicity(self, copy, net: Counter) -> int:
        """Multiplicity of a face copy, measured against the unbounded region."""
        steps, end = self._escape(copy[0])
        base = copy[1]
        total = 0
        for (arc_id, o), sign in steps:
            total += sign * net.get((arc_id, _add(base, o)), 0)
        cycle, v = self._generator_cycle()
        start = _add(base, end)
        by_arc: Dict[str, List[Tuple[Vector, int]]] = {}
        for (arc_id, w), count in net.items():
            if count:
                by_arc.setdefault(arc_id, []).append((w, count))
        pivot = next(i for i, c in enumerate(v) if c)
        for (arc_id, o), sign in cycle:
            for w, count in by_arc.get(arc_id, ()):
                diff = _sub(w, _add(start, o))
                if diff[pivot] % v[pivot]:
                    continue
                j = diff[pivot] // v[pivot]
                if j >= 0 and diff == _scale(v, j):
                    total += sign * count
        return -total

    # ------------------------------------------------------------------
    # development

    def develop(self, word: CornerWord) -> Optional[Region]:
        """
        Face multiplicities forced by a closed boundary word

        Args:
            word (CornerWord): cyclic list of (puncture, start, length) corners

        Returns:
            Optional[Region]: the only possible area/faces/covered data, or None when
            no immersed disk can have this boundary. Genus >= 2 is not supported.
        """
        if self.genus >= 2:
            raise ValueError("exact development needs genus 0 or 1")
        net, positions, end = self.lift(word)
        if end != self.zero:
            return None
        net = Counter({k: v for k, v in net.items() if v})
        if self.genus == 0:
            multiplicity = self._propagate({(0, self.zero): 0}, net, explore_all=True)
            if multiplicity is None:
                return None
            return self._sphere_region(word, multiplicity)
        seeds = {}
        for key in net:
            for copy in (self.right_copy(key), self.left_copy(key)):
                if copy not in seeds:
                    seeds[copy] = self._far_multiplicity(copy, net)
        multiplicity = self._propagate(seeds, net, explore_all=False)
        if multiplicity is None:
            return None
        return self._region(word, positions, multiplicity, shift=0)

    def _propagate(self, seeds, net: Counter, explore_all: bool):
        values = dict(seeds)
        queue = deque(c for c, n in values.items() if explore_all or n)
        while queue:
            copy = queue.popleft()
            n = values[copy]
            for key, neighbour, sign in self.crossings(copy):
                expected = n + sign * net.get(key, 0)
                if neighbour in values:
                    if values[neighbour] != expected:
                        return None
                    continue
                values[neighbour] = expected
                if explore_all or expected:
                    queue.append(neighbour)
        return values

    def _sphere_region(self, word: CornerWord, multiplicity) -> Optional[Region]:
        d = self.dimer
        base = self._region(word, None, multiplicity, shift=0, check=False)
        if base is None:
            return None
        area0, faces0, covered0 = base
        k = len(word)
        sides = sum(len(d.faces[f]) * n for f, n in faces0.items())
        if (sides + k) % 2:
            return None
        # wrapping the whole sphere once more raises the Euler characteristic by 2
        chi0 = sum(covered0.values()) + k - (sides + k) // 2 + area0
        if (1 - chi0) % 2:
            return None
        shift = (1 - chi0) // 2
        return self._region(word, None, multiplicity, shift=shift)

    def _region(self, word, positions, multiplicity, shift: int, check: bool = True):
        d = self.dimer
        faces: Counter = Counter()
        around: Counter = Counter()
        for (face_id, base), n in multiplicity.items():
            n += shift
            if check and n < 0:
                return None
            if n:
                faces[face_id] += n
                for slot, (p, _) in enumerate(d.faces[face_id].corners):
                    around[(p, _add(base, self.face_offsets[face_id][slot]))] += n
        if positions is None:
            positions = [(p, self.zero) for p, _, _ in word]
        for (p, w), (_, _, m) in zip(positions, word):
            around[(p, w)] -= m
        covered: Counter = Counter()
        for (p, w), total in around.items():
            val = d.valence(p)
            if total % val:
                return None
            if check and total < 0:
                return None
            if total:
                covered[p] += total // val
        area = sum(faces.values())
        if not check:
            return area, faces, covered
        # an immersed polygon has Euler characteristic 1
        k = len(word)
        sides = sum(len(d.faces[f]) * n for f, n in faces.items())
        if (sides + k) % 2 or sum(covered.values()) + k - (sides + k) // 2 + area != 1:
            return None
        return Region(area, faces, covered)
