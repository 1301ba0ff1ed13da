"""
Enumeration of discrete immersed disks by corner peeling.

A disk with boundary corners c_0 ... c_{k-1} contains exactly one tile in
the first sector of c_0. Removing that tile splits the rest of the disk
into smaller disks, one between each pair of consecutive places where the
tile touches the boundary, so disks are enumerated recursively over the
possible contact patterns of the peeled tile.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.services.development import Development
from app.services.surface import Dimer

logger = logging.getLogger(__name__)

CornerTriple = Tuple[str, int, int]
Signature = Tuple[int, Tuple[Tuple[str, int], ...], Tuple[Tuple[int, int], ...]]


@dataclass(frozen=True)
class ImmersedDisk:
    """A polygon immersion: boundary corners, face tiling and covered punctures."""

    boundary: Tuple[CornerTriple, ...]
    area: int
    covered: Tuple[Tuple[str, int], ...]
    faces: Tuple[Tuple[int, int], ...]
    tiling: tuple = ()

    @property
    def covered_counts(self) -> Counter:
        return Counter(dict(self.covered))

    @property
    def covered_total(self) -> int:
        return sum(n for _, n in self.covered)

    @property
    def signature(self) -> Signature:
        return (self.area, self.covered, self.faces)


@dataclass
class DiskSearch:
    disks: List[ImmersedDisk] = field(default_factory=list)
    complete: bool = True

    def __len__(self) -> int:
        return len(self.disks)


def _freeze(counter: Counter) -> tuple:
    return tuple(sorted((k, v) for k, v in counter.items() if v))


def _signature(area: int, covered: Counter, faces: Counter) -> Signature:
    return (area, _freeze(covered), _freeze(faces))


def _merge(a: Signature, b: Signature) -> Signature:
    covered = Counter(dict(a[1]))
    covered.update(dict(b[1]))
    faces = Counter(dict(a[2]))
    faces.update(dict(b[2]))
    return _signature(a[0] + b[0], covered, faces)


def canonical_rotation(word: Sequence[CornerTriple]) -> Tuple[CornerTriple, ...]:
    word = tuple(word)
    return min(word[i:] + word[:i] for i in range(len(word)))


def is_closed_word(dimer: Dimer, word: Sequence[CornerTriple]) -> bool:
    """Consecutive corners meet along a common arc, cyclically."""
    if not word:
        return False
    for i, (p, s, m) in enumerate(word):
        if m < 1:
            return False
        q, t, _ = word[(i + 1) % len(word)]
        if dimer.incidence(q, t) != dimer.incidence(p, s + m).opposite():
            return False
    return True


class Peeler:
    """Shared peeling step; subclasses decide memoization and contact enumeration."""

    def __init__(self, dimer: Dimer, development: Optional[Development] = None):
        self.dimer = dimer
        self.development = development

    def _normalize(self, corner: CornerTriple) -> CornerTriple:
        p, s, m = corner
        return (p, s % self.dimer.valence(p), m)

    def _closes(self, word) -> bool:
        if self.development is None or self.development.rank == 0:
            return True
        return self.development.closes(word)

    def peeled_face(self, word):
        """The face in the first sector of c_0, as a list of (puncture, sector) from there."""
        p, s, _ = word[0]
        face_id, slot = self.dimer.corner_face[(p, s % self.dimer.valence(p))]
        corners = self.dimer.faces[face_id].corners
        return face_id, list(corners[slot:] + corners[:slot])

    def contact_options(self, word, vertex) -> List[Tuple[int, int]]:
        """All (t, d) with corner t of the word occupying sector d at `vertex`."""
        vp, vj = vertex
        options = []
        for t in range(1, len(word) - 1):
            p, s, m = word[t]
            if p != vp:
                continue
            val = self.dimer.valence(p)
            for d in range((vj - s) % val, m, val):
                options.append((t, d))
        return options

    def pieces(self, word, face, contacts):
        """
        Split the word after peeling `face` with the given contact pattern

        Returns:
            Optional[Tuple[List[tuple], Counter]]: piece words and covered punctures of
            the non-contact vertices, or None when the pattern is impossible
        """
        k = len(word)
        n = len(face)
        if n < 2:
            return None
        covered: Counter = Counter()
        marks = [(0, 0, 0)]
        for j in range(1, n - 1):
            if contacts[j - 1] is None:
                covered[face[j][0]] += 1
            else:
                t, d = contacts[j - 1]
                marks.append((j, t, d))
        marks.append((n - 1, k - 1, word[k - 1][2] - 1))
        result = []
        for (ja, ta, da), (jb, tb, db) in zip(marks, marks[1:]):
            pa, sa, ma = word[ta]
            pb, sb, _ = word[tb]
            after = ma - da - 1
            before = db
            if jb == ja + 1 and tb == ta + 1 and after == 0 and before == 0:
                continue
            if after < 1 or before < 1:
                return None
            piece = [(pa, sa + da + 1, after)]
            piece.extend(word[ta + 1:tb])
            piece.append((pb, sb, before))
            for j in range(jb - 1, ja, -1):
                vp, vj = face[j]
                val = self.dimer.valence(vp)
                if val < 2:
                    return None
                piece.append((vp, vj + 1, val - 1))
            piece = [self._normalize(c) for c in piece]
            if not self._closes(piece):
                return None
            result.append(piece)
        return result, covered

    def monogon_pieces(self, word, face):
        """Peeling when the word has a single corner."""
        p, s, m = word[0]
        n = len(face)
        if n == 1:
            return ([], Counter()) if m == 1 else None
        covered = Counter(face[j][0] for j in range(1, n - 1))
        if m == 2 and n == 2:
            return [], covered
        if m < 3:
            return None
        piece = [(p, s + 1, m - 2)]
        for j in range(n - 2, 0, -1):
            vp, vj = face[j]
            piece.append((vp, vj + 1, self.dimer.valence(vp) - 1))
        piece = [self._normalize(c) for c in piece]
        if not self._closes(piece):
            return None
        return [piece], covered


class DiskEngine(Peeler):
    """
    Memoized disk search over a fixed dimer.

    Results for a piece are keyed by the canonical rotation of its word and
    the remaining area and cover budgets.
    """

    def __init__(self, dimer: Dimer):
        development = Development(dimer)
        super().__init__(dimer, development)
        self._memo: Dict[tuple, Tuple[Dict[Signature, List[tuple]], bool]] = {}

    def find_disks(self, word: Sequence[CornerTriple], area_cap: int, cover_cap: int) -> DiskSearch:
        """
        Enumerate immersed disks with the given corner word

        Args:
            word (Sequence[CornerTriple]): boundary corners (puncture, start, length) in order
            area_cap (int): maximal number of face copies
            cover_cap (int): maximal total covered multiplicity

        Returns:
            DiskSearch: disks found and whether the search was exhaustive within the caps
        """
        word = tuple(self._normalize(c) for c in word)
        if not is_closed_word(self.dimer, word):
            return DiskSearch([], True)
        if self.development.genus <= 1:
            region = self.development.develop(word)
            if region is None:
                return DiskSearch([], True)
            total_cover = sum(region.covered.values())
            if total_cover > cover_cap:
                return DiskSearch([], True)
            if region.area > area_cap:
                logger.warning("disk of area %d for %s exceeds area cap %d", region.area, word, area_cap)
                return DiskSearch([], False)
            found, _ = self._search(canonical_rotation(word), region.area, cover_cap)
            complete = True
        else:
            if not self.development.closes(word):
                return DiskSearch([], True)
            found, pruned = self._search(canonical_rotation(word), area_cap, cover_cap)
            complete = not pruned
        disks = []
        for sig in sorted(found):
            for witness in found[sig]:
                disks.append(ImmersedDisk(word, sig[0], sig[1], sig[2], witness))
        logger.debug("%d disks for %s (complete=%s, memo=%d)", len(disks), word, complete, len(self._memo))
        return DiskSearch(disks, complete)

    def _search(self, word, area, cover):
        key = (word, area, cover)
        if key in self._memo:
            return self._memo[key]
        if area < 1:
            self._memo[key] = ({}, True)
            return self._memo[key]
        face_id, face = self.peeled_face(word)
        results: Dict[Signature, List[tuple]] = {}
        pruned = False
        if len(word) == 1:
            patterns = [self.monogon_pieces(word, face)]
        else:
            patterns = (self.pieces(word, face, c) for c in self._contact_patterns(word, face))
        for split in patterns:
            if split is None:
                continue
            pieces, covered = split
            spent = sum(covered.values())
            if spent > cover:
                continue
            base = (_signature(1, covered, Counter({face_id: 1})), [(face_id,)])
            combos = [base]
            for piece in pieces:
                sub, sub_pruned = self._search(canonical_rotation(piece), area - 1, cover - spent)
                pruned = pruned or sub_pruned
                combos = self._combine(combos, sub, area, cover)
                if not combos:
                    break
            for sig, witnesses in combos:
                results.setdefault(sig, []).extend(witnesses)
        self._memo[key] = (results, pruned)
        return self._memo[key]

    @staticmethod
    def _combine(combos, sub, area, cover):
        out = []
        for sig, witnesses in combos:
            for sub_sig, sub_witnesses in sub.items():
                merged = _merge(sig, sub_sig)
                if merged[0] > area or sum(n for _, n in merged[1]) > cover:
                    continue
                out.append((merged, [w + (sw,) for w in witnesses for sw in sub_witnesses]))
        return out

    def _contact_patterns(self, word, face):
        n = len(face)
        options = [self.contact_options(word, face[j]) for j in range(1, n - 1)]

        def extend(j, min_t):
            if j == len(options):
                yield ()
                return
            for rest in extend(j + 1, min_t):
                yield (None,) + rest
            for t, d in options[j]:
                if t > min_t:
                    for rest in extend(j + 1, t):
                        yield ((t, d),) + rest

        return extend(0, 0)

    def clear(self) -> None:
        self._memo.clear()


AtlasState = Tuple[Tuple[CornerTriple, ...], Tuple[Tuple[str, int], ...], Tuple[Tuple[int, int], ...]]


class DiskAtlas:
    """
    All immersed disks up to an area cap, assembled face by face

    Every disk is grown from a single face by gluing one more face across a
    boundary arc. A corner that closes up to exactly one full turn may then
    be zipped: its two arcs are identified and the puncture becomes covered.
    Nothing here peels, develops or memoizes, so the atlas serves as an
    independent check on DiskEngine.
    """

    def __init__(self, dimer: Dimer, area_cap: int):
        self.dimer = dimer
        self.area_cap = area_cap
        self._by_word: Dict[Tuple[CornerTriple, ...], set] = {}
        self._build()

    def _norm(self, corner: CornerTriple) -> CornerTriple:
        p, s, m = corner
        return (p, s % self.dimer.valence(p), m)

    def _state(self, word, covered: Counter, faces: Counter) -> AtlasState:
        return (canonical_rotation([self._norm(c) for c in word]), _freeze(covered), _freeze(faces))

    def _build(self) -> None:
        layer = set()
        for face in self.dimer.faces:
            word = [(p, j, 1) for p, j in face.corners]
            for state in self._zipped(word, Counter(), Counter({face.index: 1})):
                layer.add(state)
        area = 1
        while layer and area <= self.area_cap:
            for word, covered, faces in layer:
                self._by_word.setdefault(word, set()).add((area, covered, faces))
            if area == self.area_cap:
                break
            grown = set()
            for word, covered, faces in layer:
                for i in range(len(word)):
                    grown.update(self._glue(word, i, Counter(dict(covered)), Counter(dict(faces))))
            layer = grown
            area += 1
        logger.debug("disk atlas up to area %d: %d boundary words", self.area_cap, len(self._by_word))

    def _glue(self, word, i, covered: Counter, faces: Counter) -> List[AtlasState]:
        """Attach the face on the far side of the arc leaving corner i."""
        k = len(word)
        w = list(word[i:] + word[:i])
        p, s, m = w[0]
        q, t, m2 = w[1 % k]
        face_id, slot = self.dimer.corner_face[(p, (s + m) % self.dimer.valence(p))]
        corners = self.dimer.faces[face_id].corners
        ring = list(corners[slot:] + corners[:slot])
        if ring[-1] != (q, (t - 1) % self.dimer.valence(q)):
            raise ValueError(f"face {face_id} does not return along the arc after {w[0]}")
        middle = [(vp, vj, 1) for vp, vj in ring[1:-1]]
        if len(ring) == 1:
            if k == 1:
                return []
            new = [(p, s, m + 1 + m2)] + w[2:]
        elif k == 1:
            new = middle + [(p, s - 1, m + 2)]
        else:
            new = [(p, s, m + 1)] + middle + [(q, t - 1, m2 + 1)] + w[2:]
        faces = faces + Counter({face_id: 1})
        return self._zipped(new, covered, faces)

    def _zipped(self, word, covered: Counter, faces: Counter) -> List[AtlasState]:
        """The word itself and everything reachable by zipping full-turn corners."""
        start = (tuple(self._norm(c) for c in word), _freeze(covered))
        seen = {start}
        stack = [start]
        while stack:
            w, cov = stack.pop()
            k = len(w)
            if k < 3:
                continue
            for z, (p, _, m) in enumerate(w):
                if m != self.dimer.valence(p):
                    continue
                before = w[(z - 1) % k]
                after = w[(z + 1) % k]
                merged = (before[0], before[1], before[2] + after[2])
                rest = [w[(z + 2 + r) % k] for r in range(k - 3)]
                nxt_cov = Counter(dict(cov))
                nxt_cov[p] += 1
                nxt = (tuple([merged] + rest), _freeze(nxt_cov))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return [self._state(w, Counter(dict(cov)), faces) for w, cov in seen]

    @property
    def words(self) -> List[Tuple[CornerTriple, ...]]:
        return sorted(self._by_word)

    def disks(self, word: Sequence[CornerTriple]) -> List[ImmersedDisk]:
        key = canonical_rotation([self._norm(c) for c in word]) if word else ()
        word = tuple(word)
        return [
            ImmersedDisk(word, area, covered, faces)
            for area, covered, faces in sorted(self._by_word.get(key, ()))
        ]


def brute_disk_oracle(dimer: Dimer, word: Sequence[CornerTriple], area_cap: int) -> List[ImmersedDisk]:
    """Disks bounded by `word` according to a freshly built DiskAtlas."""
    return DiskAtlas(dimer, area_cap).disks(word)


def disk_signatures(disks: Iterable[ImmersedDisk]) -> Counter:
    """Multiset of (area, covered, faces) used to compare enumerations."""
    return Counter(d.signature for d in disks)
