"""
Structural checks that need the cover: geometric consistency by zigzag rays
and the monogon/digon conditions by bounded disk search.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from app.services.development import Development, Vector, _add, _sub
from app.services.disks import DiskEngine, ImmersedDisk, is_closed_word
from app.services.surface import Dimer
from app.services.zigzag import LEFT, RIGHT, step_backward, step_forward

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    CONSISTENT = "Consistent"
    INCONSISTENT = "Inconsistent"
    HOLDS = "Holds"
    VIOLATED = "Violated"
    UNKNOWN = "Unknown"


@dataclass
class CheckResult:
    verdict: Verdict
    reason: str = ""
    witness: Optional[ImmersedDisk] = None

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict.value, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = {
                "boundary": [list(c) for c in self.witness.boundary],
                "area": self.witness.area,
                "covered": dict(self.witness.covered),
            }
        return out


# ----------------------------------------------------------------------
# zigzag rays

RAYS = ((1, True, RIGHT), (2, True, LEFT), (3, False, RIGHT), (4, False, LEFT))


class Ray:
    """A zigzag ray in the cover, stored as one period plus its translation."""

    def __init__(self, development: Development, arc: str, forward: bool, first_turn: str):
        dimer = development.dimer
        self.copies: List[Tuple[str, Vector]] = []
        state = (arc, first_turn)
        position = development.zero
        start = state
        while True:
            self.copies.append((state[0], position))
            current, turn = state
            if forward:
                nxt = step_forward(dimer, current, turn)
                position = _add(position, development.translation[current])
            else:
                nxt = step_backward(dimer, current, turn)
                position = _sub(position, development.translation[nxt])
            state = (nxt, LEFT if turn == RIGHT else RIGHT)
            if state == start:
                break
        self.period = len(self.copies)
        self.shift = position

    def at(self, i: int) -> Tuple[str, Vector]:
        turns, r = divmod(i, self.period)
        arc, w = self.copies[r]
        return arc, tuple(a + turns * v for a, v in zip(w, self.shift))


def _nonneg_solutions(vk: Vector, vl: Vector, b: Vector, limit: int = 64):
    """
    Yield (s, t) >= 0 with s * vk - t * vl = b, or a single None when the set is infinite.
    """
    dim = len(b)
    for i in range(dim):
        for j in range(i + 1, dim):
            det = vk[i] * (-vl[j]) - (-vl[i]) * vk[j]
            if det:
                s = Fraction(b[i] * (-vl[j]) - (-vl[i]) * b[j], det)
                t = Fraction(vk[i] * b[j] - b[i] * vk[j], det)
                if s.denominator == 1 and t.denominator == 1 and s >= 0 and t >= 0:
                    s, t = int(s), int(t)
                    if all(s * vk[c] - t * vl[c] == b[c] for c in range(dim)):
                        yield (s, t)
                return
    # vk and vl are parallel (or zero): reduce to a scalar equation along u
    base = vk if any(vk) else vl
    if not any(base):
        if not any(b):
            yield None
        return
    g = 0
    for c in base:
        g = gcd(g, abs(c))
    u = tuple(c // g for c in base)
    pivot = next(c for c in range(dim) if u[c])

    def coordinate(v):
        factor = Fraction(v[pivot], u[pivot])
        if factor.denominator != 1 or tuple(int(factor) * c for c in u) != tuple(v):
            return None
        return int(factor)

    a, c, beta = coordinate(vk), coordinate(vl), coordinate(b)
    if beta is None:
        return
    if a == 0 and c == 0:
        if beta == 0:
            yield None
        return
    if c == 0:
        if beta % a == 0 and beta // a >= 0:
            yield None
        return
    if a == 0:
        if (-beta) % c == 0 and (-beta) // c >= 0:
            yield None
        return
    if a * c > 0:
        if beta % gcd(abs(a), abs(c)) == 0:
            yield None
        return
    # opposite directions: finitely many solutions
    for s in range(0, limit + 1):
        rest = s * a - beta
        if rest % c == 0 and rest // c >= 0:
            yield (s, rest // c)


def _rays_collide(ray_k: Ray, k: int, ray_l: Ray, l: int) -> bool:
    for r, (arc_r, w_r) in enumerate(ray_k.copies):
        for r2, (arc_s, w_s) in enumerate(ray_l.copies):
            if arc_r != arc_s:
                continue
            if ray_k is ray_l and r == r2:
                if not any(ray_k.shift):
                    return True
                continue
            for solution in _nonneg_solutions(ray_k.shift, ray_l.shift, _sub(w_s, w_r)):
                if solution is None:
                    return True
                s, t = solution
                i = r + s * ray_k.period
                j = r2 + t * ray_l.period
                if (k == l and i == j) or (i == 0 and j == 0):
                    continue
                return True
    return False


def check_consistency(dimer: Dimer, radius: int) -> CheckResult:
    """
    Geometric consistency from the four zigzag rays of every arc

    Args:
        dimer (Dimer): validated dimer
        radius (int): number of ray steps developed explicitly

    Returns:
        CheckResult: Consistent, Inconsistent or Unknown with a reason
    """
    if radius <= 0:
        return CheckResult(Verdict.UNKNOWN, "radius 0: nothing developed")
    if not dimer.is_dimer:
        return CheckResult(Verdict.UNKNOWN, "zigzag rays need uniformly oriented faces")
    development = Development(dimer)
    exact = development.genus <= 1
    longest = 0
    for arc in dimer.arc_ids:
        rays = {k: Ray(development, arc, forward, turn) for k, forward, turn in RAYS}
        longest = max(longest, max(r.period for r in rays.values()))
        seen = {}
        for k, ray in rays.items():
            for i in range(radius + 1):
                copy = ray.at(i)
                if copy in seen:
                    j, l = seen[copy]
                    if not (i == j == 0):
                        if exact:
                            reason = f"rays {l} and {k} from {arc} meet at steps {j} and {i}"
                            return CheckResult(Verdict.INCONSISTENT, reason)
                        return CheckResult(Verdict.UNKNOWN, f"rays from {arc} meet in the abelian cover")
                else:
                    seen[copy] = (i, k)
    if development.genus == 0:
        return CheckResult(Verdict.UNKNOWN, f"no coincidence within radius {radius}")
    if radius < longest:
        return CheckResult(Verdict.UNKNOWN, f"radius {radius} is shorter than a ray period {longest}")
    for arc in dimer.arc_ids:
        rays = [(k, Ray(development, arc, forward, turn)) for k, forward, turn in RAYS]
        for a in range(len(rays)):
            for b in range(a, len(rays)):
                (k, ray_k), (l, ray_l) = rays[a], rays[b]
                if _rays_collide(ray_k, k, ray_l, l):
                    if exact:
                        return CheckResult(Verdict.UNKNOWN, f"rays {k} and {l} from {arc} meet beyond radius {radius}")
                    return CheckResult(Verdict.UNKNOWN, f"rays from {arc} meet in the abelian cover")
    logger.debug("consistency certificate for %s at radius %d", dimer.name, radius)
    return CheckResult(Verdict.CONSISTENT, "rays separated by their translation lattice")


# ----------------------------------------------------------------------
# monogons and digons


def _short_words(dimer: Dimer):
    corners = []
    for p in dimer.punctures:
        val = dimer.valence(p)
        for s in range(val):
            for m in range(1, val + 1):
                corners.append((p, s, m))
    for c in corners:
        if is_closed_word(dimer, (c,)):
            yield (c,)
    for i, c in enumerate(corners):
        for d in corners[i:]:
            if is_closed_word(dimer, (c, d)):
                yield (c, d)


def _check_short_disks(dimer: Dimer, area_cap: int, cover_cap: int, label: str) -> CheckResult:
    if area_cap <= 0:
        return CheckResult(Verdict.UNKNOWN, "area cap 0: nothing searched")
    engine = DiskEngine(dimer)
    complete = True
    for word in _short_words(dimer):
        search = engine.find_disks(word, area_cap, cover_cap)
        if search.disks:
            kind = "monogon" if len(word) == 1 else "digon"
            return CheckResult(Verdict.VIOLATED, f"{label}: {kind} bounded by {word}", search.disks[0])
        complete = complete and search.complete
    if not complete:
        return CheckResult(Verdict.UNKNOWN, f"{label}: search truncated at area {area_cap}")
    return CheckResult(Verdict.HOLDS, f"{label}: no monogon or digon within area {area_cap}")


def check_nmd(dimer: Dimer, area_cap: int) -> CheckResult:
    """No monogons or digons avoiding the punctures."""
    return _check_short_disks(dimer, area_cap, 0, "NMD")


def check_nmdc(dimer: Dimer, area_cap: int) -> CheckResult:
    """No monogons or digons in the closed surface; disks may cover punctures."""
    return _check_short_disks(dimer, area_cap, area_cap * max(len(dimer.punctures), 1), "NMDC")
