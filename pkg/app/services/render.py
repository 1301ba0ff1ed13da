"""
SVG drawings of dimers, zigzag curves and smooth disks.

Punctures sit on a circle, arcs are Bezier curves between them and loops
are petals around their puncture. The layout depends only on the order of
punctures and arcs, and the SVG carries a fixed hash salt and no date, so
equal inputs give byte-identical files.
"""

import io
import logging
import math
from typing import Dict, List, Sequence, Tuple

import matplotlib
import networkx as nx
import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import PathPatch, Polygon
from matplotlib.path import Path

from app.core.exceptions import GentleEngineException, InternalServerError
from app.core.status_codes import EngineMessages
from app.services.fukaya import SmoothDisk
from app.services.surface import Dimer
from app.services.zigzag import ZigzagPath

logger = logging.getLogger(__name__)

matplotlib.rcParams["svg.hashsalt"] = "gentle-engine"

LOOP_SIZE = 0.6
BEND = 0.3


class Layout:
    """Positions of punctures and control points of arcs."""

    def __init__(self, dimer: Dimer):
        self.dimer = dimer
        graph = nx.Graph()
        graph.add_nodes_from(dimer.punctures)
        self.graph = graph
        self.pos = {p: np.asarray(xy, dtype=float) for p, xy in nx.circular_layout(graph).items()}
        self.controls: Dict[str, Tuple[np.ndarray, ...]] = {}
        groups: Dict[tuple, List[str]] = {}
        for arc in dimer.arcs.values():
            groups.setdefault(tuple(sorted((arc.tail, arc.head))), []).append(arc.id)
        for (u, v), members in groups.items():
            g = len(members)
            for m, arc_id in enumerate(members):
                arc = dimer.arcs[arc_id]
                p0, p1 = self.pos[arc.tail], self.pos[arc.head]
                if u == v:
                    theta = 2 * math.pi * (m + 0.5) / g
                    self.controls[arc_id] = (p0, p0 + LOOP_SIZE * _unit(theta - 0.35), p0 + LOOP_SIZE * _unit(theta + 0.35), p0)
                    continue
                a, b = self.pos[u], self.pos[v]
                perp = np.array([a[1] - b[1], b[0] - a[0]])
                norm = np.linalg.norm(perp) or 1.0
                offset = (m - (g - 1) / 2) * BEND
                self.controls[arc_id] = (p0, (p0 + p1) / 2 + offset * perp / norm, p1)

    def point(self, arc: str, t: float) -> np.ndarray:
        """Point at parameter t on the drawn arc, from tail to head."""
        c = self.controls[arc]
        if len(c) == 3:
            return (1 - t) ** 2 * c[0] + 2 * (1 - t) * t * c[1] + t ** 2 * c[2]
        return (1 - t) ** 3 * c[0] + 3 * (1 - t) ** 2 * t * c[1] + 3 * (1 - t) * t ** 2 * c[2] + t ** 3 * c[3]

    def midpoint(self, arc: str) -> np.ndarray:
        return self.point(arc, 0.5)

    def path(self, arc: str) -> Path:
        c = self.controls[arc]
        codes = [Path.MOVETO] + [Path.CURVE3 if len(c) == 3 else Path.CURVE4] * (len(c) - 1)
        return Path(np.vstack(c), codes)


def _unit(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def _figure() -> Tuple[Figure, object]:
    fig = Figure(figsize=(6, 6))
    ax = fig.subplots()
    ax.set_aspect("equal")
    ax.axis("off")
    return fig, ax


def _svg(fig: Figure) -> str:
    buffer = io.BytesIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue().decode("utf-8")


def _draw_dimer(ax, layout: Layout, faint: bool = False) -> None:
    color = "0.75" if faint else "0.2"
    for arc_id in layout.dimer.arc_ids:
        ax.add_patch(PathPatch(layout.path(arc_id), fill=False, edgecolor=color, linewidth=1.2))
        if not faint:
            ax.annotate(
                "", xy=layout.point(arc_id, 0.6), xytext=layout.point(arc_id, 0.5),
                arrowprops=dict(arrowstyle="->", color=color),
            )
            ax.text(*layout.point(arc_id, 0.4), arc_id, fontsize=8, color="tab:blue")
    nx.draw_networkx_nodes(layout.graph, layout.pos, ax=ax, node_color="white", edgecolors="black", node_size=300)
    nx.draw_networkx_labels(layout.graph, layout.pos, ax=ax, font_size=8)
    ax.autoscale_view()


def render_dimer(dimer: Dimer) -> str:
    """
    Draw the punctures and oriented arcs of a dimer

    Returns:
        str: SVG document
    """
    try:
        fig, ax = _figure()
        _draw_dimer(ax, Layout(dimer))
        ax.set_title(f"{dimer.name}: genus {dimer.genus}, {len(dimer.faces)} faces")
        return _svg(fig)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.RENDER_FAILED.format(str(e)))


def _slot_point(layout: Layout, path: ZigzagPath, slot: int) -> np.ndarray:
    n = len(path)
    i, odd = divmod(slot % (2 * n), 2)
    here = layout.midpoint(path.arc(i))
    if not odd:
        return here
    there = layout.midpoint(path.arc(i + 1))
    corner = layout.pos[layout.dimer.arcs[path.arc(i)].head]
    return 0.6 * (here + there) / 2 + 0.4 * corner


def render_zigzags(dimer: Dimer, paths: Sequence[ZigzagPath]) -> str:
    """Draw every zigzag curve through the midpoints and corners it passes."""
    try:
        fig, ax = _figure()
        layout = Layout(dimer)
        _draw_dimer(ax, layout, faint=True)
        for k, path in enumerate(paths):
            points = [_slot_point(layout, path, s) for s in range(2 * len(path) + 1)]
            xs, ys = zip(*points)
            ax.plot(xs, ys, color=f"C{k % 10}", linewidth=1.5, label=path.name)
        ax.legend(loc="upper right", fontsize=7)
        ax.set_title(f"{dimer.name}: {len(paths)} zigzag curves")
        return _svg(fig)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.RENDER_FAILED.format(str(e)))


def render_disk(dimer: Dimer, paths: Sequence[ZigzagPath], disk: SmoothDisk) -> str:
    """Shade a smooth disk, mark its inputs, output and covered punctures."""
    try:
        fig, ax = _figure()
        layout = Layout(dimer)
        _draw_dimer(ax, layout, faint=True)
        by_index = {p.index: p for p in paths}
        outline = []
        corners = []
        for segment in disk.segments:
            path = by_index[segment.path]
            step = 1 if segment.forward else -1
            corners.append(_slot_point(layout, path, segment.start))
            for k in range(segment.steps + 1):
                outline.append(_slot_point(layout, path, segment.start + k * step))
        if len(outline) >= 3:
            ax.add_patch(Polygon(np.vstack(outline), closed=True, facecolor="tab:red", alpha=0.3, edgecolor="tab:red"))
        for k, corner in enumerate(corners):
            marker = "s" if k == 0 else "o"
            ax.plot(*corner, marker=marker, color="black", markersize=5)
        for puncture, count in disk.covered:
            ax.plot(*layout.pos[puncture], marker="o", markersize=16, markerfacecolor="none", markeredgecolor="tab:red")
            ax.text(*(layout.pos[puncture] + 0.08), str(count), color="tab:red", fontsize=8)
        label = ", ".join(e.text() for e in disk.inputs)
        ax.set_title(f"{disk.kind} disk -> {disk.output.text()}\n{label}", fontsize=8)
        return _svg(fig)
    except GentleEngineException:
        raise
    except Exception as e:
        raise InternalServerError(detail=EngineMessages.RENDER_FAILED.format(str(e)))
