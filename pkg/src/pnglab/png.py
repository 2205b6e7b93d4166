"""Polynuclear growth: heights via longest chains, plus an event-driven oracle.

The fast path computes ``h(x, T)`` as the longest increasing chain of
polymer-frame points inside the backward light cone of ``(x, T)``.  The
slow path, :func:`simulate_png_dynamics`, runs the actual step dynamics
(nucleate, spread at unit speed, annihilate) and exists to cross-check it.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .combinatorics import lis_length, rsk_shape, comparison_permutation
from .pointfield import PointField, polymer_to_spacetime

DEFAULT_DEPTH = 5
DEFAULT_GRID_POINTS = 201


@dataclass(frozen=True)
class HeightProfile:
    t: float
    xs: np.ndarray
    hs: np.ndarray

    def to_csv(self, path) -> None:
        lines = ["x,h"] + [f"{x:.17g},{int(h)}" for x, h in zip(self.xs, self.hs)]
        Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class LineEnsemble:
    t: float
    levels: dict[int, int]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "levels": {str(k): v for k, v in self.levels.items()}})

    @classmethod
    def from_json(cls, text: str) -> "LineEnsemble":
        d = json.loads(text)
        return cls(float(d["t"]), {int(k): int(v) for k, v in d["levels"].items()})


def _points(field_or_array) -> np.ndarray:
    return np.asarray(getattr(field_or_array, "points", field_or_array), dtype=float).reshape(-1, 2)


def _chain_length(pts: np.ndarray) -> int:
    """Longest chain under the coordinatewise order (points in general position)."""
    if len(pts) == 0:
        return 0
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    return lis_length(pts[order, 1].tolist())


def droplet_height(T: float, x: float, field) -> int:
    """Droplet height ``h(x, T)`` from a unit-intensity polymer-frame field.

    The backward light cone of ``(x, T)`` is the rectangle
    ``[0, T+x] x [0, T-x]``; the height is the longest chain inside it.
    """
    if abs(x) >= T:
        return 0
    pts = _points(field)
    inside = (pts[:, 0] <= T + x) & (pts[:, 1] <= T - x) & (pts[:, 0] >= 0) & (pts[:, 1] >= 0)
    return _chain_length(pts[inside])


def flat_height(T: float, field) -> int:
    """Point-to-line chain length on the triangle ``{y, z >= 0, y + z <= 2T}``."""
    pts = _points(field)
    inside = (pts[:, 0] >= 0) & (pts[:, 1] >= 0) & (pts.sum(axis=1) <= 2 * T)
    return _chain_length(pts[inside])


def default_grid(T: float, n: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    return np.linspace(-T, T, n)


def height_profile(T: float, field, xs=None) -> HeightProfile:
    xs = default_grid(T) if xs is None else np.asarray(xs, dtype=float)
    pts = _points(field)
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))] if len(pts) else pts
    hs = np.array([droplet_height(T, x, pts) for x in xs], dtype=int)
    return HeightProfile(float(T), xs, hs)


# -- event-driven dynamics ---------------------------------------------------

UP, DOWN = 1, -1


class _Step:
    __slots__ = ("kind", "c", "prev", "next", "alive")

    def __init__(self, kind: int, c: float):
        # position at time t is c - t for an up-step, c + t for a down-step
        self.kind = kind
        self.c = c
        self.prev = None
        self.next = None
        self.alive = True

    def pos(self, t: float) -> float:
        return self.c - t if self.kind == UP else self.c + t


@dataclass
class StepConfig:
    """Up- and down-step positions of the surface at time ``t``."""

    t: float
    up: np.ndarray
    down: np.ndarray
    annihilations: int = 0

    def height(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (np.searchsorted(np.sort(self.up), x, side="left")
                - np.searchsorted(np.sort(self.down), x, side="left"))


@dataclass(frozen=True)
class DynamicsResult(HeightProfile):
    steps: StepConfig = field(default=None, repr=False)


def _run_steps(nucleations: np.ndarray, T: float) -> StepConfig:
    nuc = nucleations[nucleations[:, 1] <= T]
    nuc = nuc[np.argsort(nuc[:, 1], kind="stable")]
    if len(np.unique(nuc[:, 1])) != len(nuc):
        raise ValueError("simultaneous nucleations are not allowed")

    head = None
    # steps never overtake each other, so this list stays sorted by position
    alive: list = []
    heap: list = []
    tick = itertools.count()
    annihilated = 0

    def schedule(left, right):
        if left is not None and right is not None and left.kind == DOWN and right.kind == UP:
            heapq.heappush(heap, ((right.c - left.c) / 2, next(tick), left, right))

    def collide_until(t_stop):
        nonlocal head, annihilated
        while heap and heap[0][0] <= t_stop:
            _, _, a, b = heapq.heappop(heap)
            if not (a.alive and b.alive and a.next is b):
                continue
            a.alive = b.alive = False
            annihilated += 1
            i = alive.index(a)
            del alive[i:i + 2]
            p, n = a.prev, b.next
            if p is not None:
                p.next = n
            else:
                head = n
            if n is not None:
                n.prev = p
            schedule(p, n)

    for x0, t0 in nuc:
        collide_until(t0)
        up, down = _Step(UP, x0 + t0), _Step(DOWN, x0 - t0)
        up.next, down.prev = down, up
        i = bisect.bisect_left(alive, x0, key=lambda st: st.pos(t0))
        prev = alive[i - 1] if i > 0 else None
        cur = alive[i] if i < len(alive) else None
        alive[i:i] = [up, down]
        if cur is not None and cur.pos(t0) == x0:
            raise ValueError(f"nucleation at ({x0}, {t0}) coincides with a step")
        up.prev, down.next = prev, cur
        if prev is None:
            head = up
        else:
            prev.next = up
        if cur is not None:
            cur.prev = down
        schedule(prev, up)
        schedule(down, cur)
    collide_until(T)

    ups, downs = [], []
    s = head
    while s is not None:
        (ups if s.kind == UP else downs).append(s.pos(T))
        s = s.next
    return StepConfig(float(T), np.array(ups), np.array(downs), annihilated)


def simulate_png_dynamics(nucleations, T: float, xs=None) -> DynamicsResult:
    """Exact event-driven PNG evolution from a flat start up to time ``T``.

    ``nucleations`` are space-time points ``(x, t)``; those with ``t > T`` are
    ignored.  Each one spawns an up-step moving left and a down-step moving
    right; a down-step meeting the up-step to its right annihilates with it.
    The returned profile samples ``h(., T)`` on ``xs`` (default: 201 points on
    ``[-T, T]``) and carries the full step configuration.
    """
    pts = _points(nucleations)
    if getattr(nucleations, "frame", "xt") != "xt":
        raise ValueError("nucleations must be in the space-time frame")
    steps = _run_steps(pts, float(T))
    xs = default_grid(T) if xs is None else np.asarray(xs, dtype=float)
    return DynamicsResult(float(T), xs, steps.height(xs), steps)


def droplet_nucleations(field: PointField, T: float) -> np.ndarray:
    """Space-time images of a polymer-frame droplet field with ``0 < t <= T``."""
    xt = polymer_to_spacetime(_points(field))
    return xt[(xt[:, 1] > 0) & (xt[:, 1] <= T)]


# -- multilayer ---------------------------------------------------------------

def line_ensemble(T: float, field, depth: int = DEFAULT_DEPTH) -> LineEnsemble:
    """Top ``depth`` lines at ``x = 0``: ``h_l = lambda_{1-l} + l``, ``l = 0, -1, ...``.

    ``lambda`` is the RSK shape of the points in ``[0, T]^2``.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    pts = _points(field)
    inside = (pts[:, 0] >= 0) & (pts[:, 0] <= T) & (pts[:, 1] >= 0) & (pts[:, 1] <= T)
    lam = rsk_shape(comparison_permutation(pts[inside])) if inside.any() else ()
    levels = {}
    for j in range(depth):
        ell = -j
        levels[ell] = (lam[j] if j < len(lam) else 0) + ell
    return LineEnsemble(float(T), levels)


# -- rescalings -----------------------------------------------------------------

def rescale_droplet(h: float, T: float, x: float) -> tuple[float, float]:
    """``(xi, s)`` with ``xi = x T^{-2/3}`` and ``s`` the height fluctuation."""
    xi = x * T ** (-2 / 3)
    arg = 1 - xi * xi * T ** (-2 / 3)
    if not arg > 0:
        raise ValueError(f"|x| must be < T (got x={x}, T={T})")
    return xi, T ** (-1 / 3) * (h - 2 * T * math.sqrt(arg))


def rescale_flat(h: float, T: float) -> float:
    if not T > 0:
        raise ValueError("T must be positive")
    return (h - 2 * T) * 2 ** (2 / 3) * T ** (-1 / 3)
