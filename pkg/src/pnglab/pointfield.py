"""Poisson point fields (nucleation events) and the light-cone/polymer change of frame.

Two frames are used throughout:

* space-time ``(x, t)`` where the PNG surface lives, and
* polymer ``(y, z) = (t + x, t - x)`` where heights become longest chains.

The map has Jacobian 2, so intensity 2 in space-time is intensity 1 in the
polymer frame.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .rng import Seed, as_seed

log = logging.getLogger(__name__)

RECTANGLE = "rectangle"
TRIANGLE = "triangle"
DIAMOND = "diamond"


@dataclass(frozen=True)
class Region:
    """A bounded planar region.

    ``rectangle(a, b)`` is ``[0,a] x [0,b]`` and ``triangle(t)`` is
    ``{y, z >= 0, y + z <= 2t}``, both in the polymer frame.
    ``diamond(x, T)`` lives in space-time: the forward light cone of the
    origin intersected with the backward light cone of ``(x, T)``.
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(v) for v in self.params)
        object.__setattr__(self, "params", p)
        if not all(math.isfinite(v) for v in p):
            raise ValueError(f"non-finite region parameters {p}")
        if self.kind == RECTANGLE:
            if len(p) != 2 or min(p) <= 0:
                raise ValueError(f"rectangle needs two positive sides, got {p}")
        elif self.kind == TRIANGLE:
            if len(p) != 1 or p[0] <= 0:
                raise ValueError(f"triangle needs a positive time, got {p}")
        elif self.kind == DIAMOND:
            if len(p) != 2 or p[1] <= 0 or abs(p[0]) >= p[1]:
                raise ValueError(f"diamond needs T > 0 and |x| < T, got {p}")
        else:
            raise ValueError(f"unknown region kind {self.kind!r}")

    @classmethod
    def rectangle(cls, a: float, b: float) -> "Region":
        return cls(RECTANGLE, (a, b))

    @classmethod
    def triangle(cls, t: float) -> "Region":
        return cls(TRIANGLE, (t,))

    @classmethod
    def diamond(cls, x: float, T: float) -> "Region":
        return cls(DIAMOND, (x, T))

    @property
    def frame(self) -> str:
        return "xt" if self.kind == DIAMOND else "yz"

    @property
    def area(self) -> float:
        if self.kind == RECTANGLE:
            a, b = self.params
            return a * b
        if self.kind == TRIANGLE:
            (t,) = self.params
            return 2.0 * t * t
        x, T = self.params
        return (T + x) * (T - x) / 2.0

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        u, v = pts[:, 0], pts[:, 1]
        if self.kind == RECTANGLE:
            a, b = self.params
            return (u >= 0) & (u <= a) & (v >= 0) & (v <= b)
        if self.kind == TRIANGLE:
            (t,) = self.params
            return (u >= 0) & (v >= 0) & (u + v <= 2 * t)
        x, T = self.params
        return (np.abs(u) <= v) & (np.abs(u - x) <= T - v)


@dataclass(frozen=True)
class PointField:
    points: np.ndarray
    region: Region
    intensity: float
    seed: Seed = field(default_factory=lambda: Seed(0))

    @property
    def frame(self) -> str:
        return self.region.frame

    def __len__(self):
        return len(self.points)

    def to_csv(self, path) -> None:
        header = "y,z" if self.frame == "yz" else "x,t"
        write_points_csv(path, self.points, header)


def _break_ties(pts: np.ndarray) -> np.ndarray:
    """Nudge repeated coordinates by one ulp so points are in general position.

    ``pts`` is in generation order; of two equal coordinates the later
    generated one moves.
    """
    for col in range(pts.shape[1]):
        while True:
            order = np.argsort(pts[:, col], kind="stable")
            vals = pts[order, col]
            dup = np.flatnonzero(vals[1:] == vals[:-1]) + 1
            if dup.size == 0:
                break
            log.warning("coordinate tie in column %d at %d point(s); perturbing by one ulp",
                        col, dup.size)
            idx = order[dup]
            pts[idx, col] = np.nextafter(pts[idx, col], np.inf)
    return pts


def sample_poisson(region: Region, intensity: float, seed) -> PointField:
    """Poisson point field of constant ``intensity`` on ``region``.

    Points are returned sorted lexicographically; the same
    ``(region, intensity, seed)`` always gives the same array.
    """
    intensity = float(intensity)
    if not math.isfinite(intensity) or intensity < 0:
        raise ValueError(f"intensity must be finite and >= 0, got {intensity}")
    seed = as_seed(seed)
    rng = seed.generator()

    if region.kind == RECTANGLE:
        a, b = region.params
        n = rng.poisson(intensity * a * b)
        pts = rng.random((n, 2)) * (a, b)
    elif region.kind == TRIANGLE:
        (t,) = region.params
        # thinning of a Poisson field on the bounding square, acceptance 1/2
        n = rng.poisson(intensity * 4 * t * t)
        pts = rng.random((n, 2)) * (2 * t)
        pts = pts[pts.sum(axis=1) <= 2 * t]
    else:
        x, T = region.params
        # thinning of the bounding box [-(T-x)/2, (T+x)/2] x [0, T]
        n = rng.poisson(intensity * T * T)
        pts = rng.random((n, 2)) * (T, T) + ((x - T) / 2, 0.0)
        pts = pts[region.contains(pts)]

    pts = _break_ties(np.array(pts, dtype=float).reshape(-1, 2))
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    pts.setflags(write=False)
    return PointField(pts, region, intensity, seed)


def spacetime_to_polymer(p):
    """``(x, t) -> (t + x, t - x)``; accepts one point or an ``(n, 2)`` array."""
    a = np.asarray(p, dtype=float)
    x, t = a[..., 0], a[..., 1]
    return np.stack([t + x, t - x], axis=-1)


def polymer_to_spacetime(p):
    """Inverse of :func:`spacetime_to_polymer`."""
    a = np.asarray(p, dtype=float)
    y, z = a[..., 0], a[..., 1]
    return np.stack([(y - z) / 2, (y + z) / 2], axis=-1)


def droplet_field(T: float, seed, intensity: float = 1.0) -> PointField:
    """Unit-intensity polymer-frame field on ``[0, 2T]^2``.

    This covers the forward light cone of the origin up to time ``T`` and
    every backward cone of ``(x, T)`` with ``|x| <= T``.
    """
    return sample_poisson(Region.rectangle(2 * T, 2 * T), intensity, seed)


def write_points_csv(path, pts, header: str) -> None:
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    lines = [header] + [f"{u:.17g},{v:.17g}" for u, v in pts]
    Path(path).write_text("\n".join(lines) + "\n")


def read_points_csv(path) -> tuple[np.ndarray, str]:
    """Return ``(points, frame)`` from a file written by :func:`write_points_csv`."""
    rows = [ln for ln in Path(path).read_text().splitlines() if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = rows[0].strip()
    if header not in ("y,z", "x,t"):
        raise ValueError(f"{path}: expected header 'y,z' or 'x,t', got {header!r}")
    pts = np.array([[float(v) for v in r.split(",")] for r in rows[1:]], dtype=float)
    return pts.reshape(-1, 2), header.replace(",", "")
