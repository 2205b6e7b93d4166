"""Airy-type kernels: classical, extended (multi-time), ``B(s)``, and GOE 2x2 entries.

Semi-infinite integrals ``int_0^inf f(s + l) dl`` of Airy products are cut
where the integrand has decayed below double precision and done with a
composite Gauss-Legendre rule.  Two integrals that only converge
conditionally as written are rewritten exactly:

* ``int_0^inf Ai(s - l) dl = 1 - int_s^inf Ai``, using ``int_R Ai = 1``;
* the double integral in ``K22`` uses
  ``int_R [Ai(a+y) G(b+y) - Ai(b+y) G(a+y)] dy = -sgn(a - b)`` with
  ``G(t) = int_{-inf}^t Ai``, which follows from
  ``int_R Ai(y) Ai(y + d) dy = delta(d)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .airy import ai, aip
from .quadrature import QuadratureError, composite_nodes, gauss_legendre

# beyond argument 14, Ai < 1e-14 and Ai^2 < 1e-28
_DECAY = 14.0
_PANEL = 0.5
_ORDER = 16
S_MIN = -8.0
_NEAR_DIAGONAL = 1e-3


def _check_s(*ss):
    for s in ss:
        if np.any(np.asarray(s) < S_MIN):
            raise ValueError(f"kernel arguments must be >= {S_MIN}")


def _right_nodes(s_low: float, depth: float = 1.0):
    """Nodes on ``[0, L]`` with ``s_low + L`` past the decay point."""
    L = max(_DECAY - s_low, 2.0)
    return composite_nodes(0.0, L, _PANEL / depth, _ORDER)


def airy_kernel(s1, s2):
    """Classical Airy kernel ``(Ai(s2)Ai'(s1) - Ai'(s2)Ai(s1)) / (s2 - s1)``.

    The diagonal uses its limit ``Ai'(s)^2 - s Ai(s)^2``.  Close to the
    diagonal the quotient loses digits to cancellation, so pairs with
    ``|s2 - s1| < 1e-3`` use ``int_0^inf Ai(s1 + x) Ai(s2 + x) dx`` instead.
    """
    s1, s2 = np.broadcast_arrays(np.asarray(s1, dtype=float), np.asarray(s2, dtype=float))
    a1, d1 = ai(s1), aip(s1)
    a2, d2 = ai(s2), aip(s2)
    diff = s2 - s1
    same = diff == 0
    safe = np.where(same, 1.0, diff)
    off = (a2 * d1 - d2 * a1) / safe
    diag = d1 * d1 - s1 * a1 * a1
    out = np.where(same, diag, off)
    near = ~same & (np.abs(diff) < _NEAR_DIAGONAL)
    if near.any():
        u, v = s1[near], s2[near]
        x, w = _right_nodes(float(min(u.min(), v.min())))
        out[near] = np.sum(w * ai(u[:, None] + x) * ai(v[:, None] + x), axis=1)
    return float(out) if out.ndim == 0 else out


def airy_b_kernel(s: float):
    """``B(s)(x, y) = Ai(x + y + s)`` as a broadcasting callable."""
    return lambda x, y: ai(x + y + s)


def airy_tail_integral(t):
    """``int_t^inf Ai(x) dx`` for ``t >= -8`` (elementwise)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check_s(t)
    right = max(float(t.max()), 0.0) + _DECAY + 6
    # breakpoints: every query point plus a grid fine enough for one GL panel each
    edges = np.union1d(t, np.arange(t.min(), right, _PANEL))
    edges = np.append(edges[edges < right], right)
    xg, wg = gauss_legendre(_ORDER)
    h = np.diff(edges)[:, None] / 2
    pieces = np.sum(h * wg * ai(edges[:-1, None] + h * (xg + 1)), axis=1)
    tails = np.append(np.cumsum(pieces[::-1])[::-1], 0.0)
    return tails[np.searchsorted(edges, t)]


def airy_cumulative(t):
    """``G(t) = int_{-inf}^t Ai = 1 - int_t^inf Ai``."""
    return 1.0 - airy_tail_integral(t)


def extended_airy_kernel(tau1: float, s1: float, tau2: float, s2: float) -> float:
    """Extended Airy kernel ``A(tau2, s2; tau1, s1)``.

    For ``tau2 >= tau1``: ``int_{-inf}^0 e^{l (tau2 - tau1)} Ai(s1 - l) Ai(s2 - l) dl``;
    for ``tau2 < tau1``: minus the same integrand over ``(0, inf)``.
    """
    _check_s(s1, s2)
    if max(abs(tau1), abs(tau2)) > 5:
        raise ValueError("|tau| must be <= 5")
    d = tau2 - tau1
    if d >= 0:
        x, w = _right_nodes(min(s1, s2))
        return float(np.sum(w * np.exp(-d * x) * ai(s1 + x) * ai(s2 + x)))
    D = -d
    if D < 1.0:
        return _extended_negative_gaussian(D, s1, s2)
    return _extended_negative_direct(D, s1, s2)


def _extended_negative_direct(D, s1, s2, tail_tol=1e-10):
    """``-int_0^inf e^{-l D} Ai(s1 - l) Ai(s2 - l) dl`` truncated by an envelope bound.

    For ``x <= -2`` one has ``|Ai(x)| <= 1.01 / sqrt(pi) |x|^{-1/4}``, hence the
    tail beyond ``L`` is below ``1.02 e^{-L D} / (pi D sqrt(L - max(s)))``.
    """
    smax = max(s1, s2)
    L = max(2.0 + smax, 1.0)
    while 1.02 * math.exp(-L * D) / (math.pi * D * math.sqrt(max(L - smax, 1.0))) > tail_tol:
        L *= 1.25
        if L > 2e4:
            raise QuadratureError(f"extended kernel tail not controlled for time gap {D}")
    # panel width resolves the local wavelength 2 pi / sqrt(L)
    width = min(_PANEL, 2.0 / math.sqrt(L - min(s1, s2) + 1.0))
    x, w = composite_nodes(0.0, L, width, _ORDER)
    return float(-np.sum(w * np.exp(-D * x) * ai(s1 - x) * ai(s2 - x)))


def _extended_negative_gaussian(D, s1, s2):
    """Same value via ``int_R e^{xD} Ai(s1 + x) Ai(s2 + x) dx``
    ``= (4 pi D)^{-1/2} exp(D^3/12 - (s1+s2) D/2 - (s1-s2)^2/(4D))``.

    The kernel is then ``int_0^inf e^{D m} Ai(s1+m) Ai(s2+m) dm`` minus that
    closed form; the remaining integral decays super-exponentially.
    """
    x, w = _right_nodes(min(s1, s2))
    right = float(np.sum(w * np.exp(D * x) * ai(s1 + x) * ai(s2 + x)))
    full = math.exp(D ** 3 / 12 - (s1 + s2) * D / 2 - (s1 - s2) ** 2 / (4 * D)) / math.sqrt(4 * math.pi * D)
    return right - full


def _goe_11(s1, s2, depth):
    x, w = _right_nodes(min(s1, s2), depth)
    return float(np.sum(w * (ai(s1 + x) * aip(s2 + x) - ai(s2 + x) * aip(s1 + x))))


def _goe_12(s1, s2, depth):
    x, w = _right_nodes(min(s1, s2), depth)
    first = float(np.sum(w * ai(s1 + x) * ai(s2 + x)))
    return first + 0.5 * ai(s1) * float(airy_cumulative(s2)[0])


def _goe_22(s1, s2, depth):
    if s1 == s2:
        return 0.0
    x, w = _right_nodes(min(s1, s2), depth)
    G1 = airy_cumulative(s1 + x)
    G2 = airy_cumulative(s2 + x)
    right = float(np.sum(w * (ai(s1 + x) * G2 - ai(s2 + x) * G1)))
    return 0.25 * (-math.copysign(1.0, s1 - s2) - right)


def goe_kernel_entry(i: int, j: int, s1: float, s2: float, depth: float = 1.0) -> float:
    """Entry ``(i, j)`` of the 2x2 GOE edge kernel; ``depth`` refines the quadrature."""
    _check_s(s1, s2)
    s1, s2 = float(s1), float(s2)
    if (i, j) == (1, 1):
        return _goe_11(s1, s2, depth)
    if (i, j) == (1, 2):
        return _goe_12(s1, s2, depth)
    if (i, j) == (2, 1):
        return -_goe_12(s2, s1, depth)
    if (i, j) == (2, 2):
        return _goe_22(s1, s2, depth)
    raise ValueError(f"GOE kernel entry ({i}, {j}) does not exist")


@dataclass(frozen=True)
class KernelSpec:
    """Named kernel for command-line spot checks.

    ``kind`` is one of ``airy``, ``b`` (uses ``params=(s,)``), ``goe``
    (``params=(i, j)``) or ``extended`` (``params=(tau1, tau2)``).
    """

    kind: str
    params: tuple = ()

    def __call__(self, s1, s2):
        if self.kind == "airy":
            return airy_kernel(s1, s2)
        if self.kind == "b":
            return ai(np.asarray(s1) + np.asarray(s2) + self.params[0])
        if self.kind == "goe":
            i, j = self.params
            return goe_kernel_entry(int(i), int(j), s1, s2)
        if self.kind == "extended":
            t1, t2 = self.params
            return extended_airy_kernel(t1, s1, t2, s2)
        raise ValueError(f"unknown kernel kind {self.kind!r}")
