"""Airy function Ai and its derivative.

Maclaurin series on ``|x| <= 6``, Poincare asymptotic expansions outside.
Absolute error is below 1e-9 on ``[-12, 12]``; results outside that window
are still computed but flagged with :class:`AiryAccuracyWarning`.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

SWITCH = 6.0
WINDOW = 12.0

AI0 = 1.0 / (3 ** (2 / 3) * math.gamma(2 / 3))
AIP0 = -1.0 / (3 ** (1 / 3) * math.gamma(1 / 3))

_SERIES_TERMS = 45
_ASYM_TERMS = 40


class AiryAccuracyWarning(UserWarning):
    pass


def _asym_coeffs(n):
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    u = np.array(u)
    k = np.arange(n)
    v = -(6 * k + 1) / (6 * k - 1) * u
    return u, v


_U, _V = _asym_coeffs(_ASYM_TERMS)


def _maclaurin(x):
    x3 = x ** 3
    t = np.ones_like(x)
    f = t.copy()
    u = x.copy()
    g = u.copy()
    p = x * x / 2
    fp = p.copy()
    r = np.ones_like(x)
    gp = r.copy()
    for k in range(_SERIES_TERMS):
        t = t * x3 / ((3 * k + 2) * (3 * k + 3))
        f += t
        u = u * x3 / ((3 * k + 3) * (3 * k + 4))
        g += u
        if k >= 1:
            p = p * x3 / ((3 * k) * (3 * k + 2))
            fp += p
        r = r * x3 / ((3 * k + 1) * (3 * k + 3))
        gp += r
    return AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp


def _truncated(coef, zeta, sign_pattern):
    """Sum ``sign_k coef_k zeta^-k`` stopping at the smallest term, per element."""
    total = np.zeros_like(zeta)
    term_prev = np.full_like(zeta, np.inf)
    active = np.ones(zeta.shape, dtype=bool)
    zpow = np.ones_like(zeta)
    for k, c in enumerate(coef):
        term = c * zpow
        mag = np.abs(term)
        active &= mag < term_prev
        total = np.where(active, total + sign_pattern(k) * term, total)
        term_prev = np.where(active, mag, term_prev)
        zpow = zpow / zeta
        if not active.any():
            break
    return total


def _asym_pos(x):
    zeta = 2 / 3 * x ** 1.5
    pre = np.exp(-zeta) / (2 * math.sqrt(math.pi))
    alt = lambda k: (-1) ** k  # noqa: E731
    ai = pre * x ** -0.25 * _truncated(_U, zeta, alt)
    aip = -pre * x ** 0.25 * _truncated(_V, zeta, alt)
    return ai, aip


def _asym_neg(x):
    z = -x
    zeta = 2 / 3 * z ** 1.5
    chi = zeta - math.pi / 4
    c, s = np.cos(chi), np.sin(chi)
    alt = lambda k: (-1) ** k  # noqa: E731
    zeta2 = zeta * zeta
    ue = _truncated(_U[0::2], zeta2, alt)
    uo = _truncated(_U[1::2], zeta2, alt) / zeta
    ve = _truncated(_V[0::2], zeta2, alt)
    vo = _truncated(_V[1::2], zeta2, alt) / zeta
    rp = math.sqrt(math.pi)
    ai = (c * ue + s * uo) / (rp * z ** 0.25)
    aip = z ** 0.25 * (s * ve - c * vo) / rp
    return ai, aip


def airy_pair(x, warn: bool = False):
    """Return ``(Ai(x), Ai'(x))`` elementwise."""
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if warn and np.any(np.abs(xa) > WINDOW):
        warnings.warn(f"Airy evaluation outside [-{WINDOW}, {WINDOW}]: accuracy not guaranteed",
                      AiryAccuracyWarning, stacklevel=3)
    ai = np.empty_like(xa)
    aip = np.empty_like(xa)
    mid = np.abs(xa) <= SWITCH
    pos = xa > SWITCH
    neg = xa < -SWITCH
    if mid.any():
        ai[mid], aip[mid] = _maclaurin(xa[mid])
    if pos.any():
        ai[pos], aip[pos] = _asym_pos(xa[pos])
    if neg.any():
        ai[neg], aip[neg] = _asym_neg(xa[neg])
    if scalar:
        return float(ai[0]), float(aip[0])
    return ai, aip


def airy_ai(x):
    return airy_pair(x, warn=True)[0]


def airy_ai_prime(x):
    return airy_pair(x, warn=True)[1]


def ai(x):
    """Ai without the window warning, for internal quadratures."""
    return airy_pair(x)[0]


def aip(x):
    return airy_pair(x)[1]
