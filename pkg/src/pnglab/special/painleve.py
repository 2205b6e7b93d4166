"""Hastings-McLeod solution of Painleve II, ``q'' = s q + 2 q^3``, ``q ~ Ai``.

The ODE is integrated right-to-left from ``s_max`` (seeded with ``Ai``)
together with three running integrals:

* ``u(s) = int_s^inf q^2``
* ``v(s) = int_s^inf (x - s) q^2``   (``F2 = exp(-v)``)
* ``w(s) = int_s^inf q``             (``F1 = exp(-w/2) sqrt(F2)``)

so that the Tracy-Widom integrals are obtained without a second quadrature pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from .airy import ai, aip
from .quadrature import QuadratureError, composite_nodes

BLOWUP = 1e6


class PainleveError(ArithmeticError):
    pass


def _rhs(s, y):
    q, p, u, v, w = y
    return [p, s * q + 2 * q ** 3, -q * q, -u, -q]


def _ai_tails(s0: float) -> tuple[float, float, float]:
    """``u, v, w`` at ``s0`` with ``q`` replaced by ``Ai`` beyond ``s0``."""
    x, wts = composite_nodes(s0, s0 + 30.0, 1.0, 20)
    a = ai(x)
    a2 = a * a
    u = float(aip(s0) ** 2 - s0 * ai(s0) ** 2)
    v = float(np.sum(wts * (x - s0) * a2))
    w = float(np.sum(wts * a))
    return u, v, w


@dataclass
class PainleveSolution:
    s_max: float
    s_min: float
    max_step: float
    rtol: float
    s_grid: np.ndarray
    q: np.ndarray
    qp: np.ndarray
    nfev: int
    _dense: object = field(repr=False, default=None)

    def __call__(self, s):
        """State ``(q, q', u, v, w)`` at ``s`` (array of shape ``(5,) + s.shape``)."""
        s = np.asarray(s, dtype=float)
        if np.any(s > self.s_max) or np.any(s < self.s_min):
            raise ValueError(f"s outside the solved range [{self.s_min}, {self.s_max}]")
        return self._dense(s)

    def residual(self, s, h: float = 1e-3) -> np.ndarray:
        """``q'' - s q - 2 q^3`` with ``q''`` re-differenced from ``q'``."""
        s = np.asarray(s, dtype=float)
        lo, hi = self.s_min + 2 * h, self.s_max - 2 * h
        s = np.clip(s, lo, hi)
        qp = lambda t: self._dense(t)[1]  # noqa: E731
        qpp = (-qp(s + 2 * h) + 8 * qp(s + h) - 8 * qp(s - h) + qp(s - 2 * h)) / (12 * h)
        q = self._dense(s)[0]
        return qpp - s * q - 2 * q ** 3


def painleve2_solve(s_max: float = 8.0, s_min: float = -10.0, max_step: float = 0.05,
                    rtol: float = 1e-13, k: float = 1.0) -> PainleveSolution:
    """Integrate the Hastings-McLeod branch from ``s_max`` down to ``s_min``.

    ``k`` scales the boundary data to ``q ~ k Ai``; only ``k = 1`` is the
    Hastings-McLeod solution, ``k > 1`` blows up at finite ``s`` and is
    useful for exercising the branch check.
    """
    if s_max < 6:
        raise ValueError("s_max must be >= 6 so that q is well approximated by Ai")
    if s_min < -10 or s_min >= s_max:
        raise ValueError("need -10 <= s_min < s_max")
    u, v, w = _ai_tails(s_max)
    y0 = [k * ai(s_max), k * aip(s_max), k * k * u, k * k * v, k * w]

    def blowup(s, y):
        return BLOWUP - abs(y[0])

    blowup.terminal = True
    sol = solve_ivp(_rhs, (s_max, s_min), y0, method="DOP853", rtol=rtol, atol=1e-300,
                    max_step=max_step, dense_output=True, events=blowup)
    if sol.status == 1:
        raise PainleveError(f"|q| exceeded {BLOWUP:g} near s={sol.t_events[0][0]:.4g}: wrong branch")
    if sol.status != 0:
        raise PainleveError(f"integration failed: {sol.message}")
    return PainleveSolution(float(s_max), float(s_min), max_step, rtol, sol.t, sol.y[0], sol.y[1],
                            sol.nfev, sol.sol)


@lru_cache(maxsize=4)
def default_solution() -> PainleveSolution:
    return painleve2_solve()


def f2_painleve(s, sol: PainleveSolution | None = None):
    sol = sol or default_solution()
    v = sol(s)[3]
    return np.exp(-v)


def f1_painleve(s, sol: PainleveSolution | None = None):
    sol = sol or default_solution()
    st = sol(s)
    return np.exp(-0.5 * st[4] - 0.5 * st[3])


def log1m_f2_painleve(s, sol: PainleveSolution | None = None):
    """``log(1 - F2(s))``, accurate in the far right tail where ``F2 ~ 1``."""
    sol = sol or default_solution()
    v = sol(s)[3]
    return np.log(-np.expm1(-v))


__all__ = ["PainleveSolution", "PainleveError", "QuadratureError", "painleve2_solve",
           "default_solution", "f1_painleve", "f2_painleve", "log1m_f2_painleve"]
