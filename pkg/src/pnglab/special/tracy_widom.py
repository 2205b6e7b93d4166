"""Tracy-Widom distribution functions F1 (GOE) and F2 (GUE).

Two independent routes for each:

``painleve``
    ``F2(s) = exp(-int_s^inf (x - s) q^2)``,
    ``F1(s) = exp(-1/2 int_s^inf q) F2(s)^{1/2}`` with ``q`` the
    Hastings-McLeod solution.
``fredholm``
    ``F2(s) = det(1 - A)`` on ``L^2(s, inf)`` with the Airy kernel,
    ``F1(s) = det(1 - B(s))`` on ``L^2(0, inf)`` with ``B(s)(x, y) = Ai(x + y + s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .fredholm import fredholm_det
from .kernels import airy_b_kernel, airy_kernel
from .painleve import f1_painleve, f2_painleve, log1m_f2_painleve

METHODS = ("painleve", "fredholm")
S_RANGE = (-10.0, 6.0)
AIRY_WINDOW = 16.0


def _check(beta, method):
    if beta not in (1, 2):
        raise ValueError(f"beta must be 1 or 2, got {beta!r}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")


def _fredholm_f2(s: float) -> float:
    return fredholm_det(airy_kernel, (s, s + AIRY_WINDOW))


def _fredholm_f1(s: float) -> float:
    # the kernel oscillates while x + y + s < 0, so the cut grows with -s
    return fredholm_det(airy_b_kernel(s), (0.0, AIRY_WINDOW + max(0.0, -s)))


def tw_cdf(beta: int, s, method: str = "painleve"):
    """``F_beta(s)`` for ``s`` in ``[-10, 6]``; vectorised over ``s``."""
    _check(beta, method)
    sa = np.asarray(s, dtype=float)
    if np.any(sa < S_RANGE[0]) or np.any(sa > S_RANGE[1]):
        raise ValueError(f"s must lie in {S_RANGE}")
    if method == "painleve":
        out = f2_painleve(sa) if beta == 2 else f1_painleve(sa)
    else:
        f = _fredholm_f2 if beta == 2 else _fredholm_f1
        out = np.vectorize(f, otypes=[float])(sa)
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class DistTable:
    beta: int
    s: np.ndarray
    F: np.ndarray
    method: str

    def __call__(self, x):
        """Linear interpolation, clamped to the end values outside the grid."""
        return np.interp(x, self.s, self.F)

    def ppf(self, u):
        """Inverse CDF by linear interpolation on the strictly increasing part."""
        F, idx = np.unique(self.F, return_index=True)
        return np.interp(u, F, self.s[idx])

    def to_csv(self, path, provenance: str | None = None) -> None:
        head = [f"# beta={self.beta} method={self.method}"]
        if provenance:
            head.insert(0, provenance if provenance.startswith("#") else "# " + provenance)
        rows = [f"{x:.10g},{f:.17g}" for x, f in zip(self.s, self.F)]
        Path(path).write_text("\n".join(head + ["s,F"] + rows) + "\n")

    @classmethod
    def from_csv(cls, path) -> "DistTable":
        beta, method = None, None
        s, F = [], []
        header_seen = False
        for ln in Path(path).read_text().splitlines():
            ln = ln.strip()
            if not ln:
                continue
            if ln.startswith("#"):
                for tok in ln[1:].split():
                    if tok.startswith("beta="):
                        beta = int(tok[5:])
                    elif tok.startswith("method="):
                        method = tok[7:]
                continue
            if not header_seen:
                if ln != "s,F":
                    raise ValueError(f"{path}: expected header 's,F', got {ln!r}")
                header_seen = True
                continue
            a, b = ln.split(",")
            s.append(float(a))
            F.append(float(b))
        if not header_seen or not s:
            raise ValueError(f"{path}: no table rows")
        return cls(beta if beta is not None else 0, np.array(s), np.array(F), method or "unknown")


def grid(s_min: float, s_max: float, step: float) -> np.ndarray:
    if not s_max > s_min or not step > 0:
        raise ValueError("need s_min < s_max and step > 0")
    n = int(round((s_max - s_min) / step))
    return s_min + step * np.arange(n + 1)


def tw_table(beta: int, s_min: float = -6.0, s_max: float = 3.0, step: float = 0.05,
             method: str = "painleve") -> DistTable:
    s = grid(s_min, s_max, step)
    return DistTable(beta, s, np.asarray(tw_cdf(beta, s, method)), method)


def density(F: np.ndarray, h: float) -> np.ndarray:
    f = np.gradient(F, h)
    f[2:-2] = (F[:-4] - 8 * F[1:-3] + 8 * F[3:-1] - F[4:]) / (12 * h)
    return f


def table_moments(table: DistTable) -> tuple[float, float]:
    """Mean and variance of the tabulated law.

    The density is the five-point centred difference quotient of ``F`` on
    the (uniform) grid; moments are trapezoidal sums against it.  The
    two-point quotient would bias the variance by ``h^2/3``.
    """
    s, F = table.s, table.F
    f = density(F, s[1] - s[0])
    mass = np.trapezoid(f, s)
    mean = np.trapezoid(s * f, s) / mass
    var = np.trapezoid((s - mean) ** 2 * f, s) / mass
    return float(mean), float(var)


def right_tail_ratio(s: float = 8.0) -> float:
    """``-log(1 - F2(s)) / (4 s^{3/2} / 3)``, using the Painleve route."""
    return float(-log1m_f2_painleve(s) / (4 * s ** 1.5 / 3))


def left_tail_ratio(y: float = 6.0, method: str = "painleve") -> float:
    """``-log F2(-y) / (y^3 / 12)``."""
    return float(-np.log(tw_cdf(2, -y, method)) / (y ** 3 / 12))
