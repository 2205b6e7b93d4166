"""Nystrom evaluation of Fredholm determinants ``det(1 - K)`` on an interval."""

from __future__ import annotations

import numpy as np

from .quadrature import QuadratureError, gl_nodes

DEFAULT_TOL = 1e-8
MAX_NODES = 1024


def nystrom_det(kernel, a: float, b: float, n: int) -> float:
    """``det(I - W^{1/2} K W^{1/2})`` with ``n`` Gauss-Legendre nodes on ``[a, b]``."""
    x, w = gl_nodes(a, b, n)
    sw = np.sqrt(w)
    K = kernel(x[:, None], x[None, :])
    M = np.eye(n) - sw[:, None] * K * sw[None, :]
    return float(np.linalg.det(M))


def fredholm_det(kernel, interval, n_nodes: int = 16, tol: float = DEFAULT_TOL,
                 max_nodes: int = MAX_NODES) -> float:
    """Fredholm determinant accepted once doubling the nodes moves it by < ``tol``.

    ``kernel(x, y)`` must broadcast over arrays.  Raises
    :class:`QuadratureError` if ``max_nodes`` is reached first.
    """
    a, b = map(float, interval)
    if not b > a:
        raise ValueError(f"empty interval {interval}")
    if n_nodes < 10:
        raise ValueError("n_nodes must be >= 10")
    n = n_nodes
    prev = nystrom_det(kernel, a, b, n)
    change = np.inf
    while 2 * n <= max_nodes:
        n *= 2
        cur = nystrom_det(kernel, a, b, n)
        change = abs(cur - prev)
        if change < tol:
            return cur
        prev = cur
    raise QuadratureError(f"Fredholm determinant on [{a}, {b}] not converged at {n} nodes "
                          f"(last change {change:.2e})")
