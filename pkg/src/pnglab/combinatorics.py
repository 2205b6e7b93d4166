"""Longest increasing subsequences, Robinson-Schensted, Greene invariants.

Tableaux are tuples of rows (each row a tuple), top row first.  A partition
is a weakly decreasing tuple of positive integers.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .rng import as_generator

Tableau = tuple[tuple, ...]
Partition = tuple[int, ...]

GREENE_MAX_N = 10
BACKTRACK_MAX_N = 10
COUNT_MAX_N = 20


def lis_length(seq: Sequence[float]) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise ValueError("entries must be pairwise distinct")
    tops: list = []
    for v in seq:
        i = bisect_left(tops, v)
        if i == len(tops):
            tops.append(v)
        else:
            tops[i] = v
    return len(tops)


def lis_bruteforce(seq: Sequence[float]) -> int:
    """Exhaustive search over all subsequences; oracle for short inputs."""
    seq = list(seq)
    for k in range(len(seq), 0, -1):
        for idx in combinations(range(len(seq)), k):
            if all(seq[a] < seq[b] for a, b in zip(idx, idx[1:])):
                return k
    return 0


def check_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    sigma = tuple(int(v) for v in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"not a permutation of 1..{len(sigma)}: {sigma}")
    return sigma


def shape(tab: Tableau) -> Partition:
    return tuple(len(r) for r in tab)


def is_partition(lam: Sequence[int]) -> bool:
    return all(v >= 1 for v in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def is_standard(tab: Tableau) -> bool:
    if not is_partition(shape(tab)):
        return False
    n = sum(shape(tab))
    if sorted(v for r in tab for v in r) != list(range(1, n + 1)):
        return False
    return is_increasing_tableau(tab)


def is_increasing_tableau(tab: Tableau) -> bool:
    """Rows and columns strictly increasing."""
    for r in tab:
        if any(a >= b for a, b in zip(r, r[1:])):
            return False
    for upper, lower in zip(tab, tab[1:]):
        if any(lower[j] <= upper[j] for j in range(len(lower))):
            return False
    return True


def _insert(rows: list[list], value) -> int:
    """Row-insert ``value``; return the index of the row that grew."""
    i = 0
    while True:
        if i == len(rows):
            rows.append([value])
            return i
        row = rows[i]
        j = bisect_right(row, value)
        if j == len(row):
            row.append(value)
            return i
        row[j], value = value, row[j]
        i += 1


def _schensted(keys, values, record):
    P: list[list] = []
    Q: list[list] = []
    for k in keys:
        i = _insert(P, values[k])
        if i == len(Q):
            Q.append([])
        Q[i].append(record[k])
    return tuple(map(tuple, P)), tuple(map(tuple, Q))


def rsk(sigma: Sequence[int]) -> tuple[Tableau, Tableau]:
    """Robinson-Schensted insertion of ``sigma(1), ..., sigma(N)``.

    Returns the insertion tableau ``P`` and the recording tableau ``Q``.

    >>> rsk((2, 3, 1, 5, 4))
    (((1, 3, 4), (2, 5)), ((1, 2, 4), (3, 5)))
    """
    sigma = check_permutation(sigma)
    idx = range(len(sigma))
    return _schensted(idx, sigma, [i + 1 for i in idx])


def rsk_shape(sigma: Sequence[int]) -> Partition:
    P: list[list] = []
    for v in sigma:
        _insert(P, v)
    return tuple(len(r) for r in P)


def rsk_inverse(P: Tableau, Q: Tableau) -> tuple[int, ...]:
    """Recover ``sigma`` from ``(P, Q)`` by reverse row bumping."""
    P = tuple(tuple(r) for r in P)
    Q = tuple(tuple(r) for r in Q)
    if shape(P) != shape(Q):
        raise ValueError(f"shape mismatch {shape(P)} vs {shape(Q)}")
    if not (is_standard(P) and is_standard(Q)):
        raise ValueError("P and Q must be standard Young tableaux")
    rows = [list(r) for r in P]
    where = {v: i for i, r in enumerate(Q) for v in r}
    n = sum(shape(P))
    sigma = [0] * n
    for step in range(n, 0, -1):
        i = where[step]
        value = rows[i].pop()
        if not rows[i]:
            rows.pop()
        for r in range(i - 1, -1, -1):
            row = rows[r]
            # largest entry smaller than the bumped value
            j = bisect_left(row, value) - 1
            row[j], value = value, row[j]
        sigma[step - 1] = value
    return tuple(sigma)


def rsk_real(points) -> tuple[Tableau, Tableau]:
    """RSK on planar points: insert ``y`` values in order of increasing ``z``.

    ``P`` holds y-values and ``Q`` the z-values at which each cell was
    created.  Both coordinates must be free of ties.
    """
    pts = np.asarray(getattr(points, "points", points), dtype=float).reshape(-1, 2)
    y, z = pts[:, 0], pts[:, 1]
    if len(np.unique(y)) != len(y) or len(np.unique(z)) != len(z):
        raise ValueError("points must be pairwise distinct in both coordinates")
    order = np.argsort(z, kind="stable")
    return _schensted(order.tolist(), y.tolist(), z.tolist())


def comparison_permutation(points) -> tuple[int, ...]:
    """Ranks of ``y`` read in order of increasing ``z`` (1-based)."""
    pts = np.asarray(getattr(points, "points", points), dtype=float).reshape(-1, 2)
    yr = np.argsort(np.argsort(pts[:, 0], kind="stable"), kind="stable") + 1
    order = np.argsort(pts[:, 1], kind="stable")
    return tuple(int(v) for v in yr[order])


def greene_bruteforce(sigma: Sequence[int], k: int) -> int:
    """Largest total size of ``k`` disjoint increasing subsequences of ``sigma``.

    Exhaustive search over assignments of each entry to one of ``k`` chains
    (or to none), memoized on the multiset of chain tails.  Oracle only.
    """
    sigma = check_permutation(sigma)
    if len(sigma) > GREENE_MAX_N:
        raise ValueError(f"greene_bruteforce refuses N > {GREENE_MAX_N}")
    if k < 1:
        raise ValueError("k must be positive")
    n = len(sigma)
    k = min(k, n) if n else 1

    @lru_cache(maxsize=None)
    def best(i: int, tails: tuple[int, ...]) -> int:
        if i == n:
            return 0
        v = sigma[i]
        out = best(i + 1, tails)
        seen = set()
        for j, t in enumerate(tails):
            if t < v and t not in seen:
                seen.add(t)
                nt = tuple(sorted(tails[:j] + (v,) + tails[j + 1:]))
                out = max(out, 1 + best(i + 1, nt))
        return out

    return best(0, (0,) * k)


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def standard_tableaux(lam: Sequence[int]) -> Iterator[Tableau]:
    """Enumerate every standard tableau of shape ``lam`` by backtracking."""
    lam = tuple(lam)
    n = sum(lam)
    rows: list[list[int]] = [[] for _ in lam]

    def place(v: int):
        if v > n:
            yield tuple(tuple(r) for r in rows)
            return
        for i, r in enumerate(rows):
            # next cell in row i must exist and have its upper neighbour filled
            if len(r) < lam[i] and (i == 0 or len(rows[i - 1]) > len(r)):
                r.append(v)
                yield from place(v + 1)
                r.pop()

    yield from place(1)


def hook_length_count(lam: Sequence[int]) -> int:
    lam = tuple(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, r in enumerate(lam):
        for j in range(r):
            hooks *= (r - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(sum(lam)) // hooks


def count_standard_tableaux(lam: Sequence[int]) -> int:
    """Number of standard tableaux of shape ``lam`` (``d_lambda``).

    Exhaustive enumeration for ``N <= 10``; above that the hook-length
    formula, which the test-suite checks against enumeration on every
    partition of ``N <= 10``.
    """
    lam = tuple(int(v) for v in lam)
    if not is_partition(lam):
        raise ValueError(f"not a partition: {lam}")
    n = sum(lam)
    if n > COUNT_MAX_N:
        raise ValueError(f"count_standard_tableaux refuses N > {COUNT_MAX_N}")
    if n <= BACKTRACK_MAX_N:
        return sum(1 for _ in standard_tableaux(lam))
    return hook_length_count(lam)


def uniform_permutation(n: int, seed) -> np.ndarray:
    """Uniform element of S_n as a 1-based array (Fisher-Yates via numpy)."""
    return as_generator(seed).permutation(n) + 1


def plancherel_sample(N: int, seed) -> Partition:
    """Shape of ``rsk(sigma)`` for ``sigma`` uniform on S_N."""
    if N < 1:
        raise ValueError("N must be positive")
    return rsk_shape(uniform_permutation(N, seed).tolist())


def tableau_to_json(tab: Tableau) -> str:
    return json.dumps({"shape": list(shape(tab)), "rows": [list(r) for r in tab]})


def tableau_from_json(text: str) -> Tableau:
    d = json.loads(text)
    tab = tuple(tuple(r) for r in d["rows"])
    if list(shape(tab)) != list(d["shape"]):
        raise ValueError("rows do not match the declared shape")
    return tab


def write_permutation(path, sigma: Sequence[int]) -> None:
    Path(path).write_text(",".join(str(int(v)) for v in sigma) + "\n")


def read_permutation(path) -> tuple[int, ...]:
    return check_permutation(int(v) for v in Path(path).read_text().strip().split(","))
