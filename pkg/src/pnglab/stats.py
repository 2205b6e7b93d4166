"""Empirical distributions, KS distances against tabulated laws, moments."""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
from scipy import stats as _sps

from .special.tracy_widom import DistTable, table_moments

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmpiricalDist:
    samples: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        a = np.sort(np.asarray(self.samples, dtype=float).ravel())
        if not np.all(np.isfinite(a)):
            raise ValueError("samples must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "samples", a)

    @property
    def n(self) -> int:
        return len(self.samples)

    def cdf(self, x):
        """Right-continuous empirical CDF."""
        return np.searchsorted(self.samples, x, side="right") / self.n


@dataclass(frozen=True)
class KSResult:
    ks: float
    clamped: int  # number of samples outside the table grid


def _require(e: EmpiricalDist, n_min: int, what: str):
    if e.n < n_min:
        raise ValueError(f"{what} needs at least {n_min} samples, got {e.n}")


def ks_result(e: EmpiricalDist, ref: DistTable) -> KSResult:
    """KS distance with a count of samples that fell off the reference grid.

    The supremum is taken over the distinct sample values, comparing the
    right-continuous empirical CDF with the linearly interpolated table.
    Off-grid samples see the table's end values (clamped).
    """
    _require(e, 1, "KS distance")
    x, idx = np.unique(e.samples, return_index=True)
    # counts of samples <= x for each distinct value
    upto = np.append(idx[1:], e.n) / e.n
    d = float(np.max(np.abs(upto - ref(x))))
    out = int(np.sum((e.samples < ref.s[0]) | (e.samples > ref.s[-1])))
    if out:
        log.warning("%d of %d samples outside the table range [%g, %g]; reference clamped",
                    out, e.n, ref.s[0], ref.s[-1])
    return KSResult(min(d, 1.0), out)


def ks_distance(e: EmpiricalDist, ref: DistTable) -> float:
    return ks_result(e, ref).ks


def ks_two_sample(a, b) -> float:
    """Two-sample KS statistic (``sup |F_a - F_b|``)."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValueError("empty sample")
    return float(_sps.ks_2samp(a, b).statistic)


def moments(e: EmpiricalDist) -> tuple[float, float, float, float]:
    """Mean, unbiased variance, skewness and (non-excess) kurtosis.

    Skewness and kurtosis are the standardized central moments
    ``m3 / m2^{3/2}`` and ``m4 / m2^2``; they are ``nan`` for a constant
    sample.
    """
    _require(e, 2, "moments")
    x = e.samples
    mean = float(x.mean())
    c = x - mean
    m2 = float(np.mean(c * c))
    var = m2 * e.n / (e.n - 1)
    if m2 == 0:
        return mean, 0.0, float("nan"), float("nan")
    with np.errstate(invalid="ignore", divide="ignore"):  # m2 may underflow
        skew = float(np.mean(c ** 3) / m2 ** 1.5)
        kurt = float(np.mean(c ** 4) / m2 ** 2) if e.n >= 4 else float("nan")
    return mean, var, skew, kurt


def estimate_g(pairs) -> float:
    """Sample variance of ``b - a`` over edge-value pairs at a fixed lag."""
    p = np.asarray(pairs, dtype=float)
    if p.ndim != 2 or p.shape[1] != 2:
        raise ValueError("pairs must have shape (n, 2)")
    if len(p) < 100:
        raise ValueError(f"estimate_g needs at least 100 pairs, got {len(p)}")
    return float(np.var(p[:, 1] - p[:, 0], ddof=1))


@dataclass(frozen=True)
class ComparisonReport:
    ks: float
    mean_diff: float
    var_diff: float
    n: int
    reference: str

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def write(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")


def compare(e: EmpiricalDist, ref: DistTable, reference: str = "") -> ComparisonReport:
    """KS distance plus mean/variance differences (sample minus table)."""
    ks = ks_distance(e, ref)
    mean, var = e.samples.mean(), (np.var(e.samples, ddof=1) if e.n > 1 else 0.0)
    rm, rv = table_moments(ref)
    tag = reference or f"beta={ref.beta} method={ref.method}"
    return ComparisonReport(ks, float(mean - rm), float(var - rv), e.n, tag)


def read_samples_csv(path) -> EmpiricalDist:
    """Read the value column of a ``seed,s`` / ``seed,edge_value`` style CSV.

    ``#`` lines are kept as provenance.  Raises ``ValueError`` on an empty
    file, an unexpected header or a malformed row.
    """
    path = Path(path)
    prov, header, vals = [], None, []
    accepted = ("seed,s", "seed,edge_value")
    for ln in path.read_text().splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            prov.append(ln[1:].strip())
            continue
        if header is None:
            if ln not in accepted:
                raise ValueError(f"{path}: expected header one of {accepted}, got {ln!r}")
            header = ln.split(",")
            continue
        fields = ln.split(",")
        if len(fields) != len(header):
            raise ValueError(f"{path}: malformed row {ln!r}")
        vals.append(float(fields[-1]))
    if not vals:
        raise ValueError(f"{path}: no samples")
    return EmpiricalDist(np.array(vals), "; ".join(prov))
