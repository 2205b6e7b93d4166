"""Command-line entry point: ``python3 -m pnglab.cli <subcommand> ...``.

Subcommands
-----------
tw       tabulate F1 / F2 on a grid
png      rescaled PNG heights, one row ``seed,s`` per replica
rmt      rescaled largest eigenvalues, one row ``seed,edge_value`` per replica
dyson    edge paths along stationary Dyson dynamics, rows ``path_id,tau,edge_value``
compare  KS / moment report of a sample file against a table (JSON)
kernel   spot value of an Airy-type kernel

Exit codes: 0 success, 1 usage or validation error, 2 numeric failure.
Replica ``i`` of a run with ``--seed S`` always uses the stream ``Seed(S, i)``,
so output rows do not depend on ``--threads``.
"""

from __future__ import annotations

import argparse
import logging
import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from .png import droplet_height, flat_height, rescale_droplet, rescale_flat
from .pointfield import Region, sample_poisson
from .rmt import edge_sample, top_eigenvalue_path
from .rng import Seed
from .special.kernels import KernelSpec
from .special.painleve import PainleveError
from .special.quadrature import QuadratureError
from .special.tracy_widom import DistTable, tw_table
from .stats import compare, estimate_g, read_samples_csv

log = logging.getLogger("pnglab")

NUMERIC_ERRORS = (ArithmeticError, QuadratureError, PainleveError, np.linalg.LinAlgError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- replica workers (module level so they pickle) ------------------------------

def _png_replica(i: int, geometry: str, T: float, seed: int) -> float:
    s = Seed(seed, i)
    if geometry == "droplet":
        # the backward cone of (0, T) is the square [0, T]^2 in the polymer frame
        f = sample_poisson(Region.rectangle(T, T), 1.0, s)
        return rescale_droplet(droplet_height(T, 0.0, f), T, 0.0)[1]
    f = sample_poisson(Region.triangle(T), 1.0, s)
    return rescale_flat(flat_height(T, f), T)


def _rmt_replica(i: int, ensemble: str, N: int, seed: int) -> float:
    return edge_sample(ensemble, N, Seed(seed, i))


def _dyson_replica(i: int, ensemble: str, N: int, taus: tuple, seed: int) -> np.ndarray:
    return top_eigenvalue_path(ensemble, N, taus, Seed(seed, i)).values


def run_replicas(fn, n: int, threads: int) -> list:
    """``[fn(0), ..., fn(n-1)]``, in order, optionally over worker processes."""
    if threads <= 1 or n < 2:
        return [fn(i) for i in range(n)]
    chunk = max(1, n // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, range(n), chunksize=chunk))


# -- output --------------------------------------------------------------------

def provenance(argv, seed) -> str:
    return f"# pnglab {__version__} argv={shlex.join(argv)} seed={seed}"


def _write(path, lines) -> None:
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# -- subcommands ---------------------------------------------------------------

def cmd_tw(a, argv):
    if not a.smax > a.smin:
        raise UsageError("--smin must be < --smax")
    if not a.step > 0:
        raise UsageError("--step must be > 0")
    try:
        table = tw_table(a.beta, a.smin, a.smax, a.step, a.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    head = provenance(argv, a.seed)
    if a.out in (None, "-"):
        rows = [f"{x:.10g},{f:.17g}" for x, f in zip(table.s, table.F)]
        _write(None, [head, f"# beta={table.beta} method={table.method}", "s,F"] + rows)
    else:
        table.to_csv(a.out, provenance=head)


def cmd_png(a, argv):
    if not a.T > 0:
        raise UsageError("--T must be > 0")
    if a.samples < 1:
        raise UsageError("--samples must be >= 1")
    fn = partial(_png_replica, geometry=a.geometry, T=a.T, seed=a.seed)
    vals = run_replicas(fn, a.samples, a.threads)
    rows = [f"{i},{v:.17g}" for i, v in enumerate(vals)]
    _write(a.out, [provenance(argv, a.seed), "seed,s"] + rows)


def cmd_rmt(a, argv):
    if a.N < 1:
        raise UsageError("--N must be >= 1")
    if a.samples < 1:
        raise UsageError("--samples must be >= 1")
    fn = partial(_rmt_replica, ensemble=a.ensemble, N=a.N, seed=a.seed)
    vals = run_replicas(fn, a.samples, a.threads)
    rows = [f"{i},{v:.17g}" for i, v in enumerate(vals)]
    _write(a.out, [provenance(argv, a.seed), "seed,edge_value"] + rows)


def _parse_taus(text: str) -> tuple:
    try:
        taus = tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad --taus {text!r}") from exc
    if not taus or taus[0] < 0 or any(b <= a for a, b in zip(taus, taus[1:])):
        raise UsageError("--taus must be increasing and start at >= 0")
    return taus


def cmd_dyson(a, argv):
    if a.N < 1:
        raise UsageError("--N must be >= 1")
    if a.paths < 1:
        raise UsageError("--paths must be >= 1")
    taus = _parse_taus(a.taus)
    fn = partial(_dyson_replica, ensemble=a.ensemble, N=a.N, taus=taus, seed=a.seed)
    paths = np.array(run_replicas(fn, a.paths, a.threads))
    rows = [f"{i},{t:.10g},{v:.17g}" for i, p in enumerate(paths) for t, v in zip(taus, p)]
    _write(a.out, [provenance(argv, a.seed), "path_id,tau,edge_value"] + rows)
    if a.g_report:
        if len(taus) != 2:
            raise UsageError("--g-report needs exactly two taus")
        g = estimate_g(paths[:, :2])
        _write(a.g_report, [provenance(argv, a.seed), "lag,g,paths",
                            f"{taus[1] - taus[0]:.10g},{g:.17g},{len(paths)}"])


def cmd_compare(a, argv):
    try:
        e = read_samples_csv(a.empirical)
        ref = DistTable.from_csv(a.reference)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    report = compare(e, ref, reference=str(a.reference))
    _write(a.out, [report.to_json()])


def cmd_kernel(a, argv):
    params = tuple(float(p) for p in a.params.split(",") if p.strip()) if a.params else ()
    need = {"airy": 0, "b": 1, "goe": 2, "extended": 2}[a.kind]
    if len(params) != need:
        raise UsageError(f"kernel kind {a.kind!r} takes {need} --params value(s)")
    try:
        val = KernelSpec(a.kind, params)(a.s1, a.s2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(a.out, [provenance(argv, a.seed), "kind,s1,s2,value",
                   f"{a.kind},{a.s1:.10g},{a.s2:.10g},{float(val):.17g}"])


# -- argument parsing ----------------------------------------------------------

def _common(p):
    p.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--config", default=None, help="key=value file; flags override it")


def _u64(text) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _beta(text) -> int:
    if text not in ("1", "2"):
        raise argparse.ArgumentTypeError(f"beta must be 1 or 2, got {text}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pnglab", description="PNG growth, random matrices and Tracy-Widom laws")
    ap.add_argument("--version", action="version", version=f"pnglab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tw", help="tabulate a Tracy-Widom CDF")
    p.add_argument("--beta", type=_beta, default=2)
    p.add_argument("--smin", type=float, default=-6.0)
    p.add_argument("--smax", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--method", choices=("painleve", "fredholm"), default="painleve")
    _common(p)
    p.set_defaults(func=cmd_tw)

    p = sub.add_parser("png", help="sample rescaled PNG heights")
    p.add_argument("--geometry", choices=("droplet", "flat"), default="droplet")
    p.add_argument("--T", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=100)
    _common(p)
    p.set_defaults(func=cmd_png)

    p = sub.add_parser("rmt", help="sample rescaled largest eigenvalues")
    p.add_argument("--ensemble", choices=("gue", "goe"), default="gue")
    p.add_argument("--N", type=int, default=200)
    p.add_argument("--samples", type=int, default=100)
    _common(p)
    p.set_defaults(func=cmd_rmt)

    p = sub.add_parser("dyson", help="edge paths along Dyson dynamics")
    p.add_argument("--ensemble", choices=("gue", "goe"), default="gue")
    p.add_argument("--N", type=int, default=50)
    p.add_argument("--taus", default="0,1")
    p.add_argument("--paths", type=int, default=100)
    p.add_argument("--g-report", default=None, help="also write the lag variance g here")
    _common(p)
    p.set_defaults(func=cmd_dyson)

    p = sub.add_parser("compare", help="compare a sample file with a table")
    p.add_argument("empirical")
    p.add_argument("reference")
    _common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("kernel", help="evaluate a kernel at one point")
    p.add_argument("--kind", choices=("airy", "b", "goe", "extended"), default="airy")
    p.add_argument("--params", default="", help="comma list: s for b, i,j for goe, tau1,tau2 for extended")
    p.add_argument("--s1", type=float, default=0.0)
    p.add_argument("--s2", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_kernel)
    return ap


def read_config(path) -> dict[str, str]:
    cfg = {}
    for n, ln in enumerate(Path(path).read_text().splitlines(), 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise UsageError(f"{path}:{n}: expected key=value, got {ln!r}")
        k, v = (t.strip() for t in ln.split("=", 1))
        cfg[k.replace("-", "_")] = v
    return cfg


def _apply_config(ap, argv):
    """Re-parse with config values installed as subparser defaults."""
    a = ap.parse_args(argv)
    if not a.config:
        return a
    try:
        cfg = read_config(a.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    sp = ap._subparsers._group_actions[0].choices[a.command]
    actions = {act.dest: act for act in sp._actions if act.dest not in ("help", "config")}
    unknown = sorted(set(cfg) - set(actions))
    if unknown:
        raise UsageError(f"unknown config keys for '{a.command}': {', '.join(unknown)}")
    defaults = {}
    for k, v in cfg.items():
        act = actions[k]
        try:
            val = act.type(v) if act.type else v
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"config key {k}: {exc}") from exc
        if act.choices is not None and val not in act.choices:
            raise UsageError(f"config key {k}: {v!r} not in {sorted(act.choices)}")
        defaults[k] = val
    sp.set_defaults(**defaults)
    return ap.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    ap = build_parser()
    try:
        a = _apply_config(ap, argv)
        if a.threads < 1:
            raise UsageError("--threads must be >= 1")
        a.func(a, ["pnglab"] + argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"pnglab: error: {exc}", file=sys.stderr)
        return 1
    except NUMERIC_ERRORS as exc:
        print(f"pnglab: numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
