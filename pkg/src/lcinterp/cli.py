"""Experiment driver: node tables, error-rate runs, operator-norm scans,
node-vs-continuum ratio reports, and mean-operator checks.

Every subcommand that takes ``--out`` writes a CSV with a header row and a
trailing metadata comment recording the configuration and library version;
a PNG figure is rendered next to the CSV unless ``--no-plot`` is given.
Runs are reproducible: a fixed seed and configuration yield byte-identical
CSV output, independent of BLAS thread count (the entry point caps
threadpools at one thread).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import click
import numpy as np

from . import __version__
from .errors import LcinterpError, QuadratureError
from .interp import interpolate
from .measure import (
    LEBESGUE_COLUMNS,
    MZ_COLUMNS,
    NODES_COLUMNS,
    RATE_COLUMNS,
    fit_rate,
    interp_error_norms,
    lebesgue_constant,
    mz_ratio,
    torus_norm_1d,
)
from .nodes import DegreePair, make_degree_pair, node_set_from_curve, node_set_from_grid
from .testbed import corpus, get as corpus_get, square_corpus
from .vdv import sample_params, vdv_apply_1d, vdv_kernel, vdv_spectral_degree_check
from . import plots

VDV_CHECK_COLUMNS = ("check", "n", "observed", "bound", "status")
CORPUS_COLUMNS = ("id", "domain", "regularity", "breakpoints", "facts")


@dataclass
class ExperimentConfig:
    subcommand: str
    pairs: tuple = ()
    sequence: str | None = None
    ps: tuple = ()
    corpus_ids: tuple = ()
    trials: int = 200
    seed: int = 0
    grid: int = 256
    orders: tuple = ()
    points: int = 2048
    window: int = 5
    tol: float = 1e-12
    out: Path | None = None
    plot: bool = True
    extras: dict = dc_field(default_factory=dict)

    def describe(self) -> str:
        parts = [f"subcommand={self.subcommand}"]
        if self.pairs:
            parts.append("pairs=" + ";".join(f"{d.m},{d.n}" for d in self.pairs))
        if self.sequence:
            parts.append(f"seq={self.sequence}")
        if self.ps:
            parts.append("p=" + ";".join(f"{p:g}" for p in self.ps))
        if self.corpus_ids:
            parts.append("corpus=" + ";".join(self.corpus_ids))
        for key, val in sorted(self.extras.items()):
            parts.append(f"{key}={val}")
        return " ".join(parts)


def _parse_pair(text: str) -> DegreePair:
    try:
        m_str, n_str = text.split(",")
        return make_degree_pair(int(m_str), int(n_str))
    except ValueError as exc:
        raise click.BadParameter(f"expected 'm,n' integers, got {text!r}") from exc


def _parse_sequence(text: str) -> tuple:
    """Named degree sequences: 'padua:8..128' -> (k, k+1) with k doubling;
    'skew:8..64' -> (2k+1, k) with k doubling."""
    try:
        name, span = text.split(":")
        start_str, stop_str = span.split("..")
        start, stop = int(start_str), int(stop_str)
    except ValueError as exc:
        raise click.BadParameter(f"expected 'name:start..stop', got {text!r}") from exc
    if name not in ("padua", "skew") or start < 1 or stop < start:
        raise click.BadParameter(f"unsupported sequence {text!r}")
    pairs = []
    k = start
    while k <= stop:
        pairs.append(make_degree_pair(k, k + 1) if name == "padua" else make_degree_pair(2 * k + 1, k))
        k *= 2
    return tuple(pairs)


def _collect_pairs(pair_opts: tuple, seq: str | None) -> tuple:
    pairs = tuple(_parse_pair(p) for p in pair_opts)
    if seq:
        pairs += _parse_sequence(seq)
    if not pairs:
        raise click.UsageError("provide --pair m,n and/or --seq name:start..stop")
    return pairs


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (np.floating,)):
        return repr(float(value))
    return str(value)


def _write_csv(out: Path | None, columns, rows, cfg: ExperimentConfig, notes=()) -> None:
    lines = [",".join(columns)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    lines += [f"# {note}" for note in notes]
    lines.append(f"# config: {cfg.describe()} version={__version__}")
    text = "\n".join(lines) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        click.echo(f"wrote {out}", err=True)


def _wrap_errors(fn):
    import functools

    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LcinterpError as exc:
            raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc

    return inner


@click.group()
@click.version_option(version=__version__)
def cli():
    """Interpolation on Lissajous-Chebyshev nodes: experiments and reports."""


out_option = click.option(
    "--out", type=click.Path(path_type=Path), default=None,
    help="CSV output path (stdout if omitted); figures are written next to it.",
)
plot_option = click.option("--plot/--no-plot", default=True, help="Render PNG figures next to --out.")


# ---------------------------------------------------------------- nodes

def run_nodes(cfg: ExperimentConfig) -> None:
    d = cfg.pairs[0]
    grid_set = node_set_from_grid(d)
    curve_set = node_set_from_curve(d, tol=cfg.tol)
    delta = float(np.max(np.abs(grid_set.coords() - curve_set.coords())))
    rows = [
        (node.i, node.j, node.x, node.y, node.node_class.value, node.weight)
        for node in grid_set.nodes
    ]
    notes = [f"consistency: grid-vs-curve max coordinate delta = {_fmt(delta)} (tol {cfg.tol:g})"]
    _write_csv(cfg.out, NODES_COLUMNS, rows, cfg, notes)
    if cfg.out is not None and cfg.plot:
        plots.render_nodes(grid_set, plots.figure_path(cfg.out))


@cli.command()
@click.option("--pair", required=True, help="Degree pair 'm,n' (coprime).")
@click.option("--tol", type=float, default=1e-12, show_default=True,
              help="Curve-vs-grid agreement tolerance.")
@out_option
@plot_option
@_wrap_errors
def nodes(pair, tol, out, plot):
    """Emit the node table (i, j, x, y, class, weight) for one degree pair."""
    cfg = ExperimentConfig("nodes", pairs=(_parse_pair(pair),), tol=tol, out=out, plot=plot,
                           extras={"tol": f"{tol:g}"})
    run_nodes(cfg)


# ---------------------------------------------------------------- interp-error

def run_converge(cfg: ExperimentConfig) -> list:
    """Error-vs-degree records and fitted slopes, one experiment per (function, p)."""
    reports = []
    rows = []
    for cid in cfg.corpus_ids:
        f = corpus_get(cid)
        if f.domain != "square":
            raise click.UsageError(f"corpus function {cid!r} is not defined on the square")
        smooth = not (f.breakpoints_x or f.breakpoints_y)
        tol = 1e-6 if smooth else 1e-3
        records = {p: [] for p in cfg.ps}
        for d in cfg.pairs:
            ip = interpolate(f, d)
            try:
                norms = interp_error_norms(f, ip, cfg.ps, points=cfg.points, tol=tol)
            except QuadratureError as exc:
                click.echo(f"skipping ({d.m},{d.n}) for {cid}: {exc}", err=True)
                continue
            for p in cfg.ps:
                records[p].append((d.m, d.n, norms[p]))
        for p in cfg.ps:
            recs = records[p]
            window = (max(0, len(recs) - cfg.window), len(recs))
            report = fit_rate(recs, window, experiment=f"{cid}:p{p:g}")
            reports.append(report)
            rows += [(report.experiment, m, n, e, report.fitted_slope) for m, n, e in recs]
    _write_csv(cfg.out, RATE_COLUMNS, rows, cfg)
    if cfg.out is not None and cfg.plot:
        plots.render_rate(reports, plots.figure_path(cfg.out))
        # one qualitative map for the first function at the largest degrees
        f0 = corpus_get(cfg.corpus_ids[0])
        plots.render_interpolant_heatmap(
            f0, interpolate(f0, cfg.pairs[-1]), plots.figure_path(cfg.out, "map")
        )
    return reports


@cli.command("interp-error")
@click.option("--pair", "pair_opts", multiple=True, help="Degree pair 'm,n'; repeatable.")
@click.option("--seq", default=None, help="Named sequence, e.g. 'padua:8..128' or 'skew:8..64'.")
@click.option("--corpus", "corpus_ids", multiple=True,
              help="Corpus function id(s); defaults to all square-domain functions.")
@click.option("--p", "ps", multiple=True, type=float, default=(1.0, 2.0), show_default=True)
@click.option("--points", type=int, default=2048, show_default=True,
              help="Quadrature points per axis before refinement.")
@click.option("--window", type=int, default=5, show_default=True,
              help="Tail length for the slope fit.")
@out_option
@plot_option
@_wrap_errors
def interp_error(pair_opts, seq, corpus_ids, ps, points, window, out, plot):
    """Weighted L_p interpolation errors over a degree sequence, plus slopes."""
    ids = corpus_ids or tuple(f.id for f in square_corpus())
    cfg = ExperimentConfig(
        "interp-error", pairs=_collect_pairs(pair_opts, seq), sequence=seq,
        ps=tuple(ps), corpus_ids=ids, points=points, window=window, out=out, plot=plot,
        extras={"points": points, "window": window},
    )
    run_converge(cfg)


# ---------------------------------------------------------------- lebesgue

def run_lebesgue(cfg: ExperimentConfig) -> list:
    rows = []
    for d in cfg.pairs:
        value = lebesgue_constant(d, cfg.grid)
        rows.append((d.m, d.n, cfg.grid, value, value / plots.log_product(d.m, d.n)))
    notes = []
    if len(rows) >= 2:
        trend = rows[-1][4] / rows[0][4]
        notes.append(f"trend: ratio last/first = {_fmt(trend)}")
    _write_csv(cfg.out, LEBESGUE_COLUMNS, rows, cfg, notes)
    if cfg.out is not None and cfg.plot:
        plots.render_lebesgue(rows, plots.figure_path(cfg.out))
    return rows


@cli.command()
@click.option("--pair", "pair_opts", multiple=True, help="Degree pair 'm,n'; repeatable.")
@click.option("--seq", default=None, help="Named sequence, e.g. 'padua:4..64'.")
@click.option("--grid", type=int, default=256, show_default=True,
              help="Evaluation grid points per axis (>= 64).")
@click.option("--check-trend", is_flag=True,
              help="Exit nonzero unless the log-product ratio satisfies last/first < 2.")
@out_option
@plot_option
@_wrap_errors
def lebesgue(pair_opts, seq, grid, check_trend, out, plot):
    """Operator-norm (Lebesgue constant) estimates over degree pairs."""
    cfg = ExperimentConfig("lebesgue", pairs=_collect_pairs(pair_opts, seq), sequence=seq,
                           grid=grid, out=out, plot=plot, extras={"grid": grid})
    rows = run_lebesgue(cfg)
    if check_trend:
        if len(rows) < 2 or not rows[-1][4] / rows[0][4] < 2.0:
            raise click.ClickException("log-product ratio trend check failed (last/first >= 2)")


# ---------------------------------------------------------------- mz

def run_mz(cfg: ExperimentConfig) -> list:
    rows = []
    for d in cfg.pairs:
        for p in cfg.ps:
            rep = mz_ratio(d, p, cfg.trials, cfg.seed)
            rows.append((d.m, d.n, p, rep.ratio_min, rep.ratio_max, rep.trials, rep.seed))
    _write_csv(cfg.out, MZ_COLUMNS, rows, cfg)
    if cfg.out is not None and cfg.plot:
        plots.render_mz(rows, plots.figure_path(cfg.out))
    return rows


@cli.command()
@click.option("--pair", "pair_opts", multiple=True, help="Degree pair 'm,n'; repeatable.")
@click.option("--seq", default=None, help="Named sequence.")
@click.option("--p", "ps", multiple=True, type=float, default=(2.0,), show_default=True)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
@plot_option
@_wrap_errors
def mz(pair_opts, seq, ps, trials, seed, out, plot):
    """Node-norm vs continuum-norm ratio bands over random polynomial ensembles."""
    cfg = ExperimentConfig("mz", pairs=_collect_pairs(pair_opts, seq), sequence=seq,
                           ps=tuple(ps), trials=trials, seed=seed, out=out, plot=plot,
                           extras={"trials": trials, "seed": seed})
    run_mz(cfg)


# ---------------------------------------------------------------- vdv

def _order_check_rows(n: int, seed: int, tolerance: float = 1e-9) -> list:
    """Degree bound, sample interpolation, and low-order reproduction checks."""
    rng = np.random.default_rng(seed)
    t = sample_params(n)
    rows = []

    samples = rng.uniform(-1.0, 1.0, 6 * n)
    degree = vdv_spectral_degree_check(samples, n)
    rows.append(("degree_bound", n, float(degree), float(4 * n - 1), degree <= 4 * n - 1))

    resid = float(np.max(np.abs(vdv_apply_1d(samples, n, t) - samples)))
    rows.append(("interpolates_samples", n, resid, tolerance, resid <= tolerance))

    # random cosine polynomial of order 2n, sampled then reproduced
    coeff = rng.uniform(-1.0, 1.0, 2 * n + 1)

    def poly(phi):
        return sum(c * np.cos(k * np.asarray(phi)) for k, c in enumerate(coeff))

    angles = np.linspace(0.0, 2 * np.pi, 101)
    rep = float(np.max(np.abs(vdv_apply_1d(poly(t), n, angles) - poly(angles))))
    rows.append(("reproduces_low_order", n, rep, tolerance, rep <= tolerance))
    return rows


def run_vdv(cfg: ExperimentConfig) -> bool:
    mode = cfg.extras["mode"]
    if mode == "check":
        all_rows = []
        for n in cfg.orders:
            all_rows += _order_check_rows(n, cfg.seed)
        rows = [(c, n, obs, bound, "pass" if ok else "FAIL") for c, n, obs, bound, ok in all_rows]
        _write_csv(cfg.out, VDV_CHECK_COLUMNS, rows, cfg)
        return all(ok for *_, ok in all_rows)
    if mode == "kernel":
        n = cfg.orders[0]
        phis = np.linspace(0.0, 2 * np.pi, cfg.points, endpoint=False)
        vals = vdv_kernel(n, phis)
        rows = list(zip(phis.tolist(), vals.tolist()))
        _write_csv(cfg.out, ("phi", "value"), rows, cfg)
        if cfg.out is not None and cfg.plot:
            plots.render_kernel(n, rows, plots.figure_path(cfg.out))
        return True
    # rate experiment for the registered torus step
    f = corpus_get("torus_step")
    rows, reports = [], []
    for p in cfg.ps:
        records = []
        for n in cfg.orders:
            t = sample_params(n)
            samples = f.eval(t)

            def err_field(phis, n=n, samples=samples):
                return f.eval(phis) - vdv_apply_1d(samples, n, phis)

            norm = torus_norm_1d(err_field, [p], points=cfg.points)[p]
            records.append((n, n, norm))
        report = fit_rate(records, (max(0, len(records) - cfg.window), len(records)),
                          experiment=f"torus_step:p{p:g}")
        reports.append(report)
        rows += [(report.experiment, m, n, e, report.fitted_slope) for m, n, e in records]
    _write_csv(cfg.out, RATE_COLUMNS, rows, cfg)
    if cfg.out is not None and cfg.plot:
        plots.render_rate(reports, plots.figure_path(cfg.out))
    return True


@cli.command()
@click.option("--check-properties", "--check-lemma56", "check_props", is_flag=True,
              help="Verify the mean operator's degree bound, sample interpolation, "
                   "and low-order reproduction; exit nonzero on failure.")
@click.option("--kernel-table", is_flag=True, help="Dump a kernel value table.")
@click.option("--rate", "rate_flag", is_flag=True,
              help="Torus-step error rates of the mean operator.")
@click.option("--n", "orders", multiple=True, type=int, help="Operator order(s); repeatable.")
@click.option("--n-seq", default=None, help="Order range with doubling, e.g. '8..128'.")
@click.option("--p", "ps", multiple=True, type=float, default=(1.0, 2.0), show_default=True)
@click.option("--points", type=int, default=2**14, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
@plot_option
@_wrap_errors
def vdv(check_props, kernel_table, rate_flag, orders, n_seq, ps, points, seed, out, plot):
    """Interpolatory mean operator: property checks, kernel tables, rate runs."""
    if sum((check_props, kernel_table, rate_flag)) != 1:
        raise click.UsageError("choose exactly one of --check-properties, --kernel-table, --rate")
    order_list = list(orders)
    if n_seq:
        try:
            start_str, stop_str = n_seq.split("..")
            k, stop = int(start_str), int(stop_str)
        except ValueError as exc:
            raise click.BadParameter(f"expected 'start..stop', got {n_seq!r}") from exc
        while k <= stop:
            order_list.append(k)
            k *= 2
    if not order_list:
        order_list = [16] if check_props else [8, 16, 32, 64, 128] if rate_flag else [4]
    mode = "check" if check_props else "kernel" if kernel_table else "rate"
    cfg = ExperimentConfig("vdv", ps=tuple(ps), orders=tuple(order_list), points=points,
                           seed=seed, out=out, plot=plot,
                           extras={"mode": mode, "orders": ";".join(map(str, order_list)),
                                   "seed": seed})
    if not run_vdv(cfg):
        raise click.ClickException("mean-operator property check failed")


# ---------------------------------------------------------------- corpus

@cli.command("corpus")
@out_option
@_wrap_errors
def corpus_cmd(out):
    """List the registered test functions and their metadata."""
    rows = []
    for f in corpus():
        breaks = ";".join(_fmt(b) for b in (f.breakpoints_x + f.breakpoints_y))
        facts = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(f.analytic_facts.items()))
        rows.append((f.id, f.domain, f.regularity.value, breaks, facts))
    cfg = ExperimentConfig("corpus", out=out, plot=False)
    _write_csv(out, CORPUS_COLUMNS, rows, cfg)


def main():
    """Console entry point; caps BLAS threadpools for reproducible output."""
    from threadpoolctl import threadpool_limits

    with threadpool_limits(limits=1):
        cli(standalone_mode=True)


if __name__ == "__main__":
    main()
