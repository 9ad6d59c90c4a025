"""Command-line front end.

Subcommands: ``basis`` (evaluate a raw or orthogonalized zero-integral basis
on a grid), ``ortho`` (emit the transform matrix and bookkeeping of an
orthogonalized basis), ``smooth`` (histogram CSV to smoothed clr curves and
densities), ``fpca`` (functional PCA of the fitted coefficients), ``bench``
(measured-vs-predicted locality and operation-count tables, plus non-zero
counts of the penalty and collocation matrices), and ``plot`` (render a
previously written curve CSV).

Exit codes: 0 success, 2 validation failure, 3 I/O failure; stderr carries a
machine-parsable error name followed by a colon and detail.
"""

from __future__ import annotations

import functools
import sys
from pathlib import Path

import click
import numpy as np

from . import report
from .bayes import DiscreteDensity, GridFunction, inv_clr
from .errors import InfeasibleDesign, ZbError
from .inner import InstrumentationContext, nonzero_count
from .knots import KnotSequence, dyadic_levels, make_knots
from .ortho import (
    Strategy,
    orthogonalize,
    predicted_ip_count,
    predicted_support,
    relative_total_support,
)
from .sfpca import CoefficientDataset, active_basis, fpca, sparse_fpca
from .smoothing import SmoothingProblem, failed_interlacing_index, fit
from .zbspline import zb_design_matrix, zb_dimension

STRATEGY_NAMES = [s.value for s in Strategy]


def _fail(code: int, name: str, detail: str) -> None:
    click.echo(f"{name}: {detail}", err=True)
    sys.exit(code)


def handle_errors(func):
    """Map library and I/O errors onto the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ZbError as exc:
            _fail(2, exc.name, Exception.__str__(exc))
        except OSError as exc:
            _fail(3, "IOError", str(exc))
        except ValueError as exc:
            _fail(2, "ValueError", str(exc))

    return wrapper


def _parse_domain(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"domain must be 'a,b', got {text!r}")
    return float(parts[0]), float(parts[1])


def build_knots(
    degree: int,
    domain: str,
    inner_knots: int | None,
    knots_file: str | None,
) -> KnotSequence:
    a, b = _parse_domain(domain)
    if knots_file is not None:
        inner = tuple(
            float(tok)
            for tok in Path(knots_file).read_text().split()
            if tok.strip()
        )
        return KnotSequence(a=a, b=b, degree=degree, inner=inner)
    if inner_knots is None:
        raise ValueError("provide --inner-knots or --knots-file")
    return make_knots(a, b, inner_knots, degree)


def knot_options(func):
    func = click.option(
        "--degree", type=int, default=2, show_default=True, help="Spline degree k."
    )(func)
    func = click.option(
        "--inner-knots",
        type=int,
        default=None,
        help="Number g of equispaced inner knots.",
    )(func)
    func = click.option(
        "--knots-file",
        type=click.Path(),
        default=None,
        help="File with explicit inner knots (whitespace-separated).",
    )(func)
    func = click.option(
        "--domain", default="0,1", show_default=True, help="Interval endpoints 'a,b'."
    )(func)
    return func


def _defaults_applied(ctx: click.Context) -> list[str]:
    return sorted(
        name
        for name in ctx.params
        if ctx.get_parameter_source(name) is click.core.ParameterSource.DEFAULT
    )


def _manifest(ctx: click.Context, knots: KnotSequence | None, extra: dict) -> dict:
    cfg = {k: v for k, v in ctx.params.items()}
    if knots is not None:
        cfg["resolved_inner_knots"] = list(knots.inner)
        cfg["resolved_domain"] = [knots.a, knots.b]
    cfg["defaults_applied"] = _defaults_applied(ctx)
    cfg.update(extra)
    return cfg


@click.group()
def main() -> None:
    """Zero-integral spline bases, orthogonalization, smoothing, and FPCA."""


@main.command("basis")
@knot_options
@click.option("--ortho", "ortho_strategy", type=click.Choice(STRATEGY_NAMES), default=None)
@click.option("--grid", type=int, default=501, show_default=True)
@click.option("--svg", is_flag=True, help="Also render the figure as SVG.")
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_basis(ctx, degree, inner_knots, knots_file, domain, ortho_strategy, grid, svg, out_dir):
    """Evaluate the basis on a uniform grid and render it."""
    knots = build_knots(degree, domain, inner_knots, knots_file)
    dim = zb_dimension(knots)
    xs = np.linspace(knots.a, knots.b, grid)
    if ortho_strategy is None:
        values = zb_design_matrix(knots, xs)
        names = [f"Z_{p - degree}" for p in range(dim)]
    else:
        basis = orthogonalize(knots, Strategy(ortho_strategy))
        values = basis.design(xs)
        names = [f"O_{p - degree}" for p in range(dim)]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(
        out / "basis.csv",
        ["x", *names],
        ([x, *row] for x, row in zip(xs, values)),
    )
    title = "orthonormal basis" if ortho_strategy else "zero-integral basis"
    report.save_curve_figure(out / "basis.png", xs, values, names, title=title)
    if svg:
        report.save_curve_figure(out / "basis.svg", xs, values, names, title=title)
    report.write_manifest(out / "manifest.json", _manifest(ctx, knots, {"dim": dim}))


@main.command("ortho")
@knot_options
@click.option(
    "--strategy",
    type=click.Choice(STRATEGY_NAMES),
    default=Strategy.SPLINET.value,
    show_default=True,
)
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_ortho(ctx, degree, inner_knots, knots_file, domain, strategy, out_dir):
    """Emit the orthogonalization transform and its bookkeeping."""
    knots = build_knots(degree, domain, inner_knots, knots_file)
    basis = orthogonalize(knots, Strategy(strategy))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(
        out / "phi.csv",
        [f"Z_{p - degree}" for p in range(basis.dim)],
        basis.phi,
    )
    report.write_csv(
        out / "supports.csv",
        ["function", "first_interval", "last_interval_excl"],
        ([p, s[0], s[1]] for p, s in enumerate(basis.supports)),
    )
    report.write_manifest(
        out / "manifest.json",
        _manifest(
            ctx,
            knots,
            {
                "dim": basis.dim,
                "inner_product_count": basis.ip_count,
                "relative_total_support": relative_total_support(basis),
            },
        ),
    )


def _smooth_observations(knots, basis, mids, freq_rows, alpha, penalty_order, grid):
    """Fit each histogram row; returns coefficients, clr curves, densities."""
    idx = failed_interlacing_index(basis, mids)
    if idx is not None:
        raise InfeasibleDesign(
            f"data points do not interlace the knots at basis index {idx}"
        )
    xs = np.linspace(knots.a, knots.b, grid)
    coeff_rows, clr_rows, dens_rows = [], [], []
    for freqs in freq_rows:
        d = DiscreteDensity(mids, freqs).normalized()
        ys = np.log(d.freqs) - np.log(d.freqs).mean()
        problem = SmoothingProblem(
            basis=basis, xs=mids, ys=ys, alpha=alpha, penalty_order=penalty_order
        )
        result = fit(problem)
        curve = result.spline(xs)
        coeff_rows.append(result.coeffs)
        clr_rows.append(curve)
        dens_rows.append(inv_clr(GridFunction(xs, curve)).values)
    return xs, np.array(coeff_rows), np.array(clr_rows), np.array(dens_rows)


def smooth_options(func):
    func = click.option("--alpha", type=float, default=0.5, show_default=True)(func)
    func = click.option("--penalty-order", type=int, default=1, show_default=True)(func)
    func = click.option(
        "--strategy",
        type=click.Choice(STRATEGY_NAMES),
        default=Strategy.SPLINET.value,
        show_default=True,
    )(func)
    func = click.option("--grid", type=int, default=501, show_default=True)(func)
    return func


@main.command("smooth")
@click.argument("histogram", type=click.Path())
@knot_options
@smooth_options
@click.option("--svg", is_flag=True, help="Also render figures as SVG.")
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_smooth(
    ctx, histogram, degree, inner_knots, knots_file, domain,
    alpha, penalty_order, strategy, grid, svg, out_dir,
):
    """Smooth wide-format histograms into clr curves and densities."""
    knots = build_knots(degree, domain, inner_knots, knots_file)
    basis = orthogonalize(knots, Strategy(strategy))
    mids, labels, freqs = report.read_wide_histograms(Path(histogram))
    xs, coeffs, clr_rows, dens_rows = _smooth_observations(
        knots, basis, mids, freqs, alpha, penalty_order, grid
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(
        out / "coefficients.csv",
        ["id", *[f"o_{p}" for p in range(basis.dim)]],
        ([lbl, *row] for lbl, row in zip(labels, coeffs)),
    )
    for name, rows in (("clr_curves.csv", clr_rows), ("density_curves.csv", dens_rows)):
        report.write_csv(
            out / name,
            ["x", *labels],
            ([x, *col] for x, col in zip(xs, rows.T)),
        )
    report.save_curve_figure(
        out / "clr_curves.png", xs, clr_rows.T, labels, title="clr curves", ylabel="clr"
    )
    report.save_curve_figure(
        out / "density_curves.png", xs, dens_rows.T, labels,
        title="smoothed densities", ylabel="density",
    )
    if svg:
        report.save_curve_figure(
            out / "density_curves.svg", xs, dens_rows.T, labels,
            title="smoothed densities", ylabel="density",
        )
    report.write_manifest(
        out / "manifest.json",
        _manifest(
            ctx, knots,
            {"dim": basis.dim, "n_observations": len(labels), "rank_check": True},
        ),
    )


@main.command("fpca")
@click.argument("histogram", type=click.Path())
@knot_options
@smooth_options
@click.option("--threshold", type=float, default=0.1, show_default=True)
@click.option("--components", type=int, default=3, show_default=True)
@click.option(
    "--sparsity-grid",
    is_flag=True,
    help="Also tabulate sparse-PCA active counts and explained variability over sparsity 0..1.",
)
@click.option("--svg", is_flag=True, help="Also render figures as SVG.")
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_fpca(
    ctx, histogram, degree, inner_knots, knots_file, domain,
    alpha, penalty_order, strategy, grid, threshold, components,
    sparsity_grid, svg, out_dir,
):
    """Functional PCA of smoothed histogram coefficients."""
    knots = build_knots(degree, domain, inner_knots, knots_file)
    basis = orthogonalize(knots, Strategy(strategy))
    mids, labels, freqs = report.read_wide_histograms(Path(histogram))
    xs, coeffs, _, _ = _smooth_observations(
        knots, basis, mids, freqs, alpha, penalty_order, grid
    )
    data = CoefficientDataset(basis=basis, coeffs=coeffs, ids=tuple(labels))
    result = fpca(data)
    components = min(components, basis.dim)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(
        out / "eigen.csv",
        ["component", "eigenvalue", "explained"],
        (
            [c + 1, ev, ex]
            for c, (ev, ex) in enumerate(zip(result.eigenvalues, result.explained))
        ),
    )
    pc_names = [f"PC{c + 1}" for c in range(components)]
    pc_curves = np.column_stack(
        [result.pc_curve(c)(xs) for c in range(components)]
    )
    report.write_csv(
        out / "pc_curves.csv",
        ["x", *pc_names],
        ([x, *row] for x, row in zip(xs, pc_curves)),
    )
    masks = np.column_stack(
        [active_basis(result, c, threshold) for c in range(components)]
    )
    report.write_csv(
        out / "active_mask.csv",
        ["function", *pc_names],
        ([p, *(int(v) for v in row)] for p, row in enumerate(masks)),
    )
    report.save_scree_figure(out / "scree.png", result.explained)
    report.save_curve_figure(
        out / "pc_curves.png", xs, pc_curves, pc_names,
        title="principal component curves", ylabel="clr",
    )
    if svg:
        report.save_scree_figure(out / "scree.svg", result.explained)
        report.save_curve_figure(
            out / "pc_curves.svg", xs, pc_curves, pc_names,
            title="principal component curves", ylabel="clr",
        )
    extra = {"dim": basis.dim, "n_observations": len(labels)}
    if sparsity_grid:
        rows = []
        for sp in np.round(np.arange(0, 1.01, 0.1), 10):
            sres = sparse_fpca(data, float(sp), component_count=components)
            for c in range(components):
                rows.append(
                    [
                        sp,
                        c + 1,
                        int(np.sum(np.abs(sres.loadings[:, c]) > threshold)),
                        sres.explained[c],
                        int(sres.breakdown[c]),
                    ]
                )
        report.write_csv(
            out / "sparsity_grid.csv",
            ["sparsity", "component", "active_count", "explained", "breakdown"],
            rows,
        )
        extra["sparsity_grid"] = True
    report.write_manifest(out / "manifest.json", _manifest(ctx, knots, extra))


@main.command("bench")
@knot_options
@click.option("--penalty-order", type=int, default=1, show_default=True)
@click.option(
    "--collocation-points",
    default=None,
    help="Comma-separated abscissae; adds non-zero counts of the penalty and collocation matrices.",
)
@click.option(
    "--threshold",
    type=float,
    default=1e-10,
    show_default=True,
    help="Absolute non-zero threshold for the count columns.",
)
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_bench(
    ctx, degree, inner_knots, knots_file, domain,
    penalty_order, collocation_points, threshold, out_dir,
):
    """Measured vs predicted locality and operation counts per strategy."""
    knots = build_knots(degree, domain, inner_knots, knots_file)
    if dyadic_levels(knots.g, knots.degree) is None:
        # Surface the incompatibility before doing any work: the splinet row
        # is part of the contract of this report.
        orthogonalize(knots, Strategy.SPLINET)
    pts = (
        np.array([float(t) for t in collocation_points.split(",")])
        if collocation_points
        else None
    )
    header = ["strategy", "measured_rts", "predicted_rts", "measured_ip", "predicted_ip"]
    if pts is not None:
        header += ["nnz_penalty", "nnz_collocation"]
    rows = []
    for strategy in Strategy:
        ctx_ip = InstrumentationContext()
        basis = orthogonalize(knots, strategy, ctx=ctx_ip)
        row = [
            strategy.value,
            relative_total_support(basis),
            predicted_support(strategy, knots.g, knots.degree),
            ctx_ip.count,
            predicted_ip_count(strategy, knots.g, knots.degree),
        ]
        if pts is not None:
            row.append(nonzero_count(basis.gram_matrix(penalty_order), threshold))
            row.append(nonzero_count(basis.design(pts), threshold))
        rows.append(row)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.write_csv(out / "bench.csv", header, rows)
    widths = [
        max(len(header[c]), *(len(report.fmt(r[c]) if c else str(r[c])) for r in rows))
        for c in range(len(header))
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for row in rows:
        cells = [str(row[0]).rjust(widths[0])] + [
            report.fmt(v).rjust(w) for v, w in zip(row[1:], widths[1:])
        ]
        lines.append("  ".join(cells))
    (out / "bench.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    report.write_manifest(out / "manifest.json", _manifest(ctx, knots, {}))


@main.command("plot")
@click.argument("curves_csv", type=click.Path())
@click.option("--svg", is_flag=True, help="Render SVG instead of PNG.")
@click.option("--title", default="", show_default=True)
@click.option("--out-dir", type=click.Path(), default=".", show_default=True)
@click.pass_context
@handle_errors
def cmd_plot(ctx, curves_csv, svg, title, out_dir):
    """Render a curves CSV (first column x, one curve per further column)."""
    path = Path(curves_csv)
    with open(path, newline="", encoding="utf-8") as fh:
        import csv as _csv

        reader = _csv.reader(fh)
        header = next(reader)
        body = np.array([[float(v) for v in row] for row in reader if row])
    if body.ndim != 2 or body.shape[1] != len(header) or body.shape[1] < 2:
        raise ValueError("curves CSV must have an x column and at least one curve")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    target = out / (path.stem + (".svg" if svg else ".png"))
    report.save_curve_figure(
        target, body[:, 0], body[:, 1:], header[1:], title=title
    )
    report.write_manifest(out / "manifest.json", _manifest(ctx, None, {}))


if __name__ == "__main__":
    main()
