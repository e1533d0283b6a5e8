"""Command-line front end: profile dumps, norm scans, the claim suite and lab runs."""

from __future__ import annotations

import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

import click
import numpy as np

from . import lab
from .kernel import HarmonicSpec, radial_profile
from .multiplier import m_eval
from .norms import growth_ratio, l1_norm
from .theorems import SuiteConfig, check_contraction, check_factorization, check_radial_omega, run_suite

REPORT_SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with Path(path).open("w", newline="") as fh:
            yield fh


def _int_list(ctx, param, value: str) -> list[int]:
    try:
        out = [int(v) for v in value.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from None
    if any(v < 1 for v in out):
        raise click.BadParameter("values must be positive")
    return out


def parse_r_spec(spec: str) -> np.ndarray:
    """'a:b:n' (linear), 'log:a:b:n' (geometric) or a comma list."""
    parts = spec.split(":")
    try:
        if parts[0] == "log" and len(parts) == 4:
            a, b, n = float(parts[1]), float(parts[2]), int(parts[3])
            if not 0 < a <= b:
                raise ValueError
            return np.geomspace(a, b, n)
        if len(parts) == 3:
            return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
        if len(parts) == 1:
            return np.array([float(v) for v in spec.split(",")])
    except ValueError:
        pass
    raise click.BadParameter(f"cannot parse r specification {spec!r}")


@click.group()
@click.option("--log-level", default="WARNING", show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
def main(log_level: str) -> None:
    """Factorization kernels of truncated higher-order Riesz transforms."""
    logging.basicConfig(level=log_level.upper(), format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--k", type=click.IntRange(min=1), required=True, help="Order of the transform.")
@click.option("--d", type=click.IntRange(min=1), required=True, help="Dimension.")
@click.option("--r-min", type=click.FloatRange(min=0.0), default=0.0, show_default=True)
@click.option("--r-max", type=click.FloatRange(min=0.0), default=2.0, show_default=True)
@click.option("--points", type=click.IntRange(min=0), default=201, show_default=True)
@click.option("--out", "out_path", default="-", show_default=True, help="CSV path or '-' for stdout.")
def kernel(k, d, r_min, r_max, points, out_path):
    """Dump the radial profile B_k as CSV rows (r, B_k, branch).

    r = 1 is skipped.  When the range straddles 1 the inner and outer rows
    are separated by one blank line.
    """
    if r_max < r_min:
        raise click.BadParameter("--r-max must not be below --r-min")
    r = np.linspace(r_min, r_max, points)
    r = r[r != 1.0]
    vals = radial_profile(k, d, r) if r.size else np.array([])
    with _output(out_path) as fh:
        fh.write("r,B_k,branch\n")
        prev = None
        for x, v in zip(r, vals):
            branch = "inner" if x < 1.0 else "outer"
            if prev == "inner" and branch == "outer":
                fh.write("\n")
            fh.write(f"{fmt(x)},{fmt(v)},{branch}\n")
            prev = branch


@main.command()
@click.option("--k", type=click.IntRange(min=1), required=True)
@click.option("--d", type=click.IntRange(min=1), required=True)
@click.option("--r", "r_spec", default="0:5:101", show_default=True,
              help="'a:b:n' linear, 'log:a:b:n' geometric, or a comma list.")
@click.option("--out", "out_path", default="-", show_default=True)
def multiplier(k, d, r_spec, out_path):
    """Dump m_k as CSV rows (r, m, route)."""
    r = parse_r_spec(r_spec)
    if np.any(r < 0):
        raise click.BadParameter("radii must be >= 0")
    vals, routes = m_eval(k, d, r, with_route=True) if r.size else ([], [])
    with _output(out_path) as fh:
        fh.write("r,m,route\n")
        for x, v, route in zip(r, vals, routes):
            fh.write(f"{fmt(x)},{fmt(v)},{route}\n")


@main.command()
@click.option("--k", "k_list", callback=_int_list, default="1,2,3,4", show_default=True, help="e.g. 1,2,4")
@click.option("--d", "d_list", callback=_int_list, default="2,4,8,16", show_default=True, help="e.g. 2,3,5")
@click.option("--out", "out_path", default="-", show_default=True)
def norms(k_list, d_list, out_path):
    """CSV rows (k, d, l1, ratio); ratio is the growth ratio for even k >= 4, else empty."""
    with _output(out_path) as fh:
        fh.write("k,d,l1,ratio\n")
        for k in k_list:
            for d in d_list:
                l1 = l1_norm(k, d)
                ratio = fmt(growth_ratio(k, d)) if k >= 4 and k % 2 == 0 else ""
                fh.write(f"{k},{d},{fmt(l1)},{ratio}\n")


def _load_config(path: str | None) -> SuiteConfig:
    if path is None:
        return SuiteConfig.default()
    try:
        raw = json.loads(Path(path).read_text())
        return SuiteConfig.from_dict(raw)
    except (OSError, ValueError, TypeError, AttributeError) as exc:
        raise click.UsageError(f"bad config {path}: {exc}") from None


def report_document(reports) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }


def _table(reports) -> str:
    lines = [f"{'claim':<17} {'params':<58} {'result':<6}"]
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"{r.claim_id.value:<17} {params:<58} {'PASS' if r.passed else 'FAIL':<6}")
    return "\n".join(lines)


@main.command()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="JSON suite config; the default suite runs when omitted.")
@click.option("--out", "out_path", default="report.json", show_default=True, help="JSON report path or '-'.")
@click.option("--table/--no-table", default=True, show_default=True, help="Print a summary table to stderr.")
def verify(config_path, out_path, table):
    """Run the claim suite; exit 0 iff every claim passes."""
    config = _load_config(config_path)
    reports = run_suite(config)
    doc = report_document(reports)
    with _output(out_path) as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")
    if table:
        click.echo(_table(reports), err=True)
    sys.exit(EXIT_OK if doc["passed"] else EXIT_FAIL)


SCENARIOS = ("factorization", "contraction", "radial-omega")


@main.command(name="lab")
@click.argument("scenario", type=click.Choice(SCENARIOS))
@click.option("--k", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--d", type=click.IntRange(1, 3), default=2, show_default=True)
@click.option("--t", type=click.FloatRange(min=0.0, min_open=True), default=0.5, show_default=True)
@click.option("--n", type=click.IntRange(min=8), default=128, show_default=True)
@click.option("--L", "box", type=click.FloatRange(min=0.0, min_open=True), default=8.0, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None, help="Write fields here.")
def lab_cmd(scenario, k, d, t, n, box, out_dir):
    """Run an operator-lab scenario and print one summary line."""
    if n & (n - 1):
        raise click.BadParameter("--n must be a power of two")
    fields = {}
    if scenario == "factorization":
        if d != 2:
            raise click.BadParameter("the factorization scenario runs in d = 2")
        rep = check_factorization(k, t, n, box, refine=False)
        spec = HarmonicSpec(k, 2)
        f = lab.modulated_gaussian(2, n, box)
        fields = {
            "input": f,
            "multiplier": lab.truncated_riesz_apply_multiplier(f, spec, t),
            "direct": lab.truncated_riesz_apply_direct(f, spec, t).field,
        }
        summary = f"factorization k={k} d=2 t={fmt(t)} n={n} gap={fmt(rep.value('gap'))}"
    elif scenario == "contraction":
        rep = check_contraction(k, d, t, n, box)
        worst = max(m.value for m in rep.measured)
        f = lab.gaussian(d, n, box)
        spec = HarmonicSpec(k, d)
        fields = {
            "input": f,
            "riesz": lab.riesz_apply(f, spec),
            "truncated": lab.truncated_riesz_apply_multiplier(f, spec, t),
        }
        summary = f"contraction k={k} d={d} t={fmt(t)} n={n} max_ratio={fmt(worst)}"
    else:
        rep = check_radial_omega(t, n, box)
        omega = lab.default_omega()
        f = lab.gaussian(2, n, box)
        fields = {"input": f, "omega": lab.omega_apply(f, omega), "omega_truncated": lab.omega_apply(f, omega, t)}
        summary = f"radial-omega d=2 t={fmt(t)} n={n} ratio={fmt(rep.value('ratio_radial'))}"
    if out_dir is not None:
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        for name, fld in fields.items():
            lab.save_field(fld, target / f"{name}.field")
            if fld.d <= 2:
                lab.save_field_csv(fld, target / f"{name}.csv")
    click.echo(f"{summary} {'PASS' if rep.passed else 'FAIL'}")
    sys.exit(EXIT_OK if rep.passed else EXIT_FAIL)


if __name__ == "__main__":  # pragma: no cover
    main()
