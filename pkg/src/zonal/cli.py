"""Command line interface.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 a size budget was exceeded.
"""
from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import click

from .errors import BudgetExceeded, InvalidParameters
from .hypergeom import term_budget as _term_budget
from .indices import CosetIndex, GroupParams, SphericalIndex
from .report import Report

EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

DEFAULT_ORACLE_BUDGET = 10**4
DEFAULT_TERM_BUDGET = 10**7
SUITES = ("all", "orthogonality", "product", "laplace", "rahman", "oracle")


def _params(r, d, n) -> GroupParams:
    if r is None or d is None or n is None:
        raise InvalidParameters("--r, --d and --n are required")
    return GroupParams(r, d, n)


def _tuple(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InvalidParameters(f"--{name} must be a comma separated list of integers") from None


def _emit(text: str, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _guard(fn):
    """Map library exceptions to exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InvalidParameters as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        except BudgetExceeded as exc:
            click.echo(f"budget exceeded: {exc}", err=True)
            sys.exit(EXIT_BUDGET)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
@click.version_option(package_name="zonal")
def main():
    """Exact zonal spherical functions of (G(r,d,n), S_n)."""


group_options = [
    click.option("--r", "r", type=int, help="order of the roots of unity"),
    click.option("--d", "d", type=int, help="divisor of r"),
    click.option("--n", "n", type=int, help="rank"),
]


def with_group(f):
    for opt in reversed(group_options):
        f = opt(f)
    return f


@main.command("table")
@with_group
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--float-digits", type=click.IntRange(0, 50), default=12, show_default=True)
@click.option("--term-budget", type=int, default=DEFAULT_TERM_BUDGET, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_guard
def cmd_table(r, d, n, fmt, float_digits, term_budget, out):
    """Print the full table of spherical values."""
    from .spherical import spherical_table

    params = _params(r, d, n)
    with _term_budget(term_budget):
        table = spherical_table(params)
    if fmt == "csv":
        _emit(table.to_csv(float_digits), out)
    else:
        _emit(_dumps(table.to_json(float_digits)), out)


@main.command("eval")
@with_group
@click.option("--k", "k", required=True, help="spherical index, e.g. 1,1,0,0")
@click.option("--l", "l", required=True, help="double coset index, e.g. 0,1,0,1")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--float-digits", type=click.IntRange(0, 50), default=12, show_default=True)
@click.option("--term-budget", type=int, default=DEFAULT_TERM_BUDGET, show_default=True)
@_guard
def cmd_eval(r, d, n, k, l, fmt, float_digits, term_budget):
    """Evaluate one spherical value."""
    from .spherical import render_float, spherical_value

    params = _params(r, d, n)
    kt, lt = _tuple(k, "k"), _tuple(l, "l")
    SphericalIndex.from_tuple(kt, params)
    CosetIndex(lt).check(params)
    with _term_budget(term_budget):
        v = spherical_value(kt, lt, params)
    if fmt == "json":
        click.echo(_dumps({"k": list(kt), "l": list(lt), "exact": str(v), "value": v.to_json(),
                           "float": render_float(v, float_digits)}), nl=False)
    else:
        click.echo(f"exact: {v}")
        click.echo(f"float: {render_float(v, float_digits)}")


@main.command("expand")
@with_group
@click.option("--l", "l", required=True, help="first double coset index")
@click.option("--lp", "lp", required=True, help="second double coset index")
@_guard
def cmd_expand(r, d, n, l, lp):
    """Linearization of w(l) w(l') as a combination of values."""
    from .identities import product_expand

    params = _params(r, d, n)
    lt, lpt = _tuple(l, "l"), _tuple(lp, "lp")
    terms = product_expand(lt, lpt, params)
    click.echo(_dumps({"l": list(lt), "l_prime": list(lpt), "terms": [t.to_json() for t in terms]}), nl=False)


def _run_suite(name: str, params: GroupParams | None, N: int, budget: int, tbudget: int) -> Report:
    from . import identities, laplace, oracle, spherical

    if name == "rahman":
        return identities.rahman_grid(N)
    if name == "laplace" and params.num_left_cosets > budget:
        raise BudgetExceeded(f"coset enumeration of {params}", params.num_left_cosets, budget)
    with _term_budget(tbudget):
        table = spherical.spherical_table(params)
        if name == "orthogonality":
            return spherical.verify_orthogonality(table)
        if name == "product":
            return identities.verify_product_grid(params)
        if name == "laplace":
            return laplace.verify_laplace(table, budget)
        if name == "oracle":
            rep = Report("oracle", params.triple)
            rep.extend(oracle.certify_spherical_table(table, budget))
            rep.extend(oracle.convolution_check(table, budget))
            sizes = oracle.brute_force_double_cosets(params, budget)
            from .cosets import double_coset_size, enumerate_double_cosets

            analytic = [(c.counts, double_coset_size(c, params)) for c in enumerate_double_cosets(params)]
            brute = [(c.counts, s) for c, s in sizes]
            rep.add("double-cosets", analytic == brute, f"brute force {brute} vs closed form {analytic}")
            return rep.finish()
    raise InvalidParameters(f"unknown suite {name}")


@main.command("verify")
@with_group
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--N", "N", type=click.IntRange(1, None), default=8, show_default=True,
              help="grid size for the Krawtchouk identity")
@click.option("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, show_default=True,
              help="largest group order for brute-force suites")
@click.option("--term-budget", type=int, default=DEFAULT_TERM_BUDGET, show_default=True)
@click.option("--jobs", type=click.IntRange(1, None), default=None, help="worker threads (default: cpu count)")
@click.option("--timing", is_flag=True, help="include wall-clock times (output is then not reproducible)")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_guard
def cmd_verify(r, d, n, suite, N, budget, term_budget, jobs, timing, out):
    """Run verification suites; exit 0 iff every check passes."""
    if suite == "rahman":
        params = None
        names = ["rahman"]
    else:
        params = _params(r, d, n)
        names = ["orthogonality", "product", "laplace", "oracle", "rahman"] if suite == "all" else [suite]
    if "oracle" in names and params.order > budget:
        raise BudgetExceeded(f"oracle certification of {params}", params.order, budget)
    jobs = jobs or os.cpu_count() or 1
    t0 = time.perf_counter()
    if jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_suite, s, params, N, budget, term_budget) for s in names]
            reports = [f.result() for f in futures]
    else:
        reports = [_run_suite(s, params, N, budget, term_budget) for s in names]
    elapsed = time.perf_counter() - t0
    passed = all(rep.passed for rep in reports)
    body = {
        "status": "pass" if passed else "fail",
        "params": list(params.triple) if params else None,
        "suites": [_report_json(rep, timing) for rep in reports],
    }
    if not passed:
        first = next(rep for rep in reports if not rep.passed)
        bad = first.first_failure()
        body["first_failure"] = {"suite": first.suite, "name": bad.name, "witness": bad.witness}
    if timing:
        body["elapsed"] = round(elapsed, 6)
    _emit(_dumps(body), out)
    if not passed:
        sys.exit(EXIT_FAIL)


def _report_json(rep: Report, timing: bool) -> dict:
    out = rep.to_json()
    if not timing:
        out["elapsed"] = None
    return out


@main.command("laplace")
@with_group
@click.option("--k", "k", type=click.IntRange(0, None), required=True, help="Hamming distance")
@click.option("--budget", type=int, default=10**6, show_default=True, help="largest number of left cosets")
@click.option("--term-budget", type=int, default=DEFAULT_TERM_BUDGET, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_guard
def cmd_laplace(r, d, n, k, budget, term_budget, out):
    """Matrix of Delta_k on double cosets and its eigenpairs."""
    from .laplace import build_operator, eigenpairs, verify_eigenfunction
    from .spherical import spherical_table

    params = _params(r, d, n)
    op = build_operator(params, k, budget)
    with _term_budget(term_budget):
        table = spherical_table(params)
    rep = verify_eigenfunction(table, op)
    body = op.to_json()
    body["eigenpairs"] = eigenpairs(table, op)
    body["verified"] = rep.passed
    _emit(_dumps(body), out)
    if not rep.passed:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":  # pragma: no cover
    main()
