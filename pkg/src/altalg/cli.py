"""Command-line front end.

Four commands: `check` decides whether an expression is an identity of
alternative algebras, `eval` computes its image in a chosen algebra,
`reproduce` runs the scripted evidence pipelines, and `dims` prints the
engine's regression numbers.  Every command emits a Report in text or
JSON form.  Exit status: 0 all checks pass, 1 any failure, 2 usage
error, 3 a resource cap was hit.  With --no-timings the output is
byte-stable for a fixed seed.
"""

import sys

import click

from . import reproduce as rep
from .algebras import (
    evaluate,
    grassmann,
    medvedev_shestakov,
    random_assignment,
    split_octonions,
)
from .dsl import ParseError, parse
from .reports import PASS, CheckRecord, Report
from .terms import ParityError


def _common(fn):
    fn = click.option(
        "--no-timings",
        is_flag=True,
        help="Omit per-check timings; makes output byte-stable.",
    )(fn)
    fn = click.option(
        "--max-entries",
        type=int,
        default=None,
        help="Resource cap on elimination matrix entries.",
    )(fn)
    fn = click.option(
        "--cache-dir",
        envvar="ALTALG_CACHE_DIR",
        type=click.Path(file_okay=False),
        default=None,
        help="Directory for consequence-space caches [env: ALTALG_CACHE_DIR].",
    )(fn)
    fn = click.option(
        "--seed", type=int, default=1, show_default=True, help="RNG seed, echoed in the report."
    )(fn)
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["text", "json"]),
        default="text",
        show_default=True,
    )(fn)
    return fn


def _emit(report: Report, fmt: str, no_timings: bool):
    if no_timings:
        report.strip_timings()
    click.echo(report.to_json() if fmt == "json" else report.to_text(), nl=False)
    sys.exit(report.exit_code)


def _odd_parities(odd) -> dict:
    parities = {}
    for chunk in odd:
        for name in chunk.split(","):
            name = name.strip()
            if name:
                parities[name] = 1
    return parities


def _validate_cap(degree_cap: int, allow_deg7: bool):
    if degree_cap < 1:
        raise click.UsageError("--degree-cap must be positive")
    if degree_cap > 7:
        raise click.UsageError("degree caps beyond 7 are not supported")
    if degree_cap == 7 and not allow_deg7:
        raise click.UsageError("--degree-cap 7 requires --allow-deg7")


def _algebra(selector: str):
    """octonion | medvedev:k | grassmann:r"""
    name, _, arg = selector.partition(":")
    if name == "octonion" and not arg:
        return split_octonions()
    if name in ("medvedev", "grassmann"):
        try:
            n = int(arg)
        except ValueError:
            n = 0
        if n < 1:
            raise click.UsageError(f"{name} selector needs a positive index, got {selector!r}")
        return medvedev_shestakov(n) if name == "medvedev" else grassmann(n)
    raise click.UsageError(f"unknown algebra {selector!r}")


def _delabel(lab: str) -> str:
    # shell-friendly aliases for primed labels: vp3 -> v'3, up1 -> u'1
    if len(lab) > 2 and lab[0] in "vu" and lab[1] == "p" and lab[2:].isdigit():
        return lab[0] + "'" + lab[2:]
    return lab


@click.group()
def main():
    """Exact-arithmetic toolkit for identities of alternative algebras."""


@main.command()
@click.option("--expr", required=True, help="Expression in the term DSL.")
@click.option("--odd", multiple=True, help="Comma-separated odd generator names.")
@click.option("--degree-cap", type=int, default=6, show_default=True)
@click.option("--allow-deg7", is_flag=True, help="Permit degree-7 polarizations.")
@_common
def check(expr, odd, degree_cap, allow_deg7, fmt, seed, cache_dir, max_entries, no_timings):
    """Decide whether EXPR vanishes in every alternative algebra."""
    _validate_cap(degree_cap, allow_deg7)
    try:
        checks = rep.run_check(
            expr, _odd_parities(odd), degree_cap, allow_deg7, cache_dir, max_entries
        )
    except ParseError as exc:
        raise click.UsageError(f"bad expression: {exc}")
    inputs = {"expr": expr, "degree-cap": degree_cap}
    if odd:
        inputs["odd"] = ",".join(sorted(_odd_parities(odd)))
    if allow_deg7:
        inputs["allow-deg7"] = True
    _emit(Report("check", inputs, seed, checks), fmt, no_timings)


@main.command(name="eval")
@click.option("--expr", required=True, help="Expression in the term DSL.")
@click.option("--odd", multiple=True, help="Comma-separated odd generator names.")
@click.option(
    "--algebra",
    default="octonion",
    show_default=True,
    help="octonion | medvedev:k | grassmann:r",
)
@click.option(
    "--assign",
    multiple=True,
    help="name=label basis assignments (vpK/upK mean v'K/u'K); "
    "omit to draw random elements from --seed.",
)
@click.option("--coeff-bound", type=int, default=7, show_default=True)
@_common
def eval_cmd(expr, odd, algebra, assign, coeff_bound, fmt, seed, cache_dir, max_entries, no_timings):
    """Evaluate EXPR in a finite-dimensional algebra and print the element."""
    A = _algebra(algebra)
    try:
        e = parse(expr, _odd_parities(odd))
    except ParseError as exc:
        raise click.UsageError(f"bad expression: {exc}")
    syms = sorted({s for m in e.coeffs for s in m.leaves()}, key=lambda s: s.name)
    inputs = {"expr": expr, "algebra": algebra}
    if odd:
        inputs["odd"] = ",".join(sorted(_odd_parities(odd)))
    if assign:
        amap = {}
        for chunk in assign:
            for item in chunk.split(","):
                name, eq, lab = item.partition("=")
                name, lab = name.strip(), _delabel(lab.strip())
                if not eq or not name or not lab:
                    raise click.UsageError(f"--assign wants name=label, got {item!r}")
                if lab not in A.index:
                    raise click.UsageError(f"no basis label {lab!r} in {A.name}")
                amap[name] = lab
        known = {s.name for s in syms}
        for name in amap:
            if name not in known:
                raise click.UsageError(f"--assign names unused generator {name!r}")
        assignment = {}
        for sym in syms:
            if sym.name not in amap:
                raise click.UsageError(f"generator {sym.name!r} has no assignment")
            assignment[sym] = A.basis_element(A.index[amap[sym.name]])
        inputs["assign"] = ",".join(f"{n}={amap[n]}" for n in sorted(amap))
    else:
        assignment = random_assignment(seed, syms, A, coeff_bound)
        inputs["coeff-bound"] = coeff_bound

    def work():
        return evaluate(e, assignment, A)

    try:
        val, ms = rep._timed(work)
    except ParityError as exc:
        raise click.UsageError(str(exc))
    checks = [CheckRecord("value", PASS, str(val), ms)]
    _emit(Report("eval", inputs, seed, checks), fmt, no_timings)


@main.command()
@click.argument("target", type=click.Choice(rep.REPRODUCE_TARGETS))
@click.option("--k", type=int, default=1, show_default=True, help="Index into the A_n family.")
@click.option("--trials", type=int, default=None, help="Random assignments per randomized check.")
@click.option("--coeff-bound", type=int, default=7, show_default=True)
@click.option("--degree-cap", type=int, default=6, show_default=True)
@click.option("--allow-deg7", is_flag=True, help="Permit degree-7 polarizations.")
@_common
def reproduce(
    target, k, trials, coeff_bound, degree_cap, allow_deg7, fmt, seed, cache_dir, max_entries, no_timings
):
    """Run one of the scripted evidence pipelines (or `all`)."""
    _validate_cap(degree_cap, allow_deg7)
    if k < 1:
        raise click.UsageError("--k must be positive")
    if trials is not None and trials < 1:
        raise click.UsageError("--trials must be positive")
    checks = rep.run_reproduce(
        target,
        seed=seed,
        trials=trials,
        coeff_bound=coeff_bound,
        k=k,
        degree_cap=degree_cap,
        allow_deg7=allow_deg7,
        cache_dir=cache_dir,
        max_entries=max_entries,
    )
    inputs = {"target": target, "k": k, "coeff-bound": coeff_bound, "degree-cap": degree_cap}
    if trials is not None:
        inputs["trials"] = trials
    if allow_deg7:
        inputs["allow-deg7"] = True
    _emit(Report("reproduce", inputs, seed, checks), fmt, no_timings)


@main.command()
@click.option("--degree", type=int, default=5, show_default=True)
@click.option("--skip-rank", is_flag=True, help="Report only ambient dimensions.")
@_common
def dims(degree, skip_rank, fmt, seed, cache_dir, max_entries, no_timings):
    """Print ambient dimensions and consequence ranks up to DEGREE."""
    if not 1 <= degree <= 6:
        raise click.UsageError("--degree must be between 1 and 6")
    checks = rep.run_dims(degree, skip_rank, cache_dir, max_entries)
    inputs = {"degree": degree}
    if skip_rank:
        inputs["skip-rank"] = True
    _emit(Report("dims", inputs, seed, checks), fmt, no_timings)
