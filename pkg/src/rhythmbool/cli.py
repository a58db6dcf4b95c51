from __future__ import annotations

import json
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer

from .anf import AnfPoly, Basis, shift_variables, to_basis, to_text
from .boolvec import BoolVec, Convention, bav, btoi, supp
from .config import Settings, load_settings
from .errors import BoundExceeded, ModulusError, ParseError
from .modular import ModulusContext
from .rhythm import iav, is_proper, rav
from .tables import TABLE_IDS, build_table, render
from .theory import closed_form_bav0, enumerated_bav0, recurrence_bav0
from .utils import atomic_write, parse_n_range
from .verify import Check, VerificationReport, all_passed, run_checks

app = typer.Typer(add_completion=False, help="rhythmbool - discrete averages on rhythms and their Boolean polynomials")


class Method(str, Enum):
    ENUMERATE = "enumerate"
    CLOSED = "closed"
    RECURRENCE = "recurrence"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class TableFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


EXIT_FAILED = 1
EXIT_BOUND = 3


def _settings(ctx: typer.Context) -> Settings:
    ctx.ensure_object(dict)
    settings = ctx.obj.get("settings")
    if settings is None:
        settings = load_settings()
        ctx.obj["settings"] = settings
    return settings


def _modulus(n: int) -> ModulusContext:
    try:
        return ModulusContext(n)
    except ModulusError as exc:
        raise typer.BadParameter(str(exc), param_hint="--n") from None


def _bound_exceeded(exc: BoundExceeded) -> typer.Exit:
    typer.echo(f"bound-exceeded: {exc} (raise it in ~/.rhythmbool/config.yaml or RHYTHMBOOL_* variables)", err=True)
    return typer.Exit(EXIT_BOUND)


def _emit_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2))


@app.callback()
def cli(
    ctx: typer.Context,
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="Log progress to stderr (-vv for debug)"),
) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        ctx.obj = {"settings": load_settings()}
    except ParseError as exc:
        raise typer.BadParameter(str(exc)) from None


@app.command("eval")
def eval_vector(
    vector: str = typer.Argument(..., help="Vector literal, e.g. (0,0,1,1,0,0,0,1) or 00110001"),
    n: int = typer.Option(..., "--n", help="Modulus N (vector length)"),
    signed: bool = typer.Option(False, help="Read the vector with indices -floor((N-1)/2)..floor(N/2)"),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="text or json"),
) -> None:
    """Run one vector through BtoI, Iav and Bav."""

    modulus = _modulus(n)
    convention = Convention.SIGNED if signed else Convention.NONNEG
    try:
        v = BoolVec.parse(vector, modulus, convention)
    except ParseError as exc:
        raise typer.BadParameter(str(exc), param_hint="VECTOR") from None

    onsets = btoi(v.to_nonneg())
    proper: Optional[bool] = is_proper(onsets) if len(onsets) >= 2 else None
    image = bav(v)
    record: Dict[str, Any] = {
        "n": n,
        "convention": convention.value,
        "vector": str(v),
        "support": sorted(supp(v)),
        "btoi": str(onsets),
        "proper": proper,
        "rav": str(rav(onsets)),
        "iav": str(iav(onsets)),
        "bav": str(image),
        "bav_support": sorted(supp(image)),
    }
    if fmt is OutputFormat.JSON:
        _emit_json(record)
        return
    decision = "n/a" if proper is None else "proper" if proper else "improper (rotate once)"
    typer.echo(f"v        = {record['vector']}")
    typer.echo(f"BtoI(v)  = {record['btoi']}  [{decision}]")
    typer.echo(f"Rav      = {record['rav']}")
    typer.echo(f"Iav      = {record['iav']}")
    typer.echo(f"Bav(v)   = {record['bav']}")
    typer.echo("supp     = {" + ",".join(str(i) for i in record["bav_support"]) + "}")


def _bav0(modulus: ModulusContext, method: Method, settings: Settings) -> AnfPoly:
    if method is Method.ENUMERATE:
        return enumerated_bav0(modulus, Basis.V, settings.enumerate_bound)
    if method is Method.CLOSED:
        return closed_form_bav0(modulus)
    return recurrence_bav0(modulus)


@app.command()
def poly(
    ctx: typer.Context,
    n: int = typer.Option(..., "--n", help="Modulus N"),
    method: Method = typer.Option(Method.CLOSED, help="enumerate, closed or recurrence"),
    basis: Basis = typer.Option(Basis.Y, help="v, w or y"),
    coordinate: int = typer.Option(0, help="Print Bav_N^i for this i instead of Bav_N^0"),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="text or json"),
) -> None:
    """Print the rhythm polynomial Bav_N^i."""

    settings = _settings(ctx)
    modulus = _modulus(n)
    try:
        result = _bav0(modulus, method, settings)
        if coordinate % n:
            result = shift_variables(to_basis(result, Basis.V), coordinate % n)
        result = to_basis(result, basis)
    except BoundExceeded as exc:
        raise _bound_exceeded(exc) from None
    if fmt is OutputFormat.JSON:
        _emit_json(result.to_json())
    else:
        typer.echo(to_text(result))


def _report_line(report: VerificationReport, timings: bool) -> str:
    status = "PASS" if report.passed else "FAIL"
    counts = " ".join(f"{key}={value}" for key, value in report.counts.items())
    line = f"{status} {report.check} N={report.n}"
    if counts:
        line += f" {counts}"
    if timings:
        line += f" ({report.elapsed:.3f}s)"
    if report.counterexample is not None:
        line += f"\n  counterexample: {json.dumps(report.counterexample, sort_keys=True)}"
    return line


@app.command()
def verify(
    ctx: typer.Context,
    check: str = typer.Argument(..., help=f"One of {', '.join(c.value for c in Check)} or all"),
    n: str = typer.Option(..., "--n", help="N or an inclusive range A..B"),
    jobs: Optional[int] = typer.Option(None, help="Worker processes (defaults to RHYTHMBOOL_JOBS or 1)"),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", help="text or json"),
    timings: bool = typer.Option(False, help="Include elapsed seconds"),
) -> None:
    """Check a family of identities exhaustively; exit 1 on any failure."""

    settings = _settings(ctx)
    if check == "all":
        checks: List[Check] = list(Check)
    else:
        try:
            checks = [Check(check)]
        except ValueError:
            raise typer.BadParameter(f"Unknown check '{check}'", param_hint="CHECK") from None
    try:
        ns = parse_n_range(n)
    except ParseError as exc:
        raise typer.BadParameter(str(exc), param_hint="--n") from None
    if jobs is not None and jobs < 1:
        raise typer.BadParameter("--jobs must be at least 1", param_hint="--jobs")

    try:
        reports = run_checks(checks, ns, settings, jobs)
    except BoundExceeded as exc:
        raise _bound_exceeded(exc) from None

    if fmt is OutputFormat.JSON:
        _emit_json([report.as_record(timings) for report in reports])
    else:
        for report in reports:
            typer.echo(_report_line(report, timings))
        passed = sum(1 for report in reports if report.passed)
        typer.echo(f"{passed}/{len(reports)} checks passed")
    if not all_passed(reports):
        raise typer.Exit(EXIT_FAILED)


@app.command()
def tables(
    ctx: typer.Context,
    which: str = typer.Argument(..., help=f"Table id: {', '.join(TABLE_IDS)}"),
    fmt: TableFormat = typer.Option(TableFormat.TEXT, "--format", help="text, json or csv"),
    output: Optional[Path] = typer.Option(None, help="Write to a file instead of stdout"),
) -> None:
    """Regenerate one of the reference tables from first principles."""

    if which not in TABLE_IDS:
        raise typer.BadParameter(f"Unknown table '{which}'; choose from {', '.join(TABLE_IDS)}", param_hint="WHICH")
    try:
        table = build_table(which, _settings(ctx))
    except BoundExceeded as exc:
        raise _bound_exceeded(exc) from None
    text = render(table, fmt.value)
    if output:
        atomic_write(output, text)
        typer.echo(f"Wrote table {which} to {output}")
    else:
        typer.echo(text, nl=False)
