"""``carnot`` command line.

Exit codes: 0 success, 1 parse or validation failure, 2 a computation cap was
reached without a definitive answer, 3 internal error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import catalog
from .algebra import (
    AlgebraParseError,
    AlgebraValidationError,
    GradedLieAlgebra,
    parse_algebra,
    serialize_algebra,
    validate_structure,
)
from .derivations import IdentificationNotInjective, conformal_subalgebra, h_zero, strata_derivations
from .groebner import PartialComputation
from .report import (
    Report,
    bracket_table_json,
    bracket_table_text,
    digest_bytes,
    format_report,
    matrix_json,
    matrix_text,
    vector_json,
)
from .rigidity import rigidity_verdict
from .symmetric import (
    FiniteType,
    MatrixFormatError,
    builtin_subspace,
    finite_type_scan,
    parse_matrix_subspace,
)
from .tanaka import BASIS_CHANGES, export_graded_algebra, prolong_tower

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAP = 2
EXIT_INTERNAL = 3

GB_STEPS_ENV = "CARNOT_MAX_GB_STEPS"


class InputError(Exception):
    """Bad input file or arguments; maps to exit code 1."""


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_algebra(path: str, report: Report) -> GradedLieAlgebra:
    data = _read(path)
    report.input_digest = digest_bytes(data)
    try:
        return parse_algebra(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise InputError(f"{path} is not UTF-8 text") from None
    except AlgebraParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    except AlgebraValidationError as exc:
        report.result["issues"] = [
            {"kind": i.kind, "detail": i.detail, "where": i.where} for i in exc.issues
        ]
        raise InputError(f"{path}: invalid algebra\n" + "\n".join(f"  {i}" for i in exc.issues)) from None


def _gb_budget() -> Optional[int]:
    raw = os.environ.get(GB_STEPS_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{GB_STEPS_ENV} must be a non-negative integer, got {raw!r}") from None
    if value < 0:
        raise InputError(f"{GB_STEPS_ENV} must be a non-negative integer, got {raw!r}")
    return value


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, report: Report) -> int:
    data = _read(args.file)
    report.input_digest = digest_bytes(data)
    try:
        a = parse_algebra(data.decode("utf-8"), validate=False)
    except AlgebraParseError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    issues = validate_structure(a)
    report.result.update(
        {
            "name": a.name,
            "dims": list(a.dims),
            "valid": not issues,
            "issues": [{"kind": i.kind, "detail": i.detail, "where": i.where} for i in issues],
        }
    )
    if issues:
        report.status = "invalid"
        report.say(f"{a.name}: invalid")
        for i in issues:
            report.say(f"  {i}")
        return EXIT_INPUT
    report.say(f"{a.name}: valid, step {a.step}, stratum dims {list(a.dims)}, dim {a.dim}")
    return EXIT_OK


def cmd_derive(args, report: Report) -> int:
    a = _load_algebra(args.file, report)
    if args.h0:
        kind = "h0"
        try:
            ders, _ = h_zero(a)
        except IdentificationNotInjective as exc:
            raise RuntimeError(str(exc)) from None
    elif args.conformal:
        kind = "conformal"
        ders = conformal_subalgebra(a)
    else:
        kind = "g0"
        ders = strata_derivations(a)
    mats = [d.full_matrix() for d in ders]
    report.result.update({"kind": kind, "dim": len(ders), "basis_order": list(a.basis), "basis": [matrix_json(m) for m in mats]})
    report.say(f"{kind}({a.name}): dim {len(ders)}")
    report.say(f"basis order: {' '.join(a.basis)}")
    for i, m in enumerate(mats, start=1):
        report.say(f"D{i}:")
        report.lines.extend(matrix_text(m))
    return EXIT_OK


def cmd_prolong(args, report: Report) -> int:
    a = _load_algebra(args.file, report)
    if args.g0 != "full" and not args.restricted:
        raise InputError(f"--g0 {args.g0} needs --restricted")
    if args.g0 == "full" and args.restricted:
        raise InputError("--restricted needs --g0 conformal or --g0 h0")
    if args.max < 0:
        raise InputError("--max must be >= 0")
    tower = prolong_tower(a, args.g0, max_level=args.max, restricted=args.restricted)
    dims = [len(lv) for lv in tower.levels]
    status = tower.status
    report.result.update(
        {
            "algebra": a.name,
            "g0": args.g0,
            "restricted": args.restricted,
            "max_level": args.max,
            "level_dims": dims,
            "status": {"kind": status.kind, "level": status.level},
        }
    )
    report.say(f"prolongation of {a.name} through g0 = {args.g0}{' (restricted)' if args.restricted else ''}")
    for k, d in enumerate(dims):
        report.say(f"g_{k}: dim {d}")
    code = EXIT_OK
    if status.terminated:
        report.say(f"terminated at level {status.level}")
    else:
        report.status = "cap"
        report.say(f"cap reached at level {status.level} without termination")
        code = EXIT_CAP
    if args.change_of_basis and not args.table:
        raise InputError("--change-of-basis only applies with --table")
    if args.table:
        if not status.terminated:
            report.say("table skipped: the tower did not terminate")
            report.result["table"] = None
            return code
        change = None
        if args.change_of_basis:
            try:
                change = BASIS_CHANGES[args.change_of_basis](tower)
            except ValueError as exc:
                raise InputError(str(exc)) from None
        lt = export_graded_algebra(tower, change)
        report.result["table"] = {
            "basis": lt.names,
            "levels": lt.levels,
            "entries": bracket_table_json(lt.names, lt.entry),
            "jacobi_failures": [list(map(str, f)) for f in lt.jacobi_failures],
        }
        report.say("")
        report.say("bracket table, entry [row, column]:")
        report.lines.extend(bracket_table_text(lt.names, lt.entry))
        report.say(f"jacobi: {'ok' if not lt.jacobi_failures else f'{len(lt.jacobi_failures)} failures'}")
        if lt.jacobi_failures:
            raise RuntimeError("exported bracket table violates the Jacobi identity")
    return code


def cmd_ss(args, report: Report) -> int:
    if args.builtin:
        try:
            space = builtin_subspace(args.builtin)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        report.input_digest = digest_bytes(args.builtin.encode())
        label = args.builtin
    else:
        data = _read(args.matrices)
        report.input_digest = digest_bytes(data)
        try:
            space = parse_matrix_subspace(data.decode("utf-8"))
        except (MatrixFormatError, UnicodeDecodeError) as exc:
            raise InputError(f"{args.matrices}: {exc}") from None
        label = args.matrices
    if args.max < 1:
        raise InputError("--max must be >= 1")
    res = finite_type_scan(space, args.max)
    finite = isinstance(res, FiniteType)
    report.result.update(
        {
            "n": space.n,
            "dim": space.dim,
            "level_dims": list(res.dims),
            "result": {"kind": "FiniteType" if finite else "UndeterminedUpTo", "level": res.level},
        }
    )
    report.say(f"prolongation of {label} (n = {space.n}, dim {space.dim})")
    for k, d in enumerate(res.dims):
        report.say(f"g_{k}: dim {d}")
    report.say(str(res))
    if finite:
        return EXIT_OK
    report.status = "cap"
    report.say("undetermined: no vanishing level up to the cap (this is not a proof of infinite type)")
    return EXIT_CAP


def cmd_rigidity(args, report: Report) -> int:
    a = _load_algebra(args.file, report)
    budget = _gb_budget()
    try:
        v = rigidity_verdict(a, cross_check=args.cross_check, witness=args.witness, max_steps=budget)
    except PartialComputation as exc:
        report.status = "cap"
        report.result.update({"verdict": None, "steps": exc.steps})
        report.say(f"{a.name}: undecided, {exc}")
        return EXIT_CAP
    report.result.update({"algebra": a.name, "verdict": v.verdict, "criterion": v.criterion, "gb_stats": v.gb_stats})
    report.say(f"{a.name}: {v.verdict}")
    report.say(f"criterion: {v.criterion}")
    if v.witness is not None:
        report.result["witness"] = {"basis": list(a.basis), "coordinates": vector_json(v.witness)}
        report.say(f"witness: {a.format_element(v.witness)}")
        if v.rank_one_element is not None:
            report.result["rank_one_element"] = matrix_json(v.rank_one_element)
            report.say("rank-one element of h0 on the first stratum:")
            report.lines.extend(matrix_text(v.rank_one_element))
    if v.cross_check is not None:
        report.result["cross_check"] = v.cross_check
        report.say("cross-check: both rank-one criteria agree")
    for note in v.notes:
        report.say(f"note: {note}")
    return EXIT_OK


def cmd_catalog(args, report: Report) -> int:
    if args.emit:
        if not args.output:
            raise InputError("--emit needs -o FILE")
        try:
            a = catalog.build_from_spec(args.emit)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        text = serialize_algebra(a)
        Path(args.output).write_text(text, encoding="utf-8")
        report.input_digest = digest_bytes(text.encode())
        report.result.update({"name": args.emit, "output": args.output})
        report.say(f"wrote {a.name} to {args.output}")
        return EXIT_OK
    entries = []
    for spec in catalog.DEFAULT_INSTANCES:
        a = catalog.build_from_spec(spec)
        entries.append({"spec": spec, "name": a.name, "dims": list(a.dims)})
        report.say(f"{spec:40s} dims {list(a.dims)}")
    report.result["catalog"] = entries
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry points


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carnot", description="Exact prolongation and rigidity computations for stratified algebras.")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the output")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")
        sp.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)

    s = sub.add_parser("validate", help="parse and check an algebra file")
    s.add_argument("file")
    common(s)

    s = sub.add_parser("derive", help="strata derivations and their subalgebras")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--h0", action="store_true", help="derivations vanishing below the first stratum")
    g.add_argument("--conformal", action="store_true", help="conformal subalgebra")
    common(s)

    s = sub.add_parser("prolong", help="Tanaka prolongation tower")
    s.add_argument("file")
    s.add_argument("--g0", choices=("full", "conformal", "h0"), default="full")
    s.add_argument("--restricted", action="store_true")
    s.add_argument("--max", type=int, default=10, metavar="K")
    s.add_argument("--table", action="store_true", help="print the bracket table of a terminated tower")
    s.add_argument("--change-of-basis", choices=sorted(BASIS_CHANGES), default=None)
    common(s)

    s = sub.add_parser("ss", help="Singer-Sternberg prolongation scan")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin", metavar="KIND:N", help="co:N, o:N, gl:N or sl:N")
    g.add_argument("--matrices", metavar="FILE")
    s.add_argument("--max", type=int, default=4, metavar="K")
    common(s)

    s = sub.add_parser("rigidity", help="rigidity verdict")
    s.add_argument("file")
    s.add_argument("--witness", action="store_true", help="search for an explicit witness")
    s.add_argument("--cross-check", action="store_true", help="decide both rank-one criteria")
    common(s)

    s = sub.add_parser("catalog", help="list or write catalog algebras")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="NAME")
    s.add_argument("-o", "--output", metavar="FILE")
    common(s)
    return p


COMMANDS = {
    "validate": cmd_validate,
    "derive": cmd_derive,
    "prolong": cmd_prolong,
    "ss": cmd_ss,
    "rigidity": cmd_rigidity,
    "catalog": cmd_catalog,
}


def run_command(argv: Sequence[str]) -> tuple[int, Report, argparse.Namespace]:
    """Parse ``argv`` and run it; never raises for command failures."""
    args = build_parser().parse_args(list(argv))
    report = Report(args.command, list(argv))
    start = time.perf_counter()
    try:
        code = COMMANDS[args.command](args, report)
    except InputError as exc:
        code = EXIT_INPUT
        report.status = "error"
        report.result["error"] = str(exc)
        report.say(f"error: {exc}")
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        code = EXIT_INTERNAL
        report.status = "internal-error"
        report.result["error"] = f"{type(exc).__name__}: {exc}"
        report.say(f"internal error: {type(exc).__name__}: {exc}")
    report.timing = time.perf_counter() - start
    report.exit_code = code
    return code, report, args


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report, args = run_command(argv)
    mode = "structured" if getattr(args, "json", False) else "text"
    out = format_report(report, mode, with_timing=getattr(args, "timing", False))
    stream = sys.stdout if code in (EXIT_OK, EXIT_CAP) or mode == "structured" else sys.stderr
    stream.buffer.write(out) if hasattr(stream, "buffer") else stream.write(out.decode("utf-8"))
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
