"""Command-line front end.

Every command prints JSON.  Reports are wrapped as ``{"meta": ..., "payload":
...}`` so the payload stays byte-for-byte reproducible; ``build`` prints a bare
algebra table so its output can be fed back to the other commands.
"""

from __future__ import annotations

import argparse
import datetime as dt
import fnmatch
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import checks
from .algebra import AlgebraError, AlgebraTable, LinearMap, validate
from .cohomology import ADJOINT, TRIVIAL, CochainError, cohomology, graded_cohomology, positive_cohomology
from .constructions import build_from_spec, divided_powers, special_derivation
from .deformations import (
    DeformationError,
    ExtensionDeformation,
    build_deformation,
    enumerate_family,
    fifteen_dim,
    fifteen_dim_parameters,
    verdict,
)
from .gf2 import DimensionError, Subspace
from .invariants import invariant_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
INPUT_ERRORS = (AlgebraError, CochainError, DeformationError, DimensionError, KeyError, TypeError, ValueError)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input and output
# ---------------------------------------------------------------------------


def read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_algebra(path: str) -> AlgebraTable:
    data = read_json(path)
    if isinstance(data, dict) and "payload" in data and "dim" not in data:
        data = data["payload"]
    try:
        return AlgebraTable.from_json(data)
    except AlgebraError as exc:
        raise InputError(f"{path}: {exc}") from None


def envelope(command: str, payload) -> dict:
    meta = {
        "tool": "lieform",
        "command": command,
        "timestamp": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
    }
    return {"meta": meta, "payload": payload}


def dumps(data) -> str:
    return json.dumps(data, indent=1, sort_keys=True)


def _rows(pairs) -> str:
    pairs = list(pairs)
    width = max((len(str(k)) for k, _ in pairs), default=0)
    return "\n".join(f"{str(k):<{width}}  {v}" for k, v in pairs)


def pretty(command: str, payload) -> str:
    if command == "verify-paper":
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {r['name']}" for r in payload["results"]]
        lines.append(f"{payload['passed']}/{payload['total']} checks pass")
        return "\n".join(lines)
    if command == "validate":
        head = f"{payload['kind']} table: {'valid' if payload['valid'] else 'INVALID'}"
        return "\n".join([head] + [f"  {v['axiom']} fails at {v['witness']}" for v in payload["violations"]])
    if command == "cohomology":
        pairs = [(k, payload.get(k)) for k in ("algebra", "module", "degree", "weight", "dimZ", "dimB", "dimH")]
        if payload.get("by_weight"):
            pairs += [(f"H in weight {w}", d) for w, d in payload["by_weight"].items()]
        return _rows(pairs)
    if command == "deform" and "verdicts" in payload:
        return _rows((k, payload[k]) for k in ("tuples", "jacobi_valid", "disagreements"))
    if isinstance(payload, dict):
        return _rows((k, json.dumps(v)) for k, v in payload.items())
    return dumps(payload)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_build(args) -> tuple[int, object]:
    spec = read_json(args.spec)
    return EXIT_OK, build_from_spec(spec).to_json()


def cmd_validate(args) -> tuple[int, object]:
    report = validate(read_algebra(args.algebra))
    return (EXIT_OK if report.ok else EXIT_FAIL), report.to_json()


def cmd_cohomology(args) -> tuple[int, object]:
    L = read_algebra(args.algebra)
    if args.positive:
        report = positive_cohomology(L, args.module, args.degree)
    elif args.weight is not None:
        report = graded_cohomology(L, args.module, args.degree, args.weight)
    else:
        report = cohomology(L, args.module, args.degree, by_weight=L.weights is not None)
    return EXIT_OK, report.to_json()


def cmd_invariants(args) -> tuple[int, object]:
    return EXIT_OK, invariant_report(read_algebra(args.algebra), deep=args.deep)


def _bitset(indices, n: int = 4) -> int:
    out = 0
    for i in indices:
        if not 0 <= int(i) < n:
            raise InputError(f"basis index {i} out of range 0..{n - 1}")
        out ^= 1 << int(i)
    return out


def deformation_from_json(spec: dict) -> ExtensionDeformation:
    """Parameters given as basis-index lists of O1(2); lambda as four image lists."""
    A = divided_powers(2)
    D = special_derivation(2)
    U = Subspace.span(A.dim, [1 << i for i in spec.get("U", [])])
    lam_rows = spec.get("lambda")
    lam = None if lam_rows is None else LinearMap(A.dim, A.dim, tuple(_bitset(r) for r in lam_rows))
    return ExtensionDeformation(
        A,
        D,
        U,
        v=_bitset(spec.get("v", [])),
        w=_bitset(spec.get("w", [])),
        xi=_bitset(spec.get("xi", [])),
        lam=lam,
    )


def cmd_deform(args) -> tuple[int, object]:
    spec = read_json(args.spec)
    if not isinstance(spec, dict):
        raise InputError("deformation spec must be a JSON object")
    family = spec.get("family", "extension")
    if family == "fifteen_dim":
        beta, delta = int(spec.get("beta", 0)), int(spec.get("delta", 0))
        if beta not in (0, 1) or delta not in (0, 1):
            raise InputError("beta and delta must be 0 or 1")
        out = verdict(fifteen_dim_parameters(beta, delta))
        out["matches_table"] = build_deformation(fifteen_dim_parameters(beta, delta)).table == fifteen_dim(beta, delta)
        return EXIT_OK, out
    if family != "extension":
        raise InputError(f"unknown deformation family {family!r}")
    if spec.get("enumerate"):
        verdicts = enumerate_family(list(spec.get("U", [])), w_all=bool(spec.get("w_all", False)))
        return EXIT_OK, {
            "tuples": len(verdicts),
            "jacobi_valid": sum(v["jacobi_ok"] for v in verdicts),
            "disagreements": sum(v["jacobi_ok"] != v["constraints_ok"] for v in verdicts),
            "verdicts": verdicts,
        }
    return EXIT_OK, verdict(deformation_from_json(spec))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("LIEFORM_THREADS", "1")))
    except ValueError:
        raise InputError("LIEFORM_THREADS must be an integer") from None


def run_checks(selected: list[dict], threads: int) -> list[dict]:
    if threads > 1 and len(selected) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(checks.run_check, selected))
    else:
        results = [checks.run_check(c) for c in selected]
    return sorted(results, key=lambda r: r["name"])


def cmd_verify(args) -> tuple[int, object]:
    path = Path(args.fixtures) if args.fixtures else None
    if args.regenerate_fixtures:
        written = checks.regenerate(path)
        derived = [c["name"] for c in written if c["provenance"] == "DERIVED"]
        return EXIT_OK, {"regenerated": derived, "path": str(path or checks.fixture_path())}
    try:
        fixture = checks.load_fixture(path)
    except OSError as exc:
        raise InputError(f"fixture: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError) as exc:
        raise InputError(f"fixture is malformed: {exc}") from None
    selected = [c for c in fixture if fnmatch.fnmatchcase(c["name"], args.filter)]
    results = run_checks(selected, _threads())
    by_name = {c["name"]: c for c in selected}
    for r in results:
        c = by_name[r["name"]]
        r["anchor"], r["provenance"] = c["anchor"], c["provenance"]
    passed = sum(r["passed"] for r in results)
    payload = {"filter": args.filter, "total": len(results), "passed": passed, "results": results}
    return (EXIT_OK if passed == len(results) else EXIT_FAIL), payload


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieform", description="Exact computations with Lie algebras over GF(2).")
    p.add_argument("--pretty", action="store_true", help="print a human-readable table instead of JSON")
    # accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build an algebra table from a construction spec")
    b.add_argument("spec")
    b.set_defaults(run=cmd_build)

    v = sub.add_parser("validate", parents=[common], help="check the axioms of an algebra table")
    v.add_argument("algebra")
    v.set_defaults(run=cmd_validate)

    c = sub.add_parser("cohomology", parents=[common], help="Chevalley-Eilenberg cohomology dimensions")
    c.add_argument("algebra")
    c.add_argument("--module", choices=[TRIVIAL, ADJOINT], required=True)
    c.add_argument("--degree", type=int, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--weight", type=int)
    g.add_argument("--positive", action="store_true")
    c.set_defaults(run=cmd_cohomology)

    i = sub.add_parser("invariants", parents=[common], help="center, derivations, envelope and other invariants")
    i.add_argument("algebra")
    i.add_argument("--deep", action="store_true", help="add the exhaustive scans (dimension <= 16)")
    i.set_defaults(run=cmd_invariants)

    d = sub.add_parser("deform", parents=[common], help="Jacobi verdict for a deformation of the extension family")
    d.add_argument("spec")
    d.set_defaults(run=cmd_deform)

    r = sub.add_parser("verify-paper", parents=[common], help="run the verification fixture")
    r.add_argument("--filter", default="*", help="glob on check names")
    r.add_argument("--report", help="also write the report to this file")
    r.add_argument("--fixtures", help="fixture file (default: the bundled one)")
    r.add_argument("--regenerate-fixtures", action="store_true", help="rerun the oracles and rewrite the fixture")
    r.set_defaults(run=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    p = parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, payload = args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DimensionError as exc:
        print(f"error: dimension cap: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "build":
        text = dumps(payload)
    else:
        text = pretty(args.command, payload) if args.pretty else dumps(envelope(args.command, payload))
    print(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps(envelope(args.command, payload)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
