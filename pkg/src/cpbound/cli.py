"""Command-line front end.

Subcommands: construct, validate, boundary, homology, glue, demo.  JSON is
the machine contract (sorted keys, two-space indent, trailing newline); the
text format is a fixed-width rendering of the same content.  Exit codes:
0 all checks pass, 1 a mathematical check failed, 2 bad input or I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .charfn import (
    delta_matrix,
    eta_standard,
    orientation_signs,
    rho_facet_bijection,
    rho_permutation,
    validate,
)
from .cobordism import (
    BOUNDARY_FACETS,
    WManifold,
    betti_boundary,
    boundary_components,
    build_W,
    cell_structure,
    euler_check,
    glue_report,
    glue_report_to_json,
    homology_W,
    identify_simplex_or_product,
    wmanifold_from_json,
    wmanifold_to_json,
)
from .polytope import format_fraction, generate_functional, h_vector
from .zlinalg import apply_matrix

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_BAD_INPUT = 2


def _dump_json(data: dict, stream) -> None:
    stream.write(json.dumps(data, indent=2, sort_keys=True, separators=(",", ": ")))
    stream.write("\n")


def _parse_r1(text: str) -> Fraction:
    r1 = Fraction(text)
    if not Fraction(0) < r1 < Fraction(1, 4):
        raise ValueError(f"r1 must lie strictly between 0 and 1/4, got {text}")
    return r1


def _resolve_n(args) -> int:
    if args.k is not None:
        if args.k < 1:
            raise ValueError("k must be at least 1")
        return 2 * (args.k + 1)
    if args.n is None:
        raise ValueError("one of --k or --n is required")
    if args.n < 4 or args.n % 2:
        raise ValueError(f"n must be even and at least 4, got {args.n}")
    return args.n


def _manifold_from_args(args) -> WManifold:
    if getattr(args, "input", None):
        data = json.loads(Path(args.input).read_text())
        return wmanifold_from_json(data)
    n = _resolve_n(args)
    return build_W(n // 2 - 1, _parse_r1(args.r1))


def _add_size_options(p: argparse.ArgumentParser, with_input: bool = True) -> None:
    p.add_argument("--k", type=int, help="boundary index: builds dimension n = 2(k+1)")
    p.add_argument("--n", type=int, help="even dimension n >= 4 (mutually exclusive with --k)")
    p.add_argument("--r1", default="1/5", help="cut depth, a rational p/q in (0, 1/4)")
    if with_input:
        p.add_argument("--input", help="read the manifold datum from a JSON file instead")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpbound",
        description="Build and certify manifolds whose boundary is an odd complex projective space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the manifold datum and write it as JSON")
    _add_size_options(p, with_input=False)
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("validate", help="check the lattice condition at every vertex")
    _add_size_options(p)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("boundary", help="list the three boundary components")
    _add_size_options(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("homology", help="cell counts and homology of the pair")
    _add_size_options(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="re-run under this many functionals")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("glue", help="full certification report")
    _add_size_options(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--k-range", dest="k_range", help="run for a range of k, e.g. 1:5")
    p.add_argument("--output", help="write the JSON report(s) here")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("demo", help="worked example: tables, translation, and verdict")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--r1", default="1/5")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_construct(args, out) -> int:
    W = build_W(_resolve_n(args) // 2 - 1, _parse_r1(args.r1))
    data = wmanifold_to_json(W)
    if args.output:
        with open(args.output, "w") as fh:
            _dump_json(data, fh)
        out.write(f"wrote {args.output}\n")
    elif args.format == "json":
        _dump_json(data, out)
    if args.format == "text":
        poly = W.pair.polytope
        out.write(f"n = {W.n}, k = {W.k}, r1 = {format_fraction(W.r1)}\n")
        out.write(f"facets: {len(poly.facets)}, vertices: {len(poly.vertices)}\n")
        out.write(f"boundary facets: {', '.join(W.pair.boundary_facet_ids)}\n")
    return _EXIT_OK


def _cmd_validate(args, out) -> int:
    W = _manifold_from_args(args)
    report = validate(W.pair)
    if args.format == "json":
        _dump_json(
            {
                "ok": report.ok,
                "checked_vertices": report.checked_vertices,
                "failures": [
                    {"vertex": f.vertex, "facets": list(f.facets), "reason": f.reason}
                    for f in report.failures
                ],
            },
            out,
        )
    else:
        out.write(
            f"checked {report.checked_vertices} vertices: "
            f"{'all valid' if report.ok else f'{len(report.failures)} failures'}\n"
        )
        for f in report.failures:
            out.write(f"  {f.vertex}  facets {', '.join(f.facets)}: {f.reason}\n")
    return _EXIT_OK if report.ok else _EXIT_CHECK_FAILED


def _cmd_boundary(args, out) -> int:
    W = _manifold_from_args(args)
    components = boundary_components(W)
    rows = []
    for fid, comp in zip(BOUNDARY_FACETS, components):
        label = identify_simplex_or_product(comp.polytope) or "unrecognized"
        h = h_vector(comp.polytope, generate_functional(comp.polytope, args.seed))
        betti = betti_boundary(comp, args.seed)
        rows.append(
            {
                "facet": fid,
                "polytope": label,
                "vertices": len(comp.polytope.vertices),
                "h_vector": list(h),
                "betti_even": {str(d): b for d, b in sorted(betti.items())},
            }
        )
    if args.format == "json":
        _dump_json({"components": rows}, out)
    else:
        for r in rows:
            out.write(
                f"{r['facet']}: {r['polytope']}, {r['vertices']} vertices, "
                f"h-vector {tuple(r['h_vector'])}, "
                f"Betti (even degrees) {tuple(r['betti_even'].values())}\n"
            )
    return _EXIT_OK


def _cmd_homology(args, out) -> int:
    W = _manifold_from_args(args)
    structure = cell_structure(W, args.seed)
    counts = structure.cell_counts()
    for s in range(1, args.seeds):
        if cell_structure(W, args.seed + s).cell_counts() != counts:
            out.write("cell counts varied across functionals; construction is broken\n")
            return _EXIT_CHECK_FAILED
    table = homology_W(W, args.seed)
    euler = euler_check(W, args.seed)
    if args.format == "json":
        _dump_json(
            {
                "cells": {str(d): c for d, c in sorted(counts.items())},
                "homology": {str(d): r for d, r in table.ranks},
                "paper_H0_discrepancy": table.paper_h0_discrepancy,
                "euler": {
                    "cell_total": euler.cell_total,
                    "half_boundary_vertices": euler.half_boundary_vertices,
                    "ok": euler.ok,
                },
            },
            out,
        )
    else:
        out.write(f"cells: one 0-cell, odd cells {counts}\n")
        out.write("homology ranks (degree: rank, absent degrees are 0):\n")
        for d, r in table.ranks:
            out.write(f"  H_{d} = Z^{r}\n")
        out.write(
            "degree-0 note: the single 0-cell contributes to unreduced homology only; "
            "the relative group in degree 0 is 0\n"
        )
        out.write(
            f"euler cross-check: {euler.cell_total} == {euler.half_boundary_vertices} "
            f"-> {'PASS' if euler.ok else 'FAIL'}\n"
        )
    return _EXIT_OK if euler.ok else _EXIT_CHECK_FAILED


def _render_glue_text(report, out) -> None:
    out.write(f"n = {report.n} (k = {report.k}), r1 = {format_fraction(report.r1)}, seed = {report.seed}\n")
    for c in report.checks:
        out.write(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.details}\n")
    out.write(
        f"orientation: sign(rho) = {report.orientation.sign_rho:+d}, "
        f"det(delta') = {report.orientation.det_delta:+d}\n"
    )
    out.write(f"boundary label: {report.boundary_label}^{report.n - 1}\n")
    out.write(f"overall: {'PASS' if report.passed else 'FAILED'}\n")


def _cmd_glue(args, out) -> int:
    if args.k_range:
        lo, _, hi = args.k_range.partition(":")
        ks = list(range(int(lo), int(hi) + 1))
        if not ks or ks[0] < 1:
            raise ValueError(f"bad k range {args.k_range}")
    elif getattr(args, "input", None):
        ks = [None]
    else:
        ks = [_resolve_n(args) // 2 - 1]

    reports = []
    for k in ks:
        if k is None:
            W = _manifold_from_args(args)
        else:
            W = build_W(k, _parse_r1(args.r1))
        reports.append(glue_report(W, args.seed, extra_seeds=args.seeds - 1))

    payload = [glue_report_to_json(r) for r in reports]
    if args.output:
        with open(args.output, "w") as fh:
            _dump_json(payload[0] if len(payload) == 1 else {"reports": payload}, fh)
        out.write(f"wrote {args.output}\n")
    if args.format == "json" and not args.output:
        _dump_json(payload[0] if len(payload) == 1 else {"reports": payload}, out)
    if args.format == "text":
        for r in reports:
            _render_glue_text(r, out)
    return _EXIT_OK if all(r.passed for r in reports) else _EXIT_CHECK_FAILED


def _cmd_demo(args, out) -> int:
    n = args.n
    if n < 4 or n % 2:
        raise ValueError(f"n must be even and at least 4, got {n}")
    r1 = _parse_r1(args.r1)
    W = build_W(n // 2 - 1, r1)
    eta = eta_standard(n)
    out.write(f"Worked example: n = {n} (boundary dimension {2 * n - 2}, k = {W.k})\n")
    out.write("=" * 60 + "\n\n")
    out.write(f"Standard vectors on the {n}-simplex facets (facet d_m carries eta_(n-m)):\n")
    for j in range(n + 1):
        out.write(f"  eta_{j} = {eta[j].entries}   on facet d{n - j}\n")
    poly = W.pair.polytope
    out.write(
        f"\nTruncated simplex (r1 = {format_fraction(r1)}): "
        f"{len(poly.facets)} facets, {len(poly.vertices)} vertices\n"
    )

    components = boundary_components(W)
    for fid, comp in zip(BOUNDARY_FACETS, components):
        label = identify_simplex_or_product(comp.polytope) or "unrecognized"
        out.write(f"\n{fid} ({label}) carries:\n")
        for facet, vec in sorted(comp.assignment.items()):
            out.write(f"  {facet} /\\ {fid} -> {vec.entries}\n")

    delta = delta_matrix(n)
    rho = rho_permutation(n)
    out.write("\nBasis reversal delta' acting on the vectors:\n")
    for j in range(n + 1):
        image = apply_matrix(delta, eta[j].entries)
        out.write(f"  delta'(eta_{j}) = {image} = eta_{rho(j)}\n")
    out.write("\nFacet bijection P1 -> P2 (matching the vector swap):\n")
    for a, b in sorted(rho_facet_bijection(n).items()):
        out.write(f"  {a} /\\ P1  ->  {b} /\\ P2\n")

    report = glue_report(W, args.seed)
    out.write("\nCertification:\n")
    for c in report.checks:
        out.write(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}\n")
    orient = orientation_signs(n)
    out.write(f"\nsign(rho) = {orient.sign_rho:+d}, det(delta') = {orient.det_delta:+d}\n")
    out.write(
        f"After gluing the two product components, the remaining boundary is "
        f"{report.boundary_label}^{n - 1}.\n"
    )
    out.write(f"Overall: {'PASS' if report.passed else 'FAILED'}\n")
    return _EXIT_OK if report.passed else _EXIT_CHECK_FAILED


_COMMANDS = {
    "construct": _cmd_construct,
    "validate": _cmd_validate,
    "boundary": _cmd_boundary,
    "homology": _cmd_homology,
    "glue": _cmd_glue,
    "demo": _cmd_demo,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_BAD_INPUT if exc.code else _EXIT_OK
    if getattr(args, "k", None) is not None and getattr(args, "n", None) is not None:
        sys.stderr.write("error: --k and --n are mutually exclusive\n")
        return _EXIT_BAD_INPUT
    try:
        return _COMMANDS[args.command](args, out)
    except (ValueError, OSError, KeyError) as exc:  # JSONDecodeError is a ValueError
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_BAD_INPUT


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
