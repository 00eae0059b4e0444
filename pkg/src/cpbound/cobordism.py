"""Assembly and certification of the bounding manifold for CP^(2k+1).

``build_W`` equips the truncated simplex with the standard vector family,
leaving the three cut facets as boundary.  The remaining operations extract
the boundary pieces, count the cells of the pair (W, boundary) coming from
the surviving root edges, cross-check the counts against an Euler-type
identity, certify that the two product-facet components translate into each
other under the basis reversal, and bring the simplex component to standard
projective form.  ``glue_report`` runs the whole pipeline and aggregates one
pass/fail record per check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .charfn import (
    CharPair,
    SimplexNormalForm,
    TranslationWitness,
    attach,
    charpair_from_json,
    charpair_to_json,
    delta_matrix,
    eta_facet_assignment,
    normalize_simplex_pair,
    orientation_signs,
    restrict_to_facet,
    rho_facet_bijection,
    validate,
    verify_translation,
)
from .polytope import (
    SimplePolytope,
    combinatorially_isomorphic,
    format_fraction,
    generate_functional,
    h_vector,
    parse_fraction,
    simplex,
    product,
    truncated_simplex,
    vertex_indices,
)

BOUNDARY_FACETS = ("P1", "P2", "P3")


class WManifold:
    """The bounding-manifold datum: a pair over the truncated simplex.

    Torus rank is one less than the dimension and exactly the three cut
    facets are boundary.  Validity of the pair is *not* assumed here so that
    deliberately broken inputs can still be loaded and reported on.
    """

    def __init__(self, pair: CharPair, n: int, r1: Fraction) -> None:
        if pair.polytope.dim != n:
            raise ValueError(f"pair polytope has dimension {pair.polytope.dim}, expected {n}")
        if pair.torus_rank != n - 1:
            raise ValueError(f"torus rank must be {n - 1}, got {pair.torus_rank}")
        if pair.boundary_facet_ids != BOUNDARY_FACETS:
            raise ValueError(
                f"boundary facets must be {BOUNDARY_FACETS}, got {pair.boundary_facet_ids}"
            )
        self.pair = pair
        self.n = n
        self.r1 = Fraction(r1)

    @property
    def k(self) -> int:
        return self.n // 2 - 1


def build_W(k: int, r1: Fraction = Fraction(1, 5)) -> WManifold:
    """Construct and validate the bounding manifold datum for CP^(2k+1).

    Sets n = 2(k+1).  k = 0 is rejected: with n = 2 the two faces to cut
    would be single vertices, not positive-dimensional faces (CP^1 = S^2
    bounds a ball anyway).
    """
    if k < 1:
        raise ValueError(
            "k must be at least 1: the construction needs n = 2(k+1) >= 4 so that "
            "the two cut faces have positive dimension"
        )
    n = 2 * (k + 1)
    P = truncated_simplex(n, Fraction(r1))
    pair = attach(P, {f: v.entries for f, v in eta_facet_assignment(n).items()}, n - 1)
    W = WManifold(pair, n, Fraction(r1))
    report = validate(pair)
    if not report.ok:  # would be a bug in the construction, not bad input
        raise AssertionError(f"standard assignment failed validation at {report.failing_vertices()}")
    return W


def boundary_components(W: WManifold) -> tuple[CharPair, CharPair, CharPair]:
    """The three closed pairs on P1, P2, P3; checks they share no vertices."""
    poly = W.pair.polytope
    vsets = {f: set(poly.facet_vertices(f)) for f in BOUNDARY_FACETS}
    for i, a in enumerate(BOUNDARY_FACETS):
        for b in BOUNDARY_FACETS[i + 1 :]:
            overlap = vsets[a] & vsets[b]
            if overlap:
                raise ValueError(f"boundary facets {a} and {b} share vertices {sorted(overlap)}")
    return tuple(restrict_to_facet(W.pair, f) for f in BOUNDARY_FACETS)  # type: ignore[return-value]


@dataclass(frozen=True)
class CellGenerator:
    """One odd cell: a vertex whose surviving root edge points at it."""

    index: int  # the vertex index j; the cell has dimension 2j-1
    vertex: str
    root_edge: tuple[str, str]


@dataclass(frozen=True)
class CellStructure:
    n: int
    generators: tuple[CellGenerator, ...]
    zero_cells: int = 1

    def index_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for g in self.generators:
            counts[g.index] = counts.get(g.index, 0) + 1
        return dict(sorted(counts.items()))

    def cell_counts(self) -> dict[int, int]:
        """Counts keyed by cell dimension 2j-1."""
        return {2 * j - 1: c for j, c in self.index_counts().items()}

    def total(self) -> int:
        return len(self.generators)


def cell_structure(W: WManifold, seed: int = 0) -> CellStructure:
    """Cells of (W, boundary): vertices whose unique root edge points inward.

    Each vertex of the truncated simplex lies on exactly one surviving root
    edge; orienting edges by a generic functional, the vertex contributes one
    cell of dimension 2*ind(v)-1 exactly when that edge points toward it.
    The top vertex always contributes the single (2n-1)-cell.
    """
    poly = W.pair.polytope
    zeta = generate_functional(poly, seed)
    ind = vertex_indices(poly, zeta)
    values = {v.id: zeta(v.coord) for v in poly.vertices}
    root_edges = [e for e in poly.edges if e.provenance.kind == "original"]
    per_vertex: dict[str, list] = {v.id: [] for v in poly.vertices}
    for e in root_edges:
        per_vertex[e.ends[0]].append(e)
        per_vertex[e.ends[1]].append(e)
    gens = []
    for vid in sorted(per_vertex):
        edges = per_vertex[vid]
        if len(edges) != 1:
            raise AssertionError(f"vertex {vid} lies on {len(edges)} root edges, expected 1")
        e = edges[0]
        other = e.ends[0] if e.ends[1] == vid else e.ends[1]
        if values[vid] > values[other]:
            gens.append(CellGenerator(ind[vid], vid, e.provenance.ancestors))
    structure = CellStructure(W.n, tuple(gens))
    if structure.index_counts().get(W.n, 0) != 1:
        raise AssertionError("expected exactly one top-dimensional cell")
    return structure


@dataclass(frozen=True)
class HomologyTable:
    """Ranks of H_*(W, boundary); absent degrees have rank zero.

    The one 0-cell of the quotient contributes to unreduced homology only,
    so degree 0 is reported as rank 0 and the discrepancy flag records that
    the naive cell count would instead give 1 there.
    """

    ranks: tuple[tuple[int, int], ...]  # (degree, rank), sorted
    paper_h0_discrepancy: bool = True

    def rank(self, degree: int) -> int:
        return dict(self.ranks).get(degree, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.ranks)


def homology_W(W: WManifold, seed: int = 0) -> HomologyTable:
    """Homology of the pair from the cell counts: rank |I_j| in degree 2j-1."""
    cells = cell_structure(W, seed)
    ranks = [(0, 0)] + [(2 * j - 1, c) for j, c in cells.index_counts().items()]
    table = HomologyTable(tuple(sorted(ranks)))
    if table.rank(2 * W.n - 1) != 1:
        raise AssertionError("top homology rank is not 1; orientability witness failed")
    return table


@dataclass(frozen=True)
class EulerCheck:
    cell_total: int
    half_boundary_vertices: int

    @property
    def ok(self) -> bool:
        return self.cell_total == self.half_boundary_vertices


def euler_check(W: WManifold, seed: int = 0) -> EulerCheck:
    """Two independent counts that must agree.

    The total number of odd cells equals the number of surviving root edges,
    counted here via the inward-edge criterion; independently, every closed
    piece of the boundary has Euler characteristic equal to its polytope's
    vertex count and the boundary of an odd-dimensional compact manifold has
    twice the manifold's characteristic, which forces the cell total to be
    half the summed vertex counts of the three boundary facets.
    """
    total = cell_structure(W, seed).total()
    poly = W.pair.polytope
    boundary_vertices = sum(len(poly.facet_vertices(f)) for f in BOUNDARY_FACETS)
    return EulerCheck(total, boundary_vertices // 2)


def betti_boundary(pair: CharPair, seed: int = 0) -> dict[int, int]:
    """Even-degree Betti numbers of a closed pair: b_{2i} = h_i, odd degrees 0."""
    if pair.boundary_facet_ids:
        raise ValueError("Betti numbers need a closed pair")
    h = h_vector(pair.polytope, generate_functional(pair.polytope, seed))
    return {2 * i: h_i for i, h_i in enumerate(h)}


def identify_simplex_or_product(P: SimplePolytope) -> str | None:
    """Recognize a simplex or a product of two simplices, by facet search."""
    d = P.dim
    if combinatorially_isomorphic(P, simplex(d)) is not None:
        return f"Delta^{d}"
    for a in range(1, d // 2 + 1):
        if combinatorially_isomorphic(P, product(simplex(a), simplex(d - a))) is not None:
            return f"Delta^{a} x Delta^{d - a}"
    return None


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str


@dataclass(frozen=True)
class GluingReport:
    n: int
    k: int
    r1: Fraction
    seed: int
    checks: tuple[CheckResult, ...]
    components: tuple[CharPair, ...]
    cell_counts: Mapping[int, int]
    homology: HomologyTable | None
    orientation: object
    boundary_label: str
    witness: TranslationWitness | None
    normal_form: SimplexNormalForm | None
    passed: bool

    def failed_checks(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks if not c.passed)


def glue_report(W: WManifold, seed: int = 0, extra_seeds: int = 0) -> GluingReport:
    """Run the full certification pipeline and aggregate the results.

    ``extra_seeds`` re-runs the cell count under that many further functionals
    and requires identical counts.
    """
    n = W.n
    checks: list[CheckResult] = []
    witness: TranslationWitness | None = None
    normal: SimplexNormalForm | None = None
    cells: dict[int, int] = {}
    homology: HomologyTable | None = None

    report = validate(W.pair)
    checks.append(
        CheckResult(
            "w-validity",
            report.ok,
            f"{report.checked_vertices} vertices checked, {len(report.failures)} failures"
            + ("" if report.ok else f" (first at {report.failures[0].vertex})"),
        )
    )

    components: tuple[CharPair, ...] = ()
    if report.ok:
        try:
            components = boundary_components(W)
            checks.append(CheckResult("boundary-disjointness", True, "P1, P2, P3 share no vertices"))
        except ValueError as exc:
            checks.append(CheckResult("boundary-disjointness", False, str(exc)))

    if components:
        half = n // 2
        expected = [f"Delta^{half - 1} x Delta^{half}", f"Delta^{half - 1} x Delta^{half}", f"Delta^{n - 1}"]
        found = [identify_simplex_or_product(c.polytope) for c in components]
        ok = found == expected
        checks.append(
            CheckResult(
                "boundary-polytope-types",
                ok,
                "; ".join(f"{f}: {t}" for f, t in zip(BOUNDARY_FACETS, found)),
            )
        )

        sub_reports = [validate(c) for c in components]
        ok = all(r.ok for r in sub_reports)
        checks.append(
            CheckResult(
                "component-validity",
                ok,
                ", ".join(
                    f"{f}: {len(r.failures)} failures" for f, r in zip(BOUNDARY_FACETS, sub_reports)
                ),
            )
        )

        witness = TranslationWitness(rho_facet_bijection(n), delta_matrix(n))
        translation = verify_translation(components[0], components[1], witness)
        checks.append(
            CheckResult(
                "translation-p1-p2",
                translation.ok,
                "facet bijection is an isomorphism and the basis reversal carries "
                "every vector across"
                if translation.ok
                else f"mismatches at {translation.vector_mismatches}",
            )
        )

        try:
            normal = normalize_simplex_pair(components[2])
            allones = normal.vector_of(normal.residual_facet) == (1,) * (n - 1)
            checks.append(
                CheckResult(
                    "p3-normal-form",
                    allones,
                    f"residual facet {normal.residual_facet} carries the all-ones vector; "
                    f"basis change determinant {_det_str(normal)}",
                )
            )
        except ValueError as exc:
            checks.append(CheckResult("p3-normal-form", False, str(exc)))

    if report.ok:
        try:
            structure = cell_structure(W, seed)
            cells = structure.cell_counts()
            stable = True
            for s in range(1, extra_seeds + 1):
                if cell_structure(W, seed + s).cell_counts() != cells:
                    stable = False
            homology = homology_W(W, seed)
            ok = stable and structure.index_counts().get(n, 0) == 1
            checks.append(
                CheckResult(
                    "cell-structure",
                    ok,
                    f"one 0-cell plus odd cells {cells}; top count "
                    f"{structure.index_counts().get(n, 0)}"
                    + ("" if stable else "; counts varied across seeds"),
                )
            )
        except (ValueError, AssertionError) as exc:
            checks.append(CheckResult("cell-structure", False, str(exc)))

        try:
            euler = euler_check(W, seed)
            checks.append(
                CheckResult(
                    "euler-cross-check",
                    euler.ok,
                    f"cell total {euler.cell_total} vs half boundary vertex count "
                    f"{euler.half_boundary_vertices}",
                )
            )
        except (ValueError, AssertionError) as exc:
            checks.append(CheckResult("euler-cross-check", False, str(exc)))

    orient = orientation_signs(n)
    passed = all(c.passed for c in checks)
    return GluingReport(
        n=n,
        k=W.k,
        r1=W.r1,
        seed=seed,
        checks=tuple(checks),
        components=components,
        cell_counts=cells,
        homology=homology,
        orientation=orient,
        boundary_label=orient.boundary_label,
        witness=witness,
        normal_form=normal,
        passed=passed,
    )


def _det_str(normal: SimplexNormalForm) -> str:
    from .zlinalg import determinant

    return str(determinant(normal.basis_change))


# --- JSON ---------------------------------------------------------------------


def wmanifold_to_json(W: WManifold) -> dict:
    return {
        "n": W.n,
        "r1": format_fraction(W.r1),
        "pair": charpair_to_json(W.pair),
    }


def wmanifold_from_json(data: dict) -> WManifold:
    pair = charpair_from_json(data["pair"])
    return WManifold(pair, int(data["n"]), parse_fraction(data["r1"]))


def glue_report_to_json(report: GluingReport) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "checks": [
            {"name": c.name, "pass": c.passed, "details": c.details} for c in report.checks
        ],
        "cells": {str(d): c for d, c in sorted(report.cell_counts.items())},
        "homology": (
            {str(d): r for d, r in report.homology.ranks} if report.homology else {}
        ),
        "orientation": {
            "sign_rho": report.orientation.sign_rho,
            "det_delta": report.orientation.det_delta,
        },
        "boundary_label": report.boundary_label,
        "paper_H0_discrepancy": True,
    }
