"""Characteristic vectors and pairs over simple polytopes.

A characteristic vector is an element of Z^r up to global sign, stored as the
representative whose first nonzero entry is positive.  A characteristic pair
maps some facets of a polytope to such vectors; facets left unmapped are
boundary facets.  Validity is the lattice condition: at every vertex the
mapped vectors must span a direct summand of Z^r (a unimodular basis when
there are r of them).  Vertex-level checking suffices because every nonempty
facet intersection contains a vertex and any subset of a basis that is a
direct summand is again one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .polytope import SimplePolytope, face_as_polytope, face_from_facets
from .zlinalg import (
    IntMatrix,
    Permutation,
    apply_matrix,
    determinant,
    inverse_unimodular,
    is_direct_summand,
    is_unimodular_basis,
    matmul,
    permutation_sign,
    smith_normal_form,
)


@dataclass(frozen=True)
class CharVector:
    """A nonzero integer vector in canonical sign form (first nonzero > 0)."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        first = next((e for e in self.entries if e != 0), None)
        if first is None:
            raise ValueError("characteristic vector must be nonzero")
        if first < 0:
            raise ValueError(f"{self.entries} is not canonical; use CharVector.canon")

    @classmethod
    def canon(cls, entries: Sequence[int]) -> "CharVector":
        t = tuple(int(x) for x in entries)
        first = next((e for e in t if e != 0), None)
        if first is None:
            raise ValueError("characteristic vector must be nonzero")
        if first < 0:
            t = tuple(-x for x in t)
        return cls(t)

    def transformed(self, m: IntMatrix) -> "CharVector":
        return CharVector.canon(apply_matrix(m, self.entries))

    def __len__(self) -> int:
        return len(self.entries)


class CharPair:
    """A polytope with a partial facet -> CharVector assignment."""

    def __init__(
        self,
        polytope: SimplePolytope,
        torus_rank: int,
        assignment: Mapping[str, CharVector],
    ) -> None:
        if torus_rank < 1:
            raise ValueError("torus rank must be positive")
        known = set(polytope.facet_ids)
        for fid, vec in assignment.items():
            if fid not in known:
                raise ValueError(f"assignment references unknown facet {fid}")
            if len(vec) != torus_rank:
                raise ValueError(
                    f"vector on facet {fid} has length {len(vec)}, expected {torus_rank}"
                )
        self.polytope = polytope
        self.torus_rank = torus_rank
        self.assignment = dict(sorted(assignment.items()))
        self.boundary_facet_ids = tuple(f for f in polytope.facet_ids if f not in assignment)
        if not self.boundary_facet_ids and torus_rank != polytope.dim:
            raise ValueError(
                f"a closed pair over a {polytope.dim}-polytope needs torus rank "
                f"{polytope.dim}, got {torus_rank}"
            )


def attach(
    P: SimplePolytope,
    assignment: Mapping[str, Sequence[int]],
    torus_rank: int | None = None,
) -> CharPair:
    """Build a CharPair, canonicalizing the vectors; unmapped facets are boundary."""
    vectors = {fid: CharVector.canon(v) for fid, v in assignment.items()}
    if torus_rank is None:
        if not vectors:
            raise ValueError("cannot infer the torus rank of an empty assignment")
        torus_rank = len(next(iter(vectors.values())))
    return CharPair(P, torus_rank, vectors)


@dataclass(frozen=True)
class VertexCheck:
    vertex: str
    facets: tuple[str, ...]
    vectors: tuple[tuple[int, ...], ...]
    ok: bool
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checked_vertices: int
    failures: tuple[VertexCheck, ...]

    def failing_vertices(self) -> tuple[str, ...]:
        return tuple(f.vertex for f in self.failures)


def validate(pair: CharPair) -> ValidationReport:
    """Check the direct-summand condition at every vertex; never raises."""
    failures = []
    for v in pair.polytope.vertices:
        mapped = sorted(fid for fid in v.facet_ids if fid in pair.assignment)
        if not mapped:
            continue
        vectors = tuple(pair.assignment[f].entries for f in mapped)
        ok = True
        reason = ""
        if not is_direct_summand(vectors, pair.torus_rank):
            ok = False
            factors = smith_normal_form(IntMatrix.from_rows(vectors))
            reason = f"vectors do not span a direct summand (invariant factors {factors})"
        elif len(vectors) == pair.torus_rank and not is_unimodular_basis(vectors, pair.torus_rank):
            ok = False
            det = determinant(IntMatrix.from_rows(vectors))
            reason = f"vectors are not a lattice basis (determinant {det})"
        if not ok:
            failures.append(VertexCheck(v.id, tuple(mapped), vectors, False, reason))
    return ValidationReport(not failures, len(pair.polytope.vertices), tuple(failures))


def restrict_to_facet(pair: CharPair, facet_id: str) -> CharPair:
    """The closed pair induced on a boundary facet.

    The facet polytope keeps the ids of the facets cutting it, and each such
    facet keeps its vector; every facet meeting the boundary facet must be
    mapped.
    """
    if facet_id not in pair.polytope.facet_ids:
        raise ValueError(f"unknown facet {facet_id}")
    if facet_id in pair.assignment:
        raise ValueError(f"facet {facet_id} carries a vector; only boundary facets restrict")
    face = face_from_facets(pair.polytope, [facet_id])
    sub = face_as_polytope(pair.polytope, face)
    missing = [f for f in sub.facet_ids if f not in pair.assignment]
    if missing:
        raise ValueError(f"facets {missing} meet {facet_id} but carry no vector")
    assignment = {f: pair.assignment[f] for f in sub.facet_ids}
    return CharPair(sub, pair.torus_rank, assignment)


def eta_standard(n: int) -> dict[int, CharVector]:
    """The standard family of n+1 vectors in Z^(n-1) for even n >= 4.

    Index j runs over 0..n; the vector for j is meant for facet ``d{n-j}`` of
    the n-simplex.  Entries (1-based places): a single 1 in place j+1 for
    j < n/2 - 1; ones up to place n/2 for j = n/2 - 1; a single 1 in place j
    for n/2 <= j < n; ones from place n/2 on for j = n.
    """
    if n < 4 or n % 2:
        raise ValueError(f"need even n >= 4, got {n}")
    half = n // 2
    out: dict[int, CharVector] = {}
    for j in range(n + 1):
        v = [0] * (n - 1)
        if j < half - 1:
            v[j] = 1
        elif j == half - 1:
            for p in range(half):
                v[p] = 1
        elif j < n:
            v[j - 1] = 1
        else:
            for p in range(half - 1, n - 1):
                v[p] = 1
        out[j] = CharVector(tuple(v))
    return out


def eta_facet_assignment(n: int) -> dict[str, CharVector]:
    """The standard vectors keyed by simplex facet id: ``d{m}`` carries eta_{n-m}."""
    eta = eta_standard(n)
    return {f"d{m}": eta[n - m] for m in range(n + 1)}


def rho_permutation(n: int) -> Permutation:
    """The involution of {0..n} that matches the basis reversal on the vectors.

    It swaps j with n-1-j on the two middle ranges, swaps n/2-1 with n, and
    fixes n/2.  Even for n = 0 mod 4, odd for n = 2 mod 4.
    """
    if n < 4 or n % 2:
        raise ValueError(f"need even n >= 4, got {n}")
    half = n // 2
    images = []
    for j in range(n + 1):
        if j == half - 1:
            images.append(n)
        elif j == half:
            images.append(half)
        elif j == n:
            images.append(half - 1)
        else:
            images.append(n - 1 - j)
    return Permutation(tuple(images))


def delta_matrix(n: int) -> IntMatrix:
    """The basis reversal of Z^(n-1): the anti-diagonal permutation matrix."""
    if n < 4 or n % 2:
        raise ValueError(f"need even n >= 4, got {n}")
    k = n - 1
    return IntMatrix(k, k, tuple(1 if j == k - 1 - i else 0 for i in range(k) for j in range(k)))


def rho_facet_bijection(n: int) -> dict[str, str]:
    """Facet relabeling d{j} -> d{n - rho(n-j)} between the two product facets.

    In vector terms this sends the facet carrying eta_i to the facet carrying
    eta_rho(i), which is exactly how the basis reversal acts on the vectors;
    it therefore makes the translation square commute for every even n (and
    agrees with rho applied to facet indices when n = 4).
    """
    rho = rho_permutation(n)
    return {f"d{j}": f"d{n - rho(n - j)}" for j in range(n + 1)}


@dataclass(frozen=True)
class TranslationWitness:
    """A facet bijection plus a GL(Z) matrix relating two pairs."""

    phi: Mapping[str, str]
    delta: IntMatrix

    def __post_init__(self) -> None:
        if self.delta.rows != self.delta.cols:
            raise ValueError("delta must be square")
        if abs(determinant(self.delta)) != 1:
            raise ValueError("delta must have determinant +-1")
        if len(set(self.phi.values())) != len(self.phi):
            raise ValueError("phi is not injective")

    def inverse(self) -> "TranslationWitness":
        return TranslationWitness(
            {v: k for k, v in self.phi.items()}, inverse_unimodular(self.delta)
        )

    def compose(self, first: "TranslationWitness") -> "TranslationWitness":
        """Witness for pair1 -> pair3 given first: pair1 -> pair2 and self: pair2 -> pair3."""
        return TranslationWitness(
            {f: self.phi[g] for f, g in first.phi.items()},
            matmul(self.delta, first.delta),
        )


@dataclass(frozen=True)
class TranslationReport:
    ok: bool
    phi_is_isomorphism: bool
    vector_mismatches: tuple[tuple[str, str], ...]


def verify_translation(pair1: CharPair, pair2: CharPair, w: TranslationWitness) -> TranslationReport:
    """Check that phi is a combinatorial isomorphism and delta carries the vectors across.

    Vector equality is up to global sign, i.e. on canonical representatives.
    """
    if pair1.torus_rank != pair2.torus_rank:
        raise ValueError("pairs have different torus ranks")
    phi = dict(w.phi)
    if sorted(phi) != sorted(pair1.polytope.facet_ids) or sorted(phi.values()) != sorted(
        pair2.polytope.facet_ids
    ):
        raise ValueError("phi is not a bijection between the facet sets")
    target_sets = {v.facet_ids for v in pair2.polytope.vertices}
    image_sets = {
        frozenset(phi[f] for f in v.facet_ids) for v in pair1.polytope.vertices
    }
    iso = image_sets == target_sets and len(pair1.polytope.vertices) == len(pair2.polytope.vertices)
    mismatches = []
    for fid in sorted(pair1.assignment):
        target = phi[fid]
        if target not in pair2.assignment:
            mismatches.append((fid, target))
            continue
        if pair1.assignment[fid].transformed(w.delta) != pair2.assignment[target]:
            mismatches.append((fid, target))
    for fid in pair1.boundary_facet_ids:
        if phi[fid] in pair2.assignment:
            mismatches.append((fid, phi[fid]))
    return TranslationReport(iso and not mismatches, iso, tuple(mismatches))


@dataclass(frozen=True)
class SimplexNormalForm:
    """Result of normalizing a valid pair over a combinatorial simplex."""

    basis_change: IntMatrix
    signs: tuple[tuple[str, int], ...]
    normal_form: tuple[tuple[str, tuple[int, ...]], ...]
    residual_facet: str

    def sign_of(self, facet_id: str) -> int:
        return dict(self.signs)[facet_id]

    def vector_of(self, facet_id: str) -> tuple[int, ...]:
        return dict(self.normal_form)[facet_id]


def normalize_simplex_pair(pair: CharPair) -> SimplexNormalForm:
    """Change basis so all facets but one carry the standard basis, the last all-ones.

    Works for every valid closed pair over a combinatorial simplex: the
    lexicographically largest facet is made residual, the others are mapped
    to the standard basis, and vertex unimodularity forces the residual
    vector's entries to +-1, so signs can be absorbed into the basis change.
    """
    P = pair.polytope
    if pair.boundary_facet_ids:
        raise ValueError("pair has boundary facets; normalization needs a closed pair")
    d = P.dim
    vertex_sets = {v.facet_ids for v in P.vertices}
    is_simplex = (
        len(P.facets) == d + 1
        and len(P.vertices) == d + 1
        and all(frozenset(set(P.facet_ids) - {f}) in vertex_sets for f in P.facet_ids)
    )
    if not is_simplex:
        raise ValueError("polytope is not a combinatorial simplex")
    report = validate(pair)
    if not report.ok:
        first = report.failures[0]
        raise ValueError(
            f"pair is not a valid characteristic pair: vertex {first.vertex} "
            f"({first.reason})"
        )
    ids = sorted(P.facet_ids)
    residual = ids[-1]
    basis_ids = ids[:-1]
    columns = [pair.assignment[f].entries for f in basis_ids]
    M = IntMatrix(d, d, tuple(columns[c][r] for r in range(d) for c in range(d)))
    B = inverse_unimodular(M)
    u = apply_matrix(B, pair.assignment[residual].entries)
    if any(abs(x) != 1 for x in u):  # cannot happen for a valid pair
        raise ArithmeticError(f"residual vector {u} is not a sign vector")
    D = IntMatrix(d, d, tuple(u[i] if i == j else 0 for i in range(d) for j in range(d)))
    A = matmul(D, B)
    normal = []
    signs = []
    for fid in ids:
        w = apply_matrix(A, pair.assignment[fid].entries)
        cv = CharVector.canon(w)
        normal.append((fid, cv.entries))
        signs.append((fid, 1 if w == cv.entries else -1))
    return SimplexNormalForm(A, tuple(signs), tuple(normal), residual)


@dataclass(frozen=True)
class OrientationRecord:
    sign_rho: int
    det_delta: int
    boundary_label: str


def orientation_signs(n: int) -> OrientationRecord:
    """Parities of the facet swap and the basis reversal, plus the boundary label.

    The label is "CP" for n = 2 mod 4 and "conjugate-CP" for n = 0 mod 4:
    gluing the two product-facet components through an orientation-reversing
    identification leaves the projective boundary with the conjugate
    orientation exactly when the basis reversal is orientation-reversing.
    """
    if n < 4 or n % 2:
        raise ValueError(f"need even n >= 4, got {n}")
    sign_rho = permutation_sign(rho_permutation(n))
    det_delta = determinant(delta_matrix(n))
    label = "CP" if n % 4 == 2 else "conjugate-CP"
    return OrientationRecord(sign_rho, det_delta, label)


# --- JSON ---------------------------------------------------------------------


def charpair_to_json(pair: CharPair) -> dict:
    from .polytope import polytope_to_json

    return {
        "torus_rank": pair.torus_rank,
        "polytope": polytope_to_json(pair.polytope),
        "vectors": {fid: list(v.entries) for fid, v in sorted(pair.assignment.items())},
    }


def charpair_from_json(data: dict) -> CharPair:
    from .polytope import polytope_from_json

    P = polytope_from_json(data["polytope"])
    rank = int(data["torus_rank"])
    assignment = {
        str(fid): CharVector.canon([int(x) for x in vec])
        for fid, vec in data["vectors"].items()
    }
    return CharPair(P, rank, assignment)
