"""Combinatorial simple polytopes with provenance-tracked face truncation.

A polytope is stored by vertex-facet incidence: each vertex knows the set of
facets containing it (exactly ``dim`` of them, simplicity).  Edges are
derived, never stored as primary data: two vertices are adjacent when they
share ``dim - 1`` facets.  Each edge carries a provenance tag telling whether
it is a remnant of an edge of the root polytope ("original", with the root
endpoints recorded) or was created by a truncation ("cut").

Exact rational coordinates (``fractions.Fraction``, never floats) are
attached for the built-in families: simplices, products of polytopes with
coordinates, and iterated face truncations of those.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

Point = tuple[Fraction, ...]

FUNCTIONAL_COEFF_BOUND = 10**6
FUNCTIONAL_RETRY_BUDGET = 64


@dataclass(frozen=True)
class FacetProvenance:
    """Where a facet came from: part of the root polytope, or a truncation."""

    kind: str  # "original" | "cut"
    index: Optional[int] = None  # original: position in the root facet list
    cut_face: Optional[tuple[str, ...]] = None  # cut: facet ids of the face that was cut

    def __post_init__(self) -> None:
        if self.kind not in ("original", "cut"):
            raise ValueError(f"unknown facet provenance kind {self.kind!r}")
        if self.kind == "original" and self.index is None:
            raise ValueError("original facet provenance needs an index")
        if self.kind == "cut" and not self.cut_face:
            raise ValueError("cut facet provenance needs the defining facet ids")


def original_facet(index: int) -> FacetProvenance:
    return FacetProvenance("original", index=index)


def cut_facet(face_ids: Sequence[str]) -> FacetProvenance:
    return FacetProvenance("cut", cut_face=tuple(sorted(face_ids)))


@dataclass(frozen=True)
class FacetLabel:
    id: str
    provenance: FacetProvenance


@dataclass(frozen=True)
class EdgeProvenance:
    kind: str  # "original" | "cut"
    ancestors: Optional[tuple[str, str]] = None  # root vertex ids, original edges only

    def __post_init__(self) -> None:
        if self.kind not in ("original", "cut"):
            raise ValueError(f"unknown edge provenance kind {self.kind!r}")
        if self.kind == "original" and self.ancestors is None:
            raise ValueError("original edge provenance needs its root endpoints")


CUT_EDGE = EdgeProvenance("cut")


def original_edge(a: str, b: str) -> EdgeProvenance:
    return EdgeProvenance("original", tuple(sorted((a, b))))


@dataclass(frozen=True)
class Vertex:
    id: str
    facet_ids: frozenset[str]
    coord: Optional[Point] = None


@dataclass(frozen=True)
class Edge:
    ends: tuple[str, str]  # sorted vertex ids
    provenance: EdgeProvenance


@dataclass(frozen=True)
class FaceRef:
    """A face given by facet ids, with the vertices realizing it."""

    facet_ids: frozenset[str]
    vertex_ids: tuple[str, ...]


@dataclass(frozen=True)
class LinearFunctional:
    """An integer linear functional on the ambient coordinate space."""

    coefficients: tuple[int, ...]

    def __call__(self, point: Point) -> Fraction:
        if len(point) != len(self.coefficients):
            raise ValueError("functional and point have different ambient dimensions")
        return sum((c * x for c, x in zip(self.coefficients, point)), Fraction(0))


def _edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def _derive_edges(dim: int, vertices: Sequence[Vertex]) -> list[tuple[str, str]]:
    """Pairs of vertices sharing exactly dim-1 facets.

    Also enforces that no (dim-1)-subset of facets is shared by more than two
    vertices, which is what makes the pairing an edge relation.
    """
    byface: dict[frozenset[str], list[str]] = {}
    for v in vertices:
        for fid in v.facet_ids:
            key = v.facet_ids - {fid}
            byface.setdefault(key, []).append(v.id)
    edges = set()
    for key, vids in byface.items():
        if len(vids) > 2:
            raise ValueError(
                f"facet subset {sorted(key)} is shared by {len(vids)} vertices; "
                "a simple polytope allows at most 2"
            )
        if len(vids) == 2:
            edges.add(_edge_key(vids[0], vids[1]))
    return sorted(edges)


class SimplePolytope:
    """A combinatorial simple polytope (vertex-facet incidence plus tags).

    Instances are immutable by convention; all operations build new objects.
    """

    def __init__(
        self,
        dim: int,
        facets: Sequence[FacetLabel],
        vertices: Sequence[Vertex],
        edge_tags: Mapping[tuple[str, str], EdgeProvenance],
        ancestor_coords: Mapping[str, Point] | None = None,
    ) -> None:
        if dim < 1:
            raise ValueError("polytope dimension must be at least 1")
        self.dim = dim
        self.facets = tuple(sorted(facets, key=lambda f: f.id))
        self.facet_ids = tuple(f.id for f in self.facets)
        if len(set(self.facet_ids)) != len(self.facet_ids):
            raise ValueError("facet ids are not unique")
        self.vertices = tuple(sorted(vertices, key=lambda v: v.id))
        if len({v.id for v in self.vertices}) != len(self.vertices):
            raise ValueError("vertex ids are not unique")
        facet_set = set(self.facet_ids)
        seen_sets: dict[frozenset[str], str] = {}
        for v in self.vertices:
            if len(v.facet_ids) != dim:
                raise ValueError(f"vertex {v.id} lies on {len(v.facet_ids)} facets, expected {dim}")
            if not v.facet_ids <= facet_set:
                raise ValueError(f"vertex {v.id} references unknown facets")
            if v.facet_ids in seen_sets:
                raise ValueError(f"vertices {seen_sets[v.facet_ids]} and {v.id} have identical facet sets")
            seen_sets[v.facet_ids] = v.id
        if not self.vertices:
            raise ValueError("polytope has no vertices")

        coords = [v.coord for v in self.vertices if v.coord is not None]
        if coords and len(coords) != len(self.vertices):
            raise ValueError("either all vertices carry coordinates or none")
        if coords and len({len(c) for c in coords}) != 1:
            raise ValueError("vertex coordinates live in different ambient spaces")
        self.has_coords = bool(coords)

        used = set()
        for v in self.vertices:
            used |= v.facet_ids
        for fid in facet_set - used:
            raise ValueError(f"facet {fid} contains no vertex")

        pairs = _derive_edges(dim, self.vertices)
        edges = []
        for a, b in pairs:
            tag = edge_tags.get((a, b))
            if tag is None:
                raise ValueError(f"edge {a}--{b} has no provenance tag")
            edges.append(Edge((a, b), tag))
        self.edges = tuple(edges)
        self._check_connected()

        self.ancestor_coords: dict[str, Point] = dict(ancestor_coords or {})
        self.vertex_by_id = {v.id: v for v in self.vertices}
        # dropped-facet navigation: at v, the edge leaving through "all facets
        # of v except fid" and its far endpoint
        nav: dict[str, dict[str, tuple[str, Edge]]] = {v.id: {} for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            shared = self.vertex_by_id[a].facet_ids & self.vertex_by_id[b].facet_ids
            (dropped_a,) = self.vertex_by_id[a].facet_ids - shared
            (dropped_b,) = self.vertex_by_id[b].facet_ids - shared
            nav[a][dropped_a] = (b, e)
            nav[b][dropped_b] = (a, e)
        self._nav = nav

    def _check_connected(self) -> None:
        if not self.edges and len(self.vertices) > 1:
            raise ValueError("vertex-edge graph is disconnected (no edges)")
        adjacency: dict[str, list[str]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            adjacency[a].append(b)
            adjacency[b].append(a)
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise ValueError("vertex-edge graph is disconnected")

    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def facet_vertices(self, facet_id: str) -> tuple[str, ...]:
        if facet_id not in self.facet_ids:
            raise ValueError(f"unknown facet {facet_id}")
        return tuple(v.id for v in self.vertices if facet_id in v.facet_ids)

    def neighbors(self, vertex_id: str) -> Mapping[str, tuple[str, Edge]]:
        """Map dropped-facet id -> (far endpoint, edge) for edges at a vertex."""
        return self._nav[vertex_id]

    def edge_between(self, a: str, b: str) -> Edge:
        key = _edge_key(a, b)
        for e in self.edges:
            if e.ends == key:
                return e
        raise ValueError(f"{a} and {b} are not adjacent")


def simplex(n: int) -> SimplePolytope:
    """The n-simplex: vertices are the standard basis of Q^(n+1).

    Facet ``d{j}`` is the one not containing vertex ``A{j}``.
    """
    if n < 1:
        raise ValueError("simplex dimension must be at least 1")
    facets = [FacetLabel(f"d{j}", original_facet(j)) for j in range(n + 1)]
    vertices = []
    for j in range(n + 1):
        fs = frozenset(f"d{m}" for m in range(n + 1) if m != j)
        coord = tuple(Fraction(1 if i == j else 0) for i in range(n + 1))
        vertices.append(Vertex(f"A{j}", fs, coord))
    tags = {}
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            tags[_edge_key(f"A{a}", f"A{b}")] = original_edge(f"A{a}", f"A{b}")
    anc = {v.id: v.coord for v in vertices}
    return SimplePolytope(n, facets, vertices, tags, anc)


def face_from_facets(P: SimplePolytope, facet_ids: Sequence[str]) -> FaceRef:
    """The face cut out by a set of facets (error if the intersection is empty)."""
    S = frozenset(facet_ids)
    if not S:
        raise ValueError("need at least one facet id")
    unknown = S - set(P.facet_ids)
    if unknown:
        raise ValueError(f"unknown facet ids {sorted(unknown)}")
    verts = tuple(sorted(v.id for v in P.vertices if S <= v.facet_ids))
    if not verts:
        raise ValueError(f"facets {sorted(S)} have empty intersection")
    return FaceRef(S, verts)


def face_as_polytope(P: SimplePolytope, face: FaceRef) -> SimplePolytope:
    """A face of a simple polytope as a simple polytope in its own right.

    Keeps the parent's facet labels (restricted), coordinates, and edge tags.
    """
    sub_dim = P.dim - len(face.facet_ids)
    if sub_dim < 1:
        raise ValueError("face is a vertex; it has no polytope structure")
    in_face = set(face.vertex_ids)
    vertices = [
        Vertex(v.id, v.facet_ids - face.facet_ids, v.coord)
        for v in P.vertices
        if v.id in in_face
    ]
    used: set[str] = set()
    for v in vertices:
        used |= v.facet_ids
    facets = [f for f in P.facets if f.id in used]
    tags = {
        e.ends: e.provenance
        for e in P.edges
        if e.ends[0] in in_face and e.ends[1] in in_face
    }
    return SimplePolytope(sub_dim, facets, vertices, tags, P.ancestor_coords)


def cut_face(
    P: SimplePolytope,
    face: FaceRef,
    r1: Fraction | None = None,
    new_facet_id: str | None = None,
) -> SimplePolytope:
    """Truncate a proper face: remove its vertex neighborhood, add one facet.

    The face of codimension l is defined by l facets.  Each face vertex v has
    exactly l edges leaving the face (one per defining facet); cutting places
    a new vertex on each, so the new facet is combinatorially the product of
    the face with an (l-1)-simplex.  Edges inside the new facet are tagged
    "cut"; the remnant of each leaving edge keeps its tag.

    With coordinates present the new vertex on the leaving edge at v towards
    root vertex w sits at (1-r1)*v + r1*w, which keeps all cut hyperplanes of
    an iterated truncation in their nominal positions.  This requires the cut
    to happen at root vertices, hence the "no previously cut vertex" rule.
    """
    S = face.facet_ids
    face_verts = set(face.vertex_ids)
    if not face_verts:
        raise ValueError("face has no vertices")
    if face_verts == {v.id for v in P.vertices}:
        raise ValueError("cannot cut: the face is the whole polytope")
    common = frozenset.intersection(*(P.vertex_by_id[v].facet_ids for v in face.vertex_ids))
    if common != S:
        raise ValueError(
            f"facets {sorted(S)} do not define the face exactly; "
            f"its vertices share {sorted(common)}"
        )
    if P.has_coords:
        if r1 is None:
            raise ValueError("r1 is required when the polytope carries coordinates")
        if not Fraction(0) < r1 < Fraction(1, 4):
            raise ValueError(f"r1 must lie strictly between 0 and 1/4, got {r1}")
        for vid in face_verts:
            if vid not in P.ancestor_coords:
                raise ValueError(
                    f"vertex {vid} was created by an earlier cut; "
                    "cut faces must be disjoint from previous cuts"
                )

    new_id = new_facet_id if new_facet_id is not None else "cut(" + ",".join(sorted(S)) + ")"
    if new_id in P.facet_ids:
        raise ValueError(f"facet id {new_id} already in use")

    new_vertices: list[Vertex] = []
    tags: dict[tuple[str, str], EdgeProvenance] = {}
    for vid in sorted(face_verts):
        v = P.vertex_by_id[vid]
        nav = P.neighbors(vid)
        for fid in sorted(S):
            far_id, edge = nav[fid]
            if far_id in face_verts:
                raise ValueError("face is not cuttable: a leaving edge stays inside it")
            nv_id = f"{vid}|{fid}"
            nv_facets = (v.facet_ids - {fid}) | {new_id}
            nv_coord = None
            if P.has_coords:
                if edge.provenance.kind != "original":
                    raise ValueError(
                        f"edge {edge.ends} was created by an earlier cut; "
                        "cannot place the new vertex exactly"
                    )
                a, b = edge.provenance.ancestors  # type: ignore[misc]
                if vid not in (a, b):
                    raise ValueError(f"vertex {vid} is not a root endpoint of edge {edge.ends}")
                other = b if vid == a else a
                root = P.ancestor_coords[other]
                nv_coord = tuple((1 - r1) * x + r1 * y for x, y in zip(v.coord, root))
            new_vertices.append(Vertex(nv_id, nv_facets, nv_coord))
            tags[_edge_key(nv_id, far_id)] = edge.provenance

    kept = [v for v in P.vertices if v.id not in face_verts]
    for e in P.edges:
        a, b = e.ends
        if a not in face_verts and b not in face_verts:
            tags[e.ends] = e.provenance

    all_vertices = kept + new_vertices
    new_ids = {v.id for v in new_vertices}
    for a, b in _derive_edges(P.dim, all_vertices):
        if (a, b) not in tags:
            if a in new_ids and b in new_ids:
                tags[(a, b)] = CUT_EDGE
            else:  # would be a spurious adjacency; the constructor will flag it
                raise ValueError(f"unexpected untagged edge {a}--{b} after cut")

    labels = list(P.facets) + [FacetLabel(new_id, cut_facet(S))]
    kept_facets = set()
    for v in all_vertices:
        kept_facets |= v.facet_ids
    # A codimension-1 cut consumes the cut facet itself.
    labels = [f for f in labels if f.id in kept_facets]
    return SimplePolytope(P.dim, labels, all_vertices, tags, P.ancestor_coords)


def truncated_simplex(n: int, r1: Fraction = Fraction(1, 5)) -> SimplePolytope:
    """The n-simplex with two complementary faces and one vertex cut off.

    Cuts, in order: the face spanned by the first n/2 vertices (new facet
    ``P1``), the face spanned by the last n/2 vertices (``P2``), and the
    middle vertex ``A{n/2}`` (``P3``).  Requires even n >= 4 and a rational
    0 < r1 < 1/4; the result has n+4 facets and n(n+4)/2 vertices, none of
    them original.
    """
    if n < 4 or n % 2:
        raise ValueError(f"dimension must be even and at least 4, got {n}")
    r1 = Fraction(r1)
    if not Fraction(0) < r1 < Fraction(1, 4):
        raise ValueError(f"r1 must lie strictly between 0 and 1/4, got {r1}")
    half = n // 2
    P = simplex(n)

    front = face_from_facets(P, [f"d{j}" for j in range(half, n + 1)])
    if set(front.vertex_ids) != {f"A{j}" for j in range(half)}:
        raise AssertionError("unexpected vertex set for the first cut face")
    P = cut_face(P, front, r1, "P1")

    back = face_from_facets(P, [f"d{j}" for j in range(half + 1)])
    if set(back.vertex_ids) != {f"A{j}" for j in range(half + 1, n + 1)}:
        raise AssertionError("the second cut face did not survive the first cut unchanged")
    P = cut_face(P, back, r1, "P2")

    mid = face_from_facets(P, [f"d{j}" for j in range(n + 1) if j != half])
    if set(mid.vertex_ids) != {f"A{half}"}:
        raise AssertionError("the middle vertex did not survive the earlier cuts unchanged")
    P = cut_face(P, mid, r1, "P3")

    if len(P.facets) != n + 4 or len(P.vertices) != n * (n + 4) // 2:
        raise AssertionError("truncation produced unexpected face counts")
    if any(v.id.startswith("A") and "|" not in v.id for v in P.vertices):
        raise AssertionError("an original vertex survived the truncation")
    return P


def product(P: SimplePolytope, Q: SimplePolytope) -> SimplePolytope:
    """Combinatorial product: facets are the disjoint union, vertices pairs."""
    facets = []
    index = 0
    for f in P.facets:
        facets.append(FacetLabel(f"L.{f.id}", original_facet(index)))
        index += 1
    for f in Q.facets:
        facets.append(FacetLabel(f"R.{f.id}", original_facet(index)))
        index += 1
    both_coords = P.has_coords and Q.has_coords
    vertices = []
    for u in P.vertices:
        for v in Q.vertices:
            fs = frozenset(f"L.{fid}" for fid in u.facet_ids) | frozenset(
                f"R.{fid}" for fid in v.facet_ids
            )
            coord = u.coord + v.coord if both_coords else None
            vertices.append(Vertex(f"{u.id}*{v.id}", fs, coord))
    tags: dict[tuple[str, str], EdgeProvenance] = {}
    for e in P.edges:
        a, b = e.ends
        for v in Q.vertices:
            key = _edge_key(f"{a}*{v.id}", f"{b}*{v.id}")
            tags[key] = original_edge(*key)
    for e in Q.edges:
        a, b = e.ends
        for u in P.vertices:
            key = _edge_key(f"{u.id}*{a}", f"{u.id}*{b}")
            tags[key] = original_edge(*key)
    anc = {v.id: v.coord for v in vertices} if both_coords else {}
    return SimplePolytope(P.dim + Q.dim, facets, vertices, tags, anc)


def combinatorially_isomorphic(P: SimplePolytope, Q: SimplePolytope) -> dict[str, str] | None:
    """A facet bijection inducing a vertex bijection, or None.

    Backtracking over facet images, pruned by facet vertex counts and by
    pairwise vertex-intersection sizes; fine up to a few dozen facets.
    """
    if P.dim != Q.dim or len(P.facets) != len(Q.facets) or len(P.vertices) != len(Q.vertices):
        return None
    pv = {f: frozenset(P.facet_vertices(f)) for f in P.facet_ids}
    qv = {f: frozenset(Q.facet_vertices(f)) for f in Q.facet_ids}
    if sorted(len(s) for s in pv.values()) != sorted(len(s) for s in qv.values()):
        return None
    q_vertex_sets = {v.facet_ids for v in Q.vertices}

    order = sorted(P.facet_ids, key=lambda f: (len(pv[f]), f))
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def extend(pos: int) -> bool:
        if pos == len(order):
            image_sets = {frozenset(assignment[f] for f in v.facet_ids) for v in P.vertices}
            return image_sets == q_vertex_sets
        f = order[pos]
        for g in Q.facet_ids:
            if g in used or len(qv[g]) != len(pv[f]):
                continue
            if any(
                len(pv[f] & pv[f2]) != len(qv[g] & qv[assignment[f2]])
                for f2 in assignment
            ):
                continue
            assignment[f] = g
            used.add(g)
            if extend(pos + 1):
                return True
            del assignment[f]
            used.remove(g)
        return False

    if extend(0):
        return dict(sorted(assignment.items()))
    return None


def vertex_indices(P: SimplePolytope, zeta: LinearFunctional) -> dict[str, int]:
    """Per-vertex count of incident edges pointing toward the vertex.

    Edges are oriented toward the larger zeta value; zeta must be injective
    on the vertex set.
    """
    if not P.has_coords:
        raise ValueError("polytope has no coordinates")
    values = {v.id: zeta(v.coord) for v in P.vertices}
    if len(set(values.values())) != len(values):
        raise ValueError("functional is not injective on the vertices")
    ind = {v.id: 0 for v in P.vertices}
    for e in P.edges:
        a, b = e.ends
        head = a if values[a] > values[b] else b
        ind[head] += 1
    tops = [v for v, i in ind.items() if i == P.dim]
    bottoms = [v for v, i in ind.items() if i == 0]
    if len(tops) != 1 or len(bottoms) != 1:
        raise ValueError("index profile is degenerate: expected a unique source and sink")
    return ind


def h_vector(P: SimplePolytope, zeta: LinearFunctional) -> tuple[int, ...]:
    """(h_0, ..., h_dim) where h_i counts vertices of index i."""
    ind = vertex_indices(P, zeta)
    counts = [0] * (P.dim + 1)
    for i in ind.values():
        counts[i] += 1
    return tuple(counts)


def generate_functional(P: SimplePolytope, seed: int) -> LinearFunctional:
    """Draw integer functionals from a seeded PRNG until one separates the vertices."""
    if not P.has_coords:
        raise ValueError("polytope has no coordinates")
    rng = random.Random(seed)
    ambient = len(P.vertices[0].coord)
    for _ in range(FUNCTIONAL_RETRY_BUDGET):
        zeta = LinearFunctional(
            tuple(rng.randint(-FUNCTIONAL_COEFF_BOUND, FUNCTIONAL_COEFF_BOUND) for _ in range(ambient))
        )
        values = {zeta(v.coord) for v in P.vertices}
        if len(values) == len(P.vertices):
            return zeta
    raise ValueError(
        f"no injective functional after {FUNCTIONAL_RETRY_BUDGET} attempts; "
        "vertex coordinates are degenerate"
    )


def _fraction_rank(rows: list[list[Fraction]]) -> int:
    rank = 0
    cols = len(rows[0]) if rows else 0
    work = [row[:] for row in rows]
    for col in range(cols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank


def check_geometry(P: SimplePolytope) -> None:
    """Geometric sanity for the built-in families.

    All vertices must be distinct exact points and every facet's vertex set
    must affinely span exactly dim-1 dimensions.
    """
    if not P.has_coords:
        raise ValueError("polytope has no coordinates")
    seen: dict[Point, str] = {}
    for v in P.vertices:
        if v.coord in seen:
            raise ValueError(f"vertices {seen[v.coord]} and {v.id} share coordinates")
        seen[v.coord] = v.id
    for fid in P.facet_ids:
        pts = [P.vertex_by_id[v].coord for v in P.facet_vertices(fid)]
        base = pts[0]
        diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
        rank = _fraction_rank(diffs) if diffs else 0
        if rank != P.dim - 1:
            raise ValueError(f"facet {fid} spans affine dimension {rank}, expected {P.dim - 1}")


# --- JSON serialization ------------------------------------------------------
#
# Schema: { "dim": n,
#           "facets": [{"id": str, "provenance": {...}}, ...]   (sorted by id),
#           "vertices": [[facet ids, sorted], ...]              (sorted),
#           "coords": [["p/q", ...], ...] }                     (optional, aligned)
#
# Edges are derived on load; an edge is a cut edge exactly when it lies inside
# a cut facet, otherwise it is a remnant of a root edge.


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def _provenance_to_json(p: FacetProvenance) -> dict:
    if p.kind == "original":
        return {"kind": "original", "index": p.index}
    return {"kind": "cut", "face": list(p.cut_face)}


def _provenance_from_json(d: dict) -> FacetProvenance:
    if d["kind"] == "original":
        return original_facet(int(d["index"]))
    if d["kind"] == "cut":
        return cut_facet([str(x) for x in d["face"]])
    raise ValueError(f"unknown facet provenance {d!r}")


def polytope_to_json(P: SimplePolytope) -> dict:
    order = sorted(P.vertices, key=lambda v: sorted(v.facet_ids))
    out = {
        "dim": P.dim,
        "facets": [{"id": f.id, "provenance": _provenance_to_json(f.provenance)} for f in P.facets],
        "vertices": [sorted(v.facet_ids) for v in order],
    }
    if P.has_coords:
        out["coords"] = [[format_fraction(x) for x in v.coord] for v in order]
    return out


def polytope_from_json(data: dict) -> SimplePolytope:
    dim = int(data["dim"])
    facets = [FacetLabel(str(f["id"]), _provenance_from_json(f["provenance"])) for f in data["facets"]]
    coords = data.get("coords")
    raw_vertices = data["vertices"]
    if coords is not None and len(coords) != len(raw_vertices):
        raise ValueError("coords and vertices have different lengths")
    width = len(str(len(raw_vertices)))
    vertices = []
    for i, fids in enumerate(raw_vertices):
        coord = tuple(parse_fraction(x) for x in coords[i]) if coords is not None else None
        vertices.append(Vertex(f"v{i:0{width}d}", frozenset(str(f) for f in fids), coord))

    cut_ids = {f.id for f in facets if f.provenance.kind == "cut"}
    orig_index = {f.id: f.provenance.index for f in facets if f.provenance.kind == "original"}
    # A truncation of the n-simplex keeps the n+1 root facets, indexed 0..n.
    simplex_root = sorted(orig_index.values()) == list(range(dim + 1))
    by_id = {v.id: v for v in vertices}
    tags: dict[tuple[str, str], EdgeProvenance] = {}
    for a, b in _derive_edges(dim, vertices):
        shared = by_id[a].facet_ids & by_id[b].facet_ids
        if shared & cut_ids:
            tags[(a, b)] = CUT_EDGE
        elif simplex_root and not (shared - set(orig_index)):
            missing = sorted(set(range(dim + 1)) - {orig_index[f] for f in shared})
            if len(missing) != 2:
                raise ValueError(f"cannot reconstruct the root edge of {a}--{b}")
            tags[(a, b)] = original_edge(f"A{missing[0]}", f"A{missing[1]}")
        else:
            tags[(a, b)] = original_edge(a, b)

    anc: dict[str, Point] = {}
    if coords is not None:
        ambient = len(coords[0]) if coords else 0
        if simplex_root and ambient == dim + 1:
            for j in range(dim + 1):
                anc[f"A{j}"] = tuple(Fraction(1 if i == j else 0) for i in range(ambient))
        else:
            anc = {v.id: v.coord for v in vertices}
    return SimplePolytope(dim, facets, vertices, tags, anc)
