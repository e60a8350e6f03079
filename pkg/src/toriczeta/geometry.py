"""Newton polytopes, face lattices, cone hyperplanes and lattice points.

All arithmetic is exact (Python integers and Fractions). The polytope of f is
the convex hull of its exponents together with the origin; faces are found by
brute force over candidate supporting hyperplanes, which is fine at the sizes
this package targets (a few dozen points, n <= 4).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import intlinalg as la
from .errors import DegeneratePolytope, NotAFace, NotSimplex


@dataclass(frozen=True)
class Face:
    """A nonempty face, given by the indices of the polytope vertices it contains.

    For an n-simplex ``A`` is the complementary index set: the face is the
    intersection of the cone hyperplanes H_i, i in A.
    """

    vertices: frozenset
    dim: int
    facets: frozenset = field(compare=False)
    A: frozenset = field(default=None, compare=False)

    def __repr__(self):
        return f"Face(vertices={sorted(self.vertices)}, dim={self.dim})"


class Polytope:
    """conv(J ∪ {0}) for the support J of a Laurent polynomial in n variables.

    Returned as-is when the hull is not an n-dimensional simplex; simplex-only
    operations refuse such objects.
    """

    def __init__(self, n, support):
        self.n = n
        origin = (0,) * n
        pts = []
        for j in support:
            if tuple(j) not in pts:
                pts.append(tuple(j))
        if origin not in pts:
            pts.append(origin)
        self.points = pts
        self.constant_in_support = origin in [tuple(j) for j in support]
        # 0 is in the hull, so the affine hull is the linear span
        self._U, self.dim = la.unimodular_echelon(pts, n)
        self._reduced = [tuple(la.matvec(self._U, p)[: self.dim]) for p in pts]
        self._facets = self._find_facets()
        self._build_faces()

    # -- construction --
    def _find_facets(self):
        d = self.dim
        P = self._reduced
        if d == 0:
            return []
        facets = {}
        for combo in combinations(range(len(P)), d):
            base = P[combo[0]]
            diffs = [[a - b for a, b in zip(P[i], base)] for i in combo[1:]]
            if diffs and la.rank(diffs) != d - 1:
                continue
            normals = la.nullspace(diffs, d) if diffs else [[1]]
            if len(normals) != 1:
                continue
            c = normals[0]
            b = sum(x * y for x, y in zip(c, base))
            vals = [sum(x * y for x, y in zip(c, p)) for p in P]
            if all(v <= b for v in vals):
                pass
            elif all(v >= b for v in vals):
                c, b = [-x for x in c], -b
            else:
                continue
            on = frozenset(i for i, p in enumerate(P) if sum(x * y for x, y in zip(c, p)) == b)
            facets.setdefault(on, (tuple(c), b))
        return [(on, c, b) for on, (c, b) in facets.items()]

    def _affine_dim(self, idx):
        idx = sorted(idx)
        if len(idx) <= 1:
            return 0
        base = self._reduced[idx[0]]
        return la.rank([[a - b for a, b in zip(self._reduced[i], base)] for i in idx[1:]])

    def _build_faces(self):
        all_pts = frozenset(range(len(self.points)))
        facet_sets = [on for on, _, _ in self._facets]
        sets = {all_pts}
        frontier = set(facet_sets)
        while frontier:
            sets |= frontier
            new = set()
            for s in frontier:
                for f in facet_sets:
                    t = s & f
                    if t and t not in sets:
                        new.add(t)
            frontier = new
        vertex_pts = sorted(
            (next(iter(s)) for s in sets if self._affine_dim(s) == 0 and len(s) == 1),
        )
        # vertex order: first appearance among the support (origin last if absent)
        self.vertices = [self.points[i] for i in vertex_pts]
        vindex = {pi: vi for vi, pi in enumerate(vertex_pts)}
        faces = []
        for s in sets:
            verts = frozenset(vindex[i] for i in s if i in vindex)
            fac = frozenset(k for k, on in enumerate(facet_sets) if s <= on)
            faces.append(Face(verts, self._affine_dim(s), fac))
        faces.sort(key=lambda F: (-F.dim, sorted(F.vertices)))
        self.faces = faces

    def _on(self, m, F):
        y = la.matvec(self._U, m)
        if any(y[self.dim:]):
            return False
        y = y[: self.dim]
        for k in F.facets:
            _, c, b = self._facets[k]
            if sum(x * w for x, w in zip(c, y)) != b:
                return False
        return True

    # -- queries --
    @property
    def is_simplex(self):
        return self.dim == self.n and len(self.vertices) == self.n + 1

    @property
    def full_dimensional(self):
        return self.dim == self.n

    @property
    def origin_is_vertex(self):
        return (0,) * self.n in self.vertices

    @cached_property
    def origin_interior(self):
        origin = (0,) * self.n
        return self.full_dimensional and not any(self._on(origin, F) for F in self.facet_faces)

    @property
    def full_face(self):
        return self.faces[0]

    @property
    def facet_faces(self):
        return [F for F in self.faces if F.dim == self.dim - 1]

    def faces_of_dim(self, d):
        return [F for F in self.faces if F.dim == d]

    def face_with_vertices(self, verts):
        verts = frozenset(verts)
        for F in self.faces:
            if F.vertices == verts:
                return F
        raise NotAFace(f"no face spanned by vertices {sorted(verts)}")

    def on_face(self, m, F):
        return self._on(tuple(m), F)

    def contains(self, m):
        return self._on(tuple(m), self.full_face) and all(
            sum(x * w for x, w in zip(c, la.matvec(self._U, m)[: self.dim])) <= b for _, c, b in self._facets
        )

    def subfaces(self, F):
        return [G for G in self.faces if G.vertices <= F.vertices and G != F]

    @cached_property
    def cone_forms(self):
        """Primitive integer forms w with (r, m) in the cone over 1 x Delta iff all w.(r, m) >= 0."""
        if not self.full_dimensional:
            raise DegeneratePolytope("the cone is not full dimensional")
        forms = []
        for _, c, b in self._facets:
            # self._U is the identity-lattice change of basis; c.(U m) <= b r
            cm = [sum(c[i] * self._U[i][j] for i in range(self.n)) for j in range(self.n)]
            forms.append(tuple(la.primitive([b] + [-x for x in cm])))
        return forms

    # -- face frames --
    def face_frame(self, F):
        """(v0, U, d): y = (U (m - v0))[:d] are lattice coordinates on the face's affine span."""
        verts = sorted(F.vertices)
        v0 = self.vertices[verts[0]]
        diffs = [[a - b for a, b in zip(self.vertices[v], v0)] for v in verts[1:]]
        U, d = la.unimodular_echelon(diffs, self.n) if diffs else ([[int(i == j) for j in range(self.n)] for i in range(self.n)], 0)
        assert d == F.dim
        return v0, U, d

    def face_coords(self, F, m):
        v0, U, d = self.face_frame(F)
        return tuple(la.matvec(U, [a - b for a, b in zip(m, v0)])[:d])

    def to_json(self):
        out = {
            "n": self.n,
            "dim": self.dim,
            "is_simplex": self.is_simplex,
            "vertices": [list(v) for v in self.vertices],
            "origin_interior": self.origin_interior,
            "faces": [
                {
                    "vertices": sorted(F.vertices),
                    "dim": F.dim,
                    **({"A": sorted(F.A)} if F.A is not None else {}),
                }
                for F in self.faces
            ],
        }
        if self.full_dimensional:
            out["normalized_volume"] = str(normalized_volume(self, self.full_face))
        return out


class SimplexGeometry(Polytope):
    """An n-simplex containing the origin, with its cone hyperplanes H_0..H_n."""

    def __init__(self, n, support):
        super().__init__(n, support)
        if not self.is_simplex:
            raise NotSimplex("polytope is not an n-simplex")
        S = frozenset(range(self.n + 1))
        self.faces = [
            Face(F.vertices, F.dim, F.facets, A=S - F.vertices) for F in self.faces
        ]
        self._by_A = {F.A: F for F in self.faces}
        self.hyperplane_matrix, self.det_a = _hyperplanes(self.vertices)

    @property
    def S(self):
        return frozenset(range(self.n + 1))

    def face_of(self, A):
        A = frozenset(A)
        if A == self.S:
            raise NotAFace("A = S is the apex of the cone, not a face of Delta")
        try:
            return self._by_A[A]
        except KeyError:
            raise NotAFace(f"{sorted(A)} is not a subset of S") from None

    @cached_property
    def cone_forms(self):
        return [tuple(r) for r in self.hyperplane_matrix]

    def forms_at(self, point):
        return [sum(a * b for a, b in zip(row, point)) for row in self.hyperplane_matrix]

    def to_json(self):
        out = super().to_json()
        out["hyperplane_matrix"] = [list(r) for r in self.hyperplane_matrix]
        out["det"] = str(self.det_a)
        out["volumes"] = {
            ",".join(map(str, sorted(A))): str(normalized_volume(self, A))
            for A in _all_subsets(self.n + 1)
        }
        out["zeta_degree"] = str(zeta_degree(self))
        return out


NonSimplexReport = Polytope


def _all_subsets(m):
    for size in range(m + 1):
        for c in combinations(range(m), size):
            yield frozenset(c)


def _hyperplanes(vertices):
    n = len(vertices) - 1
    lifted = [(1,) + tuple(v) for v in vertices]
    rows = []
    for i in range(n + 1):
        others = [lifted[j] for j in range(n + 1) if j != i]
        (normal,) = la.nullspace(others, n + 1)
        if sum(a * b for a, b in zip(normal, lifted[i])) < 0:
            normal = [-x for x in normal]
        rows.append(tuple(normal))
    return rows, la.det(rows)


def newton_polytope(f):
    """Delta(f); a SimplexGeometry when Delta is an n-simplex, else a plain Polytope."""
    P = Polytope(f.n, f.support)
    if P.is_simplex:
        return SimplexGeometry(f.n, f.support)
    return P


def hyperplanes(geo):
    """(hyperplane_matrix, det) for an n-simplex; rows oriented positive on (1, v_i)."""
    if not geo.full_dimensional:
        raise DegeneratePolytope(f"dim Delta = {geo.dim} < n = {geo.n}")
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("hyperplanes are defined for simplices only")
    return geo.hyperplane_matrix, geo.det_a


def check_p_det(geo, p):
    _, d = hyperplanes(geo)
    return d % p != 0


def _resolve_face(geo, face):
    if isinstance(face, Face):
        return face
    if isinstance(geo, SimplexGeometry):
        return geo.face_of(face)
    raise NotAFace("faces of a non-simplex must be Face objects")


def normalized_volume(geo, face):
    """d! * Vol_d of the face (equivalently of the cone section over it), in its own lattice.

    ``face`` is a Face or, for a simplex, a subset A of S; A = S (the cone's
    apex) has volume 1 by convention.
    """
    if not isinstance(face, Face) and isinstance(geo, SimplexGeometry) and frozenset(face) == geo.S:
        return 1
    F = _resolve_face(geo, face)
    return _nvol(geo, F)


def _nvol(geo, F):
    cache = geo.__dict__.setdefault("_nvol_cache", {})
    if F.vertices in cache:
        return cache[F.vertices]
    if F.dim == 0:
        vol = 1
    elif len(F.vertices) == F.dim + 1:
        verts = sorted(F.vertices)
        coords = [geo.face_coords(F, geo.vertices[v]) for v in verts]
        vol = abs(la.det([[a - b for a, b in zip(c, coords[0])] for c in coords[1:]]))
    else:
        # pyramid decomposition from the first vertex over the facets avoiding it
        verts = sorted(F.vertices)
        apex = geo.face_coords(F, geo.vertices[verts[0]])
        vol = 0
        for G in geo.subfaces(F):
            if G.dim != F.dim - 1 or verts[0] in G.vertices:
                continue
            gv = sorted(G.vertices)
            gc = [geo.face_coords(F, geo.vertices[v]) for v in gv]
            diffs = [[a - b for a, b in zip(c, gc[0])] for c in gc[1:]]
            (normal,) = la.nullspace(diffs, F.dim) if diffs else [[1]]
            height = abs(sum(a * (b - c) for a, b, c in zip(normal, apex, gc[0])))
            vol += height * _nvol(geo, G)
    cache[F.vertices] = vol
    return vol


def zeta_degree(geo):
    """Alternating sum over C ⊆ S of (n+1-|C|)! Vol(x0 f_C)."""
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("the degree formula needs a simplex")
    return sum((-1) ** len(C) * normalized_volume(geo, C) for C in _all_subsets(geo.n + 1))


def lattice_points(geo, r, off=None):
    """Lattice points (r, m) of the cone at height r, i.e. m in r*Delta.

    ``off`` is an optional collection of cone-form indices (hyperplanes H_j for
    a simplex); points lying on any of them are dropped. Output is
    lexicographically sorted.
    """
    if not geo.full_dimensional:
        raise DegeneratePolytope(f"dim Delta = {geo.dim} < n = {geo.n}")
    n = geo.n
    if n == 0:
        # a point: one monomial per degree, lying on every (empty) constraint
        return [] if off and r == 0 else [(r,)]
    if r == 0:
        pts = [(0,) * (n + 1)]
    else:
        V = np.array(geo.vertices, dtype=np.int64).reshape(-1, n)
        lo, hi = r * V.min(axis=0), r * V.max(axis=0)
        grids = np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij")
        M = np.stack([g.ravel() for g in grids], axis=1) if n else np.zeros((1, 0), dtype=np.int64)
        W = np.array(geo.cone_forms, dtype=np.int64)
        vals = r * W[:, 0][None, :] + M @ W[:, 1:].T
        keep = np.all(vals >= 0, axis=1)
        pts = [(r,) + tuple(int(x) for x in m) for m in M[keep]]
    if off:
        W = geo.cone_forms
        pts = [u for u in pts if all(sum(a * b for a, b in zip(W[j], u)) != 0 for j in off)]
    return sorted(pts)


def in_monoid(geo, point):
    return all(sum(a * b for a, b in zip(w, point)) >= 0 for w in geo.cone_forms)
