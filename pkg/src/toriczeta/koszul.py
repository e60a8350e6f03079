"""Graded linear algebra in the polytope ring S_Delta over F_q.

The ring has the monomial basis x0^r x^m for lattice points (r, m) of the cone
over 1 x Delta, graded by r. Multiplying by a degree-one element is a sparse
map between consecutive graded pieces, and the dimensions of the Koszul H_0
are graded coranks of these maps. Ranks are exact over F_q.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .counting import check_budget, face_polynomial
from .errors import BadCharacteristic, BudgetExceeded, DegreeOverflow, NotRegular, NotSimplex, ZeroPolynomial
from .geometry import Polytope, SimplexGeometry, lattice_points, newton_polytope, normalized_volume
from .laurent import log_derivative

MAX_MATRIX_ENTRIES = 5 * 10**7


@dataclass
class GradedPiece:
    degree: int
    basis: list

    @property
    def dim(self):
        return len(self.basis)

    def index(self):
        return {u: i for i, u in enumerate(self.basis)}


def rank_fq(A, F):
    """Rank of an integer-encoded matrix over the field F (rows are reduced in place)."""
    A = np.array(A, dtype=np.int64, copy=True)
    if A.size == 0:
        return 0
    nrows, ncols = A.shape
    r = 0
    prime = F.d == 1
    p = F.p
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if below.size:
            if prime:
                inv = pow(int(A[r, c]), p - 2, p)
                factors = (A[below, c] * inv) % p
                A[below, c:] = (A[below, c:] - factors[:, None] * A[r, c:][None, :]) % p
            else:
                inv = F.inv(int(A[r, c]))
                factors = F.vmul(A[below, c], inv)
                A[below, c:] = F.vsub(A[below, c:], F.vmul(factors[:, None], A[r, c:][None, :]))
        r += 1
    return r


# -- generators --

def standard_generators(f):
    """F_0 = x0 f and F_i = x_i d(x0 f)/dx_i as {exponent j: coefficient} maps (degree one)."""
    F = f.field
    gens = [dict(f.terms)]
    for i in range(f.n):
        g = {j: F.mul(F.scalar(j[i]), c) for j, c in f.terms}
        gens.append({j: c for j, c in g.items() if c})
    return gens


def hyperplane_generators(f, geo):
    """F_{H_i} = sum_j a_ij F_j: coefficient of x^j is <row_i, (1, j)> a_j."""
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("hyperplane generators need a simplex")
    F = f.field
    gens = []
    for row in geo.hyperplane_matrix:
        g = {}
        for j, c in f.terms:
            w = sum(a * b for a, b in zip(row, (1,) + tuple(j)))
            v = F.mul(F.scalar(w), c)
            if v:
                g[j] = v
        gens.append(g)
    return gens


def _multiplication_matrix(gens, sources, target, F):
    """Columns G * x^u for each generator G and source u, in the target basis."""
    tindex = target.index()
    cols = []
    for g in gens:
        for u in sources:
            col = {}
            for j, c in g.items():
                w = (u[0] + 1,) + tuple(a + b for a, b in zip(u[1:], j))
                col[tindex[w]] = c
            cols.append(col)
    M = np.zeros((target.dim, len(cols)), dtype=np.int64)
    for ci, col in enumerate(cols):
        for ri, c in col.items():
            M[ri, ci] = c
    return M


def h0_dims(f, r_max, gens="standard", geo=None, max_entries=MAX_MATRIX_ENTRIES):
    """d_r = dim S^r - rank(sum_i G_i S^(r-1) -> S^r) for r = 0..r_max."""
    geo = geo or newton_polytope(f)
    G = hyperplane_generators(f, geo) if gens == "hyperplane" else standard_generators(f)
    return _h0_dims(G, geo, r_max, f.field, max_entries)


def _h0_dims(G, geo, r_max, F, max_entries=MAX_MATRIX_ENTRIES):
    dims = []
    prev = None
    for r in range(r_max + 1):
        piece = GradedPiece(r, lattice_points(geo, r))
        if r == 0:
            dims.append(piece.dim)
        else:
            if piece.dim * len(G) * len(prev.basis) > max_entries:
                raise BudgetExceeded(f"degree-{r} Koszul matrix exceeds {max_entries} entries")
            M = _multiplication_matrix(G, prev.basis, piece, F)
            dims.append(piece.dim - rank_fq(M, F))
        prev = piece
    return dims


# -- regularity --

@dataclass
class FaceReport:
    vertices: tuple
    dim: int
    volume: int
    dims: list
    passed: bool
    A: tuple = None

    def to_json(self):
        out = {
            "vertices": list(self.vertices),
            "dim": self.dim,
            "volume": str(self.volume),
            "dims": [str(d) for d in self.dims],
            "passed": self.passed,
        }
        if self.A is not None:
            out["A"] = list(self.A)
        return out


@dataclass
class Regularity:
    """Three-valued verdict: 'Regular', 'NotRegular' or 'Inconclusive'."""

    status: str
    faces: list = field(default_factory=list)
    failed_face: tuple = None
    witness: dict = None
    reason: str = ""

    @property
    def regular(self):
        return self.status == "Regular"

    def __bool__(self):
        return self.regular

    def to_json(self):
        return {
            "status": self.status,
            "reason": self.reason,
            "failed_face": list(self.failed_face) if self.failed_face is not None else None,
            "witness": self.witness,
            "faces": [r.to_json() for r in self.faces],
        }


def face_geometry(geo, face):
    """The face as a full-dimensional polytope in its own lattice coordinates (v0 at the origin)."""
    return Polytope(face.dim, [geo.face_coords(face, geo.vertices[v]) for v in sorted(face.vertices)])


def face_dims(f, face, geo, degree_margin=None, max_entries=MAX_MATRIX_ENTRIES):
    """(dims, volume) of the standard Koszul H_0 for f restricted to a face, or None if f_sigma = 0."""
    g = face_polynomial(f, face, geo)
    if g is None:
        return None
    d = face.dim
    margin = d + 2 if degree_margin is None else degree_margin
    vol = normalized_volume(geo, face)
    if d == 0:
        # a nonzero constant: S^r is one-dimensional and x0 c fills everything above degree 0
        return [1] + [0] * (1 + margin), vol
    fgeo = face_geometry(geo, face)
    return _h0_dims(standard_generators(g), fgeo, d + 1 + margin, f.field, max_entries), vol


def find_witness(f, face, geo, tower, k_max=3, budget=None, max_witnesses=1):
    """Search F_{q^k}, k <= k_max, for a common torus zero of f_sigma and its log-derivatives."""
    g = face_polynomial(f, face, geo)
    if g is None:
        return {"k": 1, "point": None, "note": "f vanishes identically on the face"}
    if g.n == 0:
        return None
    polys = [g]
    for i in range(1, g.n + 1):
        try:
            polys.append(log_derivative(g, i))
        except ZeroPolynomial:
            pass  # identically zero: no condition
    for k in range(1, k_max + 1):
        try:
            F = tower.field(k)
            check_budget((F.order - 1) ** g.n, budget, "witness search")
        except (DegreeOverflow, BudgetExceeded):
            break
        emb = tower.embedding(k)
        log = F.log_table
        consts, exps, offsets = [], [], [0]
        for h in polys:
            for j, c in h.terms:
                consts.append(int(log[int(emb[c])]))
                exps.append(j)
            offsets.append(len(consts))
        zech = np.asarray(F.zech_table, dtype=np.int64)
        count, wit = kernels.common_zeros(
            zech,
            np.array(consts, dtype=np.int64),
            np.array(exps, dtype=np.int64).reshape(len(consts), g.n),
            np.array(offsets, dtype=np.int64),
            F.order,
            max_witnesses,
        )
        if count:
            e = [int(x) for x in wit[0]]
            out = {"k": k, "point": [int(F.exp_table[x]) for x in e], "count": int(count), "face_coordinates": True}
            if face.dim == geo.n:
                # z^(U j) = x^j  =>  log x_k = sum_i U[i][k] log z_i
                _, U, _ = geo.face_frame(face)
                M = F.order - 1
                logs = [sum(U[i][kk] * e[i] for i in range(g.n)) % M for kk in range(geo.n)]
                out["torus_point"] = [int(F.exp_table[x]) for x in logs]
            return out
    return None


def regularity_check(f, tower=None, degree_margin=None, geo=None, witness_k=3, max_entries=MAX_MATRIX_ENTRIES, budget=None):
    """Decide Delta-regularity facewise from Koszul dimension patterns.

    A face passes when the dimensions up to degree dim+1 sum to the face's
    normalized volume and vanish on the window [dim+2, dim+1+margin]. On
    failure a brute-force common-zero witness is searched for as corroboration.
    """
    geo = geo or newton_polytope(f)
    if not geo.full_dimensional:
        return Regularity("NotRegular", reason=f"dim Delta = {geo.dim} < n = {geo.n}")
    reports = []
    inconclusive = None
    for face in geo.faces:
        key = tuple(sorted(face.vertices))
        A = tuple(sorted(face.A)) if face.A is not None else None
        try:
            res = face_dims(f, face, geo, degree_margin, max_entries)
        except BudgetExceeded as exc:
            inconclusive = inconclusive or (key, str(exc))
            continue
        if res is None:
            reports.append(FaceReport(key, face.dim, normalized_volume(geo, face), [], False, A))
            return Regularity(
                "NotRegular", reports, key,
                {"k": 1, "point": None, "note": "f vanishes identically on the face"},
                "empty restriction",
            )
        dims, vol = res
        d = face.dim
        ok = sum(dims[: d + 2]) == vol and not any(dims[d + 2:])
        reports.append(FaceReport(key, d, vol, dims, ok, A))
        if not ok:
            wit = find_witness(f, face, geo, tower, witness_k, budget) if tower is not None else None
            return Regularity("NotRegular", reports, key, wit, "dimension pattern failed")
    if inconclusive:
        return Regularity("Inconclusive", reports, inconclusive[0], None, inconclusive[1])
    return Regularity("Regular", reports)


# -- Hodge numbers --

def interior_piece(geo, r):
    return GradedPiece(r, lattice_points(geo, r, off=range(geo.n + 1)))


def hodge_numbers(f, geo=None, check_regular=True, margin=2, tower=None):
    """h(0..n+1) of the interior quotient and v(Delta) = sum h(r)."""
    geo = geo or newton_polytope(f)
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("Hodge numbers need a simplex")
    F = f.field
    if geo.det_a % F.p == 0:
        raise BadCharacteristic(f"p = {F.p} divides det(a_ij) = {geo.det_a}")
    if check_regular:
        verdict = regularity_check(f, tower, geo=geo)
        if not verdict.regular:
            raise NotRegular(f"f is not Delta-regular ({verdict.status}: {verdict.reason})")
    G = hyperplane_generators(f, geo)
    n = geo.n
    S = range(n + 1)
    h = []
    for r in range(n + 2 + margin):
        target = interior_piece(geo, r)
        if r == 0 or target.dim == 0:
            h.append(target.dim)
            continue
        tindex = target.index()
        cols = []
        for i in S:
            sources = lattice_points(geo, r - 1, off=[j for j in S if j != i])
            for u in sources:
                col = {}
                for j, c in G[i].items():
                    w = (r,) + tuple(a + b for a, b in zip(u[1:], j))
                    assert w in tindex, "F_H_i x^u left the interior"
                    col[tindex[w]] = c
                cols.append(col)
        M = np.zeros((target.dim, len(cols)), dtype=np.int64)
        for ci, col in enumerate(cols):
            for ri, c in col.items():
                M[ri, ci] = c
        h.append(target.dim - rank_fq(M, F))
    if any(h[n + 2:]):
        raise NotRegular(f"interior quotient does not vanish above degree {n + 1}: {h}")
    h = h[: n + 2]
    return h, sum(h)


def hodge_polygon(h):
    """Vertices (sum_{k<=m} h(k), sum_{k<=m} k h(k)) for m = 0..len(h)-1, plus the cleaned polygon."""
    from .zeta import Polygon

    raw = [(0, 0)]
    x = y = 0
    for k, hk in enumerate(h):
        x += hk
        y += k * hk
        raw.append((x, y))
    return Polygon.from_points(raw, raw_vertices=raw)
