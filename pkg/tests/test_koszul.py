import random

import numpy as np
import pytest

from instances import random_regular_instances, random_simplex_poly
from toriczeta.errors import BadCharacteristic, NotRegular
from toriczeta.ff import FFElem, make_tower
from toriczeta.geometry import lattice_points, newton_polytope, zeta_degree
from toriczeta.koszul import (
    h0_dims,
    hodge_numbers,
    hodge_polygon,
    hyperplane_generators,
    rank_fq,
    regularity_check,
    standard_generators,
)
from toriczeta.laurent import LaurentPoly, parse_laurent

T7 = make_tower(7, 1, 3)
T11 = make_tower(11, 1, 1)


def dwork(n, lam, tower):
    inv = "*".join(f"x{i}^-1" for i in range(1, n + 1))
    return parse_laurent(" + ".join([f"x{i}" for i in range(1, n + 1)] + [inv, str(lam % tower.p)]), tower, n=n)


def scalar_rank(rows, F):
    """Row reduction with scalar FFElem arithmetic."""
    M = [[FFElem(F, int(x)) for x in row] for row in rows]
    zero = FFElem(F, 0)
    r = 0
    for c in range(len(M[0]) if M else 0):
        piv = next((i for i in range(r, len(M)) if M[i][c] != zero), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = FFElem(F, F.inv(M[r][c].value))
        for i in range(len(M)):
            if i != r and M[i][c] != zero:
                t = M[i][c] * inv
                M[i] = [a - t * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


@pytest.mark.parametrize("p,a", [(2, 1), (2, 2), (3, 2), (7, 1), (5, 1)])
def test_rank_matches_scalar_elimination(p, a):
    F = make_tower(p, a, 1).base
    rng = np.random.default_rng(p * 10 + a)
    for shape in [(4, 6), (7, 3), (6, 6), (1, 5)]:
        for density in (0.3, 1.0):
            A = rng.integers(0, F.order, size=shape) * (rng.random(shape) < density)
            assert rank_fq(A, F) == scalar_rank(A.tolist(), F)


def test_rank_invariant_under_extension():
    T = make_tower(2, 1, 2)
    rng = np.random.default_rng(0)
    emb = T.embedding(2)
    for _ in range(20):
        A = rng.integers(0, 2, size=(6, 8))
        assert rank_fq(A, T.base) == rank_fq(emb[A], T.field(2))


def test_dims_dwork_regular():
    g = dwork(2, 3, T7)
    d = h0_dims(g, 4)
    assert d[0] == 1
    assert sum(d[:4]) == 3 and d[4] == 0
    assert h0_dims(g, 4, gens="hyperplane") == d


def test_dims_dwork_singular():
    d = h0_dims(dwork(2, -3, T7), 5)
    assert sum(d[:4]) != 3 or d[4] != 0


def test_regularity_examples():
    assert regularity_check(parse_laurent("1 + x1", make_tower(5, 1, 1))).status == "Regular"
    assert regularity_check(dwork(2, 3, T7), T7).regular
    bad = regularity_check(dwork(2, -3, T7), T7)
    assert bad.status == "NotRegular"
    assert bad.witness is not None


@pytest.mark.parametrize("p", [7, 13])
def test_detector_matches_discriminant(p):
    tower = make_tower(p, 1, 2)
    for lam in range(p):
        classical_singular = (lam**3 + 27) % p == 0
        assert regularity_check(dwork(2, lam, tower), tower).regular != classical_singular


def test_witness_is_a_common_zero():
    g = dwork(2, -3, T7)
    verdict = regularity_check(g, T7)
    wit = verdict.witness
    assert wit["k"] == 1
    x, y = (FFElem(T7.base, v) for v in wit["torus_point"])
    inv = FFElem(T7.base, T7.base.inv((x * y).value))
    lam = FFElem(T7.base, 4)
    # g, x dg/dx, y dg/dy all vanish
    assert x + y + inv + lam == FFElem(T7.base, 0)
    assert x - inv == FFElem(T7.base, 0)
    assert y - inv == FFElem(T7.base, 0)


def test_hodge_examples():
    assert hodge_numbers(dwork(2, 3, T7), tower=T7) == ([0, 1, 1, 0], 2)
    assert hodge_numbers(dwork(3, 0, T7), tower=T7) == ([0, 1, 1, 1, 0], 3)


def test_hodge_refusals():
    T3 = make_tower(3, 1, 1)
    with pytest.raises(BadCharacteristic):
        hodge_numbers(dwork(2, 1, T3), tower=T3)
    with pytest.raises(NotRegular):
        hodge_numbers(dwork(2, -3, T7), tower=T7)


def test_hodge_polygon_examples():
    assert hodge_polygon([0, 1, 1, 0]).vertices == [(0, 0), (1, 1), (2, 3)]
    assert hodge_polygon([0, 1, 1, 0]).raw_vertices == [(0, 0), (0, 0), (1, 1), (2, 3), (2, 3)]
    assert hodge_polygon([0, 1, 1, 1, 0]).vertices == [(0, 0), (1, 1), (2, 3), (3, 6)]


INSTANCES = random_regular_instances(15, T11, seed=21)


@pytest.mark.parametrize("f,geo,h,v", INSTANCES, ids=[str(i[0]) for i in INSTANCES])
def test_hodge_invariants(f, geo, h, v):
    n = f.n
    assert h == h[::-1]
    assert v == zeta_degree(geo)
    assert h[0] == (0 if geo.origin_interior else h[0])
    end = hodge_polygon(h).end
    assert end == (v, (n + 1) * v / 2)


@pytest.mark.parametrize("f,geo,h,v", INSTANCES[:8], ids=[str(i[0]) for i in INSTANCES[:8]])
def test_hodge_independent_of_coefficients(f, geo, h, v):
    rng = random.Random(str(f))
    F = f.field
    seen = 0
    for _ in range(6):
        g = LaurentPoly.from_dict(f.n, {j: rng.randrange(1, F.order) for j in f.support}, F)
        try:
            assert hodge_numbers(g, geo, tower=T11) == (h, v)
            seen += 1
        except NotRegular:
            continue
    assert seen


@pytest.mark.parametrize("seed", range(6))
def test_hyperplane_generators(seed):
    rng = random.Random(seed)
    f, geo = random_simplex_poly(rng, T11, rng.randint(1, 3))
    Fh = hyperplane_generators(f, geo)
    for i, g in enumerate(Fh):
        for j in g:
            assert geo.forms_at((1,) + j)[i] != 0
    if geo.det_a % 11:
        basis = lattice_points(geo, 1)
        idx = {u[1:]: k for k, u in enumerate(basis)}

        def mat(gens):
            M = np.zeros((len(gens), len(basis)), dtype=np.int64)
            for r, g in enumerate(gens):
                for j, c in g.items():
                    M[r, idx[j]] = c
            return M

        S, H = mat(standard_generators(f)), mat(Fh)
        rS = rank_fq(S, T11.base)
        assert rank_fq(H, T11.base) == rS == rank_fq(np.vstack([S, H]), T11.base)


def test_origin_interior_means_h0_zero():
    for f, geo, h, v in INSTANCES:
        if geo.origin_interior:
            assert h[0] == 0
