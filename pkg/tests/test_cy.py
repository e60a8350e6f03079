from fractions import Fraction
from itertools import product

import pytest

from oracles import brute_count
from toriczeta.counting import count_closure, count_torus
from toriczeta.cy import (
    DworkInstance,
    dwork,
    dwork_trace_formula_check,
    dwork_X_count,
    dwork_Y_closure,
    dwork_Y_count,
    face_sum,
    face_sum_claimed,
    face_sum_without_weight,
    mirror_congruence,
    projective_points,
    stratum_count,
    stratum_count_alternating,
    sweep,
)
from toriczeta.errors import NotRegular
from toriczeta.ff import make_tower
from toriczeta.laurent import parse_laurent

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]


def test_stratum_examples():
    assert stratum_count(0, 7) == 0
    assert all(stratum_count(1, q) == 1 for q in PRIME_POWERS)
    assert stratum_count(2, 5) == 3


@pytest.mark.parametrize("d", range(11))
def test_stratum_division_exact(d):
    for q in range(2, 65):
        assert ((q - 1) ** d + (-1) ** (d + 1)) % q == 0
        if d:
            assert stratum_count(d, q) == stratum_count_alternating(d, q)


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_stratum_matches_count(q):
    tower = make_tower(*_pa(q), 1)
    for d in range(1, 4):
        f = parse_laurent(" + ".join(["1"] + [f"x{i}" for i in range(1, d + 1)]), tower, n=d)
        assert count_torus(f, 1, tower) == stratum_count(d, q)
    f = parse_laurent("1 + x1 + x2", tower)
    assert brute_count(f, 1, tower) == stratum_count(2, q)


def _pa(q):
    for p in (2, 3, 5, 7):
        a = 0
        m = q
        while m % p == 0:
            m //= p
            a += 1
        if m == 1:
            return p, a
    raise ValueError(q)


@pytest.mark.parametrize("n", range(1, 5))
def test_face_sums(n):
    for q in PRIME_POWERS:
        assert face_sum(n, q) == Fraction(q**n - 1, q - 1)
        assert face_sum_without_weight(n, q) == face_sum_claimed(n, q)
        # the weighted sum falls short of the unweighted one by exactly the factor q
        assert q * face_sum(n, q) == face_sum_claimed(n, q)


def test_face_sum_counterexample():
    assert face_sum(2, 5) == 6
    assert face_sum_claimed(2, 5) == 30


def test_projective_points_cover():
    F = make_tower(3, 1, 1).base
    pts = projective_points(F, 2)
    assert len(pts) == 13
    # distinct classes: no two rows are scalar multiples
    seen = set()
    for row in pts.tolist():
        cls = frozenset(tuple(F.mul(c, x) for x in row) for c in range(1, 3))
        assert not cls & seen
        seen |= cls


def test_fermat_cubic_over_f4():
    T4 = make_tower(2, 2, 1)
    inst = dwork(2, 0, T4)
    assert dwork_X_count(inst) == 9
    assert mirror_congruence(inst)
    assert dwork_Y_count(inst) == 9


def test_x_count_by_direct_enumeration():
    T5 = make_tower(5, 1, 1)
    F = T5.base
    for lam in range(5):
        affine = sum(
            1
            for x, y, z in product(range(5), repeat=3)
            if (x**3 + y**3 + z**3 + lam * x * y * z) % 5 == 0
        )
        assert dwork_X_count(dwork(2, lam, T5)) == (affine - 1) // 4


@pytest.mark.parametrize("n,q", [(2, 5), (2, 7), (3, 5), (3, 7)])
def test_Y_formula_matches_closure(n, q):
    tower = make_tower(q, 1, 1)
    for lam in range(q):
        inst = dwork(n, lam, tower)
        assert dwork_Y_count(inst) == dwork_Y_closure(inst) == count_closure(inst.g, 1, tower)


@pytest.mark.parametrize("n,p,a", [(2, 2, 2), (2, 5, 1), (2, 7, 1), (3, 5, 1)])
def test_mirror_congruence(n, p, a):
    tower = make_tower(p, a, 1)
    for lam in range(tower.q):
        assert mirror_congruence(DworkInstance(n, lam, tower))


def test_dwork_closure_lambda_zero():
    T7 = make_tower(7, 1, 1)
    inst = dwork(2, 0, T7)
    assert count_closure(inst.g, 1, T7) == dwork_Y_count(inst)


def test_trace_formula():
    T7 = make_tower(7, 1, 4)
    ok, details = dwork_trace_formula_check(dwork(2, 3, T7))
    assert ok
    assert details["N1"] == 9 and details["A1"] == 7
    with pytest.raises(NotRegular):
        dwork_trace_formula_check(dwork(2, -3, T7))


def test_sweep_rows():
    T7 = make_tower(7, 1, 4)
    rows = sweep(2, T7)
    assert len(rows) == 7
    assert all(r["congruent"] for r in rows)
    regular = {r["lambda"] for r in rows if r["regular"] == "Regular"}
    assert regular == {0, 3, 5, 6}
    for r in rows:
        if "P" in r:
            assert len(r["P"]) == 3 and r["P"][2] == 343


def test_instance_validation():
    with pytest.raises(ValueError):
        DworkInstance(1, 0, make_tower(5, 1, 1))
    inst = dwork(3, 2, make_tower(5, 1, 1))
    assert inst.text() == "x1 + x2 + x3 + x1^-1*x2^-1*x3^-1 + 2"
    assert parse_laurent(inst.text(), inst.tower) == inst.g
