"""The Dwork pencil X_lambda in P^n and its toric mirror Y_lambda.

X_lambda: x_1^(n+1) + ... + x_(n+1)^(n+1) + lambda x_1 ... x_(n+1) = 0 in P^n.
Y_lambda: closure of g = x_1 + ... + x_n + 1/(x_1 ... x_n) + lambda = 0 in the
toric variety of the simplex conv(e_1, ..., e_n, -(e_1 + ... + e_n)).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .counting import check_budget, closure_cost, count_closure, count_torus
from .errors import NotRegular
from .geometry import newton_polytope, zeta_degree
from .laurent import LaurentPoly


@dataclass(frozen=True)
class DworkInstance:
    n: int
    lam: int  # encoding of lambda in F_q
    tower: object

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("the Dwork family needs n >= 2")

    @property
    def q(self):
        return self.tower.q

    @property
    def field(self):
        return self.tower.base

    @property
    def g(self):
        n = self.n
        coeffs = {tuple(int(i == j) for j in range(n)): 1 for i in range(n)}
        coeffs[(-1,) * n] = 1
        if self.lam:
            coeffs[(0,) * n] = self.lam
        return LaurentPoly.from_dict(n, coeffs, self.field)

    def text(self):
        n = self.n
        parts = [f"x{i}" for i in range(1, n + 1)]
        parts.append("*".join(f"x{i}^-1" for i in range(1, n + 1)))
        if self.lam:
            parts.append(str(self.lam))
        return " + ".join(parts)


def dwork(n, lam, tower):
    """DworkInstance with lambda given as an integer (reduced into F_p) or a field encoding."""
    F = tower.base
    value = F.scalar(lam) if F.d == 1 else int(lam)
    return DworkInstance(n, value, tower)


def stratum_count(d, q):
    """#{1 + x_1 + ... + x_d = 0} in G_m^d(F_q) = ((q-1)^d + (-1)^(d+1)) / q."""
    num = (q - 1) ** d + (-1) ** (d + 1)
    assert num % q == 0, "stratum formula is not integral"
    return num // q


def stratum_count_alternating(d, q):
    """The same count as the alternating binomial sum q^(d-1) - C(d,1) q^(d-2) + ... ."""
    if d == 0:
        return 0
    return sum((-1) ** i * comb(d, i) * q ** (d - 1 - i) for i in range(d))


def face_sum(n, q):
    """sum over nonempty faces sigma of the n-simplex of ((q-1)^dim + (-1)^(dim+1)) / q, exactly."""
    return sum(Fraction(comb(n + 1, d + 1) * ((q - 1) ** d + (-1) ** (d + 1)), q) for d in range(n + 1))


def face_sum_claimed(n, q):
    """The closed form q (q^n - 1) / (q - 1) quoted for the face sum."""
    return Fraction(q * (q**n - 1), q - 1)


def face_sum_without_weight(n, q):
    """The face sum with the 1/q weight dropped; this is the quantity equal to q (q^n - 1)/(q - 1)."""
    return sum(comb(n + 1, d + 1) * ((q - 1) ** d + (-1) ** (d + 1)) for d in range(n + 1))


def dwork_Y_count(inst, threads=None, budget=None):
    """#Y_lambda(F_q) = #Y_(lambda, Delta) - stratum(n) + (q^n - 1)/(q - 1)."""
    q, n = inst.q, inst.n
    top = count_torus(inst.g, 1, inst.tower, threads, budget)
    return top - stratum_count(n, q) + (q**n - 1) // (q - 1)


def dwork_Y_closure(inst, threads=None, budget=None):
    """#Y_lambda(F_q) from the generic toric decomposition."""
    return count_closure(inst.g, 1, inst.tower, threads=threads, budget=budget)


def projective_points(F, n):
    """All points of P^n(F) as an array, first nonzero coordinate normalized to 1."""
    q = F.order
    blocks = []
    for i in range(n + 1):
        free = n - i
        grid = np.indices((q,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((grid.shape[0], n + 1), dtype=np.int64)
        block[:, i] = 1
        block[:, i + 1:] = grid
        blocks.append(block)
    return np.concatenate(blocks)


def dwork_X_count(inst, budget=None):
    """#X_lambda(F_q) by enumerating one representative per projective point."""
    F = inst.field
    n = inst.n
    check_budget((inst.q ** (n + 1) - 1) // (inst.q - 1), budget, f"P^{n}(F_{inst.q})")
    pts = projective_points(F, n)
    total = np.zeros(pts.shape[0], dtype=np.int64)
    prod = np.ones(pts.shape[0], dtype=np.int64)
    for i in range(n + 1):
        total = F.vadd(total, F.vpow(pts[:, i], n + 1))
        prod = F.vmul(prod, pts[:, i])
    total = F.vadd(total, F.vmul(prod, np.full_like(prod, inst.lam)))
    return int(np.count_nonzero(total == 0))


def mirror_congruence(inst, threads=None, budget=None):
    return (dwork_X_count(inst, budget) - dwork_Y_count(inst, threads, budget)) % inst.q == 0


def dwork_trace_formula_check(inst, slack=2, threads=None, budget=None):
    """N_1(Y) = (q^n - 1)/(q - 1) + (-1)^n A_1 / q with A_1 the linear coefficient of P.

    With Tr = -A_1 (the sum of the reciprocal roots of P) this reads
    (q^n - 1)/(q - 1) + (-1)^(n+1) Tr / q. Returns (ok, details).
    """
    from .koszul import regularity_check
    from .zeta import recover_P

    g = inst.g
    geo = newton_polytope(g)
    reg = regularity_check(g, inst.tower, geo=geo, budget=budget)
    if not reg.regular:
        raise NotRegular(f"lambda = {inst.lam} gives a {reg.status} member (witness {reg.witness})")
    P, table = recover_P(g, inst.tower, geo, slack, threads=threads, budget=budget)
    q, n = inst.q, inst.n
    A1 = P[1] if len(P) > 1 else 0
    predicted = Fraction(q**n - 1, q - 1) + Fraction((-1) ** n * A1, q)
    N1 = table.closure[1]
    ok = predicted == N1 and N1 == dwork_Y_count(inst, threads, budget)
    return ok, {"N1": N1, "A1": A1, "predicted": predicted, "P": P}


def sweep(n, tower, lambdas=None, check="all", slack=2, threads=None, budget=None):
    """Rows (lambda, #X, #Y, congruent, regular, P) over the requested lambda values."""
    from .koszul import regularity_check
    from .zeta import recover_P

    lambdas = range(tower.q) if lambdas is None else lambdas
    insts = [DworkInstance(n, lam, tower) for lam in lambdas]
    if check in ("zeta", "all"):
        geo = newton_polytope(insts[0].g)
        D = zeta_degree(geo)
        check_budget(closure_cost(insts[0].g, D + slack, tower, geo), budget, f"zeta counts to k = {D + slack}")
    if check in ("congruence", "all"):
        check_budget((tower.q ** (n + 1) - 1) // (tower.q - 1), budget, f"P^{n}(F_{tower.q})")
        check_budget((tower.q - 1) ** n, budget, "torus count")
    rows = []
    for inst in insts:
        row = {"lambda": inst.lam}
        if check in ("congruence", "all"):
            X = dwork_X_count(inst, budget)
            Y = dwork_Y_count(inst, threads, budget)
            row.update(X=X, Y=Y, congruent=(X - Y) % tower.q == 0)
        if check in ("zeta", "all"):
            g = inst.g
            geo = newton_polytope(g)
            reg = regularity_check(g, tower, geo=geo, budget=budget)
            row["regular"] = reg.status
            if reg.regular:
                P, _ = recover_P(g, tower, geo, slack, threads=threads, budget=budget)
                row["P"] = P
        rows.append(row)
    return rows
