"""Exhaustive point counts, exponential sums in Z[zeta_p], and L-series.

Counting is the oracle for everything downstream, so nothing here is
sub-exhaustive: every torus point of F_{q^k}^d is visited by the kernels.
Counts of f and of f + c share one value histogram, which makes sweeps over
a constant term (the Dwork pencil) cost a single enumeration per k.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from . import _kernels_py
from .errors import BudgetExceeded, EmptyRestriction, NonIntegral, NotSimplex
from .geometry import SimplexGeometry, newton_polytope
from .laurent import LaurentPoly, monomial_substitution, restrict_to_face

DEFAULT_BUDGET = 10**9


class CycloInt:
    """An element sum c_i zeta^i (0 <= i <= p-2) of Z[zeta_p].

    The basis 1, zeta, ..., zeta^(p-2) is canonical because
    1 + zeta + ... + zeta^(p-1) = 0. For p = 2 this is just Z.
    """

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) < p:
            coeffs += [0] * (p - len(coeffs))
        # fold zeta^(p-1) = -(1 + ... + zeta^(p-2))
        top = coeffs[p - 1] if p > 1 else 0
        self.p = p
        self.coeffs = tuple(int(c) - top for c in coeffs[: p - 1])

    @classmethod
    def from_int(cls, p, n):
        return cls(p, [n])

    @classmethod
    def zeta_power(cls, p, i):
        c = [0] * p
        c[i % p] = 1
        return cls(p, c)

    @classmethod
    def from_histogram(cls, p, hist):
        """sum_t hist[t] zeta^t for a histogram over F_p."""
        return cls(p, list(hist))

    def _full(self):
        return list(self.coeffs) + [0] * (self.p - len(self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        return CycloInt(self.p, [a + b for a, b in zip(self._full(), other._full())])

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.p, [-a for a in self._full()])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self._full()):
            if a:
                for j, b in enumerate(other._full()):
                    if b:
                        out[(i + j) % p] += a * b
        return CycloInt(p, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, CycloInt):
            if other.p != self.p:
                raise ValueError("mixing cyclotomic rings")
            return other
        return CycloInt.from_int(self.p, int(other))

    def exact_div(self, m):
        """Divide by a nonzero integer; raises NonIntegral when not exact."""
        if any(c % m for c in self.coeffs):
            raise NonIntegral(f"{self} is not divisible by {m}")
        return CycloInt(self.p, [c // m for c in self.coeffs])

    @property
    def is_integer(self):
        return all(c == 0 for c in self.coeffs[1:])

    def to_int(self):
        if not self.is_integer:
            raise NonIntegral(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycloInt.from_int(self.p, other)
        return isinstance(other, CycloInt) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"CycloInt(p={self.p}: {' + '.join(terms) or '0'})"


# -- budget and thread configuration --

def default_threads():
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def check_budget(points, budget=None, what="enumeration"):
    budget = DEFAULT_BUDGET if budget is None else budget
    if points > budget:
        raise BudgetExceeded(f"{what} needs {points} point evaluations, budget is {budget}")


# -- kernels on LaurentPoly --

_HIST_CACHE = {}
_HIST_CACHE_MAX = 64
_HIST_CACHE_MAX_FIELD = 1 << 20


def _encode(f, tower, k):
    """Discrete-log encoding of f's terms in F_{q^k}: (consts, exps)."""
    F = tower.field(k)
    emb = tower.embedding(k)
    log = F.log_table
    consts = np.array([int(log[int(emb[c])]) for _, c in f.terms], dtype=np.int64)
    exps = np.array([j for j, _ in f.terms], dtype=np.int64).reshape(len(f.terms), f.n)
    return consts, exps


def value_histogram(f, tower, k, threads=None, budget=None):
    """Histogram over G_m^n(F_{q^k}) of the values of f (index Q-1 counts zeros)."""
    F = tower.field(k)
    Q = F.order
    M = Q - 1
    check_budget(M**f.n, budget, f"counting over F_{{{tower.q}^{k}}}^{f.n}")
    key = (tower.key, k, f.n, f.terms)
    if key in _HIST_CACHE:
        return _HIST_CACHE[key]
    consts, exps = _encode(f, tower, k)
    zech = np.asarray(F.zech_table, dtype=np.int64)
    threads = threads or default_threads()
    if threads <= 1 or M < 2 * threads or f.n == 0:
        hist = kernels.value_histogram(zech, consts, exps, Q, 0, M)
    else:
        cuts = np.linspace(0, M, threads + 1).astype(int)
        with ThreadPoolExecutor(threads) as pool:
            parts = pool.map(
                lambda ab: kernels.value_histogram(zech, consts, exps, Q, int(ab[0]), int(ab[1])),
                zip(cuts[:-1], cuts[1:]),
            )
            hist = sum(parts)
    if Q <= _HIST_CACHE_MAX_FIELD:
        if len(_HIST_CACHE) >= _HIST_CACHE_MAX:
            _HIST_CACHE.pop(next(iter(_HIST_CACHE)))
        _HIST_CACHE[key] = hist
    return hist


def clear_cache():
    _HIST_CACHE.clear()


def count_torus(f, k, tower, threads=None, budget=None):
    """N_k*(U_f): number of x in G_m^n(F_{q^k}) with f(x) = 0."""
    F = tower.field(k)
    const = f.coeff((0,) * f.n)
    rest = tuple((j, c) for j, c in f.terms if any(j))
    if not rest:
        # a nonzero constant never vanishes
        return 0
    if len(rest) == 1 and not const:
        return 0  # a monomial never vanishes on the torus
    hist = value_histogram(LaurentPoly(f.n, rest, f.field), tower, k, threads, budget)
    if not const:
        return int(hist[F.order - 1])
    target = F.neg(int(tower.embedding(k)[const]))
    return int(hist[int(F.log_table[target])])


def count_zeros_all_constants(f, k, tower, threads=None, budget=None):
    """{c: N_k*(U_{f + c})} for every c in F_q, from one histogram of f's nonconstant part."""
    F = tower.field(k)
    rest = tuple((j, c) for j, c in f.terms if any(j))
    hist = value_histogram(LaurentPoly(f.n, rest, f.field), tower, k, threads, budget)
    emb = tower.embedding(k)
    base_const = f.coeff((0,) * f.n)
    out = {}
    for c in range(tower.q):
        total = tower.base.add(base_const, c)
        v = F.neg(int(emb[total]))
        out[c] = int(hist[F.order - 1 if v == 0 else int(F.log_table[v])])
    return out


def face_polynomial(f, face, geo):
    """f_sigma rewritten on the face torus G_m^(dim sigma), or None when no term lies on sigma."""
    try:
        fs = restrict_to_face(f, face, geo)
    except EmptyRestriction:
        return None
    v0, U, d = geo.face_frame(face)
    return monomial_substitution(fs, U, d, shift=v0)


def count_face(f, face, geo, k, tower, threads=None, budget=None):
    """N_k(U_{f_sigma}) on the torus orbit of the face (the whole orbit if f_sigma = 0)."""
    if face.dim == f.n:
        # the open orbit: counting f itself keeps the constant term constant, so the
        # histogram is shared across f + c
        return count_torus(f, k, tower, threads, budget)
    g = face_polynomial(f, face, geo)
    if g is None:
        return (tower.q**k - 1) ** face.dim
    if g.n == 0:
        return 0
    return count_torus(g, k, tower, threads, budget)


def count_closure(f, k, tower, geo=None, threads=None, budget=None):
    """N_k of the closure of U_f in the toric variety of Delta(f), summed over torus orbits."""
    geo = geo or newton_polytope(f)
    return sum(count_face(f, F, geo, k, tower, threads, budget) for F in geo.faces)


@dataclass
class CountTable:
    q: int
    n: int
    torus: dict = field(default_factory=dict)
    faces: dict = field(default_factory=dict)
    closure: dict = field(default_factory=dict)
    torus_sizes: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "q": str(self.q),
            "n": self.n,
            "torus": {str(k): str(v) for k, v in self.torus.items()},
            "closure": {str(k): str(v) for k, v in self.closure.items()},
            "faces": {
                ",".join(map(str, verts)): {str(k): str(v) for k, v in row.items()}
                for verts, row in self.faces.items()
            },
            "torus_sizes": {str(k): str(v) for k, v in self.torus_sizes.items()},
        }

    @classmethod
    def from_json(cls, data):
        def ints(d):
            return {int(k): int(v) for k, v in d.items()}

        return cls(
            q=int(data["q"]),
            n=data["n"],
            torus=ints(data["torus"]),
            closure=ints(data["closure"]),
            faces={
                tuple(int(x) for x in key.split(",") if x != ""): ints(row)
                for key, row in data["faces"].items()
            },
            torus_sizes=ints(data["torus_sizes"]),
        )


def count_table(f, k_max, tower, geo=None, threads=None, budget=None):
    """Torus, per-face and closure counts for k = 1..k_max."""
    geo = geo or newton_polytope(f)
    check_budget(closure_cost(f, k_max, tower, geo), budget, "closure counts")
    table = CountTable(tower.q, f.n)
    for k in range(1, k_max + 1):
        table.torus[k] = count_torus(f, k, tower, threads, budget)
        table.torus_sizes[k] = (tower.q**k - 1) ** f.n
        total = 0
        for F in geo.faces:
            c = count_face(f, F, geo, k, tower, threads, budget)
            table.faces.setdefault(tuple(sorted(F.vertices)), {})[k] = c
            total += c
        table.closure[k] = total
    return table


def closure_cost(f, k_max, tower, geo=None):
    """Point evaluations needed for closure counts up to k_max (dominated by the top face)."""
    geo = geo or newton_polytope(f)
    return sum((tower.q**k - 1) ** F.dim for k in range(1, k_max + 1) for F in geo.faces if F.dim > 0)


# -- exponential sums --

def _character_sum_of_value(F, v):
    """W(v) = sum over x0 in F* of zeta^Tr(x0 v), as an F_p histogram."""
    if v == 0:
        return CycloInt.from_int(F.p, F.order - 1)
    units = np.arange(1, F.order, dtype=np.int64)
    prods = F.vmul(units, np.full_like(units, v))
    tr = np.asarray(F.trace_table, dtype=np.int64)[prods]
    return CycloInt.from_histogram(F.p, np.bincount(tr, minlength=F.p))


def exp_sum(f, k, tower, method="collapse", threads=None, budget=None):
    """S_k*(x0 f) = sum over (x0, x) in G_m^(n+1)(F_{q^k}) of zeta^Tr(x0 f(x)).

    ``collapse`` uses sum_{x0} zeta^Tr(x0 c) = q^k - 1 or -1; ``grouped``
    evaluates that inner character sum explicitly for each value of f and
    weights it by the value histogram; ``reference`` is the plain double loop.
    """
    F = tower.field(k)
    p = F.p
    Q = F.order
    if f.n == 0:
        # constant polynomial on the one-point torus
        c = int(tower.embedding(k)[f.terms[0][1]]) if f.terms else 0
        return _character_sum_of_value(F, c)
    if method == "collapse":
        N = count_torus(f, k, tower, threads, budget)
        T = (Q - 1) ** f.n
        return CycloInt.from_int(p, N * (Q - 1) - (T - N))
    if method == "grouped":
        hist = value_histogram(f, tower, k, threads, budget)
        total = CycloInt.from_int(p, 0)
        exp = F.exp_table
        for l in range(Q):
            if hist[l]:
                v = 0 if l == Q - 1 else int(exp[l])
                total = total + _character_sum_of_value(F, v) * int(hist[l])
        return total
    if method == "reference":
        M = Q - 1
        check_budget(M ** (f.n + 1), budget, "reference exponential sum")
        consts, exps = _encode(f, tower, k)
        zech = np.asarray(F.zech_table, dtype=np.int64)
        e = _kernels_py._digits(np.arange(M**f.n, dtype=np.int64), M, f.n)
        logs = _kernels_py._poly_values(e, consts % M, exps % M, M, zech)
        vals = np.where(logs < 0, 0, np.asarray(F.exp_table, dtype=np.int64)[np.maximum(logs, 0)])
        trace = np.asarray(F.trace_table, dtype=np.int64)
        hist = np.zeros(p, dtype=np.int64)
        for x0 in range(1, Q):
            hist += np.bincount(trace[F.vmul(np.full_like(vals, x0), vals)], minlength=p)
        return CycloInt.from_histogram(p, hist)
    raise ValueError(f"unknown method {method!r}")


def series_from_sums(sums, p):
    """Coefficients L_0..L_K of exp(sum S_k t^k / k) given sums[k-1] = S_k (CycloInt or int)."""
    sums = [s if isinstance(s, CycloInt) else CycloInt.from_int(p, s) for s in sums]
    L = [CycloInt.from_int(p, 1)]
    for m in range(1, len(sums) + 1):
        acc = CycloInt.from_int(p, 0)
        for k in range(1, m + 1):
            acc = acc + sums[k - 1] * L[m - k]
        L.append(acc.exact_div(m))
    return L


def lfunction_series(f, k_max, tower, method="collapse", threads=None, budget=None):
    """Integer coefficients of L*(x0 f, t) up to t^k_max."""
    sums = [exp_sum(f, k, tower, method, threads, budget) for k in range(1, k_max + 1)]
    return [c.to_int() for c in series_from_sums(sums, tower.p)]


def face_exp_sum(f, A, geo, k, tower, threads=None, budget=None):
    """S_k*(x0 f_A) on the torus of the face A (A = S is the cone apex, where it is 1)."""
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("subset faces need a simplex")
    A = frozenset(A)
    if A == geo.S:
        return 1
    face = geo.face_of(A)
    g = face_polynomial(f, face, geo)
    Qk = tower.q**k
    if g is None:
        return Qk * (Qk - 1) ** face.dim - (Qk - 1) ** face.dim
    if g.n == 0:
        return -1
    return Qk * count_torus(g, k, tower, threads, budget) - (Qk - 1) ** g.n


def face_lseries(f, A, geo, k_max, tower, threads=None, budget=None):
    """Integer coefficients of L*(x0 f_A, t) up to t^k_max."""
    sums = [face_exp_sum(f, A, geo, k, tower, threads, budget) for k in range(1, k_max + 1)]
    return [c.to_int() for c in series_from_sums(sums, tower.p)]


def character_orthogonality(F):
    """sum over t in F of zeta^Tr(t); zero for every finite field."""
    return CycloInt.from_histogram(F.p, np.bincount(np.asarray(F.trace_table), minlength=F.p))
