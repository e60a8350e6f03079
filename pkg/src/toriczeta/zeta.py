"""Zeta function of the toric closure: P(t) recovery, product identity, polygons."""

from dataclasses import dataclass, field
from fractions import Fraction

from . import series
from .counting import CountTable, closure_cost, check_budget, count_table, face_lseries
from .errors import DegreeMismatch, NonIntegral, NotRegular, NotSimplex, WidthMismatch, BadCharacteristic
from .geometry import SimplexGeometry, _all_subsets, newton_polytope, normalized_volume, zeta_degree
from .ff import prime_power


def _frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _unfrac(s):
    return Fraction(s)


@dataclass
class Polygon:
    """A lower-convex polygon given by exact rational vertices, starting at (0, 0)."""

    vertices: list
    raw_vertices: list = None

    @classmethod
    def from_points(cls, points, raw_vertices=None):
        """Lower convex hull of the points (sorted by x; the lowest y kept per x)."""
        best = {}
        for x, y in points:
            x, y = Fraction(x), Fraction(y)
            if x not in best or y < best[x]:
                best[x] = y
        pts = sorted(best.items())
        hull = []
        for P in pts:
            while len(hull) >= 2:
                (x1, y1), (x2, y2) = hull[-2], hull[-1]
                # drop the middle point unless it lies strictly below the chord
                if (y2 - y1) * (P[0] - x1) >= (P[1] - y1) * (x2 - x1):
                    hull.pop()
                else:
                    break
            hull.append(P)
        raw = [(Fraction(x), Fraction(y)) for x, y in raw_vertices] if raw_vertices is not None else None
        return cls(hull, raw)

    @property
    def width(self):
        return self.vertices[-1][0]

    @property
    def end(self):
        return self.vertices[-1]

    def slopes(self):
        return [(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:])]

    def height_at(self, x):
        x = Fraction(x)
        for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:]):
            if x1 <= x <= x2:
                return y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        if len(self.vertices) == 1 and x == self.vertices[0][0]:
            return self.vertices[0][1]
        raise ValueError(f"x = {x} outside the polygon")

    def to_json(self):
        out = {"vertices": [[_frac(x), _frac(y)] for x, y in self.vertices]}
        if self.raw_vertices is not None:
            out["raw_vertices"] = [[_frac(x), _frac(y)] for x, y in self.raw_vertices]
        return out

    @classmethod
    def from_json(cls, data):
        raw = data.get("raw_vertices")
        return cls(
            [(_unfrac(x), _unfrac(y)) for x, y in data["vertices"]],
            [(_unfrac(x), _unfrac(y)) for x, y in raw] if raw is not None else None,
        )


def valuation(n, p):
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def newton_polygon(P, q):
    """Lower hull of (m, ord_q A_m) over the nonzero coefficients of P."""
    p, a = prime_power(q)
    pts = [(m, Fraction(valuation(A, p), a)) for m, A in enumerate(P) if A != 0]
    return Polygon.from_points(pts)


def compare_polygons(newton, hodge, n):
    """NP on or above HP at every integer abscissa, and both ending at (v, (n+1)v/2)."""
    if newton.width != hodge.width:
        raise WidthMismatch(f"deg P = {newton.width} but v(Delta) = {hodge.width}")
    v = hodge.width
    above = all(newton.height_at(x) >= hodge.height_at(x) for x in range(int(v) + 1))
    target = (Fraction(v), Fraction(n + 1) * v / 2)
    ends = newton.end == target and hodge.end == target
    return {"np_above_hp": above, "endpoints_coincide": ends}


def closure_zeta_shifted(closure_counts, q, n, order):
    """Z(closure, qt) * prod_{i=1..n} (1 - q^i t) to the given order."""
    Z = series.exp_of_counts([closure_counts[k] for k in range(1, order + 1)], scale=q)
    return series.mul(Z, series.poly_product([[1, -(q**i)] for i in range(1, n + 1)], order), order)


def recover_P(f, tower, geo=None, slack=2, table=None, threads=None, budget=None):
    """Integer coefficients A_0..A_D of P(t), and the CountTable used.

    Counts are taken to k = D + slack so that a nonzero coefficient past D
    (DegreeMismatch) is detected rather than truncated away.
    """
    geo = geo or newton_polytope(f)
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("P(t) recovery needs a simplex")
    n = f.n
    if n < 1:
        raise ValueError("n >= 1 required")
    D = zeta_degree(geo)
    K = D + slack
    if table is None or max(table.closure, default=0) < K:
        check_budget(closure_cost(f, K, tower, geo), budget, f"closure counts to k = {K}")
        table = count_table(f, K, tower, geo, threads, budget)
    Q = closure_zeta_shifted(table.closure, tower.q, n, K)
    P = series.power(Q, (-1) ** n, K)
    if any(P[m] != 0 for m in range(D + 1, K + 1)):
        raise DegreeMismatch(f"coefficients past degree {D} do not vanish: {[str(c) for c in P[D + 1:]]}")
    ints = series.as_integers(P[: D + 1])
    if ints is None:
        raise NonIntegral(f"P has non-integral coefficients {[str(c) for c in P[:D + 1]]}")
    assert ints[0] == 1
    return ints, table


def face_l_exponent(n, A):
    return -1 if (n - len(A)) % 2 else 1


def face_polynomial_series(f, A, geo, tower, slack=2, threads=None, budget=None):
    """L*(x0 f_A, t)^((-1)^(n-|A|)) to order NV_A + slack, and whether it stops at degree NV_A."""
    vol = normalized_volume(geo, A)
    order = vol + slack
    L = face_lseries(f, A, geo, order, tower, threads, budget)
    S = series.power(L, face_l_exponent(f.n, A), order)
    ok = all(c == 0 for c in S[vol + 1:])
    return [int(c) if c.denominator == 1 else c for c in S], vol, ok


def product_identity_sides(f, order, tower, geo=None, table=None, threads=None, budget=None):
    """(LHS, RHS) with LHS = Z(closure, qt) prod(1 - q^i t) and RHS = prod over A of L*(x0 f_A, t)."""
    geo = geo or newton_polytope(f)
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex("the product identity is stated for simplices")
    if order == 0:
        return [Fraction(1)], [Fraction(1)]
    if table is None or max(table.closure, default=0) < order:
        table = count_table(f, order, tower, geo, threads, budget)
    lhs = closure_zeta_shifted(table.closure, tower.q, f.n, order)
    rhs = series.poly_product(
        [face_lseries(f, A, geo, order, tower, threads, budget) for A in _all_subsets(f.n + 1)], order
    )
    return lhs, rhs


def verify_product_identity(f, order, tower, geo=None, table=None, threads=None, budget=None):
    lhs, rhs = product_identity_sides(f, order, tower, geo, table, threads, budget)
    return lhs == rhs


VERDICTS = ("degree_ok", "integrality_ok", "product_identity_ok", "np_above_hp", "endpoints_coincide")


@dataclass
class ZetaReport:
    poly: str
    p: int
    a: int
    n: int
    D: int
    counts: CountTable
    P: list = None
    exponent: int = 1
    regularity: str = ""
    p_divides_det: bool = False
    h: list = None
    v: int = None
    newton: Polygon = None
    hodge: Polygon = None
    product_lhs: list = None
    product_rhs: list = None
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def q(self):
        return self.p**self.a

    def compute_verdicts(self):
        """Verdicts derived from the stored data alone (None means the claim is refused)."""
        out = {}
        out["integrality_ok"] = self.P is not None
        out["degree_ok"] = (
            self.P is not None and len(self.P) - 1 == self.D and self.P[-1] != 0 and (self.v is None or self.v == self.D)
        )
        if self.product_lhs is not None:
            lhs = closure_zeta_shifted(self.counts.closure, self.q, self.n, len(self.product_lhs) - 1)
            out["product_identity_ok"] = lhs == self.product_lhs == self.product_rhs
        else:
            out["product_identity_ok"] = None
        if self.P is not None and self.h is not None:
            newton = newton_polygon(self.P, self.q)
            hodge = _hodge_polygon(self.h)
            try:
                out.update(compare_polygons(newton, hodge, self.n))
            except WidthMismatch:
                out.update(np_above_hp=False, endpoints_coincide=False)
        else:
            out.update(np_above_hp=None, endpoints_coincide=None)
        return out

    def reverify(self):
        return self.compute_verdicts() == self.verdicts

    @property
    def all_ok(self):
        return all(self.verdicts.get(k) is True for k in VERDICTS)

    def to_json(self):
        def ser(s):
            return None if s is None else [_frac(c) for c in s]

        return {
            "poly": self.poly,
            "field": {"p": str(self.p), "a": str(self.a), "q": str(self.q)},
            "n": self.n,
            "D": str(self.D),
            "exponent": self.exponent,
            "regularity": self.regularity,
            "p_divides_det": self.p_divides_det,
            "counts": self.counts.to_json(),
            "P": None if self.P is None else [str(c) for c in self.P],
            "h": None if self.h is None else [str(c) for c in self.h],
            "v": None if self.v is None else str(self.v),
            "newton": None if self.newton is None else self.newton.to_json(),
            "hodge": None if self.hodge is None else self.hodge.to_json(),
            "product_lhs": ser(self.product_lhs),
            "product_rhs": ser(self.product_rhs),
            "verdicts": dict(self.verdicts),
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data):
        def des(s):
            return None if s is None else [Fraction(c) for c in s]

        return cls(
            poly=data["poly"],
            p=int(data["field"]["p"]),
            a=int(data["field"]["a"]),
            n=data["n"],
            D=int(data["D"]),
            counts=CountTable.from_json(data["counts"]),
            P=None if data["P"] is None else [int(c) for c in data["P"]],
            exponent=data["exponent"],
            regularity=data["regularity"],
            p_divides_det=data["p_divides_det"],
            h=None if data["h"] is None else [int(c) for c in data["h"]],
            v=None if data["v"] is None else int(data["v"]),
            newton=None if data["newton"] is None else Polygon.from_json(data["newton"]),
            hodge=None if data["hodge"] is None else Polygon.from_json(data["hodge"]),
            product_lhs=des(data["product_lhs"]),
            product_rhs=des(data["product_rhs"]),
            verdicts=dict(data["verdicts"]),
            notes=list(data["notes"]),
        )


def _hodge_polygon(h):
    from .koszul import hodge_polygon

    return hodge_polygon(h)


def analyze(f, tower, slack=2, degree_margin=None, threads=None, budget=None, text=None):
    """Run geometry, regularity, counts, P(t), the product identity and the polygon comparison."""
    from .koszul import hodge_numbers, regularity_check

    geo = newton_polytope(f)
    if not isinstance(geo, SimplexGeometry):
        raise NotSimplex(f"Delta(f) is not an {f.n}-simplex (it has {len(geo.vertices)} vertices, dim {geo.dim})")
    D = zeta_degree(geo)
    K = D + slack
    check_budget(closure_cost(f, K, tower, geo), budget, f"closure counts to k = {K}")
    reg = regularity_check(f, tower, degree_margin=degree_margin, geo=geo, budget=budget)
    table = count_table(f, K, tower, geo, threads, budget)
    report = ZetaReport(
        poly=text or str(f), p=tower.p, a=tower.a, n=f.n, D=D, counts=table,
        exponent=(-1) ** f.n, regularity=reg.status, p_divides_det=geo.det_a % tower.p == 0,
    )
    try:
        report.P, _ = recover_P(f, tower, geo, slack, table, threads, budget)
    except (DegreeMismatch, NonIntegral) as exc:
        report.notes.append(f"{exc.code}: {exc}")
    report.product_lhs, report.product_rhs = product_identity_sides(f, K, tower, geo, table, threads, budget)
    if report.p_divides_det:
        report.notes.append(f"p = {tower.p} divides det(a_ij) = {geo.det_a}: polygon claims refused")
    elif not reg.regular:
        report.notes.append(f"regularity {reg.status}: polygon claims refused")
    else:
        report.h, report.v = hodge_numbers(f, geo, check_regular=False)
        report.hodge = _hodge_polygon(report.h)
        if report.P is not None:
            report.newton = newton_polygon(report.P, tower.q)
    report.verdicts = report.compute_verdicts()
    return report
