"""Laurent polynomials over F_q: parsing, printing, evaluation, restriction."""

import re
from dataclasses import dataclass

from .errors import BadVariable, EmptyRestriction, PolySyntaxError, WrongField, ZeroCoordinate, ZeroPolynomial
from .ff import FFElem, GF

MAX_EXPONENT = 64


@dataclass(frozen=True)
class LaurentPoly:
    """f = sum a_j x^j with nonzero coefficients a_j in the base field.

    ``terms`` is a tuple of ``(exponent_vector, coefficient)`` pairs in
    first-appearance order; coefficients are integer encodings in ``field``.
    """

    n: int
    terms: tuple
    field: GF

    def __post_init__(self):
        if not self.terms:
            raise ZeroPolynomial("polynomial has no terms")
        seen = set()
        for j, c in self.terms:
            if len(j) != self.n:
                raise BadVariable(f"exponent {j} has wrong length for n={self.n}")
            if c == 0:
                raise ValueError("stored coefficient is zero")
            if j in seen:
                raise ValueError(f"duplicate exponent {j}")
            seen.add(j)

    @classmethod
    def from_dict(cls, n, coeffs, field):
        """Build from {exponent: coefficient}, dropping zeros (raises ZeroPolynomial if empty)."""
        terms = tuple((tuple(int(e) for e in j), int(c)) for j, c in coeffs.items() if int(c) != 0)
        return cls(n, terms, field)

    @property
    def support(self):
        return [j for j, _ in self.terms]

    def coeff(self, j):
        for e, c in self.terms:
            if e == tuple(j):
                return c
        return 0

    def as_dict(self):
        return dict(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        if other.n != self.n or other.field != self.field:
            raise WrongField("incompatible polynomials")
        out = dict(self.terms)
        for j, c in other.terms:
            out[j] = self.field.add(out.get(j, 0), c)
        return LaurentPoly.from_dict(self.n, out, self.field)

    def scale(self, c):
        return LaurentPoly.from_dict(self.n, {j: self.field.mul(a, c) for j, a in self.terms}, self.field)

    def __str__(self):
        return to_text(self)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(\^)\s*([+-]?\d+)|([+\-*]))")


def parse_laurent(text, field, n=None, max_exponent=MAX_EXPONENT):
    """Parse ``text`` into a LaurentPoly over ``field``.

    Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := 'x' index ['^' signed-int] | unsigned-int. A leading sign is
    accepted. Integer coefficients are reduced into the prime subfield.
    """
    if isinstance(field, GF):
        F = field
    else:
        F = field.base
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            bad = len(stripped) - len(stripped[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {stripped[bad]!r}", bad)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(3)), start))
        elif m.group(4) is not None:
            tokens.append(("pow", int(m.group(5)), start))
        else:
            tokens.append((m.group(6), None, start))
        pos = m.end()
    if not tokens:
        raise PolySyntaxError("empty expression", 0)

    raw_terms = []
    i = 0
    sign = 1
    if tokens[0][0] in "+-":
        sign = -1 if tokens[0][0] == "-" else 1
        i = 1
    max_index = 0
    while True:
        coeff = sign
        exps = {}
        expect_factor = True
        while expect_factor:
            if i >= len(tokens):
                raise PolySyntaxError("expected a factor", len(stripped))
            kind, val, at = tokens[i]
            if kind == "int":
                coeff *= val
                i += 1
            elif kind == "var":
                if val < 1 or (n is not None and val > n):
                    raise BadVariable(f"variable x{val} outside 1..{n if n is not None else 'n'}")
                e = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    e = tokens[i][1]
                    i += 1
                exps[val] = exps.get(val, 0) + e
                max_index = max(max_index, val)
            else:
                raise PolySyntaxError(f"expected a factor, got {kind!r}", at)
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
            else:
                expect_factor = False
        raw_terms.append((coeff, exps))
        if i >= len(tokens):
            break
        kind, _, at = tokens[i]
        if kind not in "+-":
            raise PolySyntaxError(f"expected '+' or '-', got {kind!r}", at)
        sign = -1 if kind == "-" else 1
        i += 1
        if i >= len(tokens):
            raise PolySyntaxError("dangling operator", at)

    if n is None:
        n = max(max_index, 1)
    collected = {}
    for coeff, exps in raw_terms:
        j = tuple(exps.get(v, 0) for v in range(1, n + 1))
        if any(abs(e) > max_exponent for e in j):
            raise PolySyntaxError(f"exponent {j} exceeds bound {max_exponent}")
        collected[j] = F.add(collected.get(j, 0), F.scalar(coeff))
    if all(c == 0 for c in collected.values()):
        raise ZeroPolynomial(f"{text!r} is zero over F_{F.order}")
    return LaurentPoly.from_dict(n, collected, F)


def to_text(f):
    """Render in the parser's grammar (exact for prime-field coefficients)."""
    parts = []
    for j, c in f.terms:
        factors = []
        for i, e in enumerate(j, start=1):
            if e == 1:
                factors.append(f"x{i}")
            elif e != 0:
                factors.append(f"x{i}^{e}")
        if c != 1 or not factors:
            factors.insert(0, str(c))
        parts.append("*".join(factors))
    return " + ".join(parts)


def evaluate(f, pt, tower=None):
    """Evaluate f at a torus point (sequence of nonzero FFElem of one field)."""
    if len(pt) != f.n:
        raise BadVariable(f"expected {f.n} coordinates, got {len(pt)}")
    if f.n == 0:
        raise BadVariable("use the constant coefficient for n = 0")
    F = pt[0].field
    if any(x.field != F for x in pt):
        raise WrongField("coordinates lie in different fields")
    if any(x.value == 0 for x in pt):
        raise ZeroCoordinate("torus points must have nonzero coordinates")
    if F == f.field:
        embed = lambda c: c
    else:
        if tower is None:
            raise WrongField("evaluating in an extension requires the field tower")
        k = tower.degree_of(F)
        emb = tower.embedding(k)
        embed = lambda c: int(emb[c])
    total = 0
    for j, c in f.terms:
        term = embed(c)
        for x, e in zip(pt, j):
            if e:
                term = F.mul(term, F.pow(x.value, e))
        total = F.add(total, term)
    return FFElem(F, total)


def restrict_to_points(f, keep):
    """Keep the terms whose exponent satisfies ``keep``; EmptyRestriction if none do."""
    terms = tuple((j, c) for j, c in f.terms if keep(j))
    if not terms:
        raise EmptyRestriction("no term of f lies on the face")
    return LaurentPoly(f.n, terms, f.field)


def restrict_to_face(f, face, geo):
    """f_sigma: the terms of f whose exponents lie on ``face`` of ``geo``."""
    return restrict_to_points(f, lambda j: geo.on_face(j, face))


def restrict_to_subset(f, A, geo):
    """f_A: the terms a_j x^j with (1, j) on every hyperplane H_i, i in A."""
    rows = geo.hyperplane_matrix
    return restrict_to_points(
        f, lambda j: all(sum(a * b for a, b in zip(rows[i], (1,) + tuple(j))) == 0 for i in A)
    )


def log_derivative(f, i):
    """x_i * d f / d x_i (i is 1-based). May raise ZeroPolynomial."""
    F = f.field
    out = {}
    for j, c in f.terms:
        out[j] = F.mul(F.scalar(j[i - 1]), c)
    return LaurentPoly.from_dict(f.n, out, F)


def monomial_substitution(f, U, n_out, shift=None):
    """Rewrite f(x) * x^(-shift) in coordinates y = U x, keeping the first n_out.

    ``U`` is a unimodular integer matrix; all transformed exponents must vanish
    beyond ``n_out``.
    """
    out = {}
    for j, c in f.terms:
        v = [a - b for a, b in zip(j, shift)] if shift is not None else list(j)
        w = [sum(r * x for r, x in zip(row, v)) for row in U]
        assert all(x == 0 for x in w[n_out:]), "exponent leaves the face lattice"
        out[tuple(w[:n_out])] = c
    return LaurentPoly(n_out, tuple(out.items()), f.field)
