"""Finite fields F_{p^d} and towers F_q ⊂ F_{q^k}, q = p^a.

Elements are stored as integers 0 <= x < p^d whose base-p digits are the
coefficients (low degree first) of a polynomial in the generator ``t`` modulo
the field's modulus. Vectorized helpers operate on numpy arrays of such
integers through exp/log/Zech tables that are built lazily.
"""

from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .errors import DegreeOverflow, NotIrreducible, NotPrime, WrongField

DEFAULT_FIELD_CAP = 2 ** 24


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return (p, a) with q = p^a, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in prime_factors(q)[:1]:
        a, r = 0, q
        while r % p == 0:
            r //= p
            a += 1
        if r == 1:
            return p, a
    raise NotPrime(f"{q} is not a prime power")


# -- polynomials over F_p as coefficient lists, low degree first ------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f, m, p):
    f = list(f)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(f) - 1 >= dm and f:
        c = f[-1] * inv_lead % p
        if c:
            shift = len(f) - 1 - dm
            for i, mi in enumerate(m):
                f[shift + i] = (f[shift + i] - c * mi) % p
        f.pop()
        _trim(f)
    return _trim(f)


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _pgcd(f, g, p):
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def _ppowmod(f, e, m, p):
    result = [1]
    base = _pmod(f, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(m, p):
    """Ben-Or test for a monic polynomial ``m`` (low degree first) over F_p."""
    m = _trim([c % p for c in m])
    d = len(m) - 1
    if d < 1 or m[-1] != 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _ppowmod(xp, p, m, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(m, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p, d):
    """Smallest monic irreducible of degree d, lower coefficients read as a base-p integer."""
    if d == 1:
        return (0, 1)
    for low in range(p ** d):
        coeffs = [(low // p ** i) % p for i in range(d)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field F_p[t]/(modulus) of order p^d."""

    def __init__(self, p, modulus):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if not is_irreducible(modulus, p):
            raise NotIrreducible(f"{modulus} is not a monic irreducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.order = p ** self.d

    def __repr__(self):
        return f"GF({self.p}^{self.d})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- scalar arithmetic on integer encodings --
    def digits(self, x):
        p = self.p
        return [(x // p ** i) % p for i in range(self.d)]

    def from_digits(self, ds):
        p = self.p
        return sum((int(c) % p) * p ** i for i, c in enumerate(ds))

    def add(self, x, y):
        if self.d == 1:
            return (x + y) % self.p
        return self.from_digits([a + b for a, b in zip(self.digits(x), self.digits(y))])

    def neg(self, x):
        if self.d == 1:
            return -x % self.p
        return self.from_digits([-a for a in self.digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.d == 1:
            return x * y % self.p
        prod = _pmod(_pmul(_trim(self.digits(x)), _trim(self.digits(y)), self.p), self.modulus, self.p)
        return self.from_digits(prod)

    def pow(self, x, e):
        if e < 0:
            x, e = self.inv(x), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.order - 2)

    def scalar(self, c):
        """Image of the integer ``c`` in the prime subfield."""
        return int(c) % self.p

    def elem(self, x):
        return FFElem(self, int(x))

    def elements(self):
        """All elements, in lexicographic order of their coefficient vectors."""
        return range(self.order)

    def units(self):
        return range(1, self.order)

    def frobenius(self, x, e=1):
        return self.pow(x, self.p ** e)

    def abs_trace(self, x):
        """Tr_{F_{p^d}/F_p}(x) as an integer residue."""
        t, y = 0, x
        for _ in range(self.d):
            t = self.add(t, y)
            y = self.pow(y, self.p)
        assert t < self.p
        return t

    # -- tables --
    @cached_property
    def primitive_element(self):
        n = self.order - 1
        factors = prime_factors(n) if n > 1 else []
        for g in range(1, self.order):
            if all(self.pow(g, n // f) != 1 for f in factors):
                return g
        raise AssertionError("no primitive element")

    @cached_property
    def exp_table(self):
        """exp_table[i] = g^i for 0 <= i < order - 1."""
        n = self.order - 1
        out = np.empty(n, dtype=np.int64)
        g = self.primitive_element
        x = 1
        for i in range(n):
            out[i] = x
            x = self.mul(x, g)
        assert x == 1
        return out

    @cached_property
    def log_table(self):
        """log_table[x] = discrete log of x; log_table[0] = -1."""
        out = np.full(self.order, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.order - 1, dtype=np.int64)
        return out

    @cached_property
    def zech_table(self):
        """zech_table[m] = log(1 + g^m), or -1 when 1 + g^m = 0."""
        one_plus = self.vadd(np.ones(self.order - 1, dtype=np.int64), self.exp_table)
        return self.log_table[one_plus]

    @cached_property
    def trace_table(self):
        """Absolute trace of every element, as an int array indexed by element."""
        basis_traces = [self.abs_trace(self.p ** i) for i in range(self.d)]
        xs = np.arange(self.order, dtype=np.int64)
        out = np.zeros(self.order, dtype=np.int64)
        for i, t in enumerate(basis_traces):
            out += ((xs // self.p ** i) % self.p) * t
        return out % self.p

    # -- vectorized arithmetic on integer arrays --
    def vadd(self, x, y):
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if self.d == 1:
            return (x + y) % self.p
        if self.p == 2:
            return x ^ y
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        for i in range(self.d):
            w = self.p ** i
            out += (((x // w) % self.p + (y // w) % self.p) % self.p) * w
        return out

    def vneg(self, x):
        x = np.asarray(x, dtype=np.int64)
        if self.d == 1:
            return (-x) % self.p
        if self.p == 2:
            return x
        out = np.zeros_like(x)
        for i in range(self.d):
            w = self.p ** i
            out += ((-((x // w) % self.p)) % self.p) * w
        return out

    def vsub(self, x, y):
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y):
        x, y = np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)
        if self.d == 1:
            return (x * y) % self.p
        lx, ly = self.log_table[x], self.log_table[y]
        prod = self.exp_table[(lx + ly) % (self.order - 1)]
        return np.where((lx < 0) | (ly < 0), 0, prod)

    def vpow(self, x, e):
        x = np.asarray(x, dtype=np.int64)
        lx = self.log_table[x]
        out = self.exp_table[(lx * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(x)
        return np.where(lx < 0, 0, out)


@dataclass(frozen=True)
class FFElem:
    """An element of a finite field; ``value`` encodes the coefficient vector."""

    field: GF
    value: int

    @property
    def degree(self):
        return self.field.d

    @property
    def coeffs(self):
        return tuple(self.field.digits(self.value))

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise WrongField(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        return self.field.scalar(other)

    def __add__(self, other):
        return FFElem(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FFElem(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FFElem(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FFElem(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return FFElem(self.field, self.field.mul(self.value, self.field.inv(self._coerce(other))))

    def __pow__(self, e):
        return FFElem(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        if self.field.d == 1:
            return f"{self.value}"
        return f"{self.field!r}{list(self.coeffs)}"


class FieldTower:
    """F_q = F_{p^a} together with extensions F_{q^k} and compatible embeddings.

    The base field's embedding into F_{q^k} sends the generator of F_q to a
    root of its modulus inside F_{q^k}; roots are chosen deterministically
    (smallest discrete log). Extension fields are created on demand and cached,
    subject to ``field_cap`` on their order.
    """

    def __init__(self, p, a, k_max=1, modulus=None, field_cap=DEFAULT_FIELD_CAP):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if a < 1 or k_max < 1:
            raise ValueError("a and k_max must be positive")
        self.p, self.a = p, a
        self.q = p ** a
        self.field_cap = field_cap
        self._fields = {}
        self._embeddings = {}
        if modulus is None:
            modulus = smallest_irreducible(p, a)
        elif len(modulus) - 1 != a:
            raise NotIrreducible(f"modulus must have degree {a}")
        self.base = GF(p, modulus)
        self._fields[1] = self.base
        for k in range(1, k_max + 1):
            self.field(k)

    def __repr__(self):
        return f"FieldTower(p={self.p}, a={self.a})"

    @property
    def key(self):
        return (self.p, self.base.modulus)

    @property
    def k_max(self):
        return max(self._fields)

    def field(self, k):
        """The field F_{q^k}."""
        if k not in self._fields:
            if self.p ** (self.a * k) > self.field_cap:
                raise DegreeOverflow(
                    f"F_{{{self.p}^{self.a * k}}} exceeds the field cap {self.field_cap}"
                )
            self._fields[k] = GF(self.p, smallest_irreducible(self.p, self.a * k))
        return self._fields[k]

    def degree_of(self, F):
        """The k with F = F_{q^k}."""
        if F.d % self.a:
            raise WrongField(f"{F} does not contain F_{self.q}")
        k = F.d // self.a
        if self.field(k) != F:
            raise WrongField(f"{F} is not the tower's degree-{k} field")
        return k

    def embedding(self, k):
        """Array mapping each element of F_q to its image in F_{q^k}."""
        if k not in self._embeddings:
            F = self.field(k)
            if k == 1:
                emb = np.arange(self.q, dtype=np.int64)
            elif self.a == 1:
                emb = np.arange(self.q, dtype=np.int64)
            else:
                # the subfield F_q of F_{q^k} is generated by g^((Q-1)/(q-1))
                h = F.pow(F.primitive_element, (F.order - 1) // (self.q - 1))
                m = self.base.modulus
                y, root = 1, None
                for _ in range(self.q - 1):
                    acc = 0
                    for c in reversed(m):
                        acc = F.add(F.mul(acc, y), c)
                    if acc == 0:
                        root = y
                        break
                    y = F.mul(y, h)
                assert root is not None, "base modulus has no root in extension"
                powers = [1]
                for _ in range(self.a - 1):
                    powers.append(F.mul(powers[-1], root))
                emb = np.zeros(self.q, dtype=np.int64)
                for x in range(self.q):
                    acc = 0
                    for c, rp in zip(self.base.digits(x), powers):
                        if c:
                            acc = F.add(acc, F.mul(c, rp))
                    emb[x] = acc
            self._embeddings[k] = emb
        return self._embeddings[k]

    def embed(self, x, k):
        """Embed a base-field element (FFElem or int encoding) into F_{q^k}."""
        value = x.value if isinstance(x, FFElem) else int(x)
        return FFElem(self.field(k), int(self.embedding(k)[value]))

    def restrict(self, y):
        """Inverse of the embedding for an element lying in the image of F_q."""
        k = self.degree_of(y.field)
        emb = self.embedding(k)
        hits = np.nonzero(emb == y.value)[0]
        if len(hits) != 1:
            raise WrongField(f"{y!r} does not lie in F_{self.q}")
        return FFElem(self.base, int(hits[0]))

    def rel_trace(self, x):
        """Tr_{F_{q^k}/F_q}(x) = sum of x^(q^i), returned as an element of F_q."""
        F = x.field
        k = self.degree_of(F)
        t, y = 0, x.value
        for _ in range(k):
            t = F.add(t, y)
            y = F.pow(y, self.q)
        return self.restrict(FFElem(F, t))

    def abs_trace(self, x):
        """Tr_{F_{q^k}/F_p}(x) as an integer residue mod p."""
        self.degree_of(x.field)
        return x.field.abs_trace(x.value)


def make_tower(p, a=1, k_max=1, modulus=None, field_cap=DEFAULT_FIELD_CAP):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p ** (a * k_max) > field_cap:
        raise DegreeOverflow(f"{p}^{a * k_max} exceeds the field cap {field_cap}")
    return FieldTower(p, a, k_max, modulus=modulus, field_cap=field_cap)


def rel_trace(x, tower):
    return tower.rel_trace(x)


def abs_trace(x, tower=None):
    if tower is None:
        return x.field.abs_trace(x.value)
    return tower.abs_trace(x)


def parse_field_spec(text, modulus=None, field_cap=DEFAULT_FIELD_CAP):
    """Parse "p", "p^a" or a prime power "q" into a FieldTower."""
    text = text.strip()
    if "^" in text:
        p_txt, a_txt = text.split("^", 1)
        p, a = int(p_txt), int(a_txt)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
    else:
        p, a = prime_power(int(text))
    if isinstance(modulus, str):
        modulus = [int(c) for c in modulus.split(",")]
    return make_tower(p, a, 1, modulus=modulus, field_cap=field_cap)


def frobenius_fixed_count(F, e):
    """#{x in F : x^(p^e) = x}, by enumeration."""
    return sum(1 for x in F.elements() if F.frobenius(x, e) == x)


def expected_fixed_count(F, e):
    return F.p ** gcd(F.d, e)
