"""Truncated power series over Q, as lists of Fractions (index = degree)."""

from fractions import Fraction


def trunc(a, N):
    a = [Fraction(x) for x in a[: N + 1]]
    return a + [Fraction(0)] * (N + 1 - len(a))


def mul(a, b, N):
    a, b = trunc(a, N), trunc(b, N)
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                out[i + j] += x * b[j]
    return out


def inv(a, N):
    """1/a mod t^(N+1); a[0] must be nonzero."""
    a = trunc(a, N)
    if a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    out = [Fraction(0)] * (N + 1)
    out[0] = 1 / a[0]
    for m in range(1, N + 1):
        out[m] = -sum(a[i] * out[m - i] for i in range(1, m + 1)) / a[0]
    return out


def power(a, e, N):
    """a^e for an integer e (negative exponents invert)."""
    base = a if e >= 0 else inv(a, N)
    out = trunc([1], N)
    for _ in range(abs(e)):
        out = mul(out, base, N)
    return out


def exp_of_counts(counts, scale=1):
    """exp(sum_k counts[k-1] (scale t)^k / k) to order len(counts)."""
    N = len(counts)
    s = [Fraction(c) * Fraction(scale) ** k for k, c in enumerate(counts, start=1)]
    out = [Fraction(1)] + [Fraction(0)] * N
    for m in range(1, N + 1):
        out[m] = sum(s[k - 1] * out[m - k] for k in range(1, m + 1)) / m
    return out


def poly_product(factors, N):
    out = trunc([1], N)
    for f in factors:
        out = mul(out, f, N)
    return out


def as_integers(a):
    """Integer coefficients, or None if any coefficient is not integral."""
    if any(Fraction(x).denominator != 1 for x in a):
        return None
    return [int(x) for x in a]
