"""Dense univariate polynomials over a field, as coefficient lists (lowest first).

These helpers work for any exact field element type (Fraction, Cyclotomic,
ModP).  Lists are trimmed: no trailing zeros; the zero polynomial is [].
"""

from __future__ import annotations

from fractions import Fraction


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a):
    return len(a) - 1 if a else float("-inf")


def add(a, b):
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return trim(out)


def sub(a, b):
    n = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    ]
    return trim(out)


def scale(a, c):
    return trim([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return trim(out)


def derivative(a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdivmod(a, b):
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    inv = 1 / b[-1] if not isinstance(b[-1], int) else Fraction(1, b[-1])
    q = [0] * (len(r) - len(b) + 1)
    nb = len(b)
    while len(r) >= nb:
        shift = len(r) - nb
        c = r[-1] * inv
        q[shift] = c
        for i in range(nb - 1):
            if b[i]:
                r[shift + i] = r[shift + i] - c * b[i]
        r.pop()
        while r and not r[-1]:
            r.pop()
    return trim(q), r


def rem(a, b):
    return pdivmod(a, b)[1]


def monic(a):
    a = trim(a)
    if not a:
        return a
    lc = a[-1]
    if lc == 1:
        return a
    inv = 1 / lc if not isinstance(lc, int) else Fraction(1, lc)
    return [c * inv for c in a[:-1]] + [a[-1] * inv]


def gcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def squarefree(a):
    a = trim(a)
    if len(a) <= 1:
        return monic(a) if a else a
    g = gcd(a, derivative(a))
    return monic(pdivmod(a, g)[0])


def squarefree_degree(a):
    """Number of distinct roots (over an algebraic closure) of a nonzero a."""
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial has infinitely many roots")
    return len(a) - len(gcd(a, derivative(a)))


def resultant(a, b, da=None, db=None):
    """Resultant of a and b with formal degrees da, db (defaults: actual degrees).

    Euclidean remainder sequence: Res(a, b) = (-1)^(mn) lc(b)^(m - k) Res(b, a mod b).
    """
    a, b = trim(a), trim(b)
    m_true, n_true = len(a) - 1, len(b) - 1
    if da is None:
        da = m_true
    if db is None:
        db = n_true
    if not a or not b:
        return 1 if (da == 0 and db == 0) else 0
    if m_true < da and n_true < db:
        return 0
    if m_true < da:
        sign = -1 if (db * (da - m_true)) % 2 else 1
        return sign * b[-1] ** (da - m_true) * _res(a, b)
    if n_true < db:
        return a[-1] ** (db - n_true) * _res(a, b)
    return _res(a, b)


def _res(a, b):
    result = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return result * b[0] ** m
        r = rem(a, b)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            result = -result
        result = result * b[-1] ** (m - k)
        a, b = b, r


def interpolate_consecutive(values, zero, inverse=lambda k: Fraction(1, k)):
    """Coefficients of the polynomial taking values[i] at x = i, i = 0..D.

    Newton divided differences on the nodes 0, 1, ..., D (node gaps are the
    integers k, so each level divides by a single scalar).
    """
    dd = list(values)
    n = len(dd)
    for k in range(1, n):
        inv = inverse(k)
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) * inv
    # Horner expansion of the Newton form
    poly = [dd[n - 1]]
    for k in range(n - 2, -1, -1):
        # poly * (x - k) + dd[k]
        new = [zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * k
        new[0] = new[0] + dd[k]
        poly = new
    return trim(poly)


def power(a, k):
    result = [1]
    base = trim(a)
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result
