"""Prime-field arithmetic for probabilistic degree counting.

Values are numpy int64 arrays reduced into [0, p).  Primes are chosen in
(2^31, 3.03e9) so that a product of two residues fits in a signed 64-bit
word.  Batched routines operate on many evaluation points at once and fall
back to scalar code for the few points where a remainder sequence is not
generic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

PRIME_LOW = 2**31 + 1
PRIME_HIGH = 3_037_000_000  # p^2 < 2^63


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def random_prime(rng, order: int = 1) -> int:
    """A random prime p in (2^31, 3.03e9) with p = 1 (mod order)."""
    lo = (PRIME_LOW - 1) // order + 1
    hi = (PRIME_HIGH - 1) // order
    while True:
        p = order * rng.randint(lo, hi) + 1
        if is_prime(p):
            return p


def primitive_root_of_unity(order: int, p: int, rng) -> int:
    if (p - 1) % order:
        raise ValueError(f"{order} does not divide p - 1")
    if order == 1:
        return 1
    factors = _prime_factors(order)
    while True:
        h = pow(rng.randint(2, p - 1), (p - 1) // order, p)
        if all(pow(h, order // q, p) != 1 for q in factors):
            return h


class PrimeField:
    """Reduction map Q(zeta_N) -> F_p sending zeta_N to a fixed N-th root of unity."""

    def __init__(self, p: int, order: int = 1, zeta: int | None = None):
        self.p = p
        self.order = order
        if zeta is None:
            if order != 1:
                raise ValueError("zeta image required for order > 1")
            zeta = 1
        self.zeta = zeta

    @classmethod
    def random(cls, rng, order: int = 1) -> "PrimeField":
        p = random_prime(rng, order)
        return cls(p, order, primitive_root_of_unity(order, p, rng))

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 mod p")
        return pow(a, -1, self.p)

    def reduce(self, c) -> int:
        p = self.p
        if isinstance(c, int):
            return c % p
        if isinstance(c, Fraction):
            return c.numerator % p * self.inv(c.denominator) % p
        # cyclotomic element: sum num_i zeta_M^i / den with M | order
        if self.order % c.order:
            raise ValueError(f"zeta({c.order}) does not embed in zeta({self.order})")
        z = pow(self.zeta, self.order // c.order, p)
        acc, zk = 0, 1
        for a in c.num:
            if a:
                acc = (acc + a * zk) % p
            zk = zk * z % p
        return acc * self.inv(c.den) % p


# scalar dense polynomials (lists of ints, lowest degree first)

def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def scalar_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = trim(list(a))
    nb = len(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= nb:
        c = a[-1] * inv % p
        shift = len(a) - nb
        for i in range(nb - 1):
            a[shift + i] = (a[shift + i] - c * b[i]) % p
        a.pop()
        trim(a)
    return a


def scalar_resultant(a: list[int], b: list[int], p: int) -> int:
    """Res(a, b) in F_p for nonzero a, b with true (trimmed) degrees."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return 0
    result = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return result * pow(b[0], m, p) % p
        r = scalar_rem(a, b, p)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            result = -result % p
        result = result * pow(b[-1], m - k, p) % p
        a, b = b, r


# vectorized kernels

def vec_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = result * base % p
        e >>= 1
        if e:
            base = base * base % p
    return result


def vec_inv(a: np.ndarray, p: int) -> np.ndarray:
    return vec_pow(a, p - 2, p)


def batched_resultant(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Res(a[i], b[i]) for every row i.

    Rows hold coefficients lowest degree first; the last column of each is
    the formal leading coefficient, which must be nonzero in every row.
    Rows whose remainder sequence drops degree by more than one are
    recomputed by the scalar routine.
    """
    npts = a.shape[0]
    out = np.zeros(npts, dtype=np.int64)
    if a.shape[1] < b.shape[1]:
        m, n = a.shape[1] - 1, b.shape[1] - 1
        sign = -1 if (m * n) % 2 else 1
        return sign * batched_resultant(b, a, p) % p
    if np.any(a[:, -1] == 0) or np.any(b[:, -1] == 0):
        raise ValueError("formal leading coefficients must be nonzero")
    idx = np.arange(npts)
    orig_a, orig_b = a, b
    a = a.copy()
    b = b.copy()
    acc = np.ones(npts, dtype=np.int64)
    fallback: list[int] = []
    while True:
        m, n = a.shape[1] - 1, b.shape[1] - 1
        if n == 0:
            out[idx] = acc * vec_pow(b[:, 0], m, p) % p
            break
        inv = vec_inv(b[:, -1], p)
        r = a.copy()
        for shift in range(m - n, -1, -1):
            c = r[:, shift + n] * inv % p
            r[:, shift: shift + n + 1] = (r[:, shift: shift + n + 1] - c[:, None] * b) % p
        r = r[:, :n]
        good = r[:, n - 1] != 0
        if not good.all():
            fallback.extend(idx[~good].tolist())
            idx, a, b, r, acc = idx[good], a[good], b[good], r[good], acc[good]
            if idx.size == 0:
                break
        k = n - 1
        if (m * n) % 2:
            acc = -acc % p
        acc = acc * vec_pow(b[:, -1], m - k, p) % p
        a, b = b, r
    for i in fallback:
        out[i] = scalar_resultant(orig_a[i].tolist(), orig_b[i].tolist(), p)
    return out


def interpolate_consecutive(values: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (lowest first) of the polynomial with values[i] at x = i."""
    dd = np.array(values, dtype=np.int64) % p
    n = dd.size
    for k in range(1, n):
        inv = pow(k, -1, p)
        dd[k:] = (dd[k:] - dd[k - 1: -1]) % p * inv % p
    poly = np.zeros(n, dtype=np.int64)
    poly[0] = dd[n - 1]
    length = 1
    for k in range(n - 2, -1, -1):
        # poly <- poly * (x - k) + dd[k]
        new = np.zeros(n, dtype=np.int64)
        new[1: length + 1] = poly[:length]
        new[:length] = (new[:length] - poly[:length] * k) % p
        new[0] = (new[0] + dd[k]) % p
        poly = new
        length += 1
    return poly


def _np_trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def np_rem(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = _np_trim(a.copy())
    nb = b.size
    inv = pow(int(b[-1]), -1, p)
    while a.size >= nb:
        c = int(a[-1]) * inv % p
        shift = a.size - nb
        a[shift:] = (a[shift:] - c * b) % p
        a = _np_trim(a[:-1])
    return a


def np_gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a, b = _np_trim(np.asarray(a, dtype=np.int64) % p), _np_trim(np.asarray(b, dtype=np.int64) % p)
    while b.size:
        a, b = b, np_rem(a, b, p)
    if a.size:
        a = a * pow(int(a[-1]), -1, p) % p
    return a


def np_divexact(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = _np_trim(np.asarray(a, dtype=np.int64) % p)
    b = _np_trim(np.asarray(b, dtype=np.int64) % p)
    nb = b.size
    q = np.zeros(max(a.size - nb + 1, 0), dtype=np.int64)
    inv = pow(int(b[-1]), -1, p)
    a = a.copy()
    while a.size >= nb:
        c = int(a[-1]) * inv % p
        shift = a.size - nb
        q[shift] = c
        a[shift:] = (a[shift:] - c * b) % p
        a = _np_trim(a[:-1])
    if a.size:
        raise ArithmeticError("inexact division mod p")
    return q


def np_derivative(a: np.ndarray, p: int) -> np.ndarray:
    if a.size <= 1:
        return a[:0]
    return a[1:] * (np.arange(1, a.size, dtype=np.int64) % p) % p


def np_squarefree_degree(a: np.ndarray, p: int) -> int:
    a = _np_trim(np.asarray(a, dtype=np.int64) % p)
    if not a.size:
        raise ValueError("zero polynomial")
    g = np_gcd(a, np_derivative(a, p), p)
    return a.size - g.size


def lcm_orders(orders) -> int:
    out = 1
    for o in orders:
        out = out * o // math.gcd(out, o)
    return out
