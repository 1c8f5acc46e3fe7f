"""Exact arithmetic in the binary fields GF(2^m).

Field elements are plain Python ints: bit i of an element is the
coefficient of x^i in its polynomial-basis representative, reduced
modulo an irreducible degree-m polynomial over GF(2).  Elements carry
no field reference of their own; a :class:`GF2m` instance is passed
around alongside them (the structures in :mod:`frob2.laurent` and
:mod:`frob2.curve` hold the field and refuse to mix distinct ones).
Zero and one are always represented by ``0`` and ``1``.

Addition is xor.  Multiplication is a carry-less product reduced
modulo the field modulus; for m <= 16 the reduction of the high half
is a single table lookup.  Because the field is perfect of
characteristic 2, every element has a unique square root, computed as
a^(2^(m-1)) by repeated squaring.

The default modulus for degree m is the irreducible polynomial whose
bit-vector encodes the smallest integer, so runs are reproducible
without configuration; any other irreducible modulus can be supplied
explicitly (as an int or as lowercase hex).
"""

from __future__ import annotations

from functools import lru_cache

# One machine word per element; larger degrees are out of scope.
MAX_DEGREE = 64

# 512-entry table spreading the bits of a byte (b -> interleave with 0s),
# i.e. the carry-less square of a byte.  Shared by every field instance.
_SPREAD = tuple(
    sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)
)


def clmul(a: int, b: int) -> int:
    """Carry-less (GF(2)[x]) product of two nonnegative ints."""
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def clsqr(a: int) -> int:
    """Carry-less square: spread the bits of a apart."""
    r = 0
    shift = 0
    while a:
        r |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def polymod(a: int, mod: int) -> int:
    """Remainder of a modulo mod, both GF(2)[x] polynomials as ints."""
    dm = mod.bit_length()
    while a.bit_length() >= dm:
        a ^= mod << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Deterministic (Rabin) irreducibility test over GF(2).

    poly is irreducible of degree m iff x^(2^m) == x mod poly and, for
    every prime divisor p of m, gcd(x^(2^(m/p)) - x, poly) == 1.
    """
    m = poly.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True

    def xpow2k(k: int) -> int:
        # x^(2^k) mod poly via k modular squarings
        r = 2
        for _ in range(k):
            r = polymod(clsqr(r), poly)
        return r

    def gcd(u: int, v: int) -> int:
        while v:
            u, v = v, polymod(u, v)
        return u

    if xpow2k(m) != 2:
        return False
    d = m
    p = 2
    primes = []
    while p * p <= d:
        if d % p == 0:
            primes.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        primes.append(d)
    for p in primes:
        if gcd(xpow2k(m // p) ^ 2, poly) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(m: int) -> int:
    """Smallest-integer irreducible polynomial of degree m over GF(2)."""
    for c in range(1, 1 << m, 2):  # constant bit must be set
        cand = (1 << m) | c
        if is_irreducible(cand):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {m}")


class GF2m:
    """The finite field GF(2^m) acting on int-encoded elements."""

    __slots__ = ("m", "modulus", "order", "lane_bytes", "_redt")

    def __init__(self, m: int, modulus: int | str | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"field degree must be in 1..{MAX_DEGREE}, got {m}")
        if modulus is None:
            modulus = default_modulus(m)
        elif isinstance(modulus, str):
            modulus = int(modulus, 16)
        if modulus.bit_length() != m + 1 or not modulus & 1:
            raise ValueError(
                f"modulus {modulus:#x} is not a degree-{m} polynomial with "
                "constant term"
            )
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        # lane width (bytes) for packed series multiplication: products of
        # two elements have degree <= 2m-2, hence fit in 2m-1 bits
        self.lane_bytes = (2 * m - 1 + 7) // 8
        if m <= 16:
            # reduction table for the high half of a (2m-1)-bit product
            self._redt = tuple(
                polymod(h << m, modulus) for h in range(1 << (m - 1))
            )
        else:
            self._redt = None

    # -- identity -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF2m)
            and other.m == self.m
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF2m({self.m}, modulus={self.modulus:#x})"

    # -- element arithmetic -------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"{a:#x} is not a reduced element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def reduce_wide(self, v: int) -> int:
        """Reduce a carry-less product of two elements (< 2m-1 bits)."""
        if self._redt is not None:
            return (v & (self.order - 1)) ^ self._redt[v >> self.m]
        return polymod(v, self.modulus)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.reduce_wide(clmul(a, b))

    def sqr(self, a: int) -> int:
        return self.reduce_wide(clsqr(a)) if a else 0

    def inv(self, a: int) -> int:
        """Inverse of a nonzero element, by the extended Euclid algorithm."""
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^m)")
        u, v = a, self.modulus
        g1, g2 = 1, 0
        while u != 1:
            du, dv = u.bit_length(), v.bit_length()
            if du < dv:
                u, v, g1, g2 = v, u, g2, g1
                du, dv = dv, du
            shift = du - dv
            u ^= v << shift
            g1 ^= g2 << shift
        return polymod(g1, self.modulus)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        """The unique square root: inverse Frobenius, a^(2^(m-1))."""
        for _ in range(self.m - 1):
            a = self.sqr(a)
        return a

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.sqr(a)
            n >>= 1
        return r

    # -- I/O ------------------------------------------------------------

    def to_hex(self, a: int) -> str:
        return format(self.check(a), "x")

    def from_hex(self, s: str) -> int:
        return self.check(int(s, 16))

    def elements(self):
        """Iterate all field elements (only sensible for small m)."""
        return range(self.order)
