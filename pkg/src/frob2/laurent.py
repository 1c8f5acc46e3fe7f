"""Truncated Laurent series in t over GF(2^m), with s = t^2 throughout.

The deformation base is the power-series ring k[[s]].  Everything here
is computed in k((t)) with the global substitution s = t^2, so that all
square roots the derivation needs (tau_0, tau_1, the lambda scalars,
sqrt(s) itself) exist inside the ring: the characteristic-2 square root
halves exponents and takes the coefficient-wise inverse Frobenius, and
it is defined exactly on series supported on even exponents.

A series knows the coefficients of t^n for valuation <= n < prec and
nothing beyond; ``prec`` only ever decreases along arithmetic:

* add: min of the two precisions;
* mul: min(val(f) + prec(g), val(g) + prec(f));
* inv: prec(f) - 2 val(f);
* sqrt: coefficient of t^n known iff the one of t^(2n) was.

Identity certificates are graded against the known range: an identity
is *certified* only when the difference vanishes at every known
coefficient and the range covers s-degree CERT_S_DEGREE; a zero
difference over a shorter range is *inconclusive*, never a pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gf2m import GF2m

# Certification bar: identities count as certified only when checked
# through s-degree 30 (t-degree 60); the deepest cancellations in the
# pipeline happen around s^18.
CERT_S_DEGREE = 30

CERTIFIED = "certified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"


class PrecisionError(ArithmeticError):
    """A verdict was requested beyond the known coefficient range."""


@dataclass(frozen=True)
class ZeroCert:
    """Outcome of checking that a series (or a batch) vanishes.

    ``s_degree`` is the s-degree through which coefficients were
    inspected; None for checks over exact coefficient rings.
    """

    status: str
    s_degree: int | None = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED

    def merge(self, other: "ZeroCert") -> "ZeroCert":
        order = (FAILED, INCONCLUSIVE, CERTIFIED)
        worst, rest = (
            (self, other)
            if order.index(self.status) <= order.index(other.status)
            else (other, self)
        )
        degrees = [d for d in (self.s_degree, other.s_degree) if d is not None]
        return ZeroCert(
            worst.status,
            min(degrees) if degrees else None,
            worst.detail or rest.detail,
        )


def covered_s_degree(prec: int) -> int:
    """Largest s-degree fully known below a t-precision."""
    return (prec - 1) // 2


class LaurentSeries:
    """Immutable truncated Laurent series over a GF2m field."""

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: GF2m, val: int, coeffs, prec: int):
        coeffs = list(coeffs)
        # drop unknown and leading-zero coefficients, keep val honest
        if val + len(coeffs) > prec:
            del coeffs[max(0, prec - val):]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self.val = val if coeffs else prec
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: GF2m, prec: int) -> "LaurentSeries":
        return cls(field, prec, (), prec)

    @classmethod
    def one(cls, field: GF2m, prec: int) -> "LaurentSeries":
        return cls(field, 0, (1,), prec)

    @classmethod
    def scalar(cls, field: GF2m, c: int, prec: int) -> "LaurentSeries":
        return cls(field, 0, (c,), prec)

    @classmethod
    def t_power(cls, field: GF2m, n: int, prec: int, c: int = 1) -> "LaurentSeries":
        return cls(field, n, (c,), prec + n)

    @classmethod
    def from_terms(cls, field: GF2m, terms: dict, prec: int) -> "LaurentSeries":
        """Series from an {exponent: coefficient} mapping."""
        if not terms:
            return cls.zero(field, prec)
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = field.check(c)
        return cls(field, lo, coeffs, prec)

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when no known coefficient is nonzero (zero to precision)."""
        return not self.coeffs

    def valuation(self) -> int:
        if not self.coeffs:
            raise PrecisionError(
                f"series is zero to precision t^{self.prec}; "
                "valuation undetermined"
            )
        return self.val

    def s_valuation(self) -> Fraction:
        """t-valuation converted to s-units (s = t^2)."""
        return Fraction(self.valuation(), 2)

    def coeff(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionError(f"coefficient of t^{n} unknown (prec {self.prec})")
        i = n - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def support(self):
        return (self.val + i for i, c in enumerate(self.coeffs) if c)

    def even_supported(self) -> bool:
        return all(e % 2 == 0 for e in self.support())

    # -- structural equality (exact representation match) ---------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.field == other.field
            and self.val == other.val
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self) -> int:
        return hash((self.field, self.val, self.coeffs, self.prec))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"O(t^{self.prec})"
        terms = " + ".join(
            f"t^{self.val + i}:{c:x}" for i, c in enumerate(self.coeffs) if c
        )
        return f"{terms} + O(t^{self.prec})"

    # -- arithmetic -------------------------------------------------------

    def _want(self, other: "LaurentSeries") -> None:
        if self.field != other.field:
            raise ValueError("mixed coefficient fields")

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._want(other)
        prec = min(self.prec, other.prec)
        if not self.coeffs:
            return LaurentSeries(other.field, other.val, other.coeffs, prec)
        if not other.coeffs:
            return LaurentSeries(self.field, self.val, self.coeffs, prec)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] = c
        for i, c in enumerate(other.coeffs):
            out[other.val - lo + i] ^= c
        return LaurentSeries(self.field, lo, out, prec)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        self._want(other)
        if not self.coeffs or not other.coeffs:
            if not self.coeffs and not other.coeffs:
                prec = min(self.prec, other.prec)
            elif not self.coeffs:
                prec = self.prec + other.valuation()
            else:
                prec = other.prec + self.valuation()
            return LaurentSeries.zero(self.field, prec)
        prec = min(self.val + other.prec, other.val + self.prec)
        out = _convolve(self.field, self.coeffs, other.coeffs)
        return LaurentSeries(self.field, self.val + other.val, out, prec)

    def scale(self, c: int) -> "LaurentSeries":
        """Multiply by a field element."""
        if c == 0:
            return LaurentSeries.zero(self.field, self.prec)
        if c == 1:
            return self
        mul = self.field.mul
        return LaurentSeries(
            self.field, self.val, [mul(c, x) for x in self.coeffs], self.prec
        )

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by t^n."""
        return LaurentSeries(self.field, self.val + n, self.coeffs, self.prec + n)

    def square(self) -> "LaurentSeries":
        sqr = self.field.sqr
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[2 * i] = sqr(c)
        prec = self.val + self.prec  # mul rule with f = g
        return LaurentSeries(self.field, 2 * self.val, out, prec)

    def inv(self) -> "LaurentSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverting a series that is zero to precision")
        n = self.prec - self.val  # relative precision of the unit part
        g = _inv_unit(self.field, self.coeffs, n)
        return LaurentSeries(self.field, -self.val, g, self.prec - 2 * self.val)

    def __truediv__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self * other.inv()

    def sqrt(self) -> "LaurentSeries":
        """Characteristic-2 square root; exists iff the support is even."""
        if not self.coeffs:
            return LaurentSeries.zero(self.field, (self.prec + 1) // 2)
        for e in self.support():
            if e % 2:
                raise ValueError(
                    f"not a square in k((t)): odd exponent t^{e} has a "
                    "nonzero coefficient"
                )
        root = self.field.sqrt
        out = [0] * ((len(self.coeffs) + 1) // 2)
        for i in range(0, len(self.coeffs), 2):
            out[i // 2] = root(self.coeffs[i])
        return LaurentSeries(
            self.field, self.val // 2, out, (self.prec + 1) // 2
        )

    def pow(self, n: int) -> "LaurentSeries":
        # square-and-multiply; the mul rule settles the final precision
        if n < 0:
            return self.inv().pow(-n)
        r = LaurentSeries.one(self.field, self.prec + abs(self.val) * (n + 1) + 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b.square()
        return r

    __pow__ = pow

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.val, self.coeffs, prec)

    # -- certificates -------------------------------------------------------

    def certify_zero(self, bar: int = CERT_S_DEGREE) -> ZeroCert:
        """Certify that this series is zero, against the s-degree bar."""
        for e in self.support():
            return ZeroCert(FAILED, e // 2, f"nonzero coefficient at t^{e}")
        covered = covered_s_degree(self.prec)
        if covered >= bar:
            return ZeroCert(CERTIFIED, covered)
        return ZeroCert(
            INCONCLUSIVE, covered,
            f"zero only through s^{covered}; raise precision",
        )

    def certify_equal(self, other: "LaurentSeries", bar: int = CERT_S_DEGREE) -> ZeroCert:
        return (self + other).certify_zero(bar)

    def eq_to_precision(self, other: "LaurentSeries") -> bool:
        """Equality of all known coefficients, insisting on the bar.

        Raises PrecisionError instead of answering when the common known
        range does not reach the certification bar.
        """
        cert = self.certify_equal(other)
        if cert.status == INCONCLUSIVE:
            raise PrecisionError(cert.detail)
        return cert.ok

    def min_val_at_least(self, n: int) -> bool:
        """Decide val >= n, raising PrecisionError when undecidable."""
        for e in self.support():
            if e < n:
                return False
            break
        if self.prec < n:
            raise PrecisionError(
                f"cannot certify valuation >= {n} at precision {self.prec}"
            )
        return True

    def in_base_ring(self) -> ZeroCert:
        """Certify membership in k[[s]]: even support, no negative exponents."""
        for e in self.support():
            if e < 0 or e % 2:
                return ZeroCert(
                    FAILED, e // 2, f"coefficient at t^{e} outside k[[s]]"
                )
        covered = covered_s_degree(self.prec)
        status = CERTIFIED if covered >= 0 else INCONCLUSIVE
        return ZeroCert(status, covered)


def _inv_unit(field: GF2m, u, n: int) -> list:
    """Reciprocal of a unit coefficient vector to n digits.

    Newton doubling adapted to characteristic 2: if u*g = 1 + e then
    g*(u*g) is correct to twice as many digits, since (1+e)^2 = 1+e^2.
    """
    if n <= 0:
        return []
    g = [field.inv(u[0])]
    k = 1
    while k < n:
        k = min(2 * k, n)
        ug = _convolve(field, u[:k], g)[:k]
        g = _convolve(field, g, ug)[:k]
    return g


# -- packed multiplication kernel ------------------------------------------
#
# Coefficient vectors are packed into one big int, one field element per
# byte-aligned lane wide enough to hold a carry-less product of two
# elements (2m-1 bits).  The whole series product is then a single
# carry-less big-int multiplication followed by a per-lane reduction.

_SCHOOLBOOK_CUTOFF = 256


def _convolve(field: GF2m, a, b) -> list:
    if len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        mul = field.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] ^= mul(ca, cb)
        return out
    return _convolve_packed(field, a, b)


def _convolve_packed(field: GF2m, a, b) -> list:
    lane = field.lane_bytes
    width = 8 * lane
    if len(a) > len(b):
        a, b = b, a
    packed_b = int.from_bytes(
        b"".join(c.to_bytes(lane, "little") for c in b), "little"
    )
    acc = 0
    for i, c in enumerate(a):
        base = i * width
        while c:
            low = c & -c
            acc ^= packed_b << (base + low.bit_length() - 1)
            c ^= low
    n_out = len(a) + len(b) - 1
    raw = acc.to_bytes(n_out * lane + lane, "little")
    reduce_wide = field.reduce_wide
    out = [0] * n_out
    for i in range(n_out):
        v = int.from_bytes(raw[i * lane:(i + 1) * lane], "little")
        if v:
            out[i] = reduce_wide(v)
    return out
