"""Sparse multivariate polynomials over a pluggable coefficient ring.

Terms live in a dict from exponent vectors to nonzero coefficients;
printing and iteration use graded lexicographic order so equal
polynomials always render identically.  Two coefficient rings are used
in practice: GF(2^m) via :class:`FieldCoeffs` (this is how exact
GF(2)[mu]-identities are checked, with mu as an ordinary variable),
and truncated Laurent series via :class:`SeriesCoeffs` for the quadric
systems whose coefficients deform along the base.

No Groebner machinery: the only division ever needed is exact division
by a given divisor, which terminates by cancelling graded-lex leading
terms.
"""

from __future__ import annotations

from .gf2m import GF2m
from .laurent import (
    CERT_S_DEGREE,
    CERTIFIED,
    FAILED,
    LaurentSeries,
    ZeroCert,
    covered_s_degree,
)


class FieldCoeffs:
    """Coefficient ring adapter for GF(2^m) ints."""

    def __init__(self, field: GF2m):
        self.field = field

    def zero(self):
        return 0

    def one(self):
        return 1

    def is_zero(self, c) -> bool:
        return c == 0

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return self.field.mul(a, b)

    def div(self, a, b):
        return self.field.div(a, b)

    def repr(self, c) -> str:
        return format(c, "x")

    def __eq__(self, other):
        return isinstance(other, FieldCoeffs) and other.field == self.field

    def __hash__(self):
        return hash(("FieldCoeffs", self.field))


class SeriesCoeffs:
    """Coefficient ring adapter for LaurentSeries values."""

    def __init__(self, field: GF2m, prec: int):
        self.field = field
        self.prec = prec

    def zero(self):
        return LaurentSeries.zero(self.field, self.prec)

    def one(self):
        return LaurentSeries.one(self.field, self.prec)

    def is_zero(self, c) -> bool:
        return c.is_zero

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a * b.inv()

    def repr(self, c) -> str:
        return repr(c)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesCoeffs)
            and other.field == self.field
            and other.prec == self.prec
        )

    def __hash__(self):
        return hash(("SeriesCoeffs", self.field, self.prec))


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial with a fixed ordered variable list."""

    __slots__ = ("ring", "vars", "terms")

    def __init__(self, ring, vars, terms: dict):
        self.ring = ring
        self.vars = tuple(vars)
        self.terms = {
            e: c for e, c in terms.items() if not ring.is_zero(c)
        }

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, vars) -> "MultiPoly":
        return cls(ring, vars, {})

    @classmethod
    def constant(cls, ring, vars, c) -> "MultiPoly":
        vars = tuple(vars)
        return cls(ring, vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, ring, vars, name, power: int = 1) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(ring, vars, {tuple(e): ring.one()})

    # -- structure --------------------------------------------------------

    def _want(self, other: "MultiPoly") -> None:
        if self.vars != other.vars or self.ring != other.ring:
            raise ValueError("incompatible variable sets or coefficient rings")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.vars, exps)
                if e
            )
            cr = self.ring.repr(c)
            if not mono:
                parts.append(f"({cr})" if " " in cr or "+" in cr else cr)
            elif cr == "1":
                parts.append(mono)
            else:
                parts.append(f"({cr})*{mono}" if "+" in cr else f"{cr}*{mono}")
        return " + ".join(parts)

    def term_list(self) -> list:
        """JSON-friendly deterministic term list."""
        return [
            {"exps": dict((v, e) for v, e in zip(self.vars, exps) if e),
             "coeff": self.ring.repr(c)}
            for exps, c in self.sorted_terms()
        ]

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._want(other)
        out = dict(self.terms)
        add = self.ring.add
        for e, c in other.terms.items():
            if e in out:
                out[e] = add(out[e], c)
            else:
                out[e] = c
        return MultiPoly(self.ring, self.vars, out)

    __sub__ = __add__  # characteristic 2 everywhere in this package

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._want(other)
        ring = self.ring
        out: dict = {}
        add, mul = ring.add, ring.mul
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], c)
                else:
                    out[e] = c
        return MultiPoly(ring, self.vars, out)

    def scale(self, c) -> "MultiPoly":
        mul = self.ring.mul
        return MultiPoly(
            self.ring, self.vars, {e: mul(c, x) for e, x in self.terms.items()}
        )

    def pow(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = MultiPoly.constant(self.ring, self.vars, self.ring.one())
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    __pow__ = pow

    def substitute(self, assignments: dict) -> "MultiPoly":
        """Simultaneous substitution of variables by polynomials."""
        for name in assignments:
            if name not in self.vars:
                raise ValueError(f"unknown variable {name!r} in assignments")
        images = []
        for i, v in enumerate(self.vars):
            if v in assignments:
                images.append(assignments[v])
            else:
                images.append(MultiPoly.variable(self.ring, self.vars, v))
        if images:
            for img in images:
                img._want(images[0])
        out = MultiPoly.zero(images[0].ring if images else self.ring,
                             images[0].vars if images else self.vars)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(out.ring, out.vars, c)
            for img, e in zip(images, exps):
                if e:
                    term = term * img.pow(e)
            out = out + term
        return out

    def exact_divide(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient self / divisor, raising if the division is not exact."""
        self._want(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        dlead = max(divisor.terms, key=_grlex_key)
        dcoeff = divisor.terms[dlead]
        rem = dict(self.terms)
        quot: dict = {}
        add, mul = ring.add, ring.mul
        while rem:
            rlead = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(rlead, dlead))
            if any(d < 0 for d in diff):
                raise ValueError("not exactly divisible (leading term obstruction)")
            q = ring.div(rem[rlead], dcoeff)
            quot[diff] = q
            for e, c in divisor.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, e))
                c2 = mul(q, c)
                if tgt in rem:
                    v = add(rem[tgt], c2)
                    if ring.is_zero(v):
                        del rem[tgt]
                    else:
                        rem[tgt] = v
                else:
                    rem[tgt] = c2
        return MultiPoly(ring, self.vars, quot)

    def evaluate(self, point: dict):
        """Full evaluation at field elements (FieldCoeffs ring only)."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"no value supplied for {missing}")
        ring = self.ring
        acc = ring.zero()
        for exps, c in self.terms.items():
            v = c
            for name, e in zip(self.vars, exps):
                if e:
                    v = ring.mul(v, _ring_pow(ring, point[name], e))
            acc = ring.add(acc, v)
        return acc

    def certify_equal(self, other: "MultiPoly", bar: int = CERT_S_DEGREE) -> ZeroCert:
        """Coefficientwise equality certificate (series rings use the bar)."""
        self._want(other)
        diff = self + other
        if isinstance(self.ring, SeriesCoeffs):
            # start from the ambient precision: coefficients that cancel
            # exactly are pruned from the dict but were still checked
            cert = ZeroCert(CERTIFIED, covered_s_degree(self.ring.prec))
            for _, c in diff.sorted_terms():
                cert = cert.merge(c.certify_zero(bar))
            return cert
        if diff.terms:
            e = max(diff.terms, key=_grlex_key)
            mono = {v: k for v, k in zip(self.vars, e) if k}
            return ZeroCert(FAILED, None, f"polynomials differ at {mono}")
        return ZeroCert(CERTIFIED, None)


def _ring_pow(ring, base, n: int):
    r = ring.one()
    while n:
        if n & 1:
            r = ring.mul(r, base)
        base = ring.mul(base, base)
        n >>= 1
    return r
