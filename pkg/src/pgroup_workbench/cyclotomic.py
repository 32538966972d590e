"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1) as an
integer numerator vector over one positive common denominator, reduced so
that gcd(numerators, denominator) == 1.  That form is unique, which makes
equality and hashing a tuple comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ContextMismatch, ValidationError, ZeroInverse


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # little-endian integer polynomials, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, t in enumerate(den):
                num[i + j] -= c * t
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CycContext:
    """Shared data for one root order N."""

    __slots__ = ("root_order", "phi", "modulus", "reduction_table")

    def __init__(self, root_order: int):
        if root_order < 1:
            raise ValidationError(f"root order must be positive, got {root_order}")
        self.root_order = root_order
        self.modulus = cyclotomic_polynomial(root_order)
        self.phi = len(self.modulus) - 1
        # zeta^k for phi <= k <= max(N-1, 2*phi-2): enough for roots and products
        phi = self.phi
        table = {}
        vec = [0] * phi
        if phi:
            vec[phi - 1] = 1
        for k in range(phi, max(root_order, 2 * phi - 1)):
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(phi):
                    vec[j] -= top * self.modulus[j]
            table[k] = tuple(vec)
        self.reduction_table = table

    def __repr__(self):
        return f"CycContext({self.root_order})"

    def __eq__(self, other):
        return isinstance(other, CycContext) and other.root_order == self.root_order

    def __hash__(self):
        return hash(("CycContext", self.root_order))

    def __reduce__(self):
        return (get_context, (self.root_order,))

    def zero(self) -> CycNumber:
        return CycNumber(self, (0,) * self.phi, 1)

    def one(self) -> CycNumber:
        return self.rational(1)

    def rational(self, value) -> CycNumber:
        q = Fraction(value)
        nums = [0] * self.phi
        nums[0] = q.numerator
        return CycNumber(self, tuple(nums), q.denominator)

    def zeta(self, k: int = 1) -> CycNumber:
        return root_of_unity(k, self)


@lru_cache(maxsize=None)
def get_context(root_order: int) -> CycContext:
    return CycContext(root_order)


def _reduce(ctx: CycContext, poly: list[int]) -> list[int]:
    phi = ctx.phi
    if len(poly) <= phi:
        return poly + [0] * (phi - len(poly))
    out = poly[:phi]
    table = ctx.reduction_table
    for k in range(phi, len(poly)):
        c = poly[k]
        if c:
            row = table[k]
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _normalized(nums, den):
    g = gcd(den, *nums)
    if g != 1:
        nums = tuple(x // g for x in nums)
        den //= g
    return tuple(nums), den


class CycNumber:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: CycContext, num, den: int = 1):
        if den == 0:
            raise ZeroInverse("zero denominator")
        if den < 0:
            num = tuple(-x for x in num)
            den = -den
        num, den = _normalized(tuple(num), den)
        if len(num) != ctx.phi:
            raise ValueError("coefficient vector length does not match context")
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, ctx: CycContext, coeffs, den: int = 1) -> CycNumber:
        """Reduce an arbitrary-length integer polynomial in zeta (over ``den``)."""
        coeffs = list(coeffs)
        n = ctx.root_order
        if len(coeffs) > n:
            folded = [0] * n
            for k, c in enumerate(coeffs):
                folded[k % n] += c
            coeffs = folded
        return cls(ctx, _reduce(ctx, coeffs), den)

    @classmethod
    def from_fractions(cls, ctx: CycContext, coeffs: dict[int, Fraction]) -> CycNumber:
        """Build sum(c_k * zeta^k) from a sparse exponent->rational map."""
        den = 1
        for c in coeffs.values():
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        poly = [0] * ctx.root_order
        for k, c in coeffs.items():
            c = Fraction(c)
            poly[k % ctx.root_order] += c.numerator * (den // c.denominator)
        return cls.from_poly(ctx, poly, den)

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def sort_key(self):
        return (self.den,) + self.num

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            return self.ctx == other.ctx and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.root_order, self.den, self.num))
        return self._hash

    def __repr__(self):
        return f"CycNumber(N={self.ctx.root_order}, {self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> CycNumber:
        if isinstance(other, CycNumber):
            if other.ctx != self.ctx:
                raise ContextMismatch(
                    f"cannot mix Q(zeta_{self.ctx.root_order}) and Q(zeta_{other.ctx.root_order})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycNumber(self.ctx, tuple(a + b for a, b in zip(self.num, other.num)), d1)
        return CycNumber(
            self.ctx, tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        nza = [(i, x) for i, x in enumerate(a) if x]
        nzb = [(j, y) for j, y in enumerate(b) if y]
        if not nza or not nzb:
            return self.ctx.zero()
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in nza:
            for j, y in nzb:
                prod[i + j] += x * y
        return CycNumber(self.ctx, _reduce(self.ctx, prod), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        """Multiplicative inverse via an exact linear solve of (mult-by-self) x = 1."""
        if self.is_zero():
            raise ZeroInverse("zero has no inverse")
        phi = self.ctx.phi
        # column j = self * zeta^j
        cols = []
        for j in range(phi):
            shifted = [0] * j + list(self.num)
            cols.append([Fraction(v, self.den) for v in _reduce(self.ctx, shifted)])
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            piv = next(r for r in range(c, phi) if aug[r][c])
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [v / pv for v in aug[c]]
            for r in range(phi):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return CycNumber.from_fractions(self.ctx, {k: aug[k][phi] for k in range(phi)})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict[str, str]:
        """Sparse {exponent: "p/q"} map in the power basis."""
        out = {}
        for k, c in enumerate(self.coeffs):
            if c:
                out[str(k)] = str(c)
        return out

    def embed(self, ctx: CycContext) -> CycNumber:
        """Map into Q(zeta_M) for M a multiple of N, sending zeta_N to zeta_M^(M/N)."""
        if ctx == self.ctx:
            return self
        n, m = self.ctx.root_order, ctx.root_order
        if m % n:
            raise ContextMismatch(f"Q(zeta_{n}) does not embed in Q(zeta_{m})")
        scale = m // n
        poly = [0] * m
        for k, c in enumerate(self.num):
            poly[(k * scale) % m] += c
        return CycNumber.from_poly(ctx, poly, self.den)


def cyc_from_json(data, ctx: CycContext) -> CycNumber:
    """Parse a sparse exponent map (or a bare rational) into ``ctx``."""
    if isinstance(data, bool):
        raise ValidationError("booleans are not field elements")
    if isinstance(data, (int, str)) and not isinstance(data, dict):
        try:
            return ctx.rational(Fraction(data))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad rational {data!r}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"expected exponent map, got {type(data).__name__}")
    coeffs = {}
    for key, val in data.items():
        try:
            k = int(key)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad exponent {key!r}") from exc
        if not 0 <= k < ctx.root_order:
            raise ValidationError(f"exponent {k} outside 0..{ctx.root_order - 1}")
        if isinstance(val, bool) or not isinstance(val, (int, str)):
            raise ValidationError(f"bad coefficient {val!r} for exponent {k}")
        try:
            coeffs[k] = coeffs.get(k, 0) + Fraction(val)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad coefficient {val!r} for exponent {k}") from exc
    return CycNumber.from_fractions(ctx, coeffs)


def root_of_unity(k: int, ctx: CycContext) -> CycNumber:
    """zeta_N^k in canonical form (k taken mod N)."""
    k %= ctx.root_order
    if k < ctx.phi:
        num = [0] * ctx.phi
        num[k] = 1
        return CycNumber(ctx, tuple(num))
    return CycNumber(ctx, ctx.reduction_table[k])


def multiplicative_order(a: CycNumber) -> int | None:
    """Least m dividing N with a^m == 1, or None if a is not such a root of unity."""
    for m in divisors(a.ctx.root_order):
        if (a**m).is_one():
            return m
    return None


def root_exponent(a: CycNumber) -> int | None:
    """The k with a == zeta_N^k, or None."""
    for k in range(a.ctx.root_order):
        if root_of_unity(k, a.ctx) == a:
            return k
    return None
