"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every value is a sparse coefficient map over the Zumbroich basis of Q(zeta_n).
The basis makes the representation canonical: two values of the same order are
equal exactly when their coefficient maps are equal, and values of different
orders are compared after lifting both to the lcm of the orders.

The constants used throughout the package (xi = zeta_19, the Gauss sum nu,
a_k = 2cos(2k pi/9), b_k = -2cos(k pi/5)) are exposed as named constructors so
that no table value is ever a float.
"""

from __future__ import annotations

import math
import numbers
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from sympy import divisors, factorint

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "Cyclotomic"]


class CyclotomicError(ArithmeticError):
    """Raised when a cyclotomic operation is undefined."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class ArithOp(str, Enum):
    """Binary field operations accepted by arith()."""
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


# ── Basis tables ────────────────────────────────────────────────────


@lru_cache(maxsize=None)
def _prime_powers(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


@lru_cache(maxsize=None)
def _reduce(n: int, k: int) -> tuple[tuple[int, int], ...]:
    """Express zeta_n^k in the Zumbroich basis as (exponent, +-1) pairs.

    For each prime power p^e || n the exponent's p-component has a leading
    base-p digit. Basis exponents have that digit in {1..p-1} for odd p and
    equal to 0 for p = 2; other exponents are rewritten with the relation
    sum_{l<p} zeta_n^{k + l n/p} = 0.
    """
    terms = {k % n: 1}
    for p, e in _prime_powers(n):
        q = p**e
        low = q // p
        step = n // p
        reduced: dict[int, int] = {}
        for exp, c in terms.items():
            digit = (exp % q) // low
            if p == 2:
                if digit == 1:
                    target = (exp + step) % n
                    reduced[target] = reduced.get(target, 0) - c
                else:
                    reduced[exp] = reduced.get(exp, 0) + c
            elif digit == 0:
                for shift in range(1, p):
                    target = (exp + shift * step) % n
                    reduced[target] = reduced.get(target, 0) - c
            else:
                reduced[exp] = reduced.get(exp, 0) + c
        terms = {x: c for x, c in reduced.items() if c}
    return tuple(sorted(terms.items()))


@lru_cache(maxsize=None)
def basis(n: int) -> tuple[int, ...]:
    """Exponents k such that zeta_n^k belongs to the Zumbroich basis of Q(zeta_n)."""
    return tuple(k for k in range(n) if _reduce(n, k) == ((k, 1),))


def _normalize(value: Rational) -> Rational:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _canonical(n: int, raw: dict[int, Rational]) -> tuple[tuple[int, Rational], ...]:
    out: dict[int, Rational] = {}
    for exp, c in raw.items():
        if not c:
            continue
        for b, sign in _reduce(n, exp):
            out[b] = out.get(b, 0) + sign * c
    return tuple(sorted((b, _normalize(c)) for b, c in out.items() if c))


# ── Cyclotomic values ───────────────────────────────────────────────


class Cyclotomic:
    """An exact element of Q(zeta_n), immutable after construction."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: tuple[tuple[int, Rational], ...] = ()):
        if order < 1:
            raise CyclotomicError(f"Order must be positive, got {order}", order=order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def from_raw(cls, order: int, raw: dict[int, Rational]) -> Cyclotomic:
        """Build a value from an arbitrary exponent -> coefficient map."""
        return cls(order, _canonical(order, raw))

    @classmethod
    def from_coordinates(cls, order: int, coords: Iterable[Rational]) -> Cyclotomic:
        """Inverse of coordinates(): coefficients listed in basis(order) order."""
        return cls.from_raw(order, dict(zip(basis(order), coords)))

    # ── Inspection ──

    def coordinates(self) -> list[Rational]:
        """Coefficient vector over basis(order)."""
        lookup = dict(self.coeffs)
        return [lookup.get(b, 0) for b in basis(self.order)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def try_rational(self) -> Rational | None:
        """The rational value of this element, or None if it is irrational."""
        if not self.coeffs:
            return 0
        one = _reduce(self.order, 0)
        lookup = dict(self.coeffs)
        if len(lookup) != len(one):
            return None
        b0, s0 = one[0]
        if b0 not in lookup:
            return None
        value = Fraction(lookup[b0]) / s0
        for b, s in one:
            if lookup.get(b) != value * s:
                return None
        return _normalize(value)

    def try_integer(self) -> int | None:
        value = self.try_rational()
        if value is None or (isinstance(value, Fraction) and value.denominator != 1):
            return None
        return int(value)

    # ── Order changes ──

    def lift(self, order: int) -> Cyclotomic:
        """The same value viewed in Q(zeta_order); order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order:
            raise CyclotomicError(f"Cannot lift order {self.order} to {order}", order=order)
        factor = order // self.order
        return Cyclotomic.from_raw(order, {(e * factor) % order: c for e, c in self.coeffs})

    def restrict(self, order: int) -> Cyclotomic:
        """Project back into Q(zeta_order) for a divisor order of self.order."""
        if order == self.order:
            return self
        if self.order % order:
            raise CyclotomicError(f"Order {order} does not divide {self.order}", order=order)
        from .linalg import LinalgError, solve_linear

        images = [Cyclotomic(order, ((b, 1),)).lift(self.order).coordinates() for b in basis(order)]
        columns = [list(row) for row in zip(*images)]
        try:
            coords = solve_linear(columns, self.coordinates())
        except LinalgError as e:
            raise CyclotomicError(f"Value does not lie in Q(zeta_{order})", order=order) from e
        return Cyclotomic.from_coordinates(order, coords)

    # ── Field operations ──

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, tuple((e, -c) for e, c in self.coeffs))

    def __add__(self, other: Scalar) -> Cyclotomic:
        other = as_cyclotomic(other)
        n = _lcm(self.order, other.order)
        raw: dict[int, Rational] = {}
        for e, c in self.lift(n).coeffs:
            raw[e] = c
        for e, c in other.lift(n).coeffs:
            raw[e] = raw.get(e, 0) + c
        return Cyclotomic(n, tuple(sorted((e, _normalize(c)) for e, c in raw.items() if c)))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> Cyclotomic:
        return self + (-as_cyclotomic(other))

    def __rsub__(self, other: Scalar) -> Cyclotomic:
        return as_cyclotomic(other) - self

    def scale(self, r: Rational) -> Cyclotomic:
        value = to_rational(r)
        if value is None:
            raise TypeError(f"Cannot scale by {r!r}")
        r = value
        if not r:
            return Cyclotomic(self.order)
        return Cyclotomic(self.order, tuple((e, _normalize(c * r)) for e, c in self.coeffs))

    def __mul__(self, other: Scalar) -> Cyclotomic:
        r = to_rational(other)
        if r is not None:
            return self.scale(r)
        other = as_cyclotomic(other)
        if other.order == 1:
            return self.scale(dict(other.coeffs).get(0, 0))
        if self.order == 1:
            return other.scale(dict(self.coeffs).get(0, 0))
        n = _lcm(self.order, other.order)
        raw: dict[int, Rational] = {}
        right = other.lift(n).coeffs
        for e1, c1 in self.lift(n).coeffs:
            for e2, c2 in right:
                k = (e1 + e2) % n
                raw[k] = raw.get(k, 0) + c1 * c2
        return Cyclotomic.from_raw(n, raw)

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if not self.coeffs:
            raise CyclotomicError("Division by zero", order=self.order)
        if len(self.coeffs) == 1:
            e, c = self.coeffs[0]
            return Cyclotomic.from_raw(self.order, {(-e) % self.order: Fraction(1) / c})
        r = self.try_rational()
        if r is not None:
            return rational(Fraction(1) / r).lift(self.order)
        from .linalg import solve_linear

        n = self.order
        columns_by_basis = []
        for b in basis(n):
            shifted = Cyclotomic.from_raw(n, {(e + b) % n: c for e, c in self.coeffs})
            columns_by_basis.append(shifted.coordinates())
        system = [list(row) for row in zip(*columns_by_basis)]
        coords = solve_linear(system, rational(1).lift(n).coordinates())
        return Cyclotomic.from_coordinates(n, coords)

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        r = to_rational(other)
        if r is not None:
            if not r:
                raise CyclotomicError("Division by zero", order=self.order)
            return self.scale(Fraction(1) / r)
        return self * as_cyclotomic(other).inverse()

    def __rtruediv__(self, other: Scalar) -> Cyclotomic:
        return as_cyclotomic(other) * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            return self.inverse() ** (-k)
        result = rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ── Galois action ──

    def galois(self, k: int) -> Cyclotomic:
        """Apply the automorphism zeta_n -> zeta_n^k."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise CyclotomicError(f"Galois index {k} is not coprime to {n}", order=n)
        return Cyclotomic.from_raw(n, {(e * k) % n: c for e, c in self.coeffs})

    def conj(self) -> Cyclotomic:
        if self.order <= 2:
            return self
        return self.galois(self.order - 1)

    # ── Comparison and rendering ──

    def __eq__(self, other: object) -> bool:
        r = to_rational(other)
        if r is not None:
            other = rational(r)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        n = _lcm(self.order, other.order)
        return self.lift(n).coeffs == other.lift(n).coeffs

    def __hash__(self) -> int:
        # equal values of different orders share a conductor form
        if self._hash is None:
            value = self.try_rational()
            if value is not None:
                h = hash(value)
            else:
                reduced = self.minimal()
                h = hash((reduced.order, reduced.coeffs))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def conductor(self) -> int:
        """Smallest d with this value in Q(zeta_d), odd d preferred over 2d."""
        n = self.order
        for d in divisors(n):
            kernel = (k for k in range(1, n, d) if math.gcd(k, n) == 1)
            if all(self.galois(k) == self for k in kernel):
                return d
        return n

    def minimal(self) -> Cyclotomic:
        """The same value in Q(zeta_conductor)."""
        return self.restrict(self.conductor())

    def __str__(self) -> str:
        value = self.try_rational()
        if value is not None:
            return str(value)
        parts = []
        for e, c in self.coeffs:
            parts.append(f"{c}*z{self.order}^{e}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {self})"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def to_rational(value: object) -> Rational | None:
    """value as an int or Fraction when it is a rational scalar, sympy integers included."""
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, numbers.Rational):
        return _normalize(Fraction(int(value.numerator), int(value.denominator)))
    return None


def as_cyclotomic(value: Scalar) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    r = to_rational(value)
    if r is not None:
        return rational(r)
    raise TypeError(f"Cannot interpret {value!r} as a cyclotomic number")


def common_order(values: Iterable[Scalar]) -> int:
    n = 1
    for v in values:
        if isinstance(v, Cyclotomic):
            n = _lcm(n, v.order)
    return n


def render_pair(expected: Scalar, actual: Scalar) -> tuple[str, str]:
    """Render two values in a common order so equal values give equal strings."""
    n = common_order([expected, actual])
    return str(as_cyclotomic(expected).lift(n)), str(as_cyclotomic(actual).lift(n))


def dot(left: Iterable[Scalar], right: Iterable[Scalar]) -> Cyclotomic:
    """Sum of pairwise products with a single canonical reduction at the end."""
    pairs = [(as_cyclotomic(a), as_cyclotomic(b)) for a, b in zip(left, right)]
    n = common_order(v for pair in pairs for v in pair)
    raw: dict[int, Rational] = {}
    for a, b in pairs:
        if not a.coeffs or not b.coeffs:
            continue
        right_terms = b.lift(n).coeffs
        for e1, c1 in a.lift(n).coeffs:
            for e2, c2 in right_terms:
                k = (e1 + e2) % n
                raw[k] = raw.get(k, 0) + c1 * c2
    return Cyclotomic.from_raw(n, raw)


# ── Named constructors ──────────────────────────────────────────────


def rational(value: Rational) -> Cyclotomic:
    r = to_rational(value)
    if r is None:
        raise TypeError(f"Cannot interpret {value!r} as a rational number")
    value = _normalize(Fraction(r))
    return Cyclotomic(1, ((0, value),) if value else ())


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """zeta_n^k = exp(2 pi i k / n)."""
    return Cyclotomic.from_raw(n, {k % n: 1})


def xi(k: int = 1) -> Cyclotomic:
    return zeta(19, k)


@lru_cache(maxsize=None)
def quadratic_residues(p: int = 19) -> tuple[int, ...]:
    """The exponent list {k^2 mod p : 1 <= k <= (p-1)/2} in k order."""
    return tuple((k * k) % p for k in range(1, (p - 1) // 2 + 1))


@lru_cache(maxsize=None)
def gauss_nu() -> Cyclotomic:
    """nu = sum_{k=1..9} xi^{k^2} = (-1 + i sqrt 19)/2."""
    return Cyclotomic.from_raw(19, {r: 1 for r in quadratic_residues(19)})


@lru_cache(maxsize=None)
def sqrt_minus_19() -> Cyclotomic:
    """1 + 2 nu, whose square is -19."""
    return 1 + 2 * gauss_nu()


def a_k(k: int) -> Cyclotomic:
    """2cos(2k pi/9) = zeta_9^k + zeta_9^-k."""
    return zeta(9, k) + zeta(9, -k)


def b_k(k: int) -> Cyclotomic:
    """-2cos(k pi/5) = -(zeta_10^k + zeta_10^-k)."""
    return -(zeta(10, k) + zeta(10, -k))


def in_z_nu(value: Cyclotomic) -> tuple[int, int] | None:
    """Return (x, y) with value = x + y*nu when value lies in Z[nu], else None."""
    value = as_cyclotomic(value)
    if value.order != 19:
        if value.order % 19 and value.order != 1:
            return None
        try:
            value = value.lift(19) if value.order == 1 else value.restrict(19)
        except CyclotomicError:
            return None
    lookup = dict(value.coeffs)
    residues = set(quadratic_residues(19))
    qr = {lookup.get(k, 0) for k in range(1, 19) if k in residues}
    nqr = {lookup.get(k, 0) for k in range(1, 19) if k not in residues}
    if len(qr) != 1 or len(nqr) != 1:
        return None
    c_qr, c_nqr = qr.pop(), nqr.pop()
    # 1 = -(sum of all 18 roots), nu = sum over residues.
    x, y = -Fraction(c_nqr), Fraction(c_qr) - Fraction(c_nqr)
    if x.denominator != 1 or y.denominator != 1:
        return None
    return int(x), int(y)


# ── Operation surface ───────────────────────────────────────────────


def arith(a: Scalar, b: Scalar, op: ArithOp | str) -> Cyclotomic:
    """Apply a field operation; mixed orders are lifted to their lcm."""
    handlers = {
        ArithOp.ADD: lambda x, y: x + y,
        ArithOp.SUB: lambda x, y: x - y,
        ArithOp.MUL: lambda x, y: x * y,
        ArithOp.DIV: lambda x, y: x / y,
    }
    return handlers[ArithOp(op)](as_cyclotomic(a), as_cyclotomic(b))


def conj(a: Scalar) -> Cyclotomic:
    return as_cyclotomic(a).conj()


def galois(a: Scalar, k: int) -> Cyclotomic:
    return as_cyclotomic(a).galois(k)


def try_rational(a: Scalar) -> Rational | None:
    return as_cyclotomic(a).try_rational()


def try_integer(a: Scalar) -> int | None:
    return as_cyclotomic(a).try_integer()
