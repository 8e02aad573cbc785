"""Exact arithmetic kernel.

Sparse Laurent polynomials in one variable ``q`` with arbitrary-precision
rational coefficients, gcd-reduced rational functions, and truncated
descending series expansions at ``q = infinity``.

All values are immutable after construction and all operations are pure,
so everything here is safe to share between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class EvalAtZeroWithNegativeExponent(ZeroDivisionError):
    """Evaluation at 0 requested for a polynomial with negative exponents."""


class DivisionByZero(ZeroDivisionError):
    """Denominator of a rational function is the zero polynomial."""


class NotPolynomial(ArithmeticError):
    """A rational function expected to be a polynomial is not one."""


class NotExpandable(ArithmeticError):
    """A descending series expansion at q = infinity does not exist."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"coefficient must be an int or Fraction, got {type(x).__name__}")


class LaurentPoly:
    """A Laurent polynomial in one variable ``q`` over the rationals.

    Stored sparsely as a map from (possibly negative) exponent to nonzero
    coefficient; the zero polynomial is the empty map.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                if not isinstance(exp, int):
                    raise TypeError("exponents must be integers")
                c = _as_fraction(coeff)
                if c != 0:
                    clean[exp] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def q_power(cls, n: int, coeff=1) -> "LaurentPoly":
        """The monomial ``coeff * q**n``."""
        return cls({n: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    # -- inspection ----------------------------------------------------

    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest exponent; undefined for the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    def order(self) -> int:
        """Smallest exponent; undefined for the zero polynomial."""
        if not self._terms:
            raise ValueError("the zero polynomial has no order")
        return min(self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.degree()]

    def is_polynomial(self) -> bool:
        """True if no negative exponent occurs."""
        return self.is_zero() or self.order() >= 0

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``q**n``."""
        return _raw({e + n: c for e, c in self._terms.items()})

    def scale(self, c) -> "LaurentPoly":
        c = _as_fraction(c)
        if c == 0:
            return LaurentPoly.zero()
        return _raw({e: c * v for e, v in self._terms.items()})

    # -- evaluation ----------------------------------------------------

    def evaluate(self, x) -> Fraction:
        """Exact value at a rational point ``x`` (nonzero if negative exponents occur)."""
        x = _as_fraction(x)
        if x == 0 and not self.is_polynomial():
            raise EvalAtZeroWithNegativeExponent(
                "cannot evaluate at 0: negative exponents present")
        total = Fraction(0)
        for exp, c in self._terms.items():
            total += c * x ** exp
        return total

    __call__ = evaluate

    # -- division ------------------------------------------------------

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / other``; raises NotPolynomial if not divisible."""
        other = _coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        quot, rem = _divmod_dense(_dense(self.shift(-self.order())),
                                  _dense(other.shift(-other.order())))
        if any(rem):
            raise NotPolynomial("remainder is nonzero in exact division")
        return _from_dense(quot).shift(self.order() - other.order())

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly({self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms):
            c = self._terms[exp]
            if exp == 0:
                parts.append(str(c))
            elif exp == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{exp}" if c != 1 else f"q^{exp}")
        return " + ".join(parts)


def _raw(terms: dict) -> LaurentPoly:
    """Build without re-validating; callers guarantee nonzero Fractions."""
    p = LaurentPoly()
    object.__setattr__(p, "_terms", terms)
    return p


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")


# -- dense helpers for division and gcd (nonnegative exponents only) ------

def _dense(p: LaurentPoly) -> list:
    """Coefficient list c[0..deg] for a polynomial with order >= 0."""
    if p.is_zero():
        return []
    deg = p.degree()
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e] = c
    return out


def _from_dense(coeffs: list) -> LaurentPoly:
    return _raw({i: c for i, c in enumerate(coeffs) if c})


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _divmod_dense(num: list, den: list):
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        t = c / lead
        quot[i - dd] = t
        for j in range(dd + 1):
            num[i - dd + j] -= t * den[j]
    return _trim(quot), _trim(num)


def _gcd_dense(a: list, b: list) -> list:
    """Monic gcd by the Euclidean algorithm over Q."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _divmod_dense(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of the polynomial parts after clearing q-power factors.

    Pure q-power content is discarded: gcd(q^m * f, q^n * g) is reported as
    gcd(f, g) with f, g of order 0.
    """
    if a.is_zero() and b.is_zero():
        return LaurentPoly.zero()
    if a.is_zero():
        return b.shift(-b.order()).scale(1 / b.leading_coeff())
    if b.is_zero():
        return a.shift(-a.order()).scale(1 / a.leading_coeff())
    g = _gcd_dense(_dense(a.shift(-a.order())), _dense(b.shift(-b.order())))
    return _from_dense(g)


class RationalFn:
    """A gcd-reduced ratio of Laurent polynomials.

    Canonical form: numerator and denominator share no nonconstant factor,
    the denominator has order 0 and leading coefficient 1. With that
    normalization equality of values is structural equality.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num, den=LaurentPoly.one()):
        num = _coerce(num)
        den = _coerce(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            object.__setattr__(self, "_num", LaurentPoly.zero())
            object.__setattr__(self, "_den", LaurentPoly.one())
            return
        g = laurent_gcd(num, den)
        if not g == LaurentPoly.one():
            num = num.divide_exact(g)
            den = den.divide_exact(g)
        # pull the pure q-power and the leading unit out of the denominator
        shift = den.order()
        num = num.shift(-shift)
        den = den.shift(-shift)
        lead = den.leading_coeff()
        if lead != 1:
            num = num.scale(1 / lead)
            den = den.scale(1 / lead)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @property
    def num(self) -> LaurentPoly:
        return self._num

    @property
    def den(self) -> LaurentPoly:
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero()

    # -- field operations ----------------------------------------------

    def __add__(self, other) -> "RationalFn":
        other = _coerce_rf(other)
        return RationalFn(self._num * other._den + other._num * self._den,
                          self._den * other._den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self._num, self._den)

    def __sub__(self, other) -> "RationalFn":
        return self + (-_coerce_rf(other))

    def __rsub__(self, other) -> "RationalFn":
        return _coerce_rf(other) - self

    def __mul__(self, other) -> "RationalFn":
        other = _coerce_rf(other)
        return RationalFn(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        other = _coerce_rf(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFn(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other) -> "RationalFn":
        return _coerce_rf(other) / self

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RationalFn(_coerce(other))
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"RationalFn({self._num!r}, {self._den!r})"

    def __str__(self):
        if self._den == LaurentPoly.one():
            return str(self._num)
        return f"({self._num}) / ({self._den})"

    # -- extraction -----------------------------------------------------

    def to_poly(self) -> LaurentPoly:
        """The Laurent polynomial equal to this value, or NotPolynomial."""
        return self._num.divide_exact(self._den)

    def series_desc(self, cutoff: int) -> "DescSeries":
        """Expansion in descending powers of q, truncated below ``cutoff``.

        Every reduced rational function expands at q = infinity, by long
        division in descending exponent order.
        """
        if self.is_zero():
            return DescSeries(cutoff, LaurentPoly.zero())
        num = self._num
        den = self._den
        dd = den.degree()
        lead = den.leading_coeff()
        out = {}
        rem = num
        while not rem.is_zero():
            e = rem.degree() - dd
            if e < cutoff:
                break
            t = rem.leading_coeff() / lead
            out[e] = t
            rem = rem - den.shift(e).scale(t)
        return DescSeries(cutoff, _raw(out))


def _coerce_rf(x) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    return RationalFn(_coerce(x))


@dataclass(frozen=True)
class DescSeries:
    """A descending power series in q truncated below exponent ``cutoff``."""

    cutoff: int
    terms: LaurentPoly

    def __post_init__(self):
        if not self.terms.is_zero() and self.terms.order() < self.cutoff:
            raise ValueError("series terms below the cutoff")

    def truncate(self, cutoff: int) -> "DescSeries":
        """Drop terms below a higher cutoff."""
        if cutoff < self.cutoff:
            raise ValueError("cannot extend a truncated series")
        kept = {e: c for e, c in self.terms.terms.items() if e >= cutoff}
        return DescSeries(cutoff, LaurentPoly(kept))


# shared constants
ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
Q = LaurentPoly.q_power(1)


def q_pow(n: int) -> LaurentPoly:
    """The monomial q**n."""
    return LaurentPoly.q_power(n)
