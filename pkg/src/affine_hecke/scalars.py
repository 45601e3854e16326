"""Exact scalars: Laurent rational functions in a formal variable ``u``.

The Hecke parameter is kept formal, ``q = u**D``, where the integer ``D``
(the *context denominator*) makes every fractional power of ``q`` that a
computation touches an integral power of ``u``.  Values are elements of the
field ``Q(u)`` held in a canonical form, so equality is exact and cheap.

Polynomial arithmetic is delegated to FLINT (``python-flint``); the
canonical-form bookkeeping and the Laurent shifts live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from flint import fmpq, fmpq_poly

Rational = Union[int, Fraction]

_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])


class ScalarError(ArithmeticError):
    """Base class for exact-scalar failures."""


class NotRepresentableError(ScalarError, ValueError):
    """A power of ``q`` does not live in the current context."""


class PoleError(ScalarError, ZeroDivisionError):
    """Division by zero, or evaluation at a pole."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or an integer string) into a ``Fraction``.

    >>> parse_rational("2/3")
    Fraction(2, 3)
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    s = text.strip()
    if not s:
        raise ValueError("empty rational string")
    if "/" in s:
        p, _, d = s.partition("/")
        try:
            num, den = int(p), int(d)
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def format_rational(x: Rational) -> str:
    return str(Fraction(x))


def _to_fmpq(x: Rational) -> fmpq:
    x = Fraction(x)
    return fmpq(x.numerator, x.denominator)


def _to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _low_degree(p: fmpq_poly) -> int:
    i = 0
    while p[i] == 0:
        i += 1
    return i


def _stretch(p: fmpq_poly, m: int) -> fmpq_poly:
    """Substitute ``u -> u**m``."""
    if m == 1 or p.degree() <= 0:
        return p
    coeffs = p.coeffs()
    out = [0] * ((len(coeffs) - 1) * m + 1)
    for k, c in enumerate(coeffs):
        if c != 0:
            out[k * m] = c
    return fmpq_poly(out)


class LaurentPoly:
    """A finitely supported map ``exponent of u -> nonzero rational``."""

    __slots__ = ("shift", "poly")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        terms = {e: Fraction(c) for e, c in (terms or {}).items() if c != 0}
        if not terms:
            self.shift, self.poly = 0, _ZERO
            return
        lo = min(terms)
        coeffs = [0] * (max(terms) - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = _to_fmpq(c)
        self.shift, self.poly = lo, fmpq_poly(coeffs)

    @classmethod
    def _raw(cls, shift: int, poly: fmpq_poly) -> "LaurentPoly":
        obj = cls.__new__(cls)
        if poly.is_zero():
            obj.shift, obj.poly = 0, _ZERO
        else:
            k = _low_degree(poly)
            obj.shift, obj.poly = shift + k, poly.right_shift(k) if k else poly
        return obj

    def terms(self) -> dict[int, Fraction]:
        return {
            self.shift + k: _to_fraction(c)
            for k, c in enumerate(self.poly.coeffs())
            if c != 0
        }

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        s = min(self.shift, other.shift)
        return LaurentPoly._raw(
            s,
            self.poly.left_shift(self.shift - s) + other.poly.left_shift(other.shift - s),
        )

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.shift, -self.poly)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly._raw(self.shift + other.shift, self.poly * other.poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.shift, tuple(self.poly.coeffs())))

    def evaluate(self, u0: Rational) -> Fraction:
        u0 = Fraction(u0)
        acc = _to_fraction(self.poly(_to_fmpq(u0)))
        if self.shift:
            if u0 == 0:
                if self.shift < 0 and acc != 0:
                    raise PoleError("Laurent polynomial has a pole at u=0")
            acc *= u0 ** self.shift
        return acc

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms()!r})"


class FieldElem:
    """Element of ``Q(u)`` with ``q = u**D``.

    Canonical form: ``u**s * num(u) / den(u)`` with ``num(0) != 0`` (or
    ``num == 0``), ``den`` monic with ``den(0) != 0`` and ``gcd(num, den) = 1``.
    Instances are immutable.
    """

    __slots__ = ("D", "_s", "_n", "_d", "_hash")

    def __init__(self, D: int, s: int, n: fmpq_poly, d: fmpq_poly):
        # trusted constructor: arguments must already be canonical
        self.D = D
        self._s = s
        self._n = n
        self._d = d
        self._hash = None

    # ---- construction -------------------------------------------------
    @classmethod
    def const(cls, D: int, x: Rational) -> "FieldElem":
        if x == 0:
            return cls(D, 0, _ZERO, _ONE)
        return cls(D, 0, fmpq_poly([_to_fmpq(x)]), _ONE)

    @classmethod
    def monomial(cls, D: int, k: int, coeff: Rational = 1) -> "FieldElem":
        if coeff == 0:
            return cls(D, 0, _ZERO, _ONE)
        return cls(D, k, fmpq_poly([_to_fmpq(coeff)]), _ONE)

    @classmethod
    def from_laurent(cls, D: int, num: LaurentPoly, den: LaurentPoly | None = None) -> "FieldElem":
        if den is None:
            return cls(D, num.shift, num.poly, _ONE)
        if den.is_zero():
            raise PoleError("zero denominator")
        return cls._make(D, num.shift - den.shift, num.poly, den.poly)

    @classmethod
    def _make(cls, D: int, s: int, n: fmpq_poly, d: fmpq_poly) -> "FieldElem":
        """Canonicalise ``u**s * n / d`` (``d`` nonzero, possibly non-monic)."""
        if n.is_zero():
            return cls(D, 0, _ZERO, _ONE)
        k = _low_degree(n)
        if k:
            n = n.right_shift(k)
            s += k
        k = _low_degree(d)
        if k:
            d = d.right_shift(k)
            s -= k
        if d.degree() > 0:
            g = n.gcd(d)
            if not g.is_one():
                n = n / g
                d = d / g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
        return cls(D, s, n, d)

    # ---- inspection ---------------------------------------------------
    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly._raw(self._s, self._n)

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly._raw(0, self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def __bool__(self) -> bool:
        return not self._n.is_zero()

    def is_one(self) -> bool:
        return self._s == 0 and self._n.is_one() and self._d.is_one()

    def is_laurent(self) -> bool:
        return self._d.is_one()

    def as_monomial(self) -> tuple[int, Fraction] | None:
        """``(k, c)`` when the value is ``c * u**k``, else ``None``."""
        if self._d.is_one() and self._n.degree() == 0:
            return self._s, _to_fraction(self._n[0])
        return None

    # ---- context changes ---------------------------------------------
    def lift(self, D: int) -> "FieldElem":
        """The same value expressed in a context with denominator ``D``."""
        if D == self.D:
            return self
        if D % self.D:
            raise NotRepresentableError(f"cannot lift D={self.D} into D={D}")
        m = D // self.D
        return FieldElem(D, self._s * m, _stretch(self._n, m), _stretch(self._d, m))

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElem.const(self.D, other)
        return NotImplemented

    @staticmethod
    def _common(a: "FieldElem", b: "FieldElem") -> tuple["FieldElem", "FieldElem"]:
        if a.D == b.D:
            return a, b
        D = a.D * b.D // math.gcd(a.D, b.D)
        return a.lift(D), b.lift(D)

    # ---- arithmetic ---------------------------------------------------
    def __neg__(self) -> "FieldElem":
        return FieldElem(self.D, self._s, -self._n, self._d)

    def __add__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        if a._n.is_zero():
            return b
        if b._n.is_zero():
            return a
        s = min(a._s, b._s)
        an = a._n.left_shift(a._s - s) if a._s != s else a._n
        bn = b._n.left_shift(b._s - s) if b._s != s else b._n
        if a._d == b._d:
            n = an + bn
            if a._d.is_one():
                if n.is_zero():
                    return FieldElem(a.D, 0, _ZERO, _ONE)
                k = _low_degree(n)
                return FieldElem(a.D, s + k, n.right_shift(k) if k else n, _ONE)
            return FieldElem._make(a.D, s, n, a._d)
        g = a._d.gcd(b._d)
        if g.is_one():
            n = an * b._d + bn * a._d
            return FieldElem._make(a.D, s, n, a._d * b._d)
        bd_g = b._d / g
        n = an * bd_g + bn * (a._d / g)
        return FieldElem._make(a.D, s, n, a._d * bd_g)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(self, other)
        if a._n.is_zero() or b._n.is_zero():
            return FieldElem(a.D, 0, _ZERO, _ONE)
        s = a._s + b._s
        if a._d.is_one() and b._d.is_one():
            return FieldElem(a.D, s, a._n * b._n, _ONE)
        an, ad, bn, bd = a._n, a._d, b._n, b._d
        if not bd.is_one():
            g = an.gcd(bd)
            if not g.is_one():
                an, bd = an / g, bd / g
        if not ad.is_one():
            g = bn.gcd(ad)
            if not g.is_one():
                bn, ad = bn / g, ad / g
        n = an * bn
        d = ad * bd
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        return FieldElem(a.D, s, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self._n.is_zero():
            raise PoleError("division by zero in Q(u)")
        lc = self._n.leading_coefficient()
        if lc == 1:
            return FieldElem(self.D, -self._s, self._d, self._n)
        return FieldElem(self.D, -self._s, self._d / lc, self._n / lc)

    def __truediv__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldElem":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "FieldElem":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self._d.is_one() and self._n.degree() == 0:
            return FieldElem(self.D, self._s * k, self._n ** k, _ONE)
        result = FieldElem.const(self.D, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self._n.is_zero()
            return self._s == 0 and self._d.is_one() and self._n == fmpq_poly([_to_fmpq(other)])
        if not isinstance(other, FieldElem):
            return NotImplemented
        a, b = self._common(self, other)
        return a._s == b._s and a._n == b._n and a._d == b._d

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def _reduced(self) -> tuple:
        """Minimal-context form, used so that equal values hash equally."""
        if self._n.is_zero():
            return (1, 0, (), (1,))
        exps = [self._s, self.D]
        exps.extend(k for k, c in enumerate(self._n.coeffs()) if c != 0)
        exps.extend(k for k, c in enumerate(self._d.coeffs()) if c != 0)
        g = reduce(math.gcd, exps)
        n = [str(c) for c in self._n.coeffs()[::g]]
        d = [str(c) for c in self._d.coeffs()[::g]]
        return (self.D // g, self._s // g, tuple(n), tuple(d))

    def __hash__(self) -> int:
        if self._hash is None:
            r = self._reduced()
            if r[0] == 1 and r[1] == 0 and len(r[2]) == 1 and r[3] == ("1",):
                # keep hash(FieldElem(c)) == hash(c) for rational constants
                self._hash = hash(parse_rational(r[2][0]))
            else:
                self._hash = hash(r)
        return self._hash

    # ---- evaluation and display --------------------------------------
    def evaluate(self, u0: Rational) -> Fraction:
        """Exact substitution ``u <- u0``."""
        den = self.den.evaluate(u0)
        if den == 0:
            raise PoleError(f"pole at u={Fraction(u0)}")
        num = self.num.evaluate(u0)
        return num / den

    def __repr__(self) -> str:
        return f"FieldElem({self})"

    def __str__(self) -> str:
        num = _format_laurent(self.num.terms(), self.D)
        if self._d.is_one():
            return num
        return f"({num})/({_format_laurent(self.den.terms(), self.D)})"


def _format_laurent(terms: Mapping[int, Fraction], D: int) -> str:
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        qe = Fraction(e, D)
        if qe == 0:
            mono = ""
        elif qe == 1:
            mono = "q"
        else:
            mono = f"q^{qe}" if qe.denominator == 1 else f"q^({qe})"
        if mono and c == 1:
            tok = mono
        elif mono and c == -1:
            tok = "-" + mono
        elif mono:
            tok = f"{c}*{mono}"
        else:
            tok = str(c)
        parts.append(tok)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


@dataclass(frozen=True)
class QContext:
    """Session denominator: the formal variable is ``u`` with ``q = u**D``."""

    D: int = 1

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 1:
            raise ValueError(f"context denominator must be a positive integer, got {self.D!r}")

    def zero(self) -> FieldElem:
        return FieldElem.const(self.D, 0)

    def one(self) -> FieldElem:
        return FieldElem.const(self.D, 1)

    def const(self, x: Rational) -> FieldElem:
        return FieldElem.const(self.D, x)

    def q(self) -> FieldElem:
        return FieldElem.monomial(self.D, self.D)

    def q_power(self, e: Rational) -> FieldElem:
        return q_power(self, e)

    def qmq(self) -> FieldElem:
        """``q - q**-1``."""
        return FieldElem(self.D, -self.D, fmpq_poly([-1] + [0] * (2 * self.D - 1) + [1]), _ONE)


def make_context(exponents: Iterable[Rational]) -> QContext:
    """Smallest context in which every ``q**e`` (``e`` in ``exponents``) is a power of ``u``."""
    exps = [Fraction(e) for e in exponents]
    if not exps:
        raise ValueError("make_context needs at least one exponent")
    D = 1
    for e in exps:
        D = D * e.denominator // math.gcd(D, e.denominator)
    return QContext(D)


def q_power(ctx: QContext, e: Rational) -> FieldElem:
    e = Fraction(e)
    k = e * ctx.D
    if k.denominator != 1:
        need = ctx.D * e.denominator // math.gcd(ctx.D, e.denominator)
        raise NotRepresentableError(
            f"q^{e} is not a power of u in context D={ctx.D}; requires D divisible by {need}"
        )
    return FieldElem.monomial(ctx.D, int(k))


def field_arithmetic(a: FieldElem, b: FieldElem, op: str):
    """Dispatch helper: ``op`` is one of add, sub, mul, div, eq."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def evaluate_numeric(x: FieldElem, u0: Rational) -> Fraction:
    return x.evaluate(u0)
