"""Exact coefficient arithmetic for tied-link invariants.

Four layers, each built on the previous one:

* :class:`LaurentU` -- Laurent polynomials in ``u`` with rational coefficients.
* :class:`TracePoly` -- polynomials in the trace parameters ``A`` and ``B``
  whose coefficients are :class:`LaurentU`.
* :class:`RationalFn` -- quotients of trace polynomials, kept reduced.
* :class:`ExtScalar` -- ``p + q*w`` with ``w**2 == L = (A + B - u*B)/(u*A)``.

All values are immutable. Rational-function GCDs are delegated to SymPy's
sparse polynomial rings; everything else is plain dictionaries.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Mapping

from sympy.polys.domains import QQ
from sympy.polys.fields import FracField

__all__ = [
    "LaurentU",
    "TracePoly",
    "RationalFn",
    "ExtScalar",
    "EvaluationError",
    "U",
    "A",
    "B",
    "L",
    "W",
    "laurent_mul",
    "ext_mul",
    "ext_pow_w",
    "rfn_eval",
    "monomial_key",
]


class EvaluationError(ZeroDivisionError):
    """A denominator vanished at the requested evaluation point."""


def _norm(c):
    """Collapse integral Fractions to ``int`` so dict keys and output stay tidy."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _coerce_number(c):
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def _fmt_number(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _latex_number(c) -> str:
    if isinstance(c, Fraction):
        return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
    return str(c)


# ---------------------------------------------------------------------------
# Laurent polynomials in u
# ---------------------------------------------------------------------------


class LaurentU:
    """Laurent polynomial in ``u`` over the rationals.

    ``terms`` maps an integer exponent to a nonzero rational coefficient.

    >>> (1 + U) * (1 - U)
    LaurentU('1 - u^2')
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        t = {}
        if terms:
            for k, c in terms.items():
                c = _coerce_number(c)
                if c:
                    t[int(k)] = c
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "LaurentU":
        # caller guarantees: int keys, nonzero normalized coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentU":
        c = _coerce_number(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentU":
        c = _coerce_number(c)
        return cls._raw({k: c} if c else {})

    @property
    def terms(self) -> dict[int, object]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def is_one(self) -> bool:
        return self._t == {0: 1}

    def min_degree(self) -> int:
        return min(self._t) if self._t else 0

    def max_degree(self) -> int:
        return max(self._t) if self._t else 0

    def _lift(self, other):
        if isinstance(other, LaurentU):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentU.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for k, c in o._t.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = _norm(s)
            else:
                t.pop(k, None)
        return LaurentU._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentU._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self._t, o._t
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return LaurentU._raw({ka + kb: _norm(ca * cb)})
        t: dict[int, object] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                t[k] = t.get(k, 0) + ca * cb
        return LaurentU._raw({k: _norm(c) for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials are invertible in the Laurent ring")
            (k, c), = self._t.items()
            return LaurentU._raw({k * e: _norm(Fraction(c) ** e)})
        result = LaurentU.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def evaluate(self, u0) -> Fraction:
        u0 = Fraction(u0)
        if u0 == 0 and self._t and min(self._t) < 0:
            raise EvaluationError("negative power of u at u = 0")
        return sum((c * u0**k for k, c in self._t.items()), Fraction(0))

    def to_string(self, var: str = "u") -> str:
        """Plain text with ascending exponents, e.g. ``u^-1 - 1``."""
        if not self._t:
            return "0"
        parts = []
        for k in sorted(self._t):
            c = self._t[k]
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = _fmt_number(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{_fmt_number(mag)}*{power}"
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_latex(self) -> str:
        if not self._t:
            return "0"
        out = ""
        for i, k in enumerate(sorted(self._t, reverse=True)):
            c = self._t[k]
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = _latex_number(mag)
            else:
                power = "u" if k == 1 else f"u^{{{k}}}"
                body = power if mag == 1 else _latex_number(mag) + power
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentU({self.to_string()!r})"


ONE_U = LaurentU.const(1)
U = LaurentU.monomial(1)


def laurent_mul(a: LaurentU, b: LaurentU) -> LaurentU:
    return a * b


# ---------------------------------------------------------------------------
# Polynomials in A, B over LaurentU
# ---------------------------------------------------------------------------


def monomial_key(a: int, b: int, k: int = 0) -> tuple[int, int, int]:
    """Sort key of ``A^a B^b u^k``: graded lex with A > B, ties by u-degree."""
    return (a + b, a, k)


class TracePoly:
    """Polynomial in ``A`` and ``B`` with :class:`LaurentU` coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        t = {}
        if terms:
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError("A and B exponents must be non-negative")
                if not isinstance(c, LaurentU):
                    c = LaurentU.const(c)
                if c:
                    key = (int(a), int(b))
                    t[key] = t[key] + c if key in t else c
                    if not t[key]:
                        del t[key]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "TracePoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "TracePoly":
        if not isinstance(c, LaurentU):
            c = LaurentU.const(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "TracePoly":
        if not isinstance(c, LaurentU):
            c = LaurentU.const(c)
        return cls._raw({(a, b): c} if c else {})

    @property
    def terms(self) -> dict[tuple[int, int], LaurentU]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def _lift(self, other):
        if isinstance(other, TracePoly):
            return other
        if isinstance(other, LaurentU) or (
            isinstance(other, (int, Fraction)) and not isinstance(other, bool)
        ):
            return TracePoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for key, c in o._t.items():
            if key in t:
                s = t[key] + c
                if s:
                    t[key] = s
                else:
                    del t[key]
            else:
                t[key] = c
        return TracePoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return TracePoly._raw({key: -c for key, c in self._t.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentU):
            if not other:
                return TracePoly._raw({})
            return TracePoly._raw({key: c * other for key, c in self._t.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        t: dict = {}
        for (a1, b1), c1 in self._t.items():
            for (a2, b2), c2 in o._t.items():
                key = (a1 + a2, b1 + b2)
                t[key] = t[key] + c1 * c2 if key in t else c1 * c2
        return TracePoly._raw({k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = TracePoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def shift(self, da: int, db: int) -> "TracePoly":
        """Multiply by ``A**da * B**db``."""
        return TracePoly._raw({(a + da, b + db): c for (a, b), c in self._t.items()})

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def evaluate(self, u0, a0, b0) -> Fraction:
        a0, b0 = Fraction(a0), Fraction(b0)
        return sum(
            (c.evaluate(u0) * a0**a * b0**b for (a, b), c in self._t.items()),
            Fraction(0),
        )

    def sorted_keys(self) -> list[tuple[int, int]]:
        return sorted(self._t, key=lambda ab: monomial_key(*ab), reverse=True)

    def to_string(self, names: tuple[str, str] = ("A", "B")) -> str:
        if not self._t:
            return "0"
        pieces = []
        for a, b in self.sorted_keys():
            c = self._t[(a, b)]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in ((names[0], a), (names[1], b)) if e
            )
            neg = False
            if len(c._t) == 1:
                (k, cc), = c._t.items()
                neg = cc < 0
                coeff = (-c if neg else c).to_string()
                if mono and coeff == "1":
                    body = mono
                else:
                    body = f"{coeff}*{mono}" if mono else coeff
            else:
                coeff = c.to_string()
                body = f"({coeff})*{mono}" if mono else coeff
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_latex(self, names: tuple[str, str] = (r"\mathsf{A}", r"\mathsf{B}")) -> str:
        if not self._t:
            return "0"
        out = ""
        for i, (a, b) in enumerate(self.sorted_keys()):
            c = self._t[(a, b)]
            mono = "".join(
                v if e == 1 else f"{v}^{{{e}}}" for v, e in ((names[0], a), (names[1], b)) if e
            )
            neg = False
            if len(c._t) == 1:
                (k, cc), = c._t.items()
                neg = cc < 0
                coeff = (-c if neg else c).to_latex()
                body = mono if (mono and coeff == "1") else coeff + mono
            else:
                body = f"({c.to_latex()}){mono}" if mono else c.to_latex()
            if i == 0:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"TracePoly({self.to_string()!r})"


A = TracePoly.monomial(1, 0)
B = TracePoly.monomial(0, 1)


# ---------------------------------------------------------------------------
# Rational functions in u, A, B
# ---------------------------------------------------------------------------

_FIELD = FracField(("u", "A", "B"), QQ)
_RING = _FIELD.ring


def _qq(c):
    if isinstance(c, Fraction):
        return QQ(c.numerator, c.denominator)
    return QQ(c)


def _from_mpq(c):
    return _norm(Fraction(int(c.numerator), int(c.denominator)))


def _poly_from_trace(p: TracePoly):
    """Return ``(poly, shift)`` with ``p == poly / u**shift``, poly free of negative powers."""
    if not p._t:
        return _RING.zero, 0
    low = min(c.min_degree() for c in p._t.values())
    shift = -low if low < 0 else 0
    d = {}
    for (a, b), c in p._t.items():
        for k, cc in c._t.items():
            d[(k + shift, a, b)] = _qq(cc)
    return _RING.from_dict(d), shift


def _trace_from_poly(poly) -> TracePoly:
    t: dict = {}
    for (k, a, b), c in poly.terms():
        t.setdefault((a, b), {})[k] = _from_mpq(c)
    return TracePoly._raw({key: LaurentU._raw(v) for key, v in t.items()})


def _leading_coeff(poly):
    (k, a, b), c = max(poly.terms(), key=lambda mc: monomial_key(mc[0][1], mc[0][2], mc[0][0]))
    return c


class RationalFn:
    """Reduced quotient of two polynomials in ``u, A, B``.

    The denominator is a primitive integer polynomial whose leading
    coefficient under :func:`monomial_key` is positive, so two equal
    functions always have identical representations.
    """

    __slots__ = ("_f",)

    def __init__(self, numerator=0, denominator=1):
        num = _as_frac(numerator)
        den = _as_frac(denominator)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self._f = _canonical(num / den)

    @classmethod
    def _wrap(cls, f) -> "RationalFn":
        obj = cls.__new__(cls)
        obj._f = _canonical(f)
        return obj

    @property
    def numerator(self) -> TracePoly:
        return _trace_from_poly(self._f.numer)

    @property
    def denominator(self) -> TracePoly:
        return _trace_from_poly(self._f.denom)

    def is_zero(self) -> bool:
        return not self._f

    def is_polynomial(self) -> bool:
        return self._f.denom.is_ground

    def __add__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        return RationalFn._wrap(self._f + o._f)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._wrap(-self._f)

    def __sub__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        return RationalFn._wrap(self._f - o._f)

    def __rsub__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        return RationalFn._wrap(o._f - self._f)

    def __mul__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        return RationalFn._wrap(self._f * o._f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        if not o._f:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn._wrap(self._f / o._f)

    def __rtruediv__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            if not self._f:
                raise ZeroDivisionError("zero to a negative power")
            return RationalFn._wrap((1 / self._f) ** (-e))
        return RationalFn._wrap(self._f**e)

    def __eq__(self, other):
        o = _lift_rfn(other)
        if o is None:
            return NotImplemented
        # cross-multiplication; canonical forms make this structural as well
        return self._f.numer * o._f.denom == o._f.numer * self._f.denom

    def __hash__(self):
        return hash((self._f.numer, self._f.denom))

    def __bool__(self):
        return bool(self._f)

    def evaluate(self, u0, a0, b0) -> Fraction:
        point = (Fraction(u0), Fraction(a0), Fraction(b0))
        den = _eval_poly(self._f.denom, point)
        if den == 0:
            raise EvaluationError(f"denominator vanishes at u={point[0]}, A={point[1]}, B={point[2]}")
        return _eval_poly(self._f.numer, point) / den

    def to_string(self, names: tuple[str, str] = ("A", "B")) -> str:
        num = _trace_from_poly(self._f.numer).to_string(names)
        den = _trace_from_poly(self._f.denom)
        if den == 1:
            return num
        den_s = den.to_string(names)
        if " " in num:
            num = f"({num})"
        if " " in den_s or "*" in den_s:
            den_s = f"({den_s})"
        return f"{num}/{den_s}"

    def to_latex(self, names: tuple[str, str] = (r"\mathsf{A}", r"\mathsf{B}")) -> str:
        num = _trace_from_poly(self._f.numer).to_latex(names)
        den = _trace_from_poly(self._f.denom)
        if den == 1:
            return num
        return rf"\frac{{{num}}}{{{den.to_latex(names)}}}"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"RationalFn({self.to_string()!r})"


def _eval_poly(poly, point) -> Fraction:
    u0, a0, b0 = point
    return sum(
        (_from_mpq(c) * u0**k * a0**a * b0**b for (k, a, b), c in poly.terms()),
        Fraction(0),
    )


def _canonical(f):
    if f and _leading_coeff(f.denom) < 0:
        return _FIELD.raw_new(-f.numer, -f.denom)
    return f


def _as_frac(x):
    if isinstance(x, RationalFn):
        return x._f
    if isinstance(x, TracePoly):
        poly, shift = _poly_from_trace(x)
        return _FIELD.new(poly, _RING.gens[0] ** shift)
    if isinstance(x, LaurentU):
        return _as_frac(TracePoly.const(x))
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return _FIELD(_qq(x))
    raise TypeError(f"cannot convert {type(x).__name__} to a rational function")


def _lift_rfn(x):
    if isinstance(x, RationalFn):
        return x
    try:
        return RationalFn._wrap(_as_frac(x))
    except TypeError:
        return None


def rfn_eval(r: RationalFn, u0, a0, b0) -> Fraction:
    """Exact value of ``r`` at ``(u0, A0, B0)``; raises :class:`EvaluationError` at a pole."""
    return _lift_rfn(r).evaluate(u0, a0, b0)


L = RationalFn(A + B - U * B, U * A)


# ---------------------------------------------------------------------------
# Quadratic extension by w, w**2 = L
# ---------------------------------------------------------------------------


class ExtScalar:
    """``even + odd*w`` with ``w*w == L``.

    L is not a square in the rational-function field, so the pair
    ``(even, odd)`` is unique and equality is componentwise.
    """

    __slots__ = ("even", "odd")

    def __init__(self, even=0, odd=0):
        self.even = even if isinstance(even, RationalFn) else RationalFn(even)
        self.odd = odd if isinstance(odd, RationalFn) else RationalFn(odd)

    def _lift(self, other):
        if isinstance(other, ExtScalar):
            return other
        r = _lift_rfn(other)
        return None if r is None else ExtScalar(r, _ZERO)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ExtScalar(self.even + o.even, self.odd + o.odd)

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar(-self.even, -self.odd)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ExtScalar(self.even - o.even, self.odd - o.odd)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p1, q1, p2, q2 = self.even, self.odd, o.even, o.odd
        even = p1 * p2
        if q1 and q2:
            even = even + q1 * q2 * L
        odd = _ZERO
        if p1 and q2:
            odd = odd + p1 * q2
        if q1 and p2:
            odd = odd + q1 * p2
        return ExtScalar(even, odd)

    __rmul__ = __mul__

    def conj(self) -> "ExtScalar":
        return ExtScalar(self.even, -self.odd)

    def norm(self) -> RationalFn:
        """``self * conj(self)``, an element of the base field."""
        return self.even * self.even - self.odd * self.odd * L

    def inverse(self) -> "ExtScalar":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in the quadratic extension")
        return ExtScalar(self.even / n, -self.odd / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.odd:
            return ExtScalar(self.even / o.even, self.odd / o.even)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = ExtScalar(1)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.even == o.even and self.odd == o.odd

    def __hash__(self):
        return hash((self.even, self.odd))

    def __bool__(self):
        return bool(self.even) or bool(self.odd)

    def is_zero(self) -> bool:
        return not self

    def evaluate(self, u0, a0, b0) -> tuple[Fraction, Fraction]:
        """Values ``(even, odd)`` at a point; the number is ``even + odd*sqrt(L)``."""
        return self.even.evaluate(u0, a0, b0), self.odd.evaluate(u0, a0, b0)

    def to_string(self, names: tuple[str, str] = ("A", "B"), w: str = "w") -> str:
        parts = []
        if self.even:
            parts.append(self.even.to_string(names))
        if self.odd:
            odd = self.odd.to_string(names)
            if odd in ("1", "-1"):
                parts.append(odd[:-1] + w)
            elif " " in odd:
                parts.append(f"({odd})*{w}")
            else:
                parts.append(f"{odd}*{w}")
        if not parts:
            return "0"
        if len(parts) == 2 and not self.even.is_polynomial():
            parts[0] = f"({parts[0]})"
        if len(parts) == 2 and parts[1].startswith("-"):
            return f"{parts[0]} - {parts[1][1:]}"
        return " + ".join(parts)

    def to_latex(self) -> str:
        parts = []
        if self.even:
            parts.append(self.even.to_latex())
        if self.odd:
            odd = self.odd.to_latex()
            if odd == "1":
                odd = ""
            elif " " in odd:
                odd = rf"\left({odd}\right)"
            parts.append(odd + r"\sqrt{\mathsf{L}}")
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"ExtScalar({self.to_string()!r})"


_ZERO = RationalFn(0)
W = ExtScalar(0, 1)


def ext_mul(a: ExtScalar, b: ExtScalar) -> ExtScalar:
    return a * b


def ext_pow_w(k: int) -> ExtScalar:
    """``w**k`` in canonical form; ``L**(k//2)`` times ``w`` when ``k`` is odd."""
    half = L ** (k // 2)
    if k % 2:
        return ExtScalar(_ZERO, half)
    return ExtScalar(half, _ZERO)

