"""The tied-link invariant F and the identity checks built on it.

``F(b) = Dbar**(n-1) * w**e(b) * trace(b)`` with ``Dbar = 1/(A*w)`` and
``w*w = L``.  Setting ``z = A`` and ``t = B`` gives the conventional form
of the invariant; :func:`parse_expression` reads formulas written in
either naming.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .braidword import (
    BraidLetter,
    TiedBraid,
    exponent,
    markov_move,
    cyclic_rotate,
    random_braid,
    skein_family,
)
from .btengine import Rewriter, default_rewriter
from .polyfield import A, B, L, U, ExtScalar, RationalFn, TracePoly, W, ext_pow_w

__all__ = [
    "InvariantValue",
    "D_BAR",
    "normalize",
    "invariant_F",
    "ExpressionError",
    "parse_expression",
    "paper_form_equal",
    "SkeinCheck",
    "check_skein",
    "check_markov_invariance",
    "unlink_closed_form",
    "unlink_value",
    "mirror_spot_check",
    "SuiteResult",
    "run_skein_suite",
    "run_markov_suite",
    "run_unlink_suite",
]

ZT_NAMES = ("z", "t")

# 1/(A w) = w/(A L)
D_BAR = ExtScalar(0, RationalFn(1) / (RationalFn(A) * L))


@lru_cache(maxsize=None)
def _dbar_power(k: int) -> ExtScalar:
    return D_BAR**k


@lru_cache(maxsize=None)
def _w_power(k: int) -> ExtScalar:
    return ext_pow_w(k)


@dataclass(frozen=True)
class InvariantValue:
    value: ExtScalar
    strands: int
    exponent: int
    trace: TracePoly | None = field(default=None, compare=False)

    def to_string(self, names: tuple[str, str] = ("A", "B")) -> str:
        return self.value.to_string(names)

    def conventional_form(self) -> str:
        """Rendering in ``u, z, t, w``; accepted back by :func:`parse_expression`."""
        return self.value.to_string(ZT_NAMES)

    def __str__(self):
        return self.to_string()


def normalize(trace: TracePoly, n: int, e: int) -> InvariantValue:
    if n < 1:
        raise ValueError("normalization needs n >= 1")
    value = _dbar_power(n - 1) * _w_power(e) * ExtScalar(RationalFn(trace))
    return InvariantValue(value, n, e, trace)


def invariant_F(b: TiedBraid, rewriter: Rewriter | None = None) -> InvariantValue:
    rw = rewriter or default_rewriter()
    return normalize(rw.markov_trace(b), b.strands, exponent(b))


# ---------------------------------------------------------------------------
# Expression grammar
# ---------------------------------------------------------------------------
#   expr   := ['+'|'-'] term (('+'|'-') term)*
#   term   := factor (['*'|'/'] factor)*      juxtaposition multiplies
#   factor := '-' factor | atom ['^' int]
#   atom   := integer | name | '(' expr ')'
#   int    := ['+'|'-'] digits | '(' ['+'|'-'] digits ')'
# Names: u, w, z or A, t or B, L.


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")

_NAMES = {
    "u": ExtScalar(RationalFn(U)),
    "z": ExtScalar(RationalFn(A)),
    "A": ExtScalar(RationalFn(A)),
    "t": ExtScalar(RationalFn(B)),
    "B": ExtScalar(RationalFn(B)),
    "w": W,
    "L": ExtScalar(L),
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            # "zt" or "uz" is shorthand for z*t, u*z
            for k, ch in enumerate(name):
                if ch not in _NAMES:
                    raise ExpressionError(f"unknown name {ch!r}", start + k)
                out.append(("name", ch, start + k))
        else:
            if op not in "+-*/^()":
                raise ExpressionError(f"unexpected character {op!r}", start)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.take()
        if tok[1] != op or tok[0] != "op":
            raise ExpressionError(f"expected {op!r}", tok[2])

    def parse(self) -> ExtScalar:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> ExtScalar:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.term()
            if tok[1] == "-":
                value = -value
        else:
            value = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok[1] == "+" else value - rhs
            else:
                return value

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> ExtScalar:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "*/":
                self.take()
                rhs = self.factor()
                if tok[1] == "*":
                    value = value * rhs
                else:
                    if not rhs:
                        raise ExpressionError("division by zero", tok[2])
                    value = value / rhs
            elif self._starts_factor(tok):
                value = value * self.factor()
            else:
                return value

    def factor(self) -> ExtScalar:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.integer()
            if e < 0 and not base:
                raise ExpressionError("zero raised to a negative power", tok[2])
            return base**e
        return base

    def integer(self) -> int:
        paren = False
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            paren = True
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        tok = self.take()
        if tok[0] != "num":
            raise ExpressionError("expected an integer exponent", tok[2])
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self) -> ExtScalar:
        tok = self.take()
        if tok[0] == "num":
            return ExtScalar(RationalFn(int(tok[1])))
        if tok[0] == "name":
            return _NAMES[tok[1]]
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ExpressionError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse_expression(text: str) -> ExtScalar:
    """Evaluate a formula in ``u, z, t, w`` (or ``A, B``) to an exact value."""
    return _Parser(text).parse()


def paper_form_equal(v: InvariantValue | ExtScalar, expr: str) -> bool:
    value = v.value if isinstance(v, InvariantValue) else v
    return value == parse_expression(expr)


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------

_UF = RationalFn(U)
_UINV = RationalFn(1, U)
_W_INV = W.inverse()


class SkeinCheck(NamedTuple):
    """Outcome of the four skein rules at one crossing; truthy iff all hold."""

    iii: bool
    iv: bool
    va: bool
    vb: bool

    def __bool__(self):
        return self.iii and self.iv and self.va and self.vb


def check_skein(b: TiedBraid, site: int, rewriter: Rewriter | None = None) -> SkeinCheck:
    fam = skein_family(b, site)
    f = {k: invariant_F(getattr(fam, k), rewriter).value for k in fam._fields}
    fp, fm, ft = f["plus"], f["minus"], f["tied"]
    fpt, fmt = f["plus_tied"], f["minus_tied"]
    one_minus_uinv = 1 - _UINV
    iii = fp * _W_INV - W * fm == one_minus_uinv * ft + one_minus_uinv * _W_INV * fpt
    iv = _UINV * _W_INV * fpt - W * fmt == one_minus_uinv * ft
    va = _W_INV * fp == W * (fm + (_UF - 1) * fmt) + (_UF - 1) * ft
    vb = W * fm == _W_INV * (fp + (_UINV - 1) * fpt) + (_UINV - 1) * ft
    return SkeinCheck(iii, iv, va, vb)


def _moved(b: TiedBraid, rng: random.Random) -> list[tuple[str, TiedBraid]]:
    out = [(m, markov_move(b, m)) for m in
           ("stabilize_pos", "stabilize_neg", "stabilize_pos_tied", "stabilize_neg_tied")]
    if b.strands >= 2:
        letter = BraidLetter.sigma(rng.randint(1, b.strands - 1), rng.choice((1, -1)))
        out.append((f"conjugate by {letter}", markov_move(b, "conjugate", letter)))
    if len(b) > 1:
        k = rng.randint(1, len(b) - 1)
        out.append((f"rotate by {k}", cyclic_rotate(b, k)))
    return out


def markov_failures(b: TiedBraid, seed: int = 0, rewriter: Rewriter | None = None) -> list[str]:
    """Names of the moves that changed ``invariant_F(b)``."""
    base = invariant_F(b, rewriter).value
    rng = random.Random(seed)
    return [name for name, moved in _moved(b, rng) if invariant_F(moved, rewriter).value != base]


def check_markov_invariance(b: TiedBraid, seed: int = 0, rewriter: Rewriter | None = None) -> bool:
    """All four stabilizations plus a sampled conjugation and rotation."""
    return not markov_failures(b, seed, rewriter)


def unlink_closed_form(c: int, m: int) -> ExtScalar:
    return _dbar_power(c - 1) * ExtScalar(RationalFn(B**m))


def unlink_braid(c: int, m: int) -> TiedBraid:
    if c < 1 or not 0 <= m <= c - 1:
        raise ValueError(f"need c >= 1 and 0 <= m <= c-1, got c={c}, m={m}")
    return TiedBraid(c, tuple(BraidLetter.eta(i) for i in range(c - m, c)))


def unlink_value(c: int, m: int, rewriter: Rewriter | None = None) -> InvariantValue:
    """F of ``c`` unlinked circles, the last ``m + 1`` joined by ``m`` ties."""
    v = invariant_F(unlink_braid(c, m), rewriter)
    if v.value != unlink_closed_form(c, m):
        raise AssertionError(f"unlink value mismatch for c={c}, m={m}: {v}")
    return v


def mirror_braid(b: TiedBraid) -> TiedBraid:
    return b.with_letters(x.inverse() if x.is_sigma else x for x in b.letters)


def mirror_spot_check(b: TiedBraid, points=((Fraction(3), Fraction(2), Fraction(5)),
                                            (Fraction(-2, 3), Fraction(7), Fraction(1, 2)))) -> bool:
    """Numeric check that crossing reversal acts by ``u -> 1/u``, ``w -> 1/w``.

    Meant for braids whose closure has all components tied together.  A is
    held fixed and B moves to ``B/L`` so that ``L`` goes to ``1/L``.  Values
    are compared as pairs (even, odd) over the rationals.
    """
    f = invariant_F(b).value
    g = invariant_F(mirror_braid(b)).value
    for u0, a0, b0 in points:
        even, odd = f.evaluate(u0, a0, b0)
        l0 = L.evaluate(u0, a0, b0)
        even_m, odd_m = g.evaluate(1 / Fraction(u0), a0, b0 / l0)
        # even' + odd'/w == even + odd*w
        if even_m != even or odd_m != odd * l0:
            return False
    return True


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


class SuiteResult(NamedTuple):
    name: str
    passed: int
    failed: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        return f"{self.name}: {self.passed} passed, {self.failed} failed"


def _random_case(rng: random.Random, max_strands: int, max_length: int) -> TiedBraid:
    n = rng.randint(2, max_strands)
    length = rng.randint(1, max_length)
    return random_braid(n, length, rng.getrandbits(32))


def run_skein_suite(cases: int = 200, seed: int = 0, max_strands: int = 5,
                    max_length: int = 12) -> SuiteResult:
    rng = random.Random(seed)
    passed, failures = 0, []
    while passed + len(failures) < cases:
        b = _random_case(rng, max_strands, max_length)
        sites = [k for k, x in enumerate(b.letters) if x.is_sigma]
        if not sites:
            continue
        site = rng.choice(sites)
        res = check_skein(b, site)
        if res:
            passed += 1
        else:
            failures.append(f"{b.text()} @ {site}: {res}")
    return SuiteResult("skein", passed, len(failures), failures)


def run_markov_suite(cases: int = 200, seed: int = 0, max_strands: int = 5,
                     max_length: int = 12) -> SuiteResult:
    rng = random.Random(seed)
    passed, failures = 0, []
    for _ in range(cases):
        b = _random_case(rng, max_strands, max_length)
        bad = markov_failures(b, rng.getrandbits(32))
        if bad:
            failures.append(f"{b.text()} (n={b.strands}): {', '.join(bad)}")
        else:
            passed += 1
    return SuiteResult("markov", passed, len(failures), failures)


def run_unlink_suite(max_components: int = 6) -> SuiteResult:
    passed, failures = 0, []
    for c in range(1, max_components + 1):
        for m in range(c):
            try:
                unlink_value(c, m)
                passed += 1
            except AssertionError as exc:
                failures.append(str(exc))
    return SuiteResult("unlink", passed, len(failures), failures)
