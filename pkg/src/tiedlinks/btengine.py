"""Rewriting engine for the algebra of braids and ties.

Words are sequences of letters ``T_i``, ``E_i`` and ``ET_i`` (the single
element ``E_i T_i = T_i E_i``).  A braid word is mapped into the algebra,
every word is kept *simple* (no two adjacent letters share an index), words
with several letters of the top index are rewritten until at most one
remains, and that letter is then removed by the trace rules.

Internally a letter is the integer ``3*index + kind`` with kind 0 (T),
1 (E) or 2 (ET), and a word is a tuple of such codes.

Reduction strategy
------------------
For a simple word with two or more letters of top index ``m``, take the
first two of them, ``g`` and ``h``, and the interior word ``W`` between
them (all indices < m).  ``W`` is first reduced at index ``m-1``, so each
resulting word contains at most one ``(m-1)``-letter ``y``:

* if there is no such letter, ``W`` commutes past ``g`` and ``g h`` is fused;
* otherwise ``W = W1 y W2`` with ``W1, W2`` of index <= m-2, which commute
  with ``g`` and ``h``, and ``g y h`` is rewritten by the 27-case table.

Either way the number of index-``m`` letters drops by at least one.  The
measure is therefore the lexicographic pair (count of top-index letters,
word length): the outer step lowers the first component, and the inner
recursion runs on the strictly shorter interior.  Fusion at the splice
points never adds letters.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .braidword import TiedBraid
from .polyfield import LaurentU, TracePoly, U

__all__ = [
    "AlgebraLetter",
    "AlgebraElement",
    "TPower",
    "Rewriter",
    "RewriteLimitError",
    "ContractionError",
    "REDUCTION_TABLE",
    "FUSION",
    "parse_word",
    "braid_to_raw",
    "format_word",
    "power_coefficient",
    "represent",
    "simplify_word",
    "reduce_word",
    "contract",
    "markov_trace",
    "trace_element",
]

log = logging.getLogger(__name__)

T, E, ET = 0, 1, 2
KIND_NAMES = ("T", "E", "ET")
_KIND_CODES = {"T": T, "E": E, "ET": ET}

ONE = LaurentU.const(1)
_U_MINUS_1 = U - 1

DEFAULT_MAX_STEPS = 2_000_000


class RewriteLimitError(RuntimeError):
    """The rewrite-step budget was exhausted (a termination bug, not a user error)."""


class ContractionError(ValueError):
    """An addend still holds more than one letter of the contracted index."""


class AlgebraLetter(NamedTuple):
    index: int
    kind: str  # "T", "E" or "ET"

    def __str__(self):
        return f"{self.kind}{self.index}"


class TPower(NamedTuple):
    """``T_index ** exponent`` inside a raw (unsimplified) word."""

    index: int
    exponent: int


def _code(index: int, kind) -> int:
    if isinstance(kind, str):
        kind = _KIND_CODES[kind]
    if index < 1:
        raise ValueError(f"letter index must be >= 1, got {index}")
    return 3 * index + kind


def _letter(code: int) -> AlgebraLetter:
    return AlgebraLetter(code // 3, KIND_NAMES[code % 3])


def _as_codes(word) -> tuple[int, ...]:
    out = []
    for x in word:
        if isinstance(x, int):
            out.append(x)
        else:
            out.append(_code(x[0], x[1]))
    return tuple(out)


def format_word(word) -> str:
    codes = _as_codes(word)
    if not codes:
        return "1"
    return " ".join(f"{KIND_NAMES[c % 3]}{c // 3}" for c in codes)


_WORD_TOKEN = re.compile(r"(ET|TE|T|E)(\d+)(?:\^(-?\d+))?")


def parse_word(text: str) -> list:
    """Parse ``"T2 E1 ET2"`` into letters; ``T2^-3`` yields a :class:`TPower`."""
    out: list = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _WORD_TOKEN.fullmatch(tok)
        if m is None:
            raise ValueError(f"bad algebra letter {tok!r}")
        kind = "ET" if m.group(1) in ("ET", "TE") else m.group(1)
        index = int(m.group(2))
        if m.group(3) is not None:
            if kind != "T":
                raise ValueError(f"only T letters take powers: {tok!r}")
            out.append(TPower(index, int(m.group(3))))
        else:
            out.append(AlgebraLetter(index, kind))
    return out


def _is_simple(codes: Sequence[int]) -> bool:
    return all(codes[k] // 3 != codes[k + 1] // 3 for k in range(len(codes) - 1))


def _coeff_str(c) -> str:
    s = str(c)
    return f"({s})" if (" " in s) else s


class AlgebraElement:
    """Finite linear combination of simple words.

    ``terms`` maps a word (tuple of letter codes) to its coefficient, a
    :class:`LaurentU` before contraction or a :class:`TracePoly` after it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def from_words(cls, pairs: Iterable) -> "AlgebraElement":
        acc: dict = {}
        for word, c in pairs:
            _accumulate(acc, _as_codes(word), c)
        return cls(acc)

    def addends(self) -> list[tuple[tuple[AlgebraLetter, ...], object]]:
        return [(tuple(_letter(x) for x in w), c) for w, c in self.terms.items()]

    def coefficient(self, word) -> object:
        return self.terms.get(_as_codes(word), 0)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def scalar(self):
        if not self.is_scalar():
            raise ValueError("element still contains non-empty words")
        return self.terms.get((), 0)

    def max_index(self) -> int:
        return max((x // 3 for w in self.terms for x in w), default=0)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, c)
        return AlgebraElement(acc)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))
        return " + ".join(f"{_coeff_str(c)}*({format_word(w)})" for w, c in items)

    __repr__ = __str__


def _accumulate(acc: dict, word, c) -> None:
    if word in acc:
        s = acc[word] + c
        if s:
            acc[word] = s
        else:
            del acc[word]
    elif c:
        acc[word] = c


# ---------------------------------------------------------------------------
# Same-index products
# ---------------------------------------------------------------------------
# From E^2 = E, ET = TE and T^2 = 1 + (u-1)(E + ET):
#   E.E   = E
#   E.T   = T.E = ET                 E.ET = ET.E = E.E.T = ET
#   T.T   = 1 + (u-1) E + (u-1) ET
#   T.ET  = ET.T = E.T^2 = E + (u-1)(E + ET) = u E + (u-1) ET
#   ET.ET = E.E.T.T = E.T^2          = u E + (u-1) ET
# ``None`` stands for the empty word.

FUSION: dict[tuple[int, int], tuple[tuple[int | None, LaurentU], ...]] = {
    (E, E): ((E, ONE),),
    (E, T): ((ET, ONE),),
    (T, E): ((ET, ONE),),
    (E, ET): ((ET, ONE),),
    (ET, E): ((ET, ONE),),
    (T, T): ((None, ONE), (E, _U_MINUS_1), (ET, _U_MINUS_1)),
    (T, ET): ((E, U), (ET, _U_MINUS_1)),
    (ET, T): ((E, U), (ET, _U_MINUS_1)),
    (ET, ET): ((E, U), (ET, _U_MINUS_1)),
}


def power_coefficient(e: int) -> LaurentU:
    """Coefficient ``c`` with ``T**e = T**(e % 2) + c*(E + ET)``.

    Closed forms: ``(u**e - 1)/(u + 1)`` for even ``e`` and
    ``(u**e - u)/(u + 1)`` for odd ``e``, expanded as alternating sums.
    """
    if e >= 0:
        if e % 2 == 0:
            terms = {k: (-1) ** (k + 1) for k in range(0, e)}
        else:
            terms = {k: (-1) ** k for k in range(1, e)}
    else:
        m = -e
        if m % 2 == 0:
            terms = {-k: (-1) ** k for k in range(1, m + 1)}
        else:
            terms = {-k: (-1) ** (k + 1) for k in range(0, m + 1)}
    return LaurentU(terms)


def braid_to_raw(b: TiedBraid) -> list:
    """Letters of ``b`` as an unsimplified word: ``s_i^e -> T_i^e``, ``e_i -> E_i``."""
    return [AlgebraLetter(x.index, "E") if x.is_eta else TPower(x.index, x.power) for x in b.letters]


def _power_expansion(index: int, e: int) -> list[tuple[tuple[int, ...], LaurentU]]:
    c = power_coefficient(e)
    base = (3 * index + T,) if e % 2 else ()
    out = [(base, ONE)]
    if c:
        out.append(((3 * index + E,), c))
        out.append(((3 * index + ET,), c))
    return out


# ---------------------------------------------------------------------------
# The 27-case table for X_i Y_{i-1} Z_i
# ---------------------------------------------------------------------------

_TABLE_SOURCE = r"""
E_i E_{i-1} E_i                  -> E_{i-1} E_i
E_i T_{i-1} E_i                  -> T_{i-1} E_{i-1} E_i
E_i T_{i-1} E_{i-1} E_i          -> T_{i-1} E_{i-1} E_i
E_i E_{i-1} T_i                  -> E_{i-1} T_i E_i
E_i T_{i-1} T_i                  -> T_{i-1} T_i E_{i-1}
E_i T_{i-1} E_{i-1} T_i          -> T_{i-1} E_{i-1} T_i E_i
E_i E_{i-1} T_i E_i              -> E_{i-1} T_i E_i
E_i T_{i-1} T_i E_i              -> T_{i-1} E_{i-1} T_i E_i
E_i T_{i-1} E_{i-1} T_i E_i      -> T_{i-1} E_{i-1} T_i E_i
T_i E_{i-1} E_i                  -> E_{i-1} T_i E_i
T_i T_{i-1} E_i                  -> E_{i-1} T_i T_{i-1}
T_i T_{i-1} E_{i-1} E_i          -> E_{i-1} T_i E_i T_{i-1}
T_i E_{i-1} T_i                  -> T_{i-1} E_i T_{i-1} + (1-u) E_i T_{i-1} E_{i-1} + (u-1) T_i E_i E_{i-1}
T_i T_{i-1} T_i                  -> T_{i-1} T_i T_{i-1}
T_i T_{i-1} E_{i-1} T_i          -> T_{i-1} T_i E_i T_{i-1}
T_i E_{i-1} T_i E_i              -> u E_{i-1} E_i + (u-1) E_{i-1} T_i E_i
T_i T_{i-1} T_i E_i              -> T_{i-1} E_{i-1} T_i T_{i-1}
T_i T_{i-1} E_{i-1} T_i E_i      -> T_{i-1} E_{i-1} T_i E_i T_{i-1}
T_i E_i E_{i-1} E_i              -> E_{i-1} T_i E_i
T_i E_i T_{i-1} E_i              -> E_{i-1} T_i E_i T_{i-1}
T_i E_i T_{i-1} E_{i-1} E_i      -> E_{i-1} T_i E_i T_{i-1}
T_i E_i E_{i-1} T_i              -> u E_{i-1} E_i + (u-1) E_{i-1} T_i E_i
T_i E_i T_{i-1} T_i              -> T_{i-1} T_i T_{i-1} E_{i-1}
T_i E_i T_{i-1} E_{i-1} T_i      -> T_{i-1} E_{i-1} T_i E_i T_{i-1}
T_i E_i E_{i-1} T_i E_i          -> u E_{i-1} E_i + (u-1) E_{i-1} T_i E_i
T_i E_i T_{i-1} T_i E_i          -> T_{i-1} E_{i-1} T_i E_i T_{i-1}
T_i E_i T_{i-1} E_{i-1} T_i E_i  -> T_{i-1} E_{i-1} T_i E_i T_{i-1}
"""
# Row 5 (E_i T_{i-1} T_i) is re-derived from the relation E_i T_{i-1} T_i = T_{i-1} T_i E_{i-1};
# the variant ending in E_i fails in the algebra (see the table tests).

_GEN = re.compile(r"([TE])_(\{i-1\}|i)")
_COEFFS = {"": ONE, "u": U, "(1-u)": 1 - U, "(u-1)": U - 1}


def _group(tokens: list[tuple[str, int]]) -> list[tuple[int, int]]:
    """Merge adjacent same-offset generators into T, E or ET letters."""
    out: list[tuple[int, set]] = []
    for g, off in tokens:
        if out and out[-1][0] == off:
            if g in out[-1][1]:
                raise ValueError("repeated generator inside a table letter")
            out[-1][1].add(g)
        else:
            out.append((off, {g}))
    kinds = {frozenset("T"): T, frozenset("E"): E, frozenset("TE"): ET}
    return [(off, kinds[frozenset(gs)]) for off, gs in out]


def _parse_gens(text: str) -> list[tuple[int, int]]:
    return _group([(g, -1 if idx == "{i-1}" else 0) for g, idx in _GEN.findall(text)])


def _load_table(source: str):
    table = {}
    for line in source.strip().splitlines():
        lhs, rhs = line.split("->")
        letters = _parse_gens(lhs)
        if [off for off, _ in letters] != [0, -1, 0]:
            raise ValueError(f"table row is not of the form X_i Y_(i-1) Z_i: {line}")
        key = tuple(k for _, k in letters)
        terms = []
        for term in rhs.split(" + "):
            m = re.match(r"\s*(\(1-u\)|\(u-1\)|u(?=\s))?\s*(.*)", term)
            terms.append((tuple(_parse_gens(m.group(2))), _COEFFS[m.group(1) or ""]))
        if key in table:
            raise ValueError(f"duplicate table row for {key}")
        table[key] = tuple(terms)
    if len(table) != 27:
        raise ValueError(f"expected 27 table rows, found {len(table)}")
    return table


# (X, Y, Z) kinds -> ((((offset, kind), ...), coeff), ...); offset 0 is index i, -1 is i-1
REDUCTION_TABLE = _load_table(_TABLE_SOURCE)


def _table_entry(m: int, key: tuple[int, int, int]):
    return [
        (tuple(3 * (m + off) + k for off, k in word), c) for word, c in REDUCTION_TABLE[key]
    ]


# ---------------------------------------------------------------------------
# The rewriter
# ---------------------------------------------------------------------------


@dataclass
class _Budget:
    limit: int
    used: int = 0


class Rewriter:
    """Memoising rewriter.

    The caches only ever store values that are pure functions of their
    keys, so one instance may be shared freely; ``max_steps`` bounds the
    rule applications of a single public call.
    """

    def __init__(self, max_steps: int = DEFAULT_MAX_STEPS):
        self.max_steps = max_steps
        self._reduce_cache: dict = {}
        self._trace_cache: dict = {}
        self._budget = _Budget(max_steps)

    # -- bookkeeping -------------------------------------------------------

    def _start(self) -> None:
        self._budget = _Budget(self.max_steps)

    def _tick(self, n: int = 1) -> None:
        b = self._budget
        b.used += n
        if b.used > b.limit:
            raise RewriteLimitError(f"rewrite budget of {b.limit} steps exhausted")

    @property
    def steps_used(self) -> int:
        return self._budget.used

    def clear(self) -> None:
        self._reduce_cache.clear()
        self._trace_cache.clear()

    # -- simple-word concatenation ----------------------------------------

    def _concat(self, w1: tuple, w2: tuple) -> list[tuple[tuple, LaurentU]]:
        if not w1:
            return [(w2, ONE)]
        if not w2:
            return [(w1, ONE)]
        a, b = w1[-1], w2[0]
        if a // 3 != b // 3:
            return [(w1 + w2, ONE)]
        self._tick()
        base = a - a % 3
        out = []
        for k, c in FUSION[(a % 3, b % 3)]:
            if k is None:
                for w, cc in self._concat(w1[:-1], w2[1:]):
                    out.append((w, c * cc))
            else:
                out.append((w1[:-1] + (base + k,) + w2[1:], c))
        if log.isEnabledFor(logging.DEBUG):
            log.debug(
                "RULE FUSE: %s | %s -> %s",
                format_word(w1), format_word(w2), AlgebraElement.from_words(out),
            )
        return out

    def _concat_all(self, parts: Sequence[tuple]) -> list[tuple[tuple, LaurentU]]:
        acc = [((), ONE)]
        for part in parts:
            if not part:
                continue
            nxt = []
            for w, c in acc:
                for nw, nc in self._concat(w, part):
                    nxt.append((nw, c * nc))
            acc = nxt
        return acc

    # -- S1-S3 -------------------------------------------------------------

    def simplify(self, raw: Iterable, coeff=ONE) -> AlgebraElement:
        items = []
        # S1 and S2: merge runs of E_i and of T_i powers before expanding
        for x in raw:
            if isinstance(x, TPower):
                item = ("T", x.index, x.exponent)
            elif isinstance(x, int):
                item = (KIND_NAMES[x % 3], x // 3, 1)
            else:
                item = (x[1], x[0], 1)
            if items and items[-1][0] == item[0] and items[-1][1] == item[1] and item[0] != "ET":
                prev = items.pop()
                rule = "S1" if item[0] == "E" else "S2"
                merged = (item[0], item[1], 1 if item[0] == "E" else prev[2] + item[2])
                if log.isEnabledFor(logging.DEBUG):
                    log.debug("RULE %s: %s%d %s%d -> %s", rule, prev[0], prev[1], item[0],
                              item[1], f"{merged[0]}{merged[1]}^{merged[2]}")
                if merged[0] == "T" and merged[2] == 0:
                    continue
                items.append(merged)
            else:
                items.append(item)
        acc: dict = {(): coeff}
        for kind, index, e in items:
            if kind == "T":
                if e != 1 and log.isEnabledFor(logging.DEBUG):
                    log.debug("RULE S3: T%d^%d -> %s", index, e,
                              AlgebraElement.from_words(_power_expansion(index, e)))
                terms = _power_expansion(index, e) if e != 1 else [((3 * index + T,), ONE)]
            else:
                terms = [((_code(index, kind),), ONE)]
            nxt: dict = {}
            for w, c in acc.items():
                for tw, tc in terms:
                    for nw, nc in self._concat(w, tw):
                        _accumulate(nxt, nw, c * tc * nc)
            acc = nxt
        return AlgebraElement(acc)

    def represent(self, b: TiedBraid) -> AlgebraElement:
        return self.simplify(braid_to_raw(b))

    # -- reduction -----------------------------------------------------------

    def _reduce(self, word: tuple, m: int) -> tuple:
        key = (word, m)
        hit = self._reduce_cache.get(key)
        if hit is not None:
            return hit
        lo, hi = 3 * m, 3 * m + 3
        pos = [p for p, x in enumerate(word) if lo <= x < hi]
        if len(pos) < 2:
            result = ((word, ONE),)
            self._reduce_cache[key] = result
            return result
        p, q = pos[0], pos[1]
        g, h = word[p], word[q]
        prefix, inner, suffix = word[:p], word[p + 1:q], word[q + 1:]
        count = len(pos)
        acc: dict = {}
        for w, c in self._reduce(inner, m - 1):
            j = next((k for k, x in enumerate(w) if lo - 3 <= x < lo), None)
            self._tick()
            if j is None:
                # w has indices <= m-2: it commutes with g, and g h fuses
                left, right = w, ()
                core = [((() if k is None else (lo + k,)), cc) for k, cc in FUSION[(g % 3, h % 3)]]
                rule = f"FUSE {KIND_NAMES[g % 3]}.{KIND_NAMES[h % 3]}"
            else:
                left, right = w[:j], w[j + 1:]
                table_key = (g % 3, w[j] % 3, h % 3)
                core = _table_entry(m, table_key)
                rule = "TABLE " + ",".join(KIND_NAMES[k] for k in table_key)
            if log.isEnabledFor(logging.DEBUG):
                log.debug("RULE %s: %s -> %s", rule, format_word(prefix + (g,) + w + (h,) + suffix),
                          AlgebraElement.from_words(
                              (prefix + left + cw + right + suffix, cc) for cw, cc in core))
            for cw, cc in core:
                for nw, nc in self._concat_all((prefix, left, cw, right, suffix)):
                    if sum(1 for x in nw if lo <= x < hi) >= count:
                        raise RewriteLimitError(f"measure failed to decrease on {format_word(word)}")
                    for rw, rc in self._reduce(nw, m):
                        _accumulate(acc, rw, c * cc * nc * rc)
        result = tuple(acc.items())
        self._reduce_cache[key] = result
        return result

    def reduce_word(self, word) -> AlgebraElement:
        """Rewrite a simple word into words holding one letter of their own top index."""
        codes = _as_codes(word)
        if not _is_simple(codes):
            raise ValueError(f"not a simple word: {format_word(codes)}")
        self._start()
        acc: dict = {}
        todo = [(codes, ONE)]
        while todo:
            w, c = todo.pop()
            m = max((x // 3 for x in w), default=0)
            for rw, rc in self._reduce(w, m):
                top = max((x // 3 for x in rw), default=0)
                if top < m and sum(1 for x in rw if x // 3 == top) > 1:
                    todo.append((rw, c * rc))
                else:
                    _accumulate(acc, rw, c * rc)
        return AlgebraElement(acc)

    def reduce_at(self, e: AlgebraElement, m: int) -> AlgebraElement:
        """Reduce every addend so it holds at most one index-``m`` letter."""
        acc: dict = {}
        for w, c in e.terms.items():
            for rw, rc in self._reduce(w, m):
                _accumulate(acc, rw, c * rc)
        return AlgebraElement(acc)

    # -- contraction -----------------------------------------------------------

    def contract(self, e: AlgebraElement, m: int) -> AlgebraElement:
        """Apply the trace rules to the single index-``m`` letter of each addend."""
        acc: dict = {}
        lo, hi = 3 * m, 3 * m + 3
        for w, c in e.terms.items():
            pos = [p for p, x in enumerate(w) if lo <= x < hi]
            if not pos:
                _accumulate(acc, w, c)
                continue
            if len(pos) > 1:
                raise ContractionError(f"{format_word(w)} holds {len(pos)} letters of index {m}")
            p = pos[0]
            self._tick()
            factor = B_FACTOR if w[p] % 3 == E else A_FACTOR
            if not isinstance(c, TracePoly):
                c = TracePoly.const(c)
            c = c * factor
            joined = self._concat(w[:p], w[p + 1:])
            if log.isEnabledFor(logging.DEBUG):
                log.debug("RULE C1: %s -> %s*(%s)", format_word(w),
                          "B" if w[p] % 3 == E else "A",
                          AlgebraElement.from_words(joined))
            for jw, jc in joined:
                _accumulate(acc, jw, c * jc)
        return AlgebraElement(acc)

    # -- trace -------------------------------------------------------------

    def trace_element(self, e: AlgebraElement, n: int | None = None) -> TracePoly:
        top = e.max_index()
        if n is None:
            n = top + 1
        if top >= n:
            raise ValueError(f"element uses index {top} but only {n} strands were given")
        self._start()
        for m in range(n - 1, 0, -1):
            e = self.contract(self.reduce_at(e, m), m)
        c = e.scalar()
        if not isinstance(c, TracePoly):
            c = TracePoly.const(c)
        return c

    def markov_trace(self, b: TiedBraid) -> TracePoly:
        return self.trace_element(self.represent(b), b.strands)


A_FACTOR = TracePoly.monomial(1, 0)
B_FACTOR = TracePoly.monomial(0, 1)

_default = Rewriter()


def default_rewriter() -> Rewriter:
    return _default


def represent(b: TiedBraid) -> AlgebraElement:
    return _default.represent(b)


def simplify_word(w: Iterable, coeff=ONE) -> AlgebraElement:
    if isinstance(w, str):
        w = parse_word(w)
    if not isinstance(coeff, LaurentU):
        coeff = LaurentU.const(coeff)
    return _default.simplify(w, coeff)


def reduce_word(w) -> AlgebraElement:
    if isinstance(w, str):
        w = parse_word(w)
    return _default.reduce_word(w)


def contract(e: AlgebraElement, m: int) -> AlgebraElement:
    return _default.contract(e, m)


def trace_element(e: AlgebraElement, n: int | None = None) -> TracePoly:
    return _default.trace_element(e, n)


def markov_trace(b: TiedBraid) -> TracePoly:
    """Markov trace of the image of ``b`` in the algebra."""
    return _default.markov_trace(b)
