"""Tied braid words: parsing, rendering, exponent sum and the move set.

A tied braid on ``n`` strands is a word in the generators ``s<i>`` (the
braid generator sigma_i, possibly raised to a nonzero power) and ``e<i>``
(the tie eta_i between strands i and i+1).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

__all__ = [
    "BraidLetter",
    "TiedBraid",
    "BraidSyntaxError",
    "BraidValidationError",
    "MoveError",
    "MOVES",
    "parse_braid",
    "exponent",
    "markov_move",
    "cyclic_rotate",
    "skein_variants",
    "skein_family",
    "SkeinFamily",
    "random_braid",
    "defining_relations",
]


class BraidSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class BraidValidationError(ValueError):
    pass


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class BraidLetter:
    """One letter of a tied braid word.

    ``kind`` is ``"sigma"`` or ``"eta"``; ``power`` is the sigma exponent
    and is always 1 for ties.
    """

    index: int
    kind: str = "sigma"
    power: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise BraidValidationError(f"generator index must be >= 1, got {self.index}")
        if self.kind == "sigma":
            if self.power == 0:
                raise BraidValidationError("sigma power must be nonzero")
        elif self.kind == "eta":
            if self.power != 1:
                raise BraidValidationError("ties carry no power")
        else:
            raise BraidValidationError(f"unknown letter kind {self.kind!r}")

    @classmethod
    def sigma(cls, index: int, power: int = 1) -> "BraidLetter":
        return cls(index, "sigma", power)

    @classmethod
    def eta(cls, index: int) -> "BraidLetter":
        return cls(index, "eta", 1)

    @property
    def is_sigma(self) -> bool:
        return self.kind == "sigma"

    @property
    def is_eta(self) -> bool:
        return self.kind == "eta"

    def inverse(self) -> "BraidLetter":
        if self.is_eta:
            raise MoveError("ties have no inverse in the tied braid monoid")
        return BraidLetter.sigma(self.index, -self.power)

    def __str__(self):
        if self.is_eta:
            return f"e{self.index}"
        if self.power == 1:
            return f"s{self.index}"
        return f"s{self.index}^{self.power}"


@dataclass(frozen=True)
class TiedBraid:
    strands: int
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise BraidValidationError("a braid needs at least one strand")
        top = self.max_index
        if top >= self.strands:
            raise BraidValidationError(
                f"generator index {top} needs at least {top + 1} strands, got {self.strands}"
            )

    @property
    def max_index(self) -> int:
        return max((x.index for x in self.letters), default=0)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __mul__(self, other: "TiedBraid") -> "TiedBraid":
        """Concatenation; the strand count is the larger of the two."""
        if not isinstance(other, TiedBraid):
            return NotImplemented
        return TiedBraid(max(self.strands, other.strands), self.letters + other.letters)

    def with_letters(self, letters: Sequence[BraidLetter]) -> "TiedBraid":
        return TiedBraid(self.strands, tuple(letters))

    def with_strands(self, strands: int) -> "TiedBraid":
        return TiedBraid(strands, self.letters)

    def text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __str__(self):
        return self.text()


_TOKEN = re.compile(r"s(\d+)(?:\^([+-]?\d+))?|e(\d+)")


def parse_braid(text: str, strands: int | None = None) -> TiedBraid:
    """Parse whitespace-separated tokens ``s<i>``, ``s<i>^<e>`` and ``e<i>``.

    >>> parse_braid("e1 s1^-2")
    TiedBraid(strands=2, letters=(BraidLetter(index=1, kind='eta', power=1), BraidLetter(index=1, kind='sigma', power=-2)))
    """
    letters = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        t = _TOKEN.fullmatch(tok)
        if t is None:
            raise BraidSyntaxError(f"malformed token {tok!r}", m.start(), text)
        if t.group(3) is not None:
            index, kind, power = int(t.group(3)), "eta", 1
        else:
            index, kind = int(t.group(1)), "sigma"
            power = int(t.group(2)) if t.group(2) is not None else 1
        if index < 1:
            raise BraidSyntaxError(f"generator index must be >= 1 in {tok!r}", m.start(), text)
        if power == 0:
            raise BraidSyntaxError(f"zero exponent in {tok!r}", m.start(), text)
        letters.append(BraidLetter(index, kind, power))
    top = max((x.index for x in letters), default=0)
    if strands is None:
        strands = top + 1
    elif strands <= top:
        raise BraidValidationError(
            f"--strands {strands} is too small for generator index {top}"
        )
    return TiedBraid(strands, tuple(letters))


def exponent(b: TiedBraid) -> int:
    """Sum of sigma exponents; ties contribute nothing."""
    return sum(x.power for x in b.letters if x.is_sigma)


MOVES = (
    "conjugate",
    "stabilize_pos",
    "stabilize_neg",
    "stabilize_pos_tied",
    "stabilize_neg_tied",
)


def markov_move(b: TiedBraid, move: str, by: BraidLetter | None = None) -> TiedBraid:
    """Apply one move of the tied Markov equivalence.

    ``conjugate`` needs a sigma letter ``by`` and returns ``by * b * by^-1``.
    The stabilizations append ``s_n^{+-1}`` (followed by ``e_n`` for the
    tied variants) and add a strand.
    """
    if move == "conjugate":
        if by is None:
            raise MoveError("conjugation needs a letter")
        if by.is_eta:
            raise MoveError("cannot conjugate by a tie: ties are not invertible")
        n = max(b.strands, by.index + 1)
        return TiedBraid(n, (by,) + b.letters + (by.inverse(),))
    n = b.strands
    if move == "stabilize_pos":
        tail = (BraidLetter.sigma(n, 1),)
    elif move == "stabilize_neg":
        tail = (BraidLetter.sigma(n, -1),)
    elif move == "stabilize_pos_tied":
        tail = (BraidLetter.sigma(n, 1), BraidLetter.eta(n))
    elif move == "stabilize_neg_tied":
        tail = (BraidLetter.sigma(n, -1), BraidLetter.eta(n))
    else:
        raise MoveError(f"unknown move {move!r}")
    return TiedBraid(n + 1, b.letters + tail)


def cyclic_rotate(b: TiedBraid, k: int) -> TiedBraid:
    if not b.letters:
        return b
    k %= len(b.letters)
    return b.with_letters(b.letters[k:] + b.letters[:k])


class SkeinFamily(NamedTuple):
    plus: TiedBraid
    minus: TiedBraid
    tied: TiedBraid
    plus_tied: TiedBraid
    minus_tied: TiedBraid


def skein_family(b: TiedBraid, site: int) -> SkeinFamily:
    """All five local pictures at ``site``: s, s^-1, e, e s, e s^-1."""
    if not 0 <= site < len(b.letters):
        raise MoveError(f"site {site} out of range for a word of length {len(b.letters)}")
    x = b.letters[site]
    if x.is_eta or abs(x.power) != 1:
        raise MoveError(f"skein site must hold s_i^(+-1), found {x}")
    i = x.index
    head, tail = b.letters[:site], b.letters[site + 1:]

    def build(*mid):
        return b.with_letters(head + mid + tail)

    s, s_inv, e = BraidLetter.sigma(i), BraidLetter.sigma(i, -1), BraidLetter.eta(i)
    return SkeinFamily(build(s), build(s_inv), build(e), build(e, s), build(e, s_inv))


def skein_variants(b: TiedBraid, site: int) -> tuple[TiedBraid, TiedBraid, TiedBraid, TiedBraid]:
    fam = skein_family(b, site)
    return fam.plus, fam.minus, fam.tied, fam.plus_tied


def random_braid(n: int, length: int, seed: int) -> TiedBraid:
    """Deterministic pseudo-random word over ``s_i``, ``s_i^-1`` and ``e_i``."""
    if n < 2:
        raise BraidValidationError("random braids need at least two strands")
    rng = random.Random(seed)
    return TiedBraid(n, tuple(_random_letter(rng, n) for _ in range(length)))


def _random_letter(rng: random.Random, n: int) -> BraidLetter:
    i = rng.randint(1, n - 1)
    r = rng.randrange(3)
    if r == 2:
        return BraidLetter.eta(i)
    return BraidLetter.sigma(i, 1 if r == 0 else -1)


def defining_relations(n: int) -> list[tuple[str, tuple[BraidLetter, ...], tuple[BraidLetter, ...]]]:
    """Instances ``(name, lhs, rhs)`` of the monoid relations on ``n`` strands.

    Covers the braid relations and the seven tie relations for every
    admissible choice of indices.
    """
    s = BraidLetter.sigma
    e = BraidLetter.eta
    out = []
    idx = range(1, n)
    for i in idx:
        out.append(("inverse", (s(i), s(i, -1)), ()))
        out.append(("eta2", (e(i), s(i)), (s(i), e(i))))
        out.append(("eta7", (e(i), e(i)), (e(i),)))
        for j in idx:
            d = abs(i - j)
            if i != j:
                out.append(("eta1", (e(i), e(j)), (e(j), e(i))))
            if d > 1:
                out.append(("far", (s(i), s(j)), (s(j), s(i))))
                out.append(("eta3", (e(i), s(j)), (s(j), e(i))))
            if d == 1:
                out.append(("braid", (s(i), s(j), s(i)), (s(j), s(i), s(j))))
                out.append(("eta4", (e(i), s(j), s(i)), (s(j), s(i), e(j))))
                out.append(("eta5", (e(i), s(j), s(i, -1)), (s(j), s(i, -1), e(j))))
                out.append(("eta6", (e(i), e(j), s(i)), (e(j), s(i), e(j))))
                out.append(("eta6", (e(j), s(i), e(j)), (s(i), e(i), e(j))))
    return out
