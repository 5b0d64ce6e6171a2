"""
Words over the Artin generators of the braid groups B_n.

A braid word is a sequence of nonzero integers: the letter i (positive)
stands for the Artin generator sigma_i, the letter -i for its inverse.
The strand count n is explicit; letters must satisfy 1 <= |i| <= n-1.
Words on fewer strands embed into words on more strands with unchanged
letters (the natural inclusion B_n < B_m), and binary operations
reconcile strand counts by taking the maximum.

All values are immutable; operations return fresh words.
"""

from __future__ import annotations

import dataclasses
import random
from typing import Iterable, Iterator, Sequence


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_n. The empty word is the identity."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError(f"strand count must be positive, got {self.strands}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(f"letter {x} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def embed(self, strands: int) -> BraidWord:
        """Reinterpret this word in a larger braid group (natural inclusion)."""
        if strands < self.strands:
            raise ValueError(f"cannot embed B_{self.strands} word into B_{strands}")
        if strands == self.strands:
            return self
        return BraidWord(strands, self.letters)

    def to_record(self) -> dict:
        return {"n": self.strands, "word": list(self.letters)}

    @staticmethod
    def from_record(record: dict) -> BraidWord:
        return BraidWord(record["n"], tuple(record["word"]))


def identity(strands: int) -> BraidWord:
    return BraidWord(strands, ())


def generator(strands: int, index: int) -> BraidWord:
    """The generator sigma_index (or its inverse for negative index) as a word."""
    return BraidWord(strands, (index,))


def reconcile(a: BraidWord, b: BraidWord) -> tuple[BraidWord, BraidWord]:
    """Embed both words into the larger of the two ambient groups."""
    n = max(a.strands, b.strands)
    return a.embed(n), b.embed(n)


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenation a*b. No free reduction is applied."""
    a, b = reconcile(a, b)
    return BraidWord(a.strands, a.letters + b.letters)


def compose_all(words: Iterable[BraidWord]) -> BraidWord:
    words = list(words)
    if not words:
        raise ValueError("compose_all needs at least one word")
    n = max(w.strands for w in words)
    letters: list[int] = []
    for w in words:
        letters.extend(w.letters)
    return BraidWord(n, tuple(letters))


def invert(a: BraidWord) -> BraidWord:
    """Letters reversed with signs flipped."""
    return BraidWord(a.strands, tuple(-x for x in reversed(a.letters)))


def power(a: BraidWord, exponent: int) -> BraidWord:
    """a composed with itself |exponent| times, inverted for negative exponents."""
    base = a if exponent >= 0 else invert(a)
    return BraidWord(a.strands, base.letters * abs(exponent))


def delta(strands: int) -> BraidWord:
    """The fundamental braid Delta_n = (s1)(s2 s1)...(s_{n-1} ... s1)."""
    if strands < 2:
        raise ValueError(f"delta needs at least 2 strands, got {strands}")
    letters: list[int] = []
    for i in range(1, strands):
        letters.extend(range(i, 0, -1))
    return BraidWord(strands, tuple(letters))


def shift(a: BraidWord) -> BraidWord:
    """Dehornoy's shift endomorphism d: every index up by one, strands up by one."""
    sign = lambda x: 1 if x > 0 else -1
    return BraidWord(a.strands + 1, tuple(x + sign(x) for x in a.letters))


def unshift(a: BraidWord) -> BraidWord:
    """
    Literal inverse of shift: every index down by one, strands down by one.

    Purely syntactic: raises ValueError if the word contains a letter +-1,
    i.e. is not literally in the image of shift.
    """
    for x in a.letters:
        if abs(x) == 1:
            raise ValueError("word contains sigma_1^{+-1}, not in the image of shift")
    sign = lambda x: 1 if x > 0 else -1
    return BraidWord(a.strands - 1, tuple(x - sign(x) for x in a.letters))


@dataclasses.dataclass(frozen=True)
class Endomorphism:
    """One of the finite family of maps used by the twisted-conjugacy machinery:
    the identity, the index shift, or conjugation by a fixed braid."""

    kind: str  # "identity" | "shift" | "inner"
    conjugator: BraidWord | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "shift", "inner"):
            raise ValueError(f"unknown endomorphism kind {self.kind!r}")
        if self.kind == "inner" and self.conjugator is None:
            raise ValueError("inner endomorphism needs a conjugator")


IDENTITY_ENDO = Endomorphism("identity")
SHIFT_ENDO = Endomorphism("shift")


def inner_endo(h: BraidWord) -> Endomorphism:
    return Endomorphism("inner", h)


def apply_endo(f: Endomorphism, a: BraidWord) -> BraidWord:
    if f.kind == "identity":
        return a
    if f.kind == "shift":
        return shift(a)
    assert f.conjugator is not None
    return compose(f.conjugator, compose(a, invert(f.conjugator)))


def shifted_conjugate(r: BraidWord, p: BraidWord) -> BraidWord:
    """The shifted conjugacy operation r*p = r . d(p) . sigma_1 . d(r)^-1."""
    n = max(r.strands, p.strands) + 1
    return compose_all(
        [r.embed(n), shift(p).embed(n), generator(n, 1), invert(shift(r)).embed(n)]
    )


def random_word(
    alphabet: Sequence[BraidWord],
    length: int,
    rng: random.Random | int,
    use_inverses: bool = True,
) -> BraidWord:
    """
    A product of `length` uniformly chosen alphabet entries (or their
    inverses when use_inverses is set). Deterministic given a seed.
    """
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    if length < 0:
        raise ValueError("length must be nonnegative")
    if isinstance(rng, int):
        rng = random.Random(rng)
    n = max(w.strands for w in alphabet)
    letters: list[int] = []
    for _ in range(length):
        w = alphabet[rng.randrange(len(alphabet))]
        if use_inverses and rng.random() < 0.5:
            w = invert(w)
        letters.extend(w.letters)
    return BraidWord(n, tuple(letters))


def enumerate_products(
    alphabet: Sequence[BraidWord],
    max_length: int,
    use_inverses: bool = True,
) -> Iterator[BraidWord]:
    """
    Canonical breadth-first enumeration of products of alphabet entries of
    length 0..max_length: ordered by length, then lexicographically by
    symbol position (each generator followed by its inverse). Immediately
    cancelling symbol pairs are skipped; every group element expressible
    within the length bound still appears.
    """
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    n = max(w.strands for w in alphabet)
    symbols: list[tuple[int, BraidWord]] = []
    for i, w in enumerate(alphabet):
        symbols.append((i, w.embed(n)))
        if use_inverses:
            symbols.append((~i, invert(w).embed(n)))

    yield identity(n)
    level: list[tuple[int, BraidWord]] = [(tag, w) for tag, w in symbols]
    for _ in range(max_length):
        for tag, w in level:
            yield w
        nxt: list[tuple[int, BraidWord]] = []
        for tag, w in level:
            for stag, sw in symbols:
                if stag == ~tag:  # immediate cancellation
                    continue
                nxt.append((stag, compose(w, sw)))
        level = nxt
