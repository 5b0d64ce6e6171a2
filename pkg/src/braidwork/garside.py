"""
Left Garside normal form for braid words, with permutation-braid factors.

Every braid is written uniquely as Delta^k A_1 ... A_l where Delta is the
half twist, each A_t is a nontrivial permutation braid different from
Delta, and adjacent factors are left-weighted: the starting set of A_{t+1}
is contained in the finishing set of A_t. Permutation braids are stored as
one-line permutations of {0..n-1} (images of positions).

Convention: a word read left to right maps to the permutation product
"apply first letter first", i.e. perm(ab)[i] = perm(b)[perm(a)[i]].
Under this convention
  - the starting set of a factor B is {i : B[i-1] > B[i]},
  - the finishing set of A is the starting set of A^-1.

Equality of braid words is decided by comparing normal forms.
"""

from __future__ import annotations

import dataclasses
import functools
from typing import Sequence

from .words import BraidWord, reconcile

Perm = tuple[int, ...]


def perm_identity(n: int) -> Perm:
    return tuple(range(n))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


@functools.lru_cache(maxsize=None)
def perm_inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_transposition(n: int, i: int) -> Perm:
    """The adjacent transposition underlying sigma_i (1-indexed)."""
    assert 1 <= i <= n - 1
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_longest(n: int) -> Perm:
    """The order-reversing permutation, underlying Delta."""
    return tuple(range(n - 1, -1, -1))


def perm_flip(p: Perm) -> Perm:
    """Conjugation by the longest element: Delta^-1 . p . Delta at braid level."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


@functools.lru_cache(maxsize=None)
def starting_set(p: Perm) -> frozenset[int]:
    """Generators sigma_i that can begin a positive word for the factor p."""
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def finishing_set(p: Perm) -> frozenset[int]:
    """Generators sigma_i that can end a positive word for the factor p."""
    return starting_set(perm_inv(p))


def factor_word(p: Perm) -> list[int]:
    """A reduced positive word for the permutation braid p (letters 1-indexed)."""
    n = len(p)
    letters: list[int] = []
    q = list(p)
    while True:
        for i in range(1, n):
            if q[i - 1] > q[i]:
                letters.append(i)
                q[i - 1], q[i] = q[i], q[i - 1]
                break
        else:
            return letters


@dataclasses.dataclass(frozen=True)
class GarsideNormalForm:
    """Delta power plus left-weighted permutation-braid factor sequence."""

    strands: int
    infimum: int
    factors: tuple[Perm, ...]

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.factors)

    def to_word(self) -> BraidWord:
        """Re-expand to a braid word equal to the original element."""
        n = self.strands
        letters: list[int] = []
        if self.infimum != 0:
            from .words import delta, invert, power

            letters.extend(power(delta(n), self.infimum).letters)
        for p in self.factors:
            letters.extend(factor_word(p))
        return BraidWord(n, tuple(letters))

    def to_record(self) -> dict:
        return {
            "n": self.strands,
            "inf": self.infimum,
            "factors": [[x + 1 for x in p] for p in self.factors],
        }

    @staticmethod
    def from_record(record: dict) -> GarsideNormalForm:
        return GarsideNormalForm(
            record["n"],
            record["inf"],
            tuple(tuple(x - 1 for x in p) for p in record["factors"]),
        )


@functools.lru_cache(maxsize=1 << 18)
def _left_weight_pair(a: Perm, b: Perm) -> tuple[Perm, Perm, bool]:
    """Transfer generators from the front of b to the back of a until the
    pair (a, b) is left-weighted. Returns (a', b', changed)."""
    n = len(a)
    changed = False
    while True:
        movable = starting_set(b) - finishing_set(a)
        if not movable:
            return a, b, changed
        i = min(movable)
        s = perm_transposition(n, i)
        a = perm_mul(a, s)
        b = perm_mul(s, b)
        changed = True


def _normalise_factors(n: int, factors: list[Perm]) -> tuple[int, tuple[Perm, ...]]:
    """Left-weight a factor sequence, stripping Delta factors to a leading
    power and dropping trivial factors. Returns (delta_power, factors)."""
    ident = perm_identity(n)
    w0 = perm_longest(n)
    factors = [p for p in factors if p != ident]
    # Incremental pass: extend a normalised prefix one factor at a time,
    # combing changes backwards.
    for i in range(len(factors) - 1):
        factors[i], factors[i + 1], moved = _left_weight_pair(
            factors[i], factors[i + 1]
        )
        if moved:
            for j in range(i - 1, -1, -1):
                a, b, moved_back = _left_weight_pair(factors[j], factors[j + 1])
                if not moved_back:
                    break
                factors[j], factors[j + 1] = a, b
    # Fixpoint safety net: combing can in principle disturb later pairs.
    while True:
        changed = False
        for i in range(len(factors) - 1):
            factors[i], factors[i + 1], moved = _left_weight_pair(
                factors[i], factors[i + 1]
            )
            changed = changed or moved
        if not changed:
            break
    power = 0
    lo = 0
    hi = len(factors)
    while lo < hi and factors[lo] == w0:
        power += 1
        lo += 1
    while lo < hi and factors[hi - 1] == ident:
        hi -= 1
    return power, tuple(factors[lo:hi])


@functools.lru_cache(maxsize=1 << 14)
def normal_form(a: BraidWord) -> GarsideNormalForm:
    """The left Garside normal form of a word."""
    n = a.strands
    if n == 1:
        return GarsideNormalForm(1, 0, ())
    w0 = perm_longest(n)
    factors: list[Perm] = []
    dpows: list[int] = []
    for letter in a.letters:
        s = perm_transposition(n, abs(letter))
        if letter > 0:
            factors.append(s)
            dpows.append(0)
        else:
            # sigma_i^-1 = Delta^-1 . (Delta sigma_i^-1), the latter a permutation braid
            factors.append(perm_mul(w0, s))
            dpows.append(-1)
    # Push all Delta powers to the front: f . Delta^E = Delta^E . flip^E(f).
    trailing = 0
    for i in range(len(factors) - 1, -1, -1):
        if trailing % 2:
            factors[i] = perm_flip(factors[i])
        trailing += dpows[i]
    extra, normalised = _normalise_factors(n, factors)
    return GarsideNormalForm(n, trailing + extra, normalised)


def is_left_weighted(nf: GarsideNormalForm) -> bool:
    """Check the structural invariants of a normal form at the permutation level."""
    ident = perm_identity(nf.strands)
    w0 = perm_longest(nf.strands)
    for p in nf.factors:
        if p == ident or p == w0:
            return False
    for a, b in zip(nf.factors, nf.factors[1:]):
        if not starting_set(b) <= finishing_set(a):
            return False
    return True


def words_equal(a: BraidWord, b: BraidWord) -> bool:
    """Whether two words represent the same braid, after strand reconciliation."""
    a, b = reconcile(a, b)
    return normal_form(a) == normal_form(b)


def is_trivial(a: BraidWord) -> bool:
    return normal_form(a) == GarsideNormalForm(a.strands, 0, ())


def canonical_length(a: BraidWord) -> int:
    """Number of permutation-braid factors in the normal form."""
    return normal_form(a).canonical_length


def nf_key(a: BraidWord, strands: int | None = None) -> tuple:
    """A hashable key identifying the braid a represents, in the given ambient group."""
    if strands is not None:
        a = a.embed(strands)
    nf = normal_form(a)
    return (nf.strands, nf.infimum, nf.factors)


def delta_power_estimate(a: BraidWord) -> tuple[int, int]:
    """Infimum and supremum of the normal form: the tightest Delta-power
    window containing the element. A crude but canonical way to compare
    how much half-twist two braids carry."""
    nf = normal_form(a)
    return nf.infimum, nf.supremum


def rewrite(a: BraidWord) -> BraidWord:
    """Canonical re-expansion of a word from its normal form. Used to expose
    public values without leaking the literal letters they were built from."""
    return normal_form(a).to_word()
