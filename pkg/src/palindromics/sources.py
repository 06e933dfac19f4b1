"""Recipes for infinite words and their finite prefixes.

Four kinds of source are supported: fixed points of primitive substitutions,
morphic images of another source, orbit codings of interval exchange maps
(in exact rational arithmetic), and periodic words.  All sources emit
deterministic prefixes: ``prefix(n)`` is always a prefix of ``prefix(n+1)``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from bisect import bisect_right
from fractions import Fraction
from functools import cached_property
from string import ascii_uppercase
from typing import Sequence

from .words import Alphabet, Morphism

# revisit-detection cap for rational orbits; beyond it we fall back to plain iteration
_ORBIT_CAP = 100_000


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError("floats are not exact; pass a Fraction, an int, or a string like '3/10'")
    return Fraction(x)


class WordSource(ABC):
    """A recipe for an infinite word over a fixed alphabet."""

    alphabet: Alphabet

    @abstractmethod
    def prefix(self, n: int) -> str:
        """The length-n prefix of the infinite word."""

    @property
    @abstractmethod
    def effective_alphabet(self) -> Alphabet:
        """The letters that actually occur, in declared order."""

    @abstractmethod
    def describe(self) -> str:
        """Stable human-readable description used in reports."""


class FixedPoint(WordSource):
    """Fixed point of a primitive substitution, grown from a prolongable seed.

    The seed letter's image must start with the seed and be longer than it,
    so iterating the substitution on the seed converges letterwise.
    """

    def __init__(self, morphism: Morphism, seed: str):
        if morphism.source != morphism.target:
            raise ValueError("a fixed point needs equal source and target alphabets")
        if seed not in morphism.source:
            raise ValueError(f"seed {seed!r} not in the alphabet")
        img = morphism.images[seed]
        if not img.startswith(seed) or len(img) < 2:
            raise ValueError(
                f"seed {seed!r} is not prolongable: image {img!r} must start with the seed and extend it"
            )
        if not morphism.is_primitive():
            raise ValueError("fixed-point sources require a primitive substitution")
        self.morphism = morphism
        self.seed = seed
        self.alphabet = morphism.source
        self._expansion = img  # longest expansion computed so far

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        w = self._expansion
        while len(w) < n:
            w = self.morphism.apply(w)
        self._expansion = w
        return w[:n]

    @property
    def effective_alphabet(self) -> Alphabet:
        # primitivity makes every letter occur
        return self.alphabet

    def describe(self) -> str:
        return f"fixed-point({self.morphism.rules_text()}, seed={self.seed})"


class MorphicImage(WordSource):
    """Image of another source under a non-erasing morphism."""

    def __init__(self, outer: Morphism, inner: WordSource):
        for c in inner.alphabet:
            if c not in outer.source:
                raise ValueError(f"inner letter {c!r} has no image under the outer morphism")
        self.outer = outer
        self.inner = inner
        self.alphabet = outer.target

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        if n == 0:
            return ""
        # each inner letter contributes at least one symbol
        return self.outer.apply(self.inner.prefix(n))[:n]

    @cached_property
    def effective_alphabet(self) -> Alphabet:
        occurring = set()
        for c in self.inner.effective_alphabet:
            occurring.update(self.outer.images[c])
        return Alphabet(tuple(t for t in self.alphabet if t in occurring))

    def describe(self) -> str:
        return f"morphic-image({self.outer.rules_text()}, {self.inner.describe()})"


class IetCoding(WordSource):
    """Symbolic coding of an interval exchange orbit, in exact rationals.

    The unit interval is split into consecutive half-open pieces [l, r) with
    the given lengths.  The map translates the pieces so that, read left to
    right, they appear in the order listed by ``permutation`` (1-based piece
    numbers).  A visit to piece j is coded by the j-th uppercase letter.
    Exactness matters: a float orbit can land on the wrong side of a piece
    boundary.
    """

    def __init__(self, lengths: Sequence, permutation: Sequence[int], start) -> None:
        lens = tuple(_exact(x) for x in lengths)
        if any(l <= 0 for l in lens):
            raise ValueError("interval lengths must be positive")
        if sum(lens) != 1:
            raise ValueError("interval lengths must sum to 1")
        r = len(lens)
        if r > len(ascii_uppercase):
            raise ValueError("at most 26 intervals supported")
        perm = tuple(int(p) for p in permutation)
        if sorted(perm) != list(range(1, r + 1)):
            raise ValueError(f"permutation must reorder 1..{r}")
        x0 = _exact(start)
        if not 0 <= x0 < 1:
            raise ValueError("starting point must lie in [0, 1)")
        self.lengths = lens
        self.permutation = perm
        self.start = x0
        self.alphabet = Alphabet(tuple(ascii_uppercase[:r]))
        lefts = [Fraction(0)]
        for l in lens[:-1]:
            lefts.append(lefts[-1] + l)
        self._lefts = lefts
        # new left endpoint of piece j = total length of the pieces placed before it
        shifts = []
        for j in range(1, r + 1):
            pos = perm.index(j)
            new_left = sum((lens[perm[q] - 1] for q in range(pos)), Fraction(0))
            shifts.append(new_left - lefts[j - 1])
        self._shifts = shifts

    def _piece(self, x: Fraction) -> int:
        return bisect_right(self._lefts, x) - 1

    def _step(self, x: Fraction) -> tuple[str, Fraction]:
        j = self._piece(x)
        return self.alphabet.letters[j], x + self._shifts[j]

    @cached_property
    def _cycle(self) -> tuple[int, int, str] | None:
        """(preperiod, period, coding of the first preperiod+period steps).

        Rational data makes the orbit eventually periodic; None only if no
        revisit happened within the iteration cap.
        """
        seen: dict[Fraction, int] = {}
        out: list[str] = []
        x = self.start
        step = 0
        while x not in seen:
            if step > _ORBIT_CAP:
                return None
            seen[x] = step
            letter, x = self._step(x)
            out.append(letter)
            step += 1
        pre = seen[x]
        return pre, step - pre, "".join(out)

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        cyc = self._cycle
        if cyc is None:
            out = []
            x = self.start
            for _ in range(n):
                letter, x = self._step(x)
                out.append(letter)
            return "".join(out)
        pre, per, base = cyc
        if n <= len(base):
            return base[:n]
        reps = -(-(n - pre) // per)
        return (base[:pre] + base[pre:] * reps)[:n]

    @cached_property
    def effective_alphabet(self) -> Alphabet:
        cyc = self._cycle
        visited = set(cyc[2]) if cyc is not None else set(self.prefix(_ORBIT_CAP))
        return Alphabet(tuple(c for c in self.alphabet if c in visited))

    def describe(self) -> str:
        lens = ",".join(str(l) for l in self.lengths)
        perm = ",".join(str(p) for p in self.permutation)
        return f"iet(lengths={lens}; permutation={perm}; start={self.start})"


class Periodic(WordSource):
    """The infinite repetition of a fixed nonempty finite word."""

    def __init__(self, word: str):
        if not word:
            raise ValueError("period word must be nonempty")
        self.word = word
        self.alphabet = Alphabet.from_word(word)

    @property
    def period(self) -> int:
        return len(self.word)

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be nonnegative")
        if n == 0:
            return ""
        reps = -(-n // len(self.word))
        return (self.word * reps)[:n]

    @property
    def effective_alphabet(self) -> Alphabet:
        return self.alphabet

    def describe(self) -> str:
        return f"periodic({self.word})"


def iet_orbit_coding(lengths: Sequence, permutation: Sequence[int], start, n: int) -> str:
    """Length-n orbit coding of the interval exchange with the given data."""
    return IetCoding(lengths, permutation, start).prefix(n)
