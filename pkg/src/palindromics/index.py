"""Queryable factor-language slices of a word source, with per-length
completeness certification.

For a substitution fixed point the slices are exact.  The length-2 factor set
is the least fixed point of taking length-2 factors of letter-pair images,
seeded from the image of the seed letter.  A longer slice L_n is read off a
power of the substitution whose letter images all have length >= n: any
occurrence of a length-n factor then spans at most two adjacent letter
images, so the n-windows of the expanded pairs cover the whole slice, while
every window of an expanded genuine factor is itself a genuine factor.

Morphic images are covered the same way from a certified slice of the inner
word: a length-n factor fits inside the image of an inner factor of length
ceil(n / shortest-image) + 1.  Periodic words are certified from a prefix
covering period + n.  Orbit codings fall back to the factors of a finite
prefix and are flagged empirical; a positive membership answer from a prefix
is still sound, only negatives lose proof value.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .sources import FixedPoint, IetCoding, MorphicImage, Periodic, WordSource
from .words import Alphabet, Morphism


class BudgetExceededError(RuntimeError):
    """A certification expansion or scan would exceed its length budget."""


class Membership(NamedTuple):
    present: bool
    certified: bool  # proof-grade: positives always, negatives only on certified lengths


class Extensions(NamedTuple):
    left: tuple[str, ...]
    right: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]


def sliding_factors(text: str, n: int) -> set[str]:
    """All length-n windows of a finite word."""
    if n == 0:
        return {""}
    return {text[i : i + n] for i in range(len(text) - n + 1)}


def _pair_factors(word: str) -> set[str]:
    return {word[i : i + 2] for i in range(len(word) - 1)}


def _fixed_point_pairs(m: Morphism, seed: str) -> set[str]:
    """Length-2 factor set of the fixed point, as a least fixed point."""
    seen = _pair_factors(m.images[seed])
    todo = list(seen)
    while todo:
        w = todo.pop()
        for p in _pair_factors(m.apply(w)) - seen:
            seen.add(p)
            todo.append(p)
    return seen


class _PowerImages:
    """Letter images under successive powers of a substitution, budget-checked."""

    def __init__(self, morphism: Morphism, budget: int):
        self.m = morphism
        self.budget = budget
        self.levels: list[dict[str, str]] = [{c: c for c in morphism.source}]

    def level(self, j: int) -> dict[str, str]:
        while len(self.levels) <= j:
            prev = self.levels[-1]
            nxt = {}
            for c in self.m.source:
                img = "".join(prev[d] for d in self.m.images[c])
                if len(img) > self.budget:
                    raise BudgetExceededError(
                        f"power-{len(self.levels)} image of {c!r} needs {len(img)} symbols, "
                        f"budget is {self.budget}"
                    )
                nxt[c] = img
            self.levels.append(nxt)
        return self.levels[j]

    def level_for_length(self, n: int) -> int:
        """Smallest power whose letter images all have length >= n."""
        j = 0
        while min(len(img) for img in self.level(j).values()) < n:
            j += 1
        return j


def _fixed_point_slices(source: FixedPoint, n_max: int, budget: int) -> list[set[str]]:
    m = source.morphism
    pairs = sorted(_fixed_point_pairs(m, source.seed))
    powers = _PowerImages(m, budget)
    slices: list[set[str]] = [{""}]
    for n in range(1, n_max + 1):
        imgs = powers.level(powers.level_for_length(n))
        slice_n: set[str] = set()
        for p in pairs:
            slice_n |= sliding_factors(imgs[p[0]] + imgs[p[1]], n)
        slices.append(slice_n)
    return slices


def _covering_length(outer: Morphism, n: int) -> int:
    return -(-n // outer.min_image_length) + 1


def build_index(
    source: WordSource,
    n_max: int,
    *,
    max_word_length: int = 10**6,
    prefix_length: int = 20_000,
) -> "FactorIndex":
    """Index every factor slice of `source` up to length `n_max`.

    Fixed points, their morphic images, and periodic words get certified
    slices.  Orbit codings (and unknown source kinds) are scanned from a
    `prefix_length`-symbol prefix and flagged empirical.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")

    if isinstance(source, FixedPoint):
        slices = _fixed_point_slices(source, n_max, max_word_length)
        return FactorIndex(source, n_max, slices, certified_up_to=n_max, empirical_prefix=None)

    if isinstance(source, MorphicImage):
        inner_need = _covering_length(source.outer, n_max) if n_max else 0
        inner_idx = build_index(
            source.inner, inner_need,
            max_word_length=max_word_length, prefix_length=prefix_length,
        )
        slices = [{""}]
        for n in range(1, n_max + 1):
            m = _covering_length(source.outer, n)
            slice_n: set[str] = set()
            for w in inner_idx.factor_set(m):
                slice_n |= sliding_factors(source.outer.apply(w), n)
            slices.append(slice_n)
        certified = 0
        while certified < n_max and _covering_length(source.outer, certified + 1) <= inner_idx.certified_up_to:
            certified += 1
        return FactorIndex(
            source, n_max, slices,
            certified_up_to=certified, empirical_prefix=inner_idx.empirical_prefix,
        )

    if isinstance(source, Periodic):
        text = source.prefix(source.period + n_max)
        slices = [sliding_factors(text[: source.period + n], n) for n in range(n_max + 1)]
        return FactorIndex(source, n_max, slices, certified_up_to=n_max, empirical_prefix=None)

    # orbit codings and any foreign WordSource: factors of a finite prefix
    if prefix_length < n_max:
        raise ValueError("prefix_length must be at least n_max")
    text = source.prefix(prefix_length)
    slices = [sliding_factors(text, n) for n in range(n_max + 1)]
    return FactorIndex(source, n_max, slices, certified_up_to=0, empirical_prefix=prefix_length)


class FactorIndex:
    """Immutable per-length factor sets with certification metadata.

    Certified lengths form a downward-closed range 0..certified_up_to; the
    remaining lengths were read off a finite prefix of `empirical_prefix`
    symbols.
    """

    def __init__(
        self,
        source: WordSource,
        n_max: int,
        slices: Iterable[Iterable[str]],
        certified_up_to: int,
        empirical_prefix: int | None,
    ):
        self.source = source
        self.n_max = n_max
        self._slices = [frozenset(s) for s in slices]
        if len(self._slices) != n_max + 1:
            raise ValueError("need one factor set per length 0..n_max")
        if self._slices[0] != frozenset({""}):
            raise ValueError("the length-0 slice must be exactly the empty word")
        if any(not s for s in self._slices):
            raise ValueError("every indexed length must have at least one factor")
        self.certified_up_to = certified_up_to
        self.empirical_prefix = empirical_prefix
        self.alphabet = source.alphabet
        self._sorted: dict[int, tuple[str, ...]] = {}

    @property
    def effective_alphabet(self) -> Alphabet:
        if self.n_max == 0:
            return self.source.effective_alphabet
        occurring = self._slices[1]
        return Alphabet(tuple(c for c in self.alphabet if c in occurring))

    def certification(self, n: int) -> str:
        self._check_range(n)
        if n <= self.certified_up_to:
            return "certified"
        return f"empirical(prefix={self.empirical_prefix})"

    def _check_range(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"length {n} outside indexed range 0..{self.n_max}")

    def factor_set(self, n: int) -> frozenset[str]:
        self._check_range(n)
        return self._slices[n]

    def factors(self, n: int) -> tuple[str, ...]:
        """The length-n slice in alphabet order."""
        self._check_range(n)
        if n not in self._sorted:
            self._sorted[n] = self.alphabet.sorted(self._slices[n])
        return self._sorted[n]

    def factors_text(self, n: int) -> str:
        """Sorted slice, one factor per line, for diffing against oracles."""
        return "".join(w + "\n" for w in self.factors(n))

    def is_factor(self, w: str) -> Membership:
        n = len(w)
        self._check_range(n)
        present = w in self._slices[n]
        return Membership(present, present or n <= self.certified_up_to)

    def extensions(self, w: str) -> Extensions:
        """Left extensions, right extensions, and two-sided extension pairs of a factor."""
        n = len(w)
        if n + 2 > self.n_max:
            raise ValueError(f"extensions of a length-{n} factor need the index to reach {n + 2}")
        if w not in self._slices[n]:
            raise ValueError(f"{w!r} is not an indexed factor")
        letters = self.effective_alphabet.letters
        grown = self._slices[n + 1]
        grown2 = self._slices[n + 2]
        left = tuple(x for x in letters if x + w in grown)
        right = tuple(y for y in letters if w + y in grown)
        pairs = tuple((x, y) for x in letters for y in letters if x + w + y in grown2)
        return Extensions(left, right, pairs)


class CertifiedLanguage:
    """Exact membership oracle for factors of arbitrary length.

    Complements FactorIndex: no dense slices are stored, so single queries
    about very long factors stay cheap.  Supports the certified source kinds
    only (fixed points, their morphic images, periodic words).
    """

    def __init__(self, source: WordSource, *, max_word_length: int = 10**6):
        self.source = source
        self.budget = max_word_length
        if isinstance(source, FixedPoint):
            self._pairs = sorted(_fixed_point_pairs(source.morphism, source.seed))
            self._powers = _PowerImages(source.morphism, max_word_length)
        elif isinstance(source, MorphicImage):
            self._inner = CertifiedLanguage(source.inner, max_word_length=max_word_length)
            self._image_cache: dict[int, list[str]] = {}
        elif not isinstance(source, Periodic):
            raise ValueError(f"no certified oracle for {source.describe()}")

    def _expanded_pairs(self, n: int) -> list[str]:
        imgs = self._powers.level(self._powers.level_for_length(n))
        return [imgs[p[0]] + imgs[p[1]] for p in self._pairs]

    def _covering_images(self, n: int) -> list[str]:
        src: MorphicImage = self.source  # type: ignore[assignment]
        m = _covering_length(src.outer, n)
        if m not in self._image_cache:
            inner_facts = sorted(self._inner.factors_at(m))
            self._image_cache[m] = [src.outer.apply(w) for w in inner_facts]
        return self._image_cache[m]

    def contains(self, w: str) -> bool:
        """Certified membership of `w` in the factor language."""
        n = len(w)
        if n == 0:
            return True
        src = self.source
        if isinstance(src, FixedPoint):
            return any(w in text for text in self._expanded_pairs(n))
        if isinstance(src, MorphicImage):
            return any(w in text for text in self._covering_images(n))
        assert isinstance(src, Periodic)
        return w in src.prefix(src.period + n)

    def factors_at(self, n: int) -> set[str]:
        """The complete length-n factor slice."""
        src = self.source
        if n == 0:
            return {""}
        if isinstance(src, FixedPoint):
            out: set[str] = set()
            for text in self._expanded_pairs(n):
                out |= sliding_factors(text, n)
            return out
        if isinstance(src, MorphicImage):
            out = set()
            for text in self._covering_images(n):
                out |= sliding_factors(text, n)
            return out
        assert isinstance(src, Periodic)
        return sliding_factors(src.prefix(src.period + n), n)
