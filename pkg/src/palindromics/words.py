"""Alphabets, finite words, and letter-to-word morphisms.

Finite words are plain Python strings over single-character letters.  An
Alphabet pins down the letter order used everywhere enumeration order
matters; the order is first-appearance order, never codepoint order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterator, Mapping

# characters that would make the rule grammar ambiguous
_RESERVED = set("->;#") | set(" \t\r\n")


def reverse(w: str) -> str:
    """Mirror image of a word."""
    return w[::-1]


def is_palindrome(w: str) -> bool:
    """True iff the word equals its own mirror image (the empty word does)."""
    return w == w[::-1]


class MorphismParseError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered collection of distinct single-character letters."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("alphabet must not be empty")
        seen = set()
        for c in self.letters:
            if len(c) != 1 or not c.isprintable() or c in _RESERVED:
                raise ValueError(f"bad letter {c!r}: expected a single printable character")
            if c in seen:
                raise ValueError(f"duplicate letter {c!r}")
            seen.add(c)

    @classmethod
    def from_word(cls, word: str) -> "Alphabet":
        """Alphabet made of the letters of `word`, in first-appearance order."""
        if not word:
            raise ValueError("cannot infer an alphabet from the empty word")
        return cls(tuple(dict.fromkeys(word)))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, c: object) -> bool:
        return c in self._index

    def index(self, c: str) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise ValueError(f"letter {c!r} not in alphabet {''.join(self.letters)!r}") from None

    def key(self, word: str) -> tuple[int, ...]:
        """Lexicographic sort key realizing the alphabet order."""
        idx = self._index
        try:
            return tuple(idx[c] for c in word)
        except KeyError as e:
            raise ValueError(f"letter {e.args[0]!r} not in alphabet") from None

    def sorted(self, words) -> tuple[str, ...]:
        return tuple(sorted(words, key=self.key))

    def validate(self, word: str) -> None:
        for c in word:
            if c not in self._index:
                raise ValueError(f"letter {c!r} not in alphabet {''.join(self.letters)!r}")


@dataclass(frozen=True)
class Morphism:
    """Non-erasing letter-to-word substitution.

    ``images[c]`` is the image of source letter ``c``.  The incidence matrix
    entry ``[i][j]`` counts occurrences of the j-th target letter in the image
    of the i-th source letter.
    """

    source: Alphabet
    target: Alphabet
    images: Mapping[str, str]

    def __post_init__(self) -> None:
        imgs = dict(self.images)
        if set(imgs) != set(self.source.letters):
            raise ValueError("images must cover exactly the source alphabet")
        for c, img in imgs.items():
            if not img:
                raise ValueError(f"erasing rule {c!r} -> empty word is not allowed")
            self.target.validate(img)
        object.__setattr__(self, "images", imgs)

    def apply(self, w: str) -> str:
        """Image of a finite word: the concatenation of its letter images."""
        imgs = self.images
        try:
            return "".join(imgs[c] for c in w)
        except KeyError as e:
            raise ValueError(f"letter {e.args[0]!r} not in source alphabet") from None

    @cached_property
    def incidence_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.images[c].count(t) for t in self.target) for c in self.source
        )

    @cached_property
    def min_image_length(self) -> int:
        return min(len(img) for img in self.images.values())

    def is_primitive(self) -> bool:
        """True iff some power <= |A|^2 of the incidence matrix is entrywise positive.

        Computed on the boolean semiring, which has the same positivity
        pattern as the integer powers and cannot overflow.
        """
        if self.source != self.target:
            raise ValueError("primitivity needs equal source and target alphabets")
        k = len(self.source)
        base = [[e > 0 for e in row] for row in self.incidence_matrix]

        def positive(mat):
            return all(all(row) for row in mat)

        power = base
        for _ in range(k * k - 1):
            if positive(power):
                return True
            power = [
                [any(power[i][x] and base[x][j] for x in range(k)) for j in range(k)]
                for i in range(k)
            ]
        return positive(power)

    def rules_text(self) -> str:
        """Canonical one-line rule listing, e.g. ``a->ab;b->a``."""
        return ";".join(f"{c}->{self.images[c]}" for c in self.source)


def parse_morphism(text: str) -> Morphism:
    """Parse ``rule (";" rule)*`` with ``rule := letter "->" word``.

    Whitespace is ignored everywhere.  The source alphabet is the left-hand
    letters in order of first appearance; the target alphabet is the union of
    the image letters, also in first-appearance order.
    """
    src_letters: list[str] = []
    images: dict[str, str] = {}
    for chunk in text.split(";"):
        rule = "".join(chunk.split())
        if not rule:
            continue
        head, sep, body = rule.partition("->")
        if not sep:
            raise MorphismParseError(f"rule {rule!r} lacks '->'")
        if len(head) != 1:
            raise MorphismParseError(f"left side of {rule!r} must be a single letter")
        if head in images:
            raise MorphismParseError(f"duplicate rule for letter {head!r}")
        if not body:
            raise MorphismParseError(f"empty image for letter {head!r} (erasing rules rejected)")
        for c in head + body:
            if c in _RESERVED or not c.isprintable():
                raise MorphismParseError(f"character {c!r} cannot be used as a letter")
        src_letters.append(head)
        images[head] = body
    if not images:
        raise MorphismParseError("no rules found")
    target_letters = tuple(dict.fromkeys(c for img in images.values() for c in img))
    return Morphism(Alphabet(tuple(src_letters)), Alphabet(target_letters), images)


def load_morphism_file(path: str | Path) -> Morphism:
    """Read a morphism from a UTF-8 text file, one rule per line, # comments allowed."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    rules = [line.split("#", 1)[0].strip() for line in lines]
    return parse_morphism(";".join(r for r in rules if r))
