"""Freely reduced words over an arbitrary hashable alphabet."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

Letter = Hashable
Syllable = tuple[Any, int]  # (letter, +1 or -1)


def _reduced(pairs: Iterable[Syllable]) -> tuple[Syllable, ...]:
    stack: list[Syllable] = []
    for letter, sign in pairs:
        if sign not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {sign}")
        if stack and stack[-1][0] == letter and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((letter, sign))
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word: a sequence of (letter, sign) with sign in {1, -1}."""

    letters: tuple[Syllable, ...] = field(default=())

    @staticmethod
    def of(pairs: Iterable[Syllable]) -> "FreeWord":
        return FreeWord(_reduced(pairs))

    @staticmethod
    def gen(letter: Letter, sign: int = 1) -> "FreeWord":
        return FreeWord.of([(letter, sign)])

    @staticmethod
    def identity() -> "FreeWord":
        return FreeWord()

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.of(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((l, -s) for l, s in reversed(self.letters)))

    def __invert__(self) -> "FreeWord":
        return self.inverse()

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return self.inverse() ** (-k)
        out = FreeWord()
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self, by: "FreeWord") -> "FreeWord":
        return by * self * by.inverse()

    def exponent_sum(self, letter: Letter) -> int:
        return sum(s for l, s in self.letters if l == letter)

    def support(self) -> set:
        return {l for l, _ in self.letters}

    def substitute(self, mapping: Mapping[Letter, "FreeWord"]) -> "FreeWord":
        """Replace every mapped letter by its image word; others stay put."""
        pieces: list[Syllable] = []
        for letter, sign in self.letters:
            image = mapping.get(letter)
            if image is None:
                pieces.append((letter, sign))
            else:
                word = image if sign == 1 else image.inverse()
                pieces.extend(word.letters)
        return FreeWord.of(pieces)

    def evaluate_additive(self, value_of: Callable[[Letter], int]) -> int:
        return sum(s * value_of(l) for l, s in self.letters)

    def format(self, name: Callable[[Letter], str] = str) -> str:
        if not self.letters:
            return "1"
        return " ".join(name(l) + ("" if s == 1 else "^-1") for l, s in self.letters)

    def __str__(self) -> str:
        return self.format()


def cyclically_reduced(word: FreeWord) -> FreeWord:
    """Strip cancelling first/last syllables until the word is cyclically reduced."""
    letters = list(word.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return FreeWord(tuple(letters))
