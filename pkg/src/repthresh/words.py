"""Core word model: finite words over integer alphabets, exact rational
exponents, located repetitions, and the freeness constraints that the
detector and searcher enforce.

Letters are small integers 0..a-1; the textual encoding (digits, then
lowercase letters for alphabets up to 36, comma-separated decimals above
that) is purely an I/O concern.  All values here are immutable, so they can
be shared freely between threads.

Exponents are `fractions.Fraction` throughout: comparisons are exact
cross-multiplications, never floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

__all__ = [
    "Word",
    "Occurrence",
    "FreenessConstraint",
    "Mode",
    "WordFormatError",
    "parse_word",
    "render_word",
    "read_word_file",
    "parse_exponent",
    "exponent_of",
    "verify_occurrence",
]

# Letter characters for alphabets of size <= 36: '0'..'9' then 'a'..'z'.
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
_DIGIT_VALUE = {c: v for v, c in enumerate(_DIGITS)}


class WordFormatError(ValueError):
    """Raised when word text does not decode under the declared alphabet."""


class Mode(enum.Enum):
    """Comparison mode of a freeness constraint.

    GEQ forbids occurrences with exponent >= threshold, STRICT forbids
    exponent > threshold.  Both appear in practice (thresholds are infima,
    and e.g. the Thue-Morse sequence avoids exponents strictly above 2 while
    containing exponent-2 squares), so neither is hard-coded anywhere.
    """

    GEQ = "geq"
    STRICT = "strict"


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., alphabet-1}."""

    alphabet: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.alphabet < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.alphabet}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        a = self.alphabet
        for pos, x in enumerate(self.letters):
            if not 0 <= x < a:
                raise ValueError(
                    f"position {pos}: letter {x} out of range for alphabet size {a}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return render_word(self)


@dataclass(frozen=True)
class Occurrence:
    """A located repetition: the factor w[start : start+length) repeats with
    shift `period`, i.e. w[i] == w[i+period] on the whole span.

    `period` is the declared shift, not necessarily the minimal one.  The
    exponent length/period is > 1 by construction (length >= period + 1).
    """

    start: int
    period: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")
        if self.length < self.period + 1:
            raise ValueError(
                f"length {self.length} too short for period {self.period}"
            )

    @property
    def end(self) -> int:
        """Index one past the last letter of the occurrence."""
        return self.start + self.length

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


@dataclass(frozen=True)
class FreenessConstraint:
    """Forbids occurrences with period >= min_period whose exponent meets
    `threshold` under `mode` (>= for GEQ, > for STRICT)."""

    min_period: int
    threshold: Fraction
    mode: Mode = Mode.GEQ

    def __post_init__(self) -> None:
        if self.min_period < 1:
            raise ValueError(f"min_period must be >= 1, got {self.min_period}")
        if not isinstance(self.threshold, Fraction):
            object.__setattr__(self, "threshold", Fraction(self.threshold))
        if self.threshold <= 1:
            # Nothing is avoidable at threshold 1: every word is its own
            # first power, so such a constraint is meaningless.
            raise ValueError(f"threshold must be > 1, got {self.threshold}")

    def forbids(self, exponent: Fraction) -> bool:
        if self.mode is Mode.GEQ:
            return exponent >= self.threshold
        return exponent > self.threshold

    def forbids_occurrence(self, occ: Occurrence) -> bool:
        return occ.period >= self.min_period and self.forbids(occ.exponent)


def exponent_of(length: int, period: int) -> Fraction:
    """Exact exponent length/period of a repetition, as a reduced rational."""
    if length < 1 or period < 1:
        raise ValueError(f"length and period must be >= 1, got {length}/{period}")
    return Fraction(length, period)


def parse_exponent(text: str) -> Fraction:
    """Parse 'p/q' or 'p' into an exact rational."""
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad exponent {text!r}: {exc}") from None


def verify_occurrence(w: Word, occ: Occurrence) -> bool:
    """True iff occ fits inside w and w[i] == w[i+period] holds on its span.

    Never raises: geometry violations simply return False, so this is usable
    as a cheap postcondition check on anything that claims an occurrence.
    """
    if occ.end > len(w):
        return False
    letters = w.letters
    p = occ.period
    for i in range(occ.start, occ.end - p):
        if letters[i] != letters[i + p]:
            return False
    return True


def parse_word(text: str, alphabet: int) -> Word:
    """Decode one word from its textual form.

    For alphabet <= 36 each letter is a single character ('0'-'9' then
    'a'-'z'); above that, letters are comma-separated decimal integers.
    The empty string decodes to the empty word in both regimes.
    """
    if alphabet < 1:
        raise ValueError(f"alphabet size must be >= 1, got {alphabet}")
    letters: list[int] = []
    if alphabet <= 36:
        for pos, ch in enumerate(text):
            val = _DIGIT_VALUE.get(ch)
            if val is None:
                raise WordFormatError(f"position {pos}: invalid letter character {ch!r}")
            if val >= alphabet:
                raise WordFormatError(
                    f"position {pos}: letter {val} >= alphabet size {alphabet}"
                )
            letters.append(val)
    elif text:
        for pos, tok in enumerate(text.split(",")):
            try:
                val = int(tok)
            except ValueError:
                raise WordFormatError(
                    f"position {pos}: invalid letter token {tok!r}"
                ) from None
            if not 0 <= val < alphabet:
                raise WordFormatError(
                    f"position {pos}: letter {val} >= alphabet size {alphabet}"
                )
            letters.append(val)
    return Word(alphabet, tuple(letters))


def render_word(w: Word) -> str:
    """Inverse of parse_word for the same alphabet size."""
    if w.alphabet <= 36:
        return "".join(_DIGITS[x] for x in w.letters)
    return ",".join(str(x) for x in w.letters)


def read_word_file(path: str | Path, alphabet: int) -> list[Word]:
    """Read words one per line; '#' lines are comments, blank lines skipped."""
    words = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            words.append(parse_word(line, alphabet))
        except WordFormatError as exc:
            raise WordFormatError(f"line {lineno}: {exc}") from None
    return words
