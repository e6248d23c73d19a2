"""Shared helpers: independent test-side oracles the implementation is
checked against.  These deliberately use different code paths from the
package (slicing and string repetition instead of letter scans)."""

from __future__ import annotations

import random

from repthresh import Occurrence, Word


def make_word(text: str, alphabet: int = 2) -> Word:
    from repthresh import parse_word

    return parse_word(text, alphabet)


def random_word(rng: random.Random, alphabet: int, length: int) -> Word:
    return Word(alphabet, tuple(rng.randrange(alphabet) for _ in range(length)))


def periodic_prefix_oracle(w: Word, occ: Occurrence) -> bool:
    """Second reading of occurrence validity: the factor equals a prefix of
    the infinite repetition of its first `period` letters."""
    if occ.start < 0 or occ.start + occ.length > len(w):
        return False
    factor = w.letters[occ.start : occ.start + occ.length]
    block = w.letters[occ.start : occ.start + occ.period]
    reps = -(-occ.length // occ.period)  # ceil
    return factor == (block * reps)[: occ.length]


def brute_max_exponent(w: Word, min_period: int):
    """Independent maximum: every (start, period) pair, maximal extension,
    returning (exponent_num, exponent_den, occurrence) or None."""
    letters = w.letters
    n = len(letters)
    best = None
    for s in range(n):
        for p in range(min_period, n - s):
            if letters[s] != letters[s + p]:
                continue
            e = s + 1
            while e < n - p and letters[e] == letters[e + p]:
                e += 1
            length = p + (e - s)
            if best is None or length * best[1] > best[0] * p:
                best = (length, p, Occurrence(s, p, length))
    return best
