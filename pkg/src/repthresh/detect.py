"""Repetition detection: find fractional powers with period >= l whose
exponent meets a threshold.

Two independent routes are kept deliberately separate:

* ``naive_oracle`` tries every (start, period) pair by direct letter
  comparison.  It is the ground truth and stays dumb on purpose.
* ``exists_repetition`` / ``max_exponent`` scan match-runs per period
  (for each shift p, the maximal blocks where w[i] == w[i+p]; a block of
  length len gives the occurrence (i, p, p+len)).  For byte-sized alphabets
  the match vector is computed with one big-integer XOR per period and runs
  are located with C-level byte searches, which keeps the O(n^2) scan usable
  up to word lengths of a few times 10^4.

``violations_ending_at`` is the incremental check used by the backtracking
searcher: when a word grows by one letter, any new violation must end at
that letter.

All functions are pure; nothing is cached across calls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import FreenessConstraint, Mode, Occurrence, Word

__all__ = [
    "DetectionReport",
    "naive_oracle",
    "max_exponent",
    "exists_repetition",
    "violations_ending_at",
    "min_repeat_distance",
    "detect",
]


@dataclass(frozen=True)
class DetectionReport:
    """Outcome of a detection pass over one word.

    ``max_exponent`` is None exactly when no occurrence with exponent > 1
    and period >= the queried minimum exists (every word trivially has
    exponent 1, which is never reported).  ``constraint_violated`` is only
    meaningful when the caller supplied a threshold.
    """

    max_exponent: Fraction | None
    witness: Occurrence | None
    constraint_violated: bool = False

    def to_jsonable(self) -> dict:
        return {
            "max_exponent": _fraction_json(self.max_exponent),
            "witness": _occurrence_json(self.witness),
            "constraint_violated": self.constraint_violated,
        }


def _fraction_json(f: Fraction | None) -> dict | None:
    if f is None:
        return None
    return {"num": f.numerator, "den": f.denominator}


def _occurrence_json(occ: Occurrence | None) -> dict | None:
    if occ is None:
        return None
    return {"start": occ.start, "period": occ.period, "length": occ.length}


def _required_run(p: int, num: int, den: int, strict: bool) -> int:
    """Minimal match-run length so that (p+run)/p meets num/den."""
    if strict:
        return p * (num - den) // den + 1
    need = (p * (num - den) + den - 1) // den
    return need if need > 0 else 1


def naive_oracle(w: Word, c: FreenessConstraint) -> Occurrence | None:
    """Ground-truth scan: try every (start, period >= min_period) pair.

    Returns a forbidden occurrence of maximal exponent (ties: smallest
    start, then smallest period), or None.  Kept brutally simple; the fast
    scanners are tested against this.
    """
    if len(w) < 1:
        raise ValueError("word must be non-empty")
    letters = w.letters
    n = len(letters)
    num = c.threshold.numerator
    den = c.threshold.denominator
    strict = c.mode is Mode.STRICT
    best: Occurrence | None = None
    best_num = best_den = 1
    for p in range(c.min_period, n):
        for s in range(0, n - p):
            if letters[s] != letters[s + p]:
                continue
            e = s + 1
            while e < n - p and letters[e] == letters[e + p]:
                e += 1
            length = p + (e - s)
            # violates?  length/p >= num/den  (or strictly >)
            lhs, rhs = length * den, p * num
            if lhs < rhs or (strict and lhs == rhs):
                continue
            if best is None:
                better = True
            else:
                d = length * best_den - best_num * p
                better = d > 0 or (d == 0 and (s, p) < (best.start, best.period))
            if better:
                best = Occurrence(s, p, length)
                best_num, best_den = length, p
    return best


def max_exponent(w: Word, min_period: int = 1) -> DetectionReport:
    """Maximal exponent over all occurrences with period >= min_period.

    The witness is the maximal match-run attaining it (ties: smallest start,
    then smallest period).  Returns a report with max_exponent None when the
    word has no repetition at the queried periods.
    """
    if len(w) < 1:
        raise ValueError("word must be non-empty")
    if min_period < 1:
        raise ValueError(f"min_period must be >= 1, got {min_period}")
    if w.alphabet <= 256:
        best = _scan_max_bytes(w.letters, min_period)
    else:
        best = _scan_max_generic(w.letters, min_period)
    if best is None:
        return DetectionReport(None, None)
    occ = Occurrence(*best)
    return DetectionReport(occ.exponent, occ)


def exists_repetition(w: Word, c: FreenessConstraint) -> Occurrence | None:
    """Some forbidden occurrence, or None.

    Agrees with naive_oracle on the SOME/NONE decision; the returned witness
    is the first qualifying maximal run in (period, start) scan order, which
    may differ from the oracle's maximal-exponent witness.
    """
    if len(w) < 1:
        raise ValueError("word must be non-empty")
    if w.alphabet <= 256:
        return _scan_threshold_bytes(w, c)
    return _scan_threshold_generic(w, c)


def detect(
    w: Word,
    min_period: int = 1,
    constraint: FreenessConstraint | None = None,
) -> DetectionReport:
    """Full report: maximal exponent plus, optionally, a threshold verdict."""
    report = max_exponent(w, min_period)
    if constraint is None:
        return report
    violated = exists_repetition(w, constraint) is not None
    return DetectionReport(report.max_exponent, report.witness, violated)


def violations_ending_at(w: Word, c: FreenessConstraint, pos: int) -> Occurrence | None:
    """A forbidden occurrence whose last letter sits at index pos, or None.

    If the prefix w[:pos] already satisfies the constraint, None here means
    w[:pos+1] satisfies it too: a new violation must end at the new letter.
    Periods are scanned ascending and the first violation is returned,
    truncated to the minimal violating length.
    """
    if not 0 <= pos < len(w):
        raise ValueError(f"pos {pos} out of range for word of length {len(w)}")
    letters = w.letters
    num = c.threshold.numerator
    den = c.threshold.denominator
    strict = c.mode is Mode.STRICT
    # A violation ending at pos has p + run <= pos + 1 and run >= p(r-1),
    # so p*r <= pos+1 bounds the periods worth scanning.
    pmax = min(pos, (pos + 1) * den // num)
    for p in range(c.min_period, pmax + 1):
        if letters[pos - p] != letters[pos]:
            continue
        need = _required_run(p, num, den, strict)
        run = 1
        i = pos - p - 1
        while run < need and i >= 0 and letters[i] == letters[i + p]:
            run += 1
            i -= 1
        if run >= need:
            return Occurrence(pos - p - run + 1, p, p + run)
    return None


def min_repeat_distance(w: Word, n: int) -> int | None:
    """Minimal start-index distance between two occurrences of the same
    length-n factor, or None when every length-n factor occurs once."""
    if not 1 <= n <= len(w):
        raise ValueError(f"factor length {n} out of range for word of length {len(w)}")
    if w.alphabet <= 256:
        data: bytes | tuple = bytes(w.letters)
    else:
        data = w.letters
    last: dict = {}
    best: int | None = None
    for i in range(len(w) - n + 1):
        f = data[i : i + n]
        j = last.get(f)
        if j is not None and (best is None or i - j < best):
            best = i - j
        last[f] = i
    return best


# ---------------------------------------------------------------------------
# Byte-packed scanners (alphabet <= 256).
#
# For shift p the XOR of the word's little-endian integer image with itself
# shifted by p bytes has a zero byte exactly where w[i] == w[i+p]; maximal
# zero-byte blocks are the match-runs.  bytes.find locates a block of `need`
# zeros in C.


def _scan_threshold_bytes(w: Word, c: FreenessConstraint) -> Occurrence | None:
    letters = w.letters
    n = len(letters)
    num = c.threshold.numerator
    den = c.threshold.denominator
    strict = c.mode is Mode.STRICT
    x = int.from_bytes(bytes(letters), "little")
    pmax = min(n - 1, n * den // num)
    for p in range(c.min_period, pmax + 1):
        limit = n - p
        need = _required_run(p, num, den, strict)
        if need > limit:
            continue
        z = (x ^ (x >> (8 * p))).to_bytes(n, "little")[:limit]
        i = z.find(b"\x00" * need)
        if i < 0:
            continue
        j = i + need
        while j < limit and not z[j]:
            j += 1
        return Occurrence(i, p, p + (j - i))
    return None


def _scan_max_bytes(letters: tuple[int, ...], min_period: int):
    n = len(letters)
    x = int.from_bytes(bytes(letters), "little")
    best = None  # (start, period, length)
    best_num, best_den = 1, 1  # current maximum as length/period
    for p in range(min_period, n):
        limit = n - p
        # only runs at least as good as the current best are interesting
        need = (p * (best_num - best_den) + best_den - 1) // best_den
        if need < 1:
            need = 1
        if need > limit:
            continue
        z = (x ^ (x >> (8 * p))).to_bytes(n, "little")[:limit]
        block = b"\x00" * need
        pos = 0
        while True:
            i = z.find(block, pos)
            if i < 0:
                break
            j = i + need
            while j < limit and not z[j]:
                j += 1
            run = j - i
            d = (p + run) * best_den - best_num * p
            if d > 0 or (
                d == 0 and (best is None or (i, p) < (best[0], best[1]))
            ):
                best = (i, p, p + run)
                best_num, best_den = p + run, p
                need = (p * (best_num - best_den) + best_den - 1) // best_den
                if need > limit:
                    break
                block = b"\x00" * need
            pos = j + 1
    return best


# ---------------------------------------------------------------------------
# Generic scanners for alphabets too large to pack into bytes.


def _iter_runs(letters: tuple[int, ...], p: int):
    """Maximal match-runs (start, run_length) for shift p."""
    limit = len(letters) - p
    i = 0
    while i < limit:
        if letters[i] == letters[i + p]:
            j = i + 1
            while j < limit and letters[j] == letters[j + p]:
                j += 1
            yield i, j - i
            i = j + 1
        else:
            i += 1


def _scan_threshold_generic(w: Word, c: FreenessConstraint) -> Occurrence | None:
    letters = w.letters
    n = len(letters)
    num = c.threshold.numerator
    den = c.threshold.denominator
    strict = c.mode is Mode.STRICT
    pmax = min(n - 1, n * den // num)
    for p in range(c.min_period, pmax + 1):
        need = _required_run(p, num, den, strict)
        for i, run in _iter_runs(letters, p):
            if run >= need:
                return Occurrence(i, p, p + run)
    return None


def _scan_max_generic(letters: tuple[int, ...], min_period: int):
    n = len(letters)
    best = None
    best_num, best_den = 1, 1
    for p in range(min_period, n):
        for i, run in _iter_runs(letters, p):
            d = (p + run) * best_den - best_num * p
            if d > 0 or (d == 0 and (best is None or (i, p) < (best[0], best[1]))):
                best = (i, p, p + run)
                best_num, best_den = p + run, p
    return best
