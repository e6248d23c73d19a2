"""Moser-Tardos resampling: draw a random word, then repeatedly redraw the
letters of the first forbidden occurrence until none remains.

Randomness comes from a splitmix64 stream (the 2014 Steele-Lea-Flood mixer)
so that runs are reproducible bit-for-bit across platforms and Python
versions.  Stream discipline, frozen as part of the contract:

* one 64-bit draw per letter, reduced modulo the alphabet size;
* the initial word draws positions 0..n-1 in order;
* each resample redraws the letters of its occurrence span left to right.

Bad-event selection is deterministic too: the forbidden occurrence with the
lowest end position, ties broken by lowest start, then lowest period; the
occurrence spans the full maximal match-run ending there.  Convergence is
empirical (bounded by max_resamples) - no attempt is made to verify the
local-lemma preconditions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import FreenessConstraint, Mode, Occurrence, Word, render_word

__all__ = [
    "SplitMix64",
    "SamplerConfig",
    "SamplerReport",
    "sample_free_word",
    "resample_trace",
]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Seedable 64-bit generator; letter(a) returns next_uint64() % a."""

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_uint64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1E4A7FBB) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def letter(self, alphabet_size: int) -> int:
        return self.next_uint64() % alphabet_size


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    max_resamples: int
    target_length: int

    def __post_init__(self) -> None:
        if self.max_resamples < 1:
            raise ValueError(f"max_resamples must be >= 1, got {self.max_resamples}")
        if self.target_length < 1:
            raise ValueError(f"target_length must be >= 1, got {self.target_length}")


@dataclass(frozen=True)
class SamplerReport:
    """result is None on non-convergence.  violations_histogram counts
    resampled occurrences by period."""

    result: Word | None
    resample_count: int
    violations_histogram: dict[int, int]
    seed: int

    @property
    def converged(self) -> bool:
        return self.result is not None

    def to_jsonable(self) -> dict:
        return {
            "result": None if self.result is None else render_word(self.result),
            "resamples": self.resample_count,
            "histogram": {str(p): c for p, c in sorted(self.violations_histogram.items())},
            "seed": self.seed,
        }


def _first_violation(
    letters: list[int], l: int, num: int, den: int, strict: bool
) -> Occurrence | None:
    """Forbidden occurrence with minimal end position; ties by start, then
    period.  Spans the full maximal match-run ending there."""
    n = len(letters)
    for pos in range(n):
        pmax = (pos + 1) * den // num
        if pmax > pos:
            pmax = pos
        best: tuple[int, int, int] | None = None
        for p in range(l, pmax + 1):
            if letters[pos - p] != letters[pos]:
                continue
            run = 1
            i = pos - p - 1
            while i >= 0 and letters[i] == letters[i + p]:
                run += 1
                i -= 1
            if strict:
                need = p * (num - den) // den + 1
            else:
                need = (p * (num - den) + den - 1) // den
                if need < 1:
                    need = 1
            if run < need:
                continue
            start = pos - p - run + 1
            if best is None or (start, p) < (best[0], best[1]):
                best = (start, p, p + run)
        if best is not None:
            return Occurrence(*best)
    return None


def _run_sampler(
    alphabet_size: int,
    constraint: FreenessConstraint,
    config: SamplerConfig,
    record_trace: bool,
) -> tuple[SamplerReport, list[tuple[Occurrence, int]]]:
    if alphabet_size < 2:
        raise ValueError(
            f"alphabet size must be >= 2 for sampling, got {alphabet_size}"
        )
    l = constraint.min_period
    num = constraint.threshold.numerator
    den = constraint.threshold.denominator
    strict = constraint.mode is Mode.STRICT
    rng = SplitMix64(config.seed)
    letters = [rng.letter(alphabet_size) for _ in range(config.target_length)]
    histogram: dict[int, int] = {}
    trace: list[tuple[Occurrence, int]] = []
    count = 0
    while True:
        occ = _first_violation(letters, l, num, den, strict)
        if occ is None:
            word = Word(alphabet_size, tuple(letters))
            return SamplerReport(word, count, histogram, config.seed), trace
        if count >= config.max_resamples:
            return SamplerReport(None, count, histogram, config.seed), trace
        count += 1
        histogram[occ.period] = histogram.get(occ.period, 0) + 1
        if record_trace:
            trace.append((occ, count))
        for i in range(occ.start, occ.end):
            letters[i] = rng.letter(alphabet_size)


def sample_free_word(
    alphabet_size: int,
    constraint: FreenessConstraint,
    config: SamplerConfig,
) -> SamplerReport:
    """Sample a word of config.target_length satisfying the constraint.

    Deterministic: identical arguments give an identical report.  Returns a
    non-convergence report (result None) after max_resamples steps; in
    particular this is guaranteed whenever no satisfying word of that length
    exists at all.
    """
    report, _ = _run_sampler(alphabet_size, constraint, config, record_trace=False)
    return report


def resample_trace(
    alphabet_size: int,
    constraint: FreenessConstraint,
    config: SamplerConfig,
) -> list[tuple[Occurrence, int]]:
    """The resampled occurrences of the sample_free_word run with the same
    arguments, in order, paired with their 1-based step index.

    Replaying the trace against a fresh letter stream (initial draw, then
    redraw each logged span in order) reproduces the run's final word.
    """
    _, trace = _run_sampler(alphabet_size, constraint, config, record_trace=True)
    return trace
