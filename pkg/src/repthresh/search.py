"""Exhaustive backtracking over words: certify that an exponent class is
unavoidable (the whole search tree dies at finite depth, which by Koenig's
lemma rules out an infinite avoiding word) or produce a long avoiding word
as heuristic evidence, and bracket the threshold between the two.

Only EXHAUSTED outcomes are proofs.  REACHED means a word of the requested
length exists, which says nothing about infinite words and is labelled
heuristic everywhere.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .detect import naive_oracle
from .words import FreenessConstraint, Mode, Word, parse_word, render_word

__all__ = [
    "Outcome",
    "SearchCertificate",
    "Bracket",
    "VerificationResult",
    "extend_search",
    "candidate_exponents",
    "bracket_threshold",
    "verify_certificate",
    "default_target_length",
]

# Independent re-verification of EXHAUSTED certificates enumerates all
# alphabet**(depth+1) words; beyond these limits it is skipped and flagged.
_REVERIFY_MAX_DEPTH = 12
_REVERIFY_MAX_ALPHABET = 3


class Outcome(enum.Enum):
    EXHAUSTED = "EXHAUSTED"
    REACHED = "REACHED"
    BUDGET_EXCEEDED = "BUDGET_EXCEEDED"


@dataclass(frozen=True)
class SearchCertificate:
    """Result of one extend_search run.

    EXHAUSTED: no word of length max_depth+1 satisfies the constraint, and
    max_depth is the longest satisfying length encountered.  REACHED: the
    witness has the requested target length and satisfies the constraint.
    BUDGET_EXCEEDED: the node budget ran out first; claims nothing.
    """

    alphabet_size: int
    constraint: FreenessConstraint
    outcome: Outcome
    max_depth: int | None
    nodes_visited: int
    witness: Word | None
    symmetry_reduced: bool
    elapsed: float

    def to_jsonable(self) -> dict:
        doc: dict = {
            "alphabet": self.alphabet_size,
            "min_period": self.constraint.min_period,
            "threshold": {
                "num": self.constraint.threshold.numerator,
                "den": self.constraint.threshold.denominator,
            },
            "mode": self.constraint.mode.value,
            "outcome": self.outcome.value,
            "nodes_visited": self.nodes_visited,
            "symmetry_reduced": self.symmetry_reduced,
            "elapsed_ms": self.elapsed * 1000.0,
        }
        if self.max_depth is not None:
            doc["max_depth"] = self.max_depth
        if self.witness is not None:
            doc["witness"] = render_word(self.witness)
        return doc

    @classmethod
    def from_jsonable(cls, doc: dict) -> "SearchCertificate":
        alphabet = doc["alphabet"]
        constraint = FreenessConstraint(
            doc["min_period"],
            Fraction(doc["threshold"]["num"], doc["threshold"]["den"]),
            Mode(doc["mode"]),
        )
        witness = None
        if doc.get("witness") is not None:
            witness = parse_word(doc["witness"], alphabet)
        return cls(
            alphabet_size=alphabet,
            constraint=constraint,
            outcome=Outcome(doc["outcome"]),
            max_depth=doc.get("max_depth"),
            nodes_visited=doc["nodes_visited"],
            witness=witness,
            symmetry_reduced=doc["symmetry_reduced"],
            elapsed=doc["elapsed_ms"] / 1000.0,
        )


def default_target_length(alphabet_size: int, min_period: int) -> int:
    """Long enough to make REACHED persuasive, cheap enough to run often."""
    return max(200, 20 * min_period * alphabet_size)


def extend_search(
    alphabet_size: int,
    constraint: FreenessConstraint,
    target_length: int,
    *,
    symmetry: bool = True,
    letter_order: Sequence[int] | None = None,
    node_budget: int | None = None,
) -> SearchCertificate:
    """Depth-first search for a word of target_length satisfying the
    constraint.

    Letters are tried in `letter_order` (ascending by default).  With
    `symmetry` on, only canonical words are explored: a letter never seen
    before may only be introduced if it is the smallest unused one, which
    prunes the tree by up to alphabet_size! without changing the outcome
    (letter permutations preserve the constraint).

    nodes_visited counts attempted letter placements; with a node_budget the
    outcome BUDGET_EXCEEDED reports the deepest satisfying prefix found.
    """
    if alphabet_size < 1:
        raise ValueError(f"alphabet size must be >= 1, got {alphabet_size}")
    if target_length < 1:
        raise ValueError(f"target_length must be >= 1, got {target_length}")
    if letter_order is None:
        order: tuple[int, ...] = tuple(range(alphabet_size))
    else:
        order = tuple(letter_order)
        if sorted(order) != list(range(alphabet_size)):
            raise ValueError("letter_order must be a permutation of range(alphabet_size)")

    a = alphabet_size
    l = constraint.min_period
    num = constraint.threshold.numerator
    den = constraint.threshold.denominator
    strict = constraint.mode is Mode.STRICT

    letters = [0] * target_length
    next_choice = [0] * (target_length + 1)  # index into `order` per depth
    max_used = [0] * (target_length + 1)     # letters 0..max_used[d]-1 occur in prefix
    depth = 0
    sat_max = 0
    nodes = 0
    t0 = time.perf_counter()

    def make(outcome: Outcome, witness: Word | None) -> SearchCertificate:
        return SearchCertificate(
            alphabet_size=a,
            constraint=constraint,
            outcome=outcome,
            max_depth=None if outcome is Outcome.REACHED else sat_max,
            nodes_visited=nodes,
            witness=witness,
            symmetry_reduced=symmetry,
            elapsed=time.perf_counter() - t0,
        )

    while True:
        if depth == target_length:
            return make(Outcome.REACHED, Word(a, tuple(letters)))
        c = next_choice[depth]
        mx = max_used[depth]
        placed = False
        while c < a:
            letter = order[c]
            c += 1
            if symmetry and letter > mx:
                continue
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                return make(Outcome.BUDGET_EXCEEDED, None)
            letters[depth] = letter
            # Incremental check: a new violation must end at the new letter.
            pos = depth
            pmax = (pos + 1) * den // num
            if pmax > pos:
                pmax = pos
            ok = True
            p = l
            while p <= pmax:
                if letters[pos - p] == letters[pos]:
                    if strict:
                        need = p * (num - den) // den + 1
                    else:
                        need = (p * (num - den) + den - 1) // den
                        if need < 1:
                            need = 1
                    run = 1
                    i = pos - p - 1
                    while run < need and i >= 0 and letters[i] == letters[i + p]:
                        run += 1
                        i -= 1
                    if run >= need:
                        ok = False
                        break
                p += 1
            if ok:
                placed = True
                break
        if placed:
            next_choice[depth] = c
            max_used[depth + 1] = mx if letter < mx else letter + 1
            depth += 1
            next_choice[depth] = 0
            if depth > sat_max:
                sat_max = depth
        else:
            depth -= 1
            if depth < 0:
                return make(Outcome.EXHAUSTED, None)


def candidate_exponents(
    max_denominator: int,
    lo: Fraction | int,
    hi: Fraction | int,
) -> list[Fraction]:
    """All reduced rationals in (lo, hi] with denominator <= max_denominator,
    strictly ascending."""
    if max_denominator < 1:
        raise ValueError(f"max_denominator must be >= 1, got {max_denominator}")
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not 1 <= lo < hi:
        raise ValueError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    found = []
    for den in range(1, max_denominator + 1):
        first = lo.numerator * den // lo.denominator + 1
        last = hi.numerator * den // hi.denominator
        for numr in range(first, last + 1):
            if gcd(numr, den) == 1 and lo < Fraction(numr, den) <= hi:
                found.append(Fraction(numr, den))
    return sorted(found)


@dataclass
class Bracket:
    """Empirical enclosure of the repetition threshold for (a, l).

    r_lo is certified: avoiding exponents >= r_lo is impossible (EXHAUSTED
    certificate), hence the threshold is at least r_lo.  r_hi is heuristic:
    a long word avoiding exponents >= r_hi (or, with the strict-fallback
    flag, strictly above r_hi) was found.  Neither side claims the infimum
    is attained.
    """

    a: int
    l: int
    r_lo: Fraction | None
    r_hi: Fraction | None
    r_hi_strict_fallback: bool
    certificates: list[SearchCertificate] = field(default_factory=list)

    @property
    def c_hat(self) -> Fraction | None:
        """Empirical constant in the 1 + c/(a*l) upper-bound shape."""
        if self.r_hi is None:
            return None
        return (self.r_hi - 1) * self.a * self.l

    def summary_line(self) -> str:
        def fmt(f: Fraction | None) -> str:
            return "-" if f is None else f"{f.numerator}/{f.denominator}"

        c = self.c_hat
        c_txt = "-" if c is None else f"{float(c):g}"
        return (
            f"a={self.a} l={self.l} r_lo={fmt(self.r_lo)} "
            f"r_hi={fmt(self.r_hi)} c_hat={c_txt}"
        )

    def to_jsonable(self) -> dict:
        def frac(f: Fraction | None) -> dict | None:
            return None if f is None else {"num": f.numerator, "den": f.denominator}

        return {
            "a": self.a,
            "l": self.l,
            "r_lo": frac(self.r_lo),
            "r_hi": frac(self.r_hi),
            "r_hi_strict_fallback": self.r_hi_strict_fallback,
            "c_hat": None if self.c_hat is None else float(self.c_hat),
            "certificates": [cert.to_jsonable() for cert in self.certificates],
        }

    @classmethod
    def from_jsonable(cls, doc: dict) -> "Bracket":
        def frac(d: dict | None) -> Fraction | None:
            return None if d is None else Fraction(d["num"], d["den"])

        return cls(
            a=doc["a"],
            l=doc["l"],
            r_lo=frac(doc["r_lo"]),
            r_hi=frac(doc["r_hi"]),
            r_hi_strict_fallback=doc["r_hi_strict_fallback"],
            certificates=[
                SearchCertificate.from_jsonable(c) for c in doc["certificates"]
            ],
        )


def bracket_threshold(
    alphabet_size: int,
    min_period: int,
    max_denominator: int = 6,
    target_length: int | None = None,
    *,
    node_budget: int | None = 5_000_000,
) -> Bracket:
    """Sweep candidate exponents in (1, 2] ascending with mode GEQ.

    The largest EXHAUSTED candidate becomes r_lo, the smallest REACHED one
    r_hi; by monotonicity everything above the first REACHED is skipped.
    Candidates above 2 are uninteresting (exponents strictly above 2 are
    avoidable over any alphabet of size >= 2, Thue-Morse style).

    When every GEQ candidate exhausts (binary alphabets: squares are
    unavoidable), one STRICT run at the top candidate backs r_hi instead and
    the bracket carries the strict-fallback flag: the threshold is then at
    most r_hi without evidence of avoidance at r_hi itself.
    """
    if alphabet_size < 2:
        raise ValueError(f"alphabet size must be >= 2, got {alphabet_size}")
    if min_period < 1:
        raise ValueError(f"min_period must be >= 1, got {min_period}")
    if target_length is None:
        target_length = default_target_length(alphabet_size, min_period)
    grid = candidate_exponents(max_denominator, Fraction(1), Fraction(2))
    certs: list[SearchCertificate] = []
    r_lo: Fraction | None = None
    r_hi: Fraction | None = None
    strict_fallback = False
    for r in grid:
        cert = extend_search(
            alphabet_size,
            FreenessConstraint(min_period, r, Mode.GEQ),
            target_length,
            node_budget=node_budget,
        )
        certs.append(cert)
        if cert.outcome is Outcome.EXHAUSTED:
            r_lo = r
        elif cert.outcome is Outcome.REACHED:
            r_hi = r
            break
    if r_hi is None and grid:
        top = grid[-1]
        cert = extend_search(
            alphabet_size,
            FreenessConstraint(min_period, top, Mode.STRICT),
            target_length,
            node_budget=node_budget,
        )
        certs.append(cert)
        if cert.outcome is Outcome.REACHED:
            r_hi = top
            strict_fallback = True
    return Bracket(alphabet_size, min_period, r_lo, r_hi, strict_fallback, certs)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    independently_verified: bool
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: SearchCertificate) -> VerificationResult:
    """Re-check a certificate against independent machinery.

    REACHED witnesses are re-scanned with the naive oracle.  Small EXHAUSTED
    certificates (max_depth <= 12, alphabet <= 3) are re-proved by full
    enumeration of every word of length max_depth+1; larger ones are
    accepted with independently_verified=False.
    """
    if cert.outcome is Outcome.REACHED:
        if cert.witness is None:
            return VerificationResult(False, True, "REACHED without witness")
        if len(cert.witness) < 1:
            return VerificationResult(False, True, "empty witness")
        occ = naive_oracle(cert.witness, cert.constraint)
        if occ is not None:
            return VerificationResult(
                False,
                True,
                f"witness violates constraint at start={occ.start} period={occ.period}",
            )
        return VerificationResult(True, True, "witness oracle-clean")
    if cert.outcome is Outcome.BUDGET_EXCEEDED:
        return VerificationResult(True, False, "budget outcome claims nothing")
    if cert.max_depth is None:
        return VerificationResult(False, True, "EXHAUSTED without max_depth")
    depth = cert.max_depth
    if depth > _REVERIFY_MAX_DEPTH or cert.alphabet_size > _REVERIFY_MAX_ALPHABET:
        return VerificationResult(True, False, "not independently re-verified")
    a = cert.alphabet_size
    for candidate in itertools.product(range(a), repeat=depth + 1):
        w = Word(a, candidate)
        if naive_oracle(w, cert.constraint) is None:
            return VerificationResult(
                False,
                True,
                f"counterexample of length {depth + 1}: {render_word(w)}",
            )
    if depth >= 1:
        # max_depth must be attained, not just be an upper bound
        if all(
            naive_oracle(Word(a, candidate), cert.constraint) is not None
            for candidate in itertools.product(range(a), repeat=depth)
        ):
            return VerificationResult(
                False, True, f"no satisfying word of the claimed depth {depth}"
            )
    return VerificationResult(
        True, True, f"re-enumerated all {a ** (depth + 1)} words of length {depth + 1}"
    )
