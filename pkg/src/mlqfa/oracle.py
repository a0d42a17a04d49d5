"""Brute-force reference implementations for cross-validation.

Everything here recomputes results straight from the definitions, sharing
nothing with the main code paths beyond the Matrix type, so agreement
between an oracle and its production counterpart is evidence rather than
tautology.  Size guards keep the oracles honest about their intended
scale; exceeding one raises with a pointer to the production routine.
"""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .automata import BLANK, DFA, MultiLetterQFA, Word
from .analysis import CkWitness
from .linalg import EXACT, Matrix

#: probability_table refuses to enumerate more rows than this
TABLE_GUARD = 10 ** 5


@dataclass(frozen=True)
class ProbabilityTable:
    """All (word, probability) rows up to a length bound, in
    length-then-lexicographic order."""

    rows: tuple[tuple[Word, Fraction | float], ...]

    def probability(self, word: Word) -> Fraction | float:
        for w, p in self.rows:
            if w == word:
                return p
        raise KeyError(f"word {' '.join(word)!r} not in table")

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("word,probability\n")
        for w, p in self.rows:
            out.write(f"{' '.join(w)},{p}\n")
        return out.getvalue()


def brute_ck(d: DFA, k: int) -> CkWitness | None:
    """Literal merge-witness search: every length-k word against every
    state combination, checking the defining equations by folding delta.

    Intended for tiny instances: at most 6 states and ``|alphabet|**k``
    at most 1000.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(d.states) > 6:
        raise ValueError("brute_ck guard: more than 6 states; use detect_ck")
    if len(d.alphabet) ** k > 1000:
        raise ValueError("brute_ck guard: |alphabet|**k > 1000; use detect_ck")

    def fold(q: str, word) -> str:
        for sym in word:
            q = d.delta[(q, sym)]
        return q

    for w in itertools.product(d.alphabet.symbols, repeat=k):
        prefix, last = w[:-1], w[-1]
        for q1 in d.states:
            q2 = fold(q1, prefix)
            for q4 in d.states:
                q5 = fold(q4, prefix)
                if q2 == q5:
                    continue
                if d.delta[(q2, last)] != d.delta[(q5, last)]:
                    continue
                return CkWitness(q1=q1, q2=q2, q3=d.delta[(q2, last)],
                                 q4=q4, q5=q5, w=w)
    return None


def probability_table(a: MultiLetterQFA, t: int) -> ProbabilityTable:
    """Acceptance probability of every word of length <= t, each one
    recomputed from scratch (fresh window list, fresh product) with no
    incremental reuse."""
    if t < 0:
        raise ValueError("length bound must be >= 0")
    total = sum(len(a.alphabet) ** m for m in range(t + 1))
    if total > TABLE_GUARD:
        raise ValueError(
            f"probability_table guard: {total} words exceeds {TABLE_GUARD}")

    acc = sorted(a.accepting)
    rows = []
    for m in range(t + 1):
        for word in itertools.product(a.alphabet.symbols, repeat=m):
            windows = []
            for j in range(1, m + 1):
                if j < a.k:
                    windows.append((BLANK,) * (a.k - j) + word[:j])
                else:
                    windows.append(word[j - a.k:j])
            product = Matrix.identity(a.n, a.mode)
            for w in windows:
                product = product @ a.mu[w]
            v = a.psi0 @ product
            if a.mode == EXACT:
                p = Fraction(0)
                for i in acc:
                    p += v.entry(0, i).abs2()
            else:
                p = float(sum(abs(v._np[0, i]) ** 2 for i in acc))
            rows.append((word, p))
    return ProbabilityTable(rows=tuple(rows))
