"""Equivalence checking for windowed quantum automata.

Two automata over the same alphabet are equivalent when they accept every
word with the same probability.  For unary alphabets this is decidable:
it suffices to compare acceptance probabilities on all lengths up to
``(n1 + n2)**4 + max(k1, k2) - 1``.  ``decide_equivalence_unary`` scans
those lengths with an incrementally maintained step product over the
block-diagonal combination of the two automata; the ``span-early-stop``
strategy additionally tracks the span of ``product (x) conj(product)``
and stops as soon as one length adds no new direction, which is sound
because later products stay inside the stabilized span and probability
equality is a linear condition on that matrix.

For non-unary alphabets only bounded checking is offered
(``bounded_equivalence``); an exact general-alphabet decision is an
extension point, not implemented here.

Float-mode verdicts mean "equivalent within tolerance"; only exact mode
yields a mathematical verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automata import (BLANK, MultiLetterQFA, ValidationError, Word,
                       restricted_norm2)
from .linalg import EXACT, Matrix, SpanBasis, direct_sum, kron

STRATEGY_FULL = "full-bound"
STRATEGY_SPAN = "span-early-stop"
_STRATEGY_ALIASES = {
    "full": STRATEGY_FULL, STRATEGY_FULL: STRATEGY_FULL,
    "span": STRATEGY_SPAN, STRATEGY_SPAN: STRATEGY_SPAN,
}

#: default absolute tolerance for float-mode probability comparison
PROBABILITY_TOL = 1e-9


@dataclass(frozen=True)
class MismatchWitness:
    """Shortest length (and word, when non-unary) where probabilities differ."""

    length: int
    p1: Fraction | float
    p2: Fraction | float
    word: Word | None = None


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    checked_up_to: int
    mode: str
    stabilization_index: int | None = None
    witness: MismatchWitness | None = None
    bounded: bool = False


@dataclass(frozen=True)
class CombinedSystem:
    """Block-diagonal merge of two unary automata.

    ``steps[i]`` is the combined step matrix for reading position i+1; from
    position k onward every step repeats ``steps[k-1]``.  ``eta1``/``eta2``
    embed the two initial vectors into the combined space, and
    ``acc_indices`` is the union of both accepting sets.
    """

    n: int
    k: int
    steps: tuple[Matrix, ...]
    eta1: Matrix
    eta2: Matrix
    acc_indices: frozenset[int]

    @classmethod
    def build(cls, a1: MultiLetterQFA, a2: MultiLetterQFA) -> "CombinedSystem":
        if a1.alphabet != a2.alphabet:
            raise ValidationError("alphabet mismatch between the two automata")
        if a1.mode != a2.mode:
            raise ValidationError(
                f"scalar mode mismatch: {a1.mode} vs {a2.mode}")
        if not a1.alphabet.is_unary:
            raise ValidationError(
                "combined-system scan requires a unary alphabet; "
                "use bounded_equivalence for larger alphabets")
        sigma = a1.alphabet.symbols[0]
        k = max(a1.k, a2.k)
        n = a1.n + a2.n

        def step_matrix(a: MultiLetterQFA, i: int) -> Matrix:
            j = min(i, a.k)
            window = (BLANK,) * (a.k - j) + (sigma,) * j
            return a.mu[window]

        steps = tuple(direct_sum(step_matrix(a1, i), step_matrix(a2, i))
                      for i in range(1, k + 1))
        mode = a1.mode
        zero1 = Matrix.zeros(1, a1.n, mode)
        zero2 = Matrix.zeros(1, a2.n, mode)
        eta1 = _hcat(a1.psi0, zero2)
        eta2 = _hcat(zero1, a2.psi0)
        acc = frozenset(a1.accepting) | frozenset(a1.n + i for i in a2.accepting)
        return cls(n=n, k=k, steps=steps, eta1=eta1, eta2=eta2, acc_indices=acc)

    def probabilities(self, product: Matrix):
        acc = sorted(self.acc_indices)
        p1 = restricted_norm2(self.eta1 @ product, acc)
        p2 = restricted_norm2(self.eta2 @ product, acc)
        return p1, p2


def _hcat(a: Matrix, b: Matrix) -> Matrix:
    entries = [a.entry(0, j) for j in range(a.cols)]
    entries += [b.entry(0, j) for j in range(b.cols)]
    return Matrix.row_vector(entries, a.mode)


def _differs(p1, p2, mode: str, tol: float) -> bool:
    if mode == EXACT:
        return p1 != p2
    return abs(p1 - p2) > tol


def decide_equivalence_unary(a1: MultiLetterQFA, a2: MultiLetterQFA,
                             strategy: str = STRATEGY_SPAN,
                             tol: float = PROBABILITY_TOL) -> EquivalenceVerdict:
    """Decide whether two unary automata accept every word equally.

    Scans lengths m = 0, 1, ... comparing acceptance probabilities via the
    combined system, up to N = (n1+n2)**4 + k - 1.  ``full-bound`` always
    scans to N; ``span-early-stop`` stops early once the tracked span
    stabilizes.  A mismatch returns immediately with the smallest
    differing length.
    """
    try:
        strategy = _STRATEGY_ALIASES[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}; "
                         f"expected {STRATEGY_FULL!r} or {STRATEGY_SPAN!r}") from None
    sys = CombinedSystem.build(a1, a2)
    n, k = sys.n, sys.k
    bound = n ** 4 + k - 1
    mode = a1.mode

    basis = SpanBasis(n ** 4, mode) if strategy == STRATEGY_SPAN else None
    product = Matrix.identity(n, mode)
    for m in range(bound + 1):
        if m > 0:
            product = product @ sys.steps[min(m, k) - 1]
        p1, p2 = sys.probabilities(product)
        if _differs(p1, p2, mode, tol):
            return EquivalenceVerdict(
                equivalent=False, checked_up_to=m, mode=mode,
                witness=MismatchWitness(length=m, p1=p1, p2=p2))
        if basis is not None and m >= k:
            grew = basis.add(kron(product, product.conj()))
            if not grew:
                return EquivalenceVerdict(
                    equivalent=True, checked_up_to=m, mode=mode,
                    stabilization_index=len(basis))
    return EquivalenceVerdict(equivalent=True, checked_up_to=bound, mode=mode)


def span_closure(sys: CombinedSystem, verify_extra: int = 0):
    """Grow the span of ``product (x) conj(product)`` over lengths m >= k.

    Returns ``(basis, i0)`` where i0 is the dimension of the stabilized
    span (the number of lengths that contributed a new direction); the
    ambient-dimension cap guarantees i0 <= n**4.  With ``verify_extra``
    set, that many additional lengths are checked to confirm the span
    stays put; any growth there raises, since stabilization is permanent.
    """
    n, k = sys.n, sys.k
    mode = sys.steps[0].mode
    basis = SpanBasis(n ** 4, mode)
    product = Matrix.identity(n, mode)
    for i in range(1, k + 1):
        product = product @ sys.steps[i - 1]
    last = sys.steps[k - 1]
    while basis.add(kron(product, product.conj())):
        product = product @ last
    i0 = len(basis)
    for _ in range(verify_extra):
        product = product @ last
        if basis.add(kron(product, product.conj())):
            raise ValidationError(
                "span grew again after stabilization; "
                "this contradicts the closure invariant")
    return basis, i0


def bounded_equivalence(a1: MultiLetterQFA, a2: MultiLetterQFA, t: int,
                        tol: float = PROBABILITY_TOL) -> EquivalenceVerdict:
    """Compare acceptance probabilities on every word of length <= t.

    Works for any alphabet size; per-prefix products are reused so each
    word costs one matrix product per automaton.  The first mismatch in
    length-then-lexicographic order is returned.  Cost grows as
    ``|alphabet|**t``; this is a bounded check, not a decision procedure.
    """
    if t < 0:
        raise ValueError("length bound must be >= 0")
    if a1.alphabet != a2.alphabet:
        raise ValidationError("alphabet mismatch between the two automata")
    if a1.mode != a2.mode:
        raise ValidationError(f"scalar mode mismatch: {a1.mode} vs {a2.mode}")
    mode = a1.mode
    acc1, acc2 = sorted(a1.accepting), sorted(a2.accepting)

    def probs(m1: Matrix, m2: Matrix):
        return (restricted_norm2(a1.psi0 @ m1, acc1),
                restricted_norm2(a2.psi0 @ m2, acc2))

    def window(word: Word, k: int) -> Word:
        m = len(word)
        if m < k:
            return (BLANK,) * (k - m) + word
        return word[m - k:]

    level: list[tuple[Word, Matrix, Matrix]] = [
        ((), Matrix.identity(a1.n, mode), Matrix.identity(a2.n, mode))]
    p1, p2 = probs(level[0][1], level[0][2])
    if _differs(p1, p2, mode, tol):
        return EquivalenceVerdict(
            equivalent=False, checked_up_to=0, mode=mode, bounded=True,
            witness=MismatchWitness(length=0, p1=p1, p2=p2, word=()))
    for length in range(1, t + 1):
        nxt: list[tuple[Word, Matrix, Matrix]] = []
        for word, m1, m2 in level:
            for sym in a1.alphabet:
                w = word + (sym,)
                m1n = m1 @ a1.mu[window(w, a1.k)]
                m2n = m2 @ a2.mu[window(w, a2.k)]
                p1, p2 = probs(m1n, m2n)
                if _differs(p1, p2, mode, tol):
                    return EquivalenceVerdict(
                        equivalent=False, checked_up_to=length, mode=mode,
                        bounded=True,
                        witness=MismatchWitness(length=length, p1=p1, p2=p2, word=w))
                nxt.append((w, m1n, m2n))
        level = nxt
    return EquivalenceVerdict(equivalent=True, checked_up_to=t,
                              mode=mode, bounded=True)
