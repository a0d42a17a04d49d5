"""Automata models: DFAs, windowed DFAs/GFAs, windowed QFAs, and MM-1QFAs.

A windowed ("k-letter") automaton reads its input through a window of the
last k letters; the tape is padded on the left with the reserved blank
symbol ``_`` so the first steps see partially blank windows.  Quantum
state vectors are row vectors hit from the right, so the step for window
w is ``v @ mu[w]`` and the composed transition for a word multiplies the
per-step matrices left to right in reading order.

Conventions adopted here that the models need but their definitions leave
open: the composed transition of the empty word is the identity, so the
acceptance probability of the empty word is the squared norm of the
accepting part of the initial vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import EXACT, FLOAT, Matrix, Scalar, UNITARY_TOL, is_unitary

#: reserved blank symbol padding the first k-1 window positions
BLANK = "_"
#: reserved end-marker consumed by measure-many automata
ENDMARK = "$"

Word = tuple[str, ...]
Window = tuple[str, ...]


class ValidationError(ValueError):
    """An automaton field violated its invariants; message names the field."""


# ---------------------------------------------------------------------------
# alphabets and words


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of symbol names; the blank ``_`` is reserved and excluded."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValidationError("alphabet: symbols must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet: duplicate symbols")
        if BLANK in self.symbols:
            raise ValidationError(f"alphabet: {BLANK!r} is reserved for blanks")
        for sym in self.symbols:
            # windows and words serialize space-separated
            if not sym or any(ch.isspace() for ch in sym):
                raise ValidationError(
                    f"alphabet: symbol {sym!r} must be non-empty without whitespace")

    def __contains__(self, sym: str) -> bool:
        return sym in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, sym: str) -> int:
        try:
            return self.symbols.index(sym)
        except ValueError:
            raise ValidationError(f"unknown symbol {sym!r}") from None

    @property
    def is_unary(self) -> bool:
        return len(self.symbols) == 1


def check_word(alphabet: Alphabet, word: Word) -> None:
    for sym in word:
        if sym not in alphabet:
            raise ValidationError(f"unknown symbol {sym!r} in word")


def words_up_to(alphabet: Alphabet, t: int):
    """All words of length <= t in length-then-lexicographic order."""
    for m in range(t + 1):
        yield from itertools.product(alphabet.symbols, repeat=m)


def reachable_windows(alphabet: Alphabet, k: int) -> list[Window]:
    """Windows a length-k reader can actually see: blank-padded prefixes
    of length < k and all full windows, in blank-first lexicographic order."""
    out: list[Window] = []
    for m in range(1, k):
        for syms in itertools.product(alphabet.symbols, repeat=m):
            out.append((BLANK,) * (k - m) + syms)
    for syms in itertools.product(alphabet.symbols, repeat=k):
        out.append(syms)
    return out


def step_windows(word: Word, k: int):
    """The window sequence seen while reading ``word`` with window size k."""
    for j in range(1, len(word) + 1):
        if j < k:
            yield (BLANK,) * (k - j) + word[:j]
        else:
            yield word[j - k:j]


# ---------------------------------------------------------------------------
# classical automata


@dataclass(frozen=True)
class DFA:
    """Plain DFA with a total transition map delta[(state, symbol)]."""

    states: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    alphabet: Alphabet
    delta: dict[tuple[str, str], str]

    def __post_init__(self):
        if len(set(self.states)) != len(self.states):
            raise ValidationError("states: duplicate state names")
        if self.initial not in self.states:
            raise ValidationError(f"initial: unknown state {self.initial!r}")
        for q in self.accepting:
            if q not in self.states:
                raise ValidationError(f"accepting: unknown state {q!r}")
        for q in self.states:
            for s in self.alphabet:
                if (q, s) not in self.delta:
                    raise ValidationError(f"delta: missing transition ({q!r}, {s!r})")
                if self.delta[(q, s)] not in self.states:
                    raise ValidationError(
                        f"delta: transition ({q!r}, {s!r}) targets unknown state")
        if len(self.delta) != len(self.states) * len(self.alphabet):
            extra = set(self.delta) - {(q, s) for q in self.states for s in self.alphabet}
            raise ValidationError(f"delta: unexpected transition keys {sorted(extra)!r}")

    def state_index(self, q: str) -> int:
        return self.states.index(q)


def dfa_run(d: DFA, q: str, word: Word) -> str:
    """Fold delta over the word starting at q; the empty word returns q."""
    if q not in d.states:
        raise ValidationError(f"unknown state {q!r}")
    for sym in word:
        if sym not in d.alphabet:
            raise ValidationError(f"unknown symbol {sym!r} in word")
        q = d.delta[(q, sym)]
    return q


def dfa_accepts(d: DFA, word: Word) -> bool:
    return dfa_run(d, d.initial, word) in d.accepting


@dataclass(frozen=True)
class KLetterDFA:
    """DFA variant whose transition depends on the last k letters read.

    ``gamma`` must be defined on every reachable window (blank-padded
    prefixes and all full windows).
    """

    states: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    alphabet: Alphabet
    k: int
    gamma: dict[tuple[str, Window], str]

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError("k: window length must be >= 1")
        if len(set(self.states)) != len(self.states):
            raise ValidationError("states: duplicate state names")
        if self.initial not in self.states:
            raise ValidationError(f"initial: unknown state {self.initial!r}")
        for q in self.accepting:
            if q not in self.states:
                raise ValidationError(f"accepting: unknown state {q!r}")
        for w in reachable_windows(self.alphabet, self.k):
            for q in self.states:
                if (q, w) not in self.gamma:
                    raise ValidationError(
                        f"gamma: missing transition ({q!r}, {' '.join(w)!r})")
                if self.gamma[(q, w)] not in self.states:
                    raise ValidationError(
                        f"gamma: transition ({q!r}, {' '.join(w)!r}) targets unknown state")


def kdfa_run(d: KLetterDFA, word: Word) -> str:
    check_word(d.alphabet, word)
    q = d.initial
    for w in step_windows(word, d.k):
        q = d.gamma[(q, w)]
    return q


def kdfa_accepts(d: KLetterDFA, word: Word) -> bool:
    return kdfa_run(d, word) in d.accepting


def gfa_violation(d: KLetterDFA):
    """First window whose state map is not a bijection, as
    (window, state_a, state_b) with both states mapping to one target;
    None when every window permutes the states."""
    for w in reachable_windows(d.alphabet, d.k):
        seen: dict[str, str] = {}
        for q in d.states:
            tgt = d.gamma[(q, w)]
            if tgt in seen:
                return (w, seen[tgt], q)
            seen[tgt] = q
    return None


def is_k_letter_gfa(d: KLetterDFA) -> bool:
    """True iff every reachable window induces a permutation of the states."""
    return gfa_violation(d) is None


# ---------------------------------------------------------------------------
# quantum automata


def restricted_norm2(v: Matrix, indices) -> Fraction | float:
    """Squared norm of the selected coordinates of a row vector."""
    if v.mode == EXACT:
        total = Fraction(0)
        for i in indices:
            total += v.entry(0, i).abs2()
        return total
    arr = v._np[0]
    return float(sum(abs(arr[i]) ** 2 for i in indices))


@dataclass(frozen=True)
class MultiLetterQFA:
    """Windowed quantum automaton: one unitary per reachable window.

    The acceptance probability of a word is the squared norm of the
    accepting coordinates of ``psi0 @ composed_transition(word)``.
    """

    n: int
    accepting: frozenset[int]
    psi0: Matrix
    alphabet: Alphabet
    k: int
    mu: dict[Window, Matrix]
    tol: float = UNITARY_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n: state count must be >= 1")
        if self.k < 1:
            raise ValidationError("k: window length must be >= 1")
        for i in self.accepting:
            if not 0 <= i < self.n:
                raise ValidationError(f"accepting: index {i} out of range")
        if self.psi0.rows != 1 or self.psi0.cols != self.n:
            raise ValidationError("psi0: must be a 1 x n row vector")
        norm = restricted_norm2(self.psi0, range(self.n))
        if self.mode == EXACT:
            if norm != 1:
                raise ValidationError(f"psi0: squared norm is {norm}, expected 1")
        elif abs(norm - 1.0) > self.tol:
            raise ValidationError(f"psi0: squared norm is {norm}, expected 1")
        for w in reachable_windows(self.alphabet, self.k):
            m = self.mu.get(w)
            if m is None:
                raise ValidationError(f"mu: missing window {' '.join(w)!r}")
            if m.mode != self.mode:
                raise ValidationError(f"mu: window {' '.join(w)!r} has mixed scalar mode")
            if m.rows != self.n or m.cols != self.n:
                raise ValidationError(f"mu: window {' '.join(w)!r} is not n x n")
            if not is_unitary(m, self.tol):
                raise ValidationError(f"mu: window {' '.join(w)!r} is not unitary")

    @property
    def mode(self) -> str:
        return self.psi0.mode


def mu_bar(a: MultiLetterQFA, word: Word) -> Matrix:
    """Composed transition for a word; the empty word gives the identity."""
    check_word(a.alphabet, word)
    result = Matrix.identity(a.n, a.mode)
    for w in step_windows(word, a.k):
        m = a.mu.get(w)
        if m is None:
            raise ValidationError(f"mu: missing window {' '.join(w)!r}")
        result = result @ m
    return result


def accept_probability(a: MultiLetterQFA, word: Word) -> Fraction | float:
    """Probability that the automaton accepts the word (exact mode returns
    a Fraction, float mode a float)."""
    v = a.psi0 @ mu_bar(a, word)
    return restricted_norm2(v, sorted(a.accepting))


def gfa_to_qfa(d: KLetterDFA, mode: str = EXACT) -> MultiLetterQFA:
    """Lift a permutation-windowed automaton to a zero-error quantum one.

    Each window's state bijection becomes its permutation matrix, the
    initial state becomes a basis vector, and acceptance probabilities are
    exactly 0 or 1, matching the classical run.
    """
    bad = gfa_violation(d)
    if bad is not None:
        w, qa, qb = bad
        raise ValidationError(
            f"gamma: window {' '.join(w)!r} is not a bijection "
            f"({qa!r} and {qb!r} share a target)")
    idx = {q: i for i, q in enumerate(d.states)}
    n = len(d.states)
    mu: dict[Window, Matrix] = {}
    for w in reachable_windows(d.alphabet, d.k):
        rows = [[0] * n for _ in range(n)]
        for q in d.states:
            rows[idx[q]][idx[d.gamma[(q, w)]]] = 1
        mu[w] = Matrix.from_rows(rows, mode)
    psi0 = Matrix.row_vector([1 if i == idx[d.initial] else 0 for i in range(n)], mode)
    accepting = frozenset(idx[q] for q in d.accepting)
    return MultiLetterQFA(n=n, accepting=accepting, psi0=psi0,
                          alphabet=d.alphabet, k=d.k, mu=mu)


# ---------------------------------------------------------------------------
# measure-many automata


@dataclass(frozen=True)
class MMQFA:
    """Measure-many automaton: measure after every step, halt on accept or
    reject, feed the surviving (non-halting) component forward; an
    end-marker ``$`` is consumed after the input proper."""

    n: int
    psi0: Matrix
    alphabet: Alphabet
    accepting: frozenset[int]
    rejecting: frozenset[int]
    mu: dict[str, Matrix]
    tol: float = UNITARY_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n: state count must be >= 1")
        if self.accepting & self.rejecting:
            raise ValidationError("accepting/rejecting: sets must be disjoint")
        for name, idxs in (("accepting", self.accepting), ("rejecting", self.rejecting)):
            for i in idxs:
                if not 0 <= i < self.n:
                    raise ValidationError(f"{name}: index {i} out of range")
        if ENDMARK in self.alphabet.symbols:
            raise ValidationError(f"alphabet: {ENDMARK!r} is reserved for the end-marker")
        if self.psi0.rows != 1 or self.psi0.cols != self.n:
            raise ValidationError("psi0: must be a 1 x n row vector")
        norm = restricted_norm2(self.psi0, range(self.n))
        if self.mode == EXACT:
            if norm != 1:
                raise ValidationError(f"psi0: squared norm is {norm}, expected 1")
        elif abs(norm - 1.0) > self.tol:
            raise ValidationError(f"psi0: squared norm is {norm}, expected 1")
        for s in (*self.alphabet.symbols, ENDMARK):
            m = self.mu.get(s)
            if m is None:
                raise ValidationError(f"mu: missing symbol {s!r}")
            if m.mode != self.mode:
                raise ValidationError(f"mu: symbol {s!r} has mixed scalar mode")
            if m.rows != self.n or m.cols != self.n:
                raise ValidationError(f"mu: symbol {s!r} is not n x n")
            if not is_unitary(m, self.tol):
                raise ValidationError(f"mu: symbol {s!r} is not unitary")

    @property
    def mode(self) -> str:
        return self.psi0.mode


def _project_out(v: Matrix, keep) -> Matrix:
    """Zero all coordinates of a row vector except the kept indices."""
    if v.mode == FLOAT:
        arr = v._np.copy()
        mask = [i for i in range(v.cols) if i not in keep]
        arr[0, mask] = 0
        return Matrix(FLOAT, 1, v.cols, np_array=arr)
    zero = Scalar.zero(EXACT)
    row = [v.entry(0, i) if i in keep else zero for i in range(v.cols)]
    return Matrix.row_vector(row, EXACT)


def mm_run(a: MMQFA, word: Word):
    """Run the measurement cascade on ``word`` plus the end-marker.

    Returns (p_acc, p_rej, p_residual), which sum to one: accept/reject
    mass accumulated at each of the len(word)+1 measurements plus the
    non-halting mass left at the end.  The non-halting component is kept
    unnormalized throughout, so no renormalization is needed.
    """
    check_word(a.alphabet, word)
    non_halting = frozenset(range(a.n)) - a.accepting - a.rejecting
    v = a.psi0
    if a.mode == EXACT:
        p_acc, p_rej = Fraction(0), Fraction(0)
    else:
        p_acc, p_rej = 0.0, 0.0
    for sym in (*word, ENDMARK):
        v = v @ a.mu[sym]
        p_acc += restricted_norm2(v, sorted(a.accepting))
        p_rej += restricted_norm2(v, sorted(a.rejecting))
        v = _project_out(v, non_halting)
    p_res = restricted_norm2(v, range(a.n))
    return p_acc, p_rej, p_res
