"""Concrete automata fixtures plus seeded random generators.

Fixture ids understood by ``build_gallery`` (and the CLI ``gallery``
subcommand):

* ``lk`` (parameter k >= 2) -- the k-state DFA for the language
  "ends with a1 a2 ... a_{k-1}" over {a1, ..., ak};
* ``astar-bstar`` -- the 3-state DFA for a*b*;
* ``akv`` -- the 3-state DFA for "any a's, then after the first b (if
  any) an odd number of a's";
* ``abstarb-2qfa`` -- a 2-state window-2 QFA accepting (a+b)*b with
  probability exactly 1 or 0, obtained by lifting a permutation-window
  automaton whose state tracks the last letter read;
* ``astar-b-a2star-a`` -- derived 4-state minimal DFA for a*b(aa)*a, a
  language neither machine family accepts; the tests verify it against an
  independent membership predicate and the structural detectors.

Random generators are deterministic functions of their seed.  Exact-mode
random unitaries are products of signed permutations and rational plane
rotations such as [[3/5, 4/5], [-4/5, 3/5]], keeping the whole pipeline
inside exact arithmetic; pass ``rotations=0`` for signed-permutation-only
matrices, whose products never grow denominators.
"""

from __future__ import annotations

import random
import string
from fractions import Fraction

from .automata import (DFA, Alphabet, KLetterDFA, MMQFA, MultiLetterQFA,
                       Word, gfa_to_qfa, reachable_windows)
from .linalg import EXACT, FLOAT, Matrix, direct_sum

import numpy as np

GALLERY_IDS = ("lk", "astar-bstar", "akv", "abstarb-2qfa", "astar-b-a2star-a")

#: rational (cos, sin) pairs on the unit circle
_PYTHAGOREAN = (
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
)


# ---------------------------------------------------------------------------
# named fixtures


def build_lk_dfa(k: int) -> DFA:
    """Minimal k-state DFA for (a1+...+ak)* a1 a2 ... a_{k-1}.

    State q_l remembers the longest suffix a1..a_l of the target pattern
    just read; reading a1 restarts the pattern, anything else off-pattern
    falls back to q0.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    states = tuple(f"q{i}" for i in range(k))
    symbols = tuple(f"a{i}" for i in range(1, k + 1))
    delta: dict[tuple[str, str], str] = {}
    for l in range(k):
        for i in range(1, k + 1):
            if l == 0:
                tgt = 1 if i == 1 else 0
            elif i == l + 1:
                tgt = (l + 1) % k
            elif i == 1:
                tgt = 1
            else:
                tgt = 0
            delta[(states[l], symbols[i - 1])] = states[tgt]
    return DFA(states=states, initial=states[0], accepting=frozenset({states[-1]}),
               alphabet=Alphabet(symbols), delta=delta)


def lk_member(k: int, word: Word) -> bool:
    """Independent membership predicate for the ``lk`` language."""
    pattern = tuple(f"a{i}" for i in range(1, k))
    return len(word) >= k - 1 and word[len(word) - (k - 1):] == pattern


_AB = Alphabet(("a", "b"))


def build_named_dfa(name: str) -> DFA:
    if name == "astar-bstar":
        delta = {("q0", "a"): "q0", ("q0", "b"): "q1",
                 ("q1", "a"): "q2", ("q1", "b"): "q1",
                 ("q2", "a"): "q2", ("q2", "b"): "q2"}
        return DFA(states=("q0", "q1", "q2"), initial="q0",
                   accepting=frozenset({"q0", "q1"}), alphabet=_AB, delta=delta)
    if name == "akv":
        delta = {("q1", "a"): "q1", ("q1", "b"): "q2",
                 ("q2", "a"): "q3", ("q2", "b"): "q2",
                 ("q3", "a"): "q2", ("q3", "b"): "q3"}
        return DFA(states=("q1", "q2", "q3"), initial="q1",
                   accepting=frozenset({"q1", "q3"}), alphabet=_AB, delta=delta)
    if name == "astar-b-a2star-a":
        delta = {("q0", "a"): "q0", ("q0", "b"): "q1",
                 ("q1", "a"): "q2", ("q1", "b"): "q3",
                 ("q2", "a"): "q1", ("q2", "b"): "q3",
                 ("q3", "a"): "q3", ("q3", "b"): "q3"}
        return DFA(states=("q0", "q1", "q2", "q3"), initial="q0",
                   accepting=frozenset({"q2"}), alphabet=_AB, delta=delta)
    raise ValueError(f"unknown gallery DFA id {name!r}")


def astar_bstar_member(word: Word) -> bool:
    return "a" not in word[word.index("b"):] if "b" in word else True


def akv_member(word: Word) -> bool:
    if "b" not in word:
        return True
    tail = word[word.index("b"):]
    return tail.count("a") % 2 == 1


def astar_b_a2star_a_member(word: Word) -> bool:
    if "b" not in word:
        return False
    tail = word[word.index("b") + 1:]
    return "b" not in tail and len(tail) % 2 == 1 and set(tail) <= {"a"}


def build_abstarb_gfa() -> KLetterDFA:
    """Window-2 permutation automaton whose state is the last letter read.

    Each window (prev, cur) acts as the identity when cur == prev (and on
    the blank-padded first step when cur == 'a'), and swaps the two states
    otherwise; starting in the 'a' state this tracks the last letter, so
    the 'b' state is accepting exactly on words ending in b.
    """
    states = ("qa", "qb")
    swap = {("qa",): "qb", ("qb",): "qa"}
    identity = {("qa",): "qa", ("qb",): "qb"}
    acts = {("_", "a"): identity, ("_", "b"): swap,
            ("a", "a"): identity, ("a", "b"): swap,
            ("b", "a"): swap, ("b", "b"): identity}
    gamma = {(q, w): act[(q,)] for w, act in acts.items() for q in states}
    return KLetterDFA(states=states, initial="qa", accepting=frozenset({"qb"}),
                      alphabet=_AB, k=2, gamma=gamma)


def build_abstarb_qfa(mode: str = EXACT) -> MultiLetterQFA:
    """Zero-error window-2 QFA for (a+b)*b (probability exactly 1 or 0)."""
    return gfa_to_qfa(build_abstarb_gfa(), mode)


def build_gallery(name: str, k: int | None = None, mode: str = EXACT):
    """Dispatch a gallery id to its fixture (DFA or QFA)."""
    if name == "lk":
        if k is None:
            raise ValueError("gallery id 'lk' needs the parameter k")
        return build_lk_dfa(k)
    if name == "abstarb-2qfa":
        return build_abstarb_qfa(mode)
    return build_named_dfa(name)


# ---------------------------------------------------------------------------
# random generators


def _random_float_unitary(rng: random.Random, n: int) -> Matrix:
    """Product of random plane rotations with phases, times a phase diagonal."""
    u = np.eye(n, dtype=np.complex128)
    for _ in range(2 * n * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        if i > j:
            i, j = j, i
        theta = rng.uniform(0, 2 * np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        g = np.eye(n, dtype=np.complex128)
        c, s = np.cos(theta), np.sin(theta)
        g[i, i] = c
        g[i, j] = s * np.exp(1j * phi)
        g[j, i] = -s * np.exp(-1j * phi)
        g[j, j] = c
        u = u @ g
    phases = np.diag([np.exp(1j * rng.uniform(0, 2 * np.pi)) for _ in range(n)])
    return Matrix(FLOAT, n, n, np_array=u @ phases)


_EXACT_PHASES = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _random_exact_unitary(rng: random.Random, n: int, rotations: int) -> Matrix:
    """Signed permutation times ``rotations`` rational plane rotations."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][perm[i]] = 1
    u = Matrix.from_rows(rows, EXACT)
    signs = [[_EXACT_PHASES[rng.randrange(4)] if i == j else 0
              for j in range(n)] for i in range(n)]
    u = u @ Matrix.from_rows(signs, EXACT)
    for _ in range(rotations):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        if i > j:
            i, j = j, i
        c, s = _PYTHAGOREAN[rng.randrange(len(_PYTHAGOREAN))]
        if rng.random() < 0.5:
            c, s = s, c
        rot = [[Fraction(1) if a == b else Fraction(0) for b in range(n)]
               for a in range(n)]
        rot[i][i], rot[i][j] = c, s
        rot[j][i], rot[j][j] = -s, c
        u = u @ Matrix.from_rows(rot, EXACT)
    return u


def random_unitary(rng: random.Random, n: int, mode: str,
                   rotations: int | None = None) -> Matrix:
    if mode == FLOAT:
        return _random_float_unitary(rng, n)
    if rotations is None:
        rotations = 2
    return _random_exact_unitary(rng, n, rotations)


def _alphabet(alphabet_size: int) -> Alphabet:
    if not 1 <= alphabet_size <= 26:
        raise ValueError("alphabet size must be between 1 and 26")
    return Alphabet(tuple(string.ascii_lowercase[:alphabet_size]))


def random_qfa(seed: int, n: int, k: int, alphabet_size: int = 1,
               mode: str = FLOAT, rotations: int | None = None) -> MultiLetterQFA:
    """Seed-deterministic random windowed QFA passing all invariants."""
    rng = random.Random(f"qfa-{seed}-{n}-{k}-{alphabet_size}-{mode}")
    alphabet = _alphabet(alphabet_size)
    mu = {w: random_unitary(rng, n, mode, rotations)
          for w in reachable_windows(alphabet, k)}
    basis = Matrix.row_vector([1] + [0] * (n - 1), mode)
    psi0 = basis @ random_unitary(rng, n, mode, rotations)
    accepting = frozenset(i for i in range(n) if rng.random() < 0.5)
    return MultiLetterQFA(n=n, accepting=accepting, psi0=psi0,
                          alphabet=alphabet, k=k, mu=mu)


def random_mmqfa(seed: int, n: int, alphabet_size: int = 2,
                 mode: str = FLOAT, rotations: int | None = None) -> MMQFA:
    """Seed-deterministic random measure-many automaton."""
    rng = random.Random(f"mmqfa-{seed}-{n}-{alphabet_size}-{mode}")
    alphabet = _alphabet(alphabet_size)
    mu = {s: random_unitary(rng, n, mode, rotations)
          for s in (*alphabet.symbols, "$")}
    basis = Matrix.row_vector([1] + [0] * (n - 1), mode)
    psi0 = basis @ random_unitary(rng, n, mode, rotations)
    roles = [rng.randrange(3) for _ in range(n)]
    accepting = frozenset(i for i, r in enumerate(roles) if r == 0)
    rejecting = frozenset(i for i, r in enumerate(roles) if r == 1)
    return MMQFA(n=n, psi0=psi0, alphabet=alphabet,
                 accepting=accepting, rejecting=rejecting, mu=mu)


def random_dfa(seed: int, n_states: int, n_symbols: int) -> DFA:
    """Seed-deterministic random DFA (not necessarily minimal)."""
    rng = random.Random(f"dfa-{seed}-{n_states}-{n_symbols}")
    states = tuple(f"q{i}" for i in range(n_states))
    alphabet = _alphabet(n_symbols)
    delta = {(q, s): states[rng.randrange(n_states)]
             for q in states for s in alphabet}
    accepting = frozenset(q for q in states if rng.random() < 0.5)
    return DFA(states=states, initial=states[0], accepting=accepting,
               alphabet=alphabet, delta=delta)


def equivalent_variant(a: MultiLetterQFA, seed: int, pad: int = 0,
                       raise_k: bool = False,
                       pad_rotations: int = 0) -> MultiLetterQFA:
    """Automaton equivalent to ``a`` by construction, for differential tests.

    Three equivalence-preserving transformations, applied in order:
    append ``pad`` extra states as an unreachable block (zero initial
    amplitude stays zero under block-diagonal steps, so extra accepting
    states are harmless and some are added on purpose); permute the basis;
    optionally raise the window length by one (each longer window acts
    like its own k-suffix, so the per-step matrices are unchanged).
    """
    rng = random.Random(f"variant-{seed}-{pad}-{raise_k}")
    mode = a.mode
    n = a.n + pad
    mu = dict(a.mu)
    psi0 = a.psi0
    accepting = set(a.accepting)
    if pad:
        mu = {w: direct_sum(m, random_unitary(rng, pad, mode, pad_rotations))
              for w, m in mu.items()}
        zero = Matrix.zeros(1, pad, mode)
        psi0 = Matrix.from_rows(
            [[psi0.entry(0, j) for j in range(a.n)]
             + [zero.entry(0, j) for j in range(pad)]])
        accepting |= {a.n + i for i in range(pad) if rng.random() < 0.5}

    perm = list(range(n))
    rng.shuffle(perm)
    p_rows = [[0] * n for _ in range(n)]
    for i in range(n):
        p_rows[i][perm[i]] = 1
    p = Matrix.from_rows(p_rows, mode)
    p_t = p.transpose()
    mu = {w: p @ m @ p_t for w, m in mu.items()}
    psi0 = psi0 @ p_t
    accepting = {i for i in range(n) if perm[i] in accepting}

    k = a.k
    if raise_k:
        k += 1
        mu = {w: mu[w[1:]] for w in reachable_windows(a.alphabet, k)}
    return MultiLetterQFA(n=n, accepting=frozenset(accepting), psi0=psi0,
                          alphabet=a.alphabet, k=k, mu=mu)


def random_kgfa(seed: int, n: int, k: int, alphabet_size: int = 2) -> KLetterDFA:
    """Seed-deterministic automaton whose every window is a permutation."""
    rng = random.Random(f"kgfa-{seed}-{n}-{k}-{alphabet_size}")
    states = tuple(f"q{i}" for i in range(n))
    alphabet = _alphabet(alphabet_size)
    gamma: dict[tuple[str, tuple[str, ...]], str] = {}
    for w in reachable_windows(alphabet, k):
        perm = list(range(n))
        rng.shuffle(perm)
        for i, q in enumerate(states):
            gamma[(q, w)] = states[perm[i]]
    accepting = frozenset(q for q in states if rng.random() < 0.5)
    return KLetterDFA(states=states, initial=states[0], accepting=accepting,
                      alphabet=alphabet, k=k, gamma=gamma)
