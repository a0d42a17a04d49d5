"""JSON interchange for scalars, matrices, automata, verdicts, and reports.

Scalar forms: exact scalars serialize as ``{"re": "p/q", "im": "p/q"}``
with gcd-reduced base-10 integers and positive denominators; float scalars
as ``{"re": 0.5, "im": 0.0}``.  Matrices are row-major arrays of arrays.
Windows and words serialize as space-separated symbol strings with ``_``
for the blank (the empty word is the empty string).

Automaton documents carry a ``type`` of ``dfa``, ``kdfa``, ``kqfa`` or
``mmqfa``.  Classical transitions map each symbol/window key to a
state-to-state object; quantum ones map each window (or symbol plus
``$`` for mmqfa) to a matrix.  Quantum documents use ``initial`` for the
initial superposition row vector, and mmqfa documents add a ``rejecting``
list alongside ``accepting``.  Validation failures name the offending
field.
"""

from __future__ import annotations

from fractions import Fraction

from .automata import (BLANK, DFA, ENDMARK, Alphabet, KLetterDFA, MMQFA,
                       MultiLetterQFA, ValidationError, Word,
                       reachable_windows)
from .analysis import (INFINITE, CkWitness, ClassificationReport, DkWitness,
                       ForbiddenWitness, FWitness)
from .equivalence import EquivalenceVerdict
from .linalg import EXACT, Matrix, Scalar


# ---------------------------------------------------------------------------
# words and windows


def word_to_str(word: Word) -> str:
    return " ".join(word)


def word_from_str(text: str) -> Word:
    return tuple(text.split())


# ---------------------------------------------------------------------------
# scalars and matrices


def scalar_to_json(s: Scalar) -> dict:
    if s.mode == EXACT:
        re, im = s.re, s.im
        return {"re": f"{re.numerator}/{re.denominator}",
                "im": f"{im.numerator}/{im.denominator}"}
    return {"re": s.re, "im": s.im}


def probability_to_json(p):
    if isinstance(p, Fraction):
        return f"{p.numerator}/{p.denominator}"
    return p


def scalar_from_json(obj, where: str) -> Scalar:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return Scalar.of_float(float(obj))
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ValidationError(f"{where}: expected a {{re, im}} scalar object")
    re, im = obj["re"], obj["im"]
    if isinstance(re, str) and isinstance(im, str):
        try:
            return Scalar.exact(Fraction(re), Fraction(im))
        except (ValueError, ZeroDivisionError) as e:
            raise ValidationError(f"{where}: bad rational: {e}") from None
    if isinstance(re, (int, float)) and isinstance(im, (int, float)) \
            and not isinstance(re, bool) and not isinstance(im, bool):
        return Scalar.of_float(float(re), float(im))
    raise ValidationError(
        f"{where}: re and im must both be 'p/q' strings (exact) "
        f"or both numbers (float)")


def matrix_to_json(m: Matrix) -> list:
    return [[scalar_to_json(m.entry(i, j)) for j in range(m.cols)]
            for i in range(m.rows)]


def matrix_from_json(obj, where: str) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValidationError(f"{where}: expected an array of arrays")
    scalars = [[scalar_from_json(e, f"{where}[{i}][{j}]")
                for j, e in enumerate(row)] for i, row in enumerate(obj)]
    try:
        return Matrix.from_rows(scalars)
    except ValueError as e:
        raise ValidationError(f"{where}: {e}") from None


def row_vector_from_json(obj, where: str) -> Matrix:
    if not isinstance(obj, list) or not obj:
        raise ValidationError(f"{where}: expected a non-empty array of scalars")
    scalars = [scalar_from_json(e, f"{where}[{i}]") for i, e in enumerate(obj)]
    try:
        return Matrix.from_rows([scalars])
    except ValueError as e:
        raise ValidationError(f"{where}: {e}") from None


# ---------------------------------------------------------------------------
# automata


def _require(doc: dict, key: str, typ, where: str = ""):
    prefix = f"{where}." if where else ""
    if key not in doc:
        raise ValidationError(f"{prefix}{key}: missing field")
    value = doc[key]
    if typ is not None and not isinstance(value, typ):
        raise ValidationError(f"{prefix}{key}: expected {typ.__name__}")
    return value


def _alphabet_from(doc: dict) -> Alphabet:
    syms = _require(doc, "alphabet", list)
    if not all(isinstance(s, str) for s in syms):
        raise ValidationError("alphabet: symbols must be strings")
    return Alphabet(tuple(syms))


def _states_from(doc: dict) -> tuple[str, ...]:
    states = _require(doc, "states", list)
    if not all(isinstance(s, str) for s in states):
        raise ValidationError("states: names must be strings")
    return tuple(states)


def _window_key(key: str, alphabet: Alphabet, k: int, where: str) -> tuple[str, ...]:
    window = tuple(key.split())
    if len(window) != k:
        raise ValidationError(f"{where}: window {key!r} has length "
                              f"{len(window)}, expected {k}")
    for sym in window:
        if sym != BLANK and sym not in alphabet:
            raise ValidationError(f"{where}: unknown symbol {sym!r} in window {key!r}")
    return window


def _state_map_from(obj, states, where: str) -> dict[str, str]:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected a state-to-state object")
    out = {}
    for src, tgt in obj.items():
        if src not in states:
            raise ValidationError(f"{where}: unknown source state {src!r}")
        if tgt not in states:
            raise ValidationError(f"{where}: unknown target state {tgt!r}")
        out[src] = tgt
    return out


def dfa_to_json(d: DFA) -> dict:
    return {
        "type": "dfa",
        "alphabet": list(d.alphabet.symbols),
        "states": list(d.states),
        "initial": d.initial,
        "accepting": [q for q in d.states if q in d.accepting],
        "transitions": {s: {q: d.delta[(q, s)] for q in d.states}
                        for s in d.alphabet.symbols},
    }


def kdfa_to_json(d: KLetterDFA) -> dict:
    return {
        "type": "kdfa",
        "k": d.k,
        "alphabet": list(d.alphabet.symbols),
        "states": list(d.states),
        "initial": d.initial,
        "accepting": [q for q in d.states if q in d.accepting],
        "transitions": {" ".join(w): {q: d.gamma[(q, w)] for q in d.states}
                        for w in reachable_windows(d.alphabet, d.k)},
    }


def kqfa_to_json(a: MultiLetterQFA) -> dict:
    return {
        "type": "kqfa",
        "k": a.k,
        "alphabet": list(a.alphabet.symbols),
        "states": [f"s{i}" for i in range(a.n)],
        "initial": [scalar_to_json(a.psi0.entry(0, i)) for i in range(a.n)],
        "accepting": [f"s{i}" for i in sorted(a.accepting)],
        "transitions": {" ".join(w): matrix_to_json(a.mu[w])
                        for w in reachable_windows(a.alphabet, a.k)},
    }


def mmqfa_to_json(a: MMQFA) -> dict:
    return {
        "type": "mmqfa",
        "alphabet": list(a.alphabet.symbols),
        "states": [f"s{i}" for i in range(a.n)],
        "initial": [scalar_to_json(a.psi0.entry(0, i)) for i in range(a.n)],
        "accepting": [f"s{i}" for i in sorted(a.accepting)],
        "rejecting": [f"s{i}" for i in sorted(a.rejecting)],
        "transitions": {s: matrix_to_json(a.mu[s])
                        for s in (*a.alphabet.symbols, ENDMARK)},
    }


def automaton_to_json(a) -> dict:
    if isinstance(a, DFA):
        return dfa_to_json(a)
    if isinstance(a, KLetterDFA):
        return kdfa_to_json(a)
    if isinstance(a, MultiLetterQFA):
        return kqfa_to_json(a)
    if isinstance(a, MMQFA):
        return mmqfa_to_json(a)
    raise TypeError(f"not an automaton: {type(a).__name__}")


def _dfa_from_json(doc: dict) -> DFA:
    alphabet = _alphabet_from(doc)
    states = _states_from(doc)
    initial = _require(doc, "initial", str)
    accepting = frozenset(_require(doc, "accepting", list))
    trans = _require(doc, "transitions", dict)
    delta: dict[tuple[str, str], str] = {}
    for sym, mapping in trans.items():
        if sym not in alphabet:
            raise ValidationError(f"transitions: unknown symbol {sym!r}")
        for src, tgt in _state_map_from(mapping, states,
                                        f"transitions[{sym!r}]").items():
            delta[(src, sym)] = tgt
    return DFA(states=states, initial=initial, accepting=accepting,
               alphabet=alphabet, delta=delta)


def _kdfa_from_json(doc: dict) -> KLetterDFA:
    alphabet = _alphabet_from(doc)
    states = _states_from(doc)
    k = _require(doc, "k", int)
    initial = _require(doc, "initial", str)
    accepting = frozenset(_require(doc, "accepting", list))
    trans = _require(doc, "transitions", dict)
    gamma: dict[tuple[str, tuple[str, ...]], str] = {}
    for key, mapping in trans.items():
        window = _window_key(key, alphabet, k, "transitions")
        for src, tgt in _state_map_from(mapping, states,
                                        f"transitions[{key!r}]").items():
            gamma[(src, window)] = tgt
    return KLetterDFA(states=states, initial=initial, accepting=accepting,
                      alphabet=alphabet, k=k, gamma=gamma)


def _state_indices(names, states, where: str) -> frozenset[int]:
    out = set()
    for name in names:
        if name not in states:
            raise ValidationError(f"{where}: unknown state {name!r}")
        out.add(states.index(name))
    return frozenset(out)


def _kqfa_from_json(doc: dict) -> MultiLetterQFA:
    alphabet = _alphabet_from(doc)
    states = _states_from(doc)
    k = _require(doc, "k", int)
    psi0 = row_vector_from_json(_require(doc, "initial", list), "initial")
    accepting = _state_indices(_require(doc, "accepting", list), states, "accepting")
    trans = _require(doc, "transitions", dict)
    mu: dict[tuple[str, ...], Matrix] = {}
    for key, obj in trans.items():
        window = _window_key(key, alphabet, k, "transitions")
        mu[window] = matrix_from_json(obj, f"transitions[{key!r}]")
    return MultiLetterQFA(n=len(states), accepting=accepting, psi0=psi0,
                          alphabet=alphabet, k=k, mu=mu)


def _mmqfa_from_json(doc: dict) -> MMQFA:
    alphabet = _alphabet_from(doc)
    states = _states_from(doc)
    psi0 = row_vector_from_json(_require(doc, "initial", list), "initial")
    accepting = _state_indices(_require(doc, "accepting", list), states, "accepting")
    rejecting = _state_indices(_require(doc, "rejecting", list), states, "rejecting")
    trans = _require(doc, "transitions", dict)
    mu: dict[str, Matrix] = {}
    for key, obj in trans.items():
        if key != ENDMARK and key not in alphabet:
            raise ValidationError(f"transitions: unknown symbol {key!r}")
        mu[key] = matrix_from_json(obj, f"transitions[{key!r}]")
    return MMQFA(n=len(states), psi0=psi0, alphabet=alphabet,
                 accepting=accepting, rejecting=rejecting, mu=mu)


def automaton_from_json(doc) -> DFA | KLetterDFA | MultiLetterQFA | MMQFA:
    if not isinstance(doc, dict):
        raise ValidationError("document: expected a JSON object")
    kind = _require(doc, "type", str)
    loaders = {"dfa": _dfa_from_json, "kdfa": _kdfa_from_json,
               "kqfa": _kqfa_from_json, "mmqfa": _mmqfa_from_json}
    if kind not in loaders:
        raise ValidationError(f"type: unknown automaton type {kind!r}")
    return loaders[kind](doc)


# ---------------------------------------------------------------------------
# verdicts, witnesses, reports


def verdict_to_json(v: EquivalenceVerdict) -> dict:
    out: dict = {"equivalent": v.equivalent, "checked_up_to": v.checked_up_to}
    if v.stabilization_index is not None:
        out["stabilization_index"] = v.stabilization_index
    if v.witness is not None:
        w: dict = {"length": v.witness.length,
                   "p1": probability_to_json(v.witness.p1),
                   "p2": probability_to_json(v.witness.p2)}
        if v.witness.word is not None:
            w["word"] = word_to_str(v.witness.word)
        out["witness"] = w
    if v.bounded:
        out["bounded"] = True
    return out


def witness_to_json(w) -> dict:
    if isinstance(w, CkWitness):
        return {"q1": w.q1, "q2": w.q2, "q3": w.q3, "q4": w.q4, "q5": w.q5,
                "w": word_to_str(w.w)}
    if isinstance(w, DkWitness):
        return {"ck": witness_to_json(w.ck), "m": w.m}
    if isinstance(w, FWitness):
        return {"q1": w.q1, "q2": w.q2, "t": word_to_str(w.t),
                "z": word_to_str(w.z)}
    if isinstance(w, ForbiddenWitness):
        return {"p1": w.p1, "p2": w.p2, "x": word_to_str(w.x),
                "w1": word_to_str(w.w1), "w2": word_to_str(w.w2)}
    raise TypeError(f"not a witness: {type(w).__name__}")


def report_to_json(r: ClassificationReport) -> dict:
    return {
        "minimal_states": r.minimal_states,
        "minimal_k": "infinite" if r.minimal_k == INFINITE else r.minimal_k,
        "has_f": r.has_f,
        "f_witness": witness_to_json(r.f_witness) if r.f_witness else None,
        "per_k": {str(k): witness_to_json(w) if w else None
                  for k, w in sorted(r.per_k.items())},
        "mm_over_79": r.mm_over_79,
    }
