import itertools

import pytest

from mlqfa.analysis import detect_ck, minimize_dfa
from mlqfa.automata import DFA, Alphabet, MultiLetterQFA, accept_probability
from mlqfa.gallery import (build_abstarb_qfa, build_lk_dfa, build_named_dfa,
                           random_dfa, random_qfa)
from mlqfa.linalg import EXACT, FLOAT, Matrix
from mlqfa.oracle import ProbabilityTable, brute_ck, probability_table

DFA_SINGLE = DFA(states=("q",), initial="q", accepting=frozenset({"q"}),
                 alphabet=Alphabet(("a",)), delta={("q", "a"): "q"})


class TestBruteCk:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_agrees_with_detector_on_lk3(self, k):
        d = build_lk_dfa(3)
        assert (brute_ck(d, k) is None) == (detect_ck(d, k) is None)

    def test_single_state_has_none(self):
        assert brute_ck(DFA_SINGLE, 1) is None

    def test_differential_on_random_minimized_dfas(self):
        for seed in range(200):
            d = minimize_dfa(random_dfa(seed, 4, 2))
            for k in (1, 2, 3):
                assert (brute_ck(d, k) is None) == (detect_ck(d, k) is None)

    def test_state_guard(self):
        d = build_lk_dfa(7)
        with pytest.raises(ValueError, match="detect_ck"):
            brute_ck(d, 1)

    def test_word_count_guard(self):
        d = build_named_dfa("astar-bstar")
        with pytest.raises(ValueError, match="detect_ck"):
            brute_ck(d, 11)  # 2**11 > 1000




class TestProbabilityTable:
    def test_identity_automaton_is_all_ones(self):
        a = MultiLetterQFA(n=1, accepting=frozenset({0}),
                           psi0=Matrix.row_vector([1], EXACT),
                           alphabet=Alphabet(("a",)), k=1,
                           mu={("a",): Matrix.from_rows([[1]], EXACT)})
        table = probability_table(a, 5)
        assert len(table.rows) == 6
        assert all(p == 1 for _, p in table.rows)

    def test_abstarb_matches_last_letter_predicate(self):
        table = probability_table(build_abstarb_qfa(), 4)
        for word, p in table.rows:
            assert p == (1 if (word and word[-1] == "b") else 0)

    def test_rows_are_length_then_lex_ordered(self):
        a = random_qfa(41, n=1, k=1, alphabet_size=2, mode=FLOAT)
        table = probability_table(a, 3)
        expected = [w for m in range(4)
                    for w in itertools.product(a.alphabet.symbols, repeat=m)]
        assert [w for w, _ in table.rows] == expected

    def test_matches_incremental_scan_on_unary_automaton(self):
        a = random_qfa(42, n=3, k=2, alphabet_size=1, mode=FLOAT)
        sigma = a.alphabet.symbols[0]
        table = probability_table(a, 20)
        # independent incremental product over lengths
        product = Matrix.identity(a.n, FLOAT)
        acc = sorted(a.accepting)
        for m in range(21):
            if m > 0:
                j = min(m, a.k)
                window = ("_",) * (a.k - j) + (sigma,) * j
                product = product @ a.mu[window]
            v = (a.psi0 @ product).to_complex()[0]
            incremental = float(sum(abs(v[i]) ** 2 for i in acc))
            assert abs(table.rows[m][1] - incremental) < 1e-12

    def test_matches_accept_probability_exactly_in_exact_mode(self):
        a = random_qfa(43, n=2, k=2, alphabet_size=1, mode=EXACT, rotations=1)
        table = probability_table(a, 10)
        for word, p in table.rows:
            assert p == accept_probability(a, word)

    def test_guard_on_row_count(self):
        a = random_qfa(44, n=1, k=1, alphabet_size=2, mode=FLOAT)
        with pytest.raises(ValueError, match="guard"):
            probability_table(a, 20)

    def test_csv_emission(self):
        a = build_abstarb_qfa()
        csv = probability_table(a, 1).to_csv()
        lines = csv.strip().split("\n")
        assert lines[0] == "word,probability"
        assert lines[1] == ",0"       # empty word
        assert lines[2] == "a,0"
        assert lines[3] == "b,1"

    def test_lookup_by_word(self):
        table = probability_table(build_abstarb_qfa(), 2)
        assert table.probability(("a", "b")) == 1
        with pytest.raises(KeyError):
            table.probability(("b", "b", "b"))
