import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mlqfa.analysis import detect_ck, detect_f, minimize_dfa
from mlqfa.automata import accept_probability, dfa_accepts, is_k_letter_gfa
from mlqfa.gallery import (akv_member, astar_b_a2star_a_member,
                           astar_bstar_member, build_abstarb_gfa,
                           build_abstarb_qfa, build_gallery, build_lk_dfa,
                           build_named_dfa, equivalent_variant, lk_member,
                           random_qfa)
from mlqfa.linalg import EXACT, FLOAT, is_unitary


class TestLkDfa:
    def test_k3_transition_samples(self):
        d = build_lk_dfa(3)
        assert dfa_accepts(d, ("a1", "a2"))
        assert not dfa_accepts(d, ("a1", "a2", "a2"))

    def test_k3_membership_matches_suffix_oracle_on_length_three(self):
        d = build_lk_dfa(3)
        for word in itertools.product(d.alphabet.symbols, repeat=3):
            assert dfa_accepts(d, word) == lk_member(3, word)

    def test_k2_specializes_to_two_states(self):
        d = build_lk_dfa(2)
        assert d.states == ("q0", "q1")
        for length in range(6):
            for word in itertools.product(d.alphabet.symbols, repeat=length):
                assert dfa_accepts(d, word) == (length >= 1 and word[-1] == "a1")

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_membership_matches_oracle_up_to_length_eight(self, k):
        d = build_lk_dfa(k)
        checked = 0
        for length in range(9):
            for word in itertools.product(d.alphabet.symbols, repeat=length):
                assert dfa_accepts(d, word) == lk_member(k, word)
                checked += 1
                if checked > 4000:
                    return

    def test_k_below_two_rejected(self):
        with pytest.raises(ValueError):
            build_lk_dfa(1)


class TestNamedDfas:
    def test_astar_bstar_membership(self):
        d = build_named_dfa("astar-bstar")
        assert dfa_accepts(d, ("a", "a", "b", "b"))
        assert not dfa_accepts(d, ("b", "a"))
        for length in range(9):
            for word in itertools.product("ab", repeat=length):
                assert dfa_accepts(d, word) == astar_bstar_member(word)

    def test_akv_membership(self):
        d = build_named_dfa("akv")
        assert dfa_accepts(d, ("a", "b", "a"))
        assert not dfa_accepts(d, ("a", "b", "a", "a"))
        for length in range(9):
            for word in itertools.product("ab", repeat=length):
                assert dfa_accepts(d, word) == akv_member(word)

    def test_both_are_minimal(self):
        for name in ("astar-bstar", "akv"):
            assert len(minimize_dfa(build_named_dfa(name)).states) == 3

    def test_unknown_id_rejected(self):
        with pytest.raises(ValueError, match="unknown"):
            build_named_dfa("nope")


class TestReconstructedFixture:
    """a*b(aa)*a has no authoritative automaton to copy; verify the
    reconstruction against an independent predicate and the detectors."""

    def test_membership(self):
        d = build_named_dfa("astar-b-a2star-a")
        for length in range(9):
            for word in itertools.product("ab", repeat=length):
                assert dfa_accepts(d, word) == astar_b_a2star_a_member(word)

    def test_minimal_four_states(self):
        d = build_named_dfa("astar-b-a2star-a")
        assert minimize_dfa(d) == d
        assert len(d.states) == 4

    def test_rejected_by_both_machine_families(self):
        d = build_named_dfa("astar-b-a2star-a")
        assert detect_f(d) is not None      # no windowed QFA accepts it
        assert detect_ck(d, 1) is not None  # no high-probability MM acceptance


class TestAbstarbQfa:
    def test_single_letter_probabilities(self):
        a = build_abstarb_qfa()
        assert accept_probability(a, ("b",)) == 1
        assert accept_probability(a, ("a",)) == 0
        assert accept_probability(a, ()) == 0

    def test_underlying_automaton_is_permutation_windowed(self):
        assert is_k_letter_gfa(build_abstarb_gfa())

    def test_matches_last_letter_predicate_up_to_eight(self):
        a = build_abstarb_qfa()
        count = 0
        for length in range(9):
            for word in itertools.product("ab", repeat=length):
                expected = 1 if (word and word[-1] == "b") else 0
                assert accept_probability(a, word) == expected
                count += 1
        assert count == 511  # 510 non-empty words plus the empty one


class TestRandomQfa:
    def test_same_seed_same_automaton(self):
        a = random_qfa(99, n=3, k=2, alphabet_size=2, mode=FLOAT)
        b = random_qfa(99, n=3, k=2, alphabet_size=2, mode=FLOAT)
        assert a == b

    @given(seed=st.integers(0, 2 ** 30))
    def test_all_matrices_unitary_exact(self, seed):
        a = random_qfa(seed, n=3, k=1, alphabet_size=1, mode=EXACT, rotations=2)
        for m in a.mu.values():
            assert is_unitary(m)

    @given(seed=st.integers(0, 2 ** 30))
    def test_all_matrices_unitary_float(self, seed):
        a = random_qfa(seed, n=3, k=1, alphabet_size=1, mode=FLOAT)
        for m in a.mu.values():
            assert is_unitary(m, 1e-9)

    def test_single_state_matrices_are_unit_modulus(self):
        a = random_qfa(5, n=1, k=1, alphabet_size=2, mode=EXACT)
        for m in a.mu.values():
            assert m.entry(0, 0).abs2() == 1
        b = random_qfa(5, n=1, k=1, alphabet_size=2, mode=FLOAT)
        for m in b.mu.values():
            assert abs(m.entry(0, 0).abs2() - 1) < 1e-12


class TestEquivalentVariant:
    @given(seed=st.integers(0, 2 ** 30))
    def test_variant_probabilities_match_short_words(self, seed):
        a = random_qfa(seed, n=2, k=1, alphabet_size=2, mode=FLOAT)
        b = equivalent_variant(a, seed, pad=1, raise_k=True)
        for length in range(4):
            for word in itertools.product(a.alphabet.symbols, repeat=length):
                assert accept_probability(a, word) == pytest.approx(
                    accept_probability(b, word), abs=1e-9)


class TestDispatcher:
    def test_lk_requires_k(self):
        with pytest.raises(ValueError, match="k"):
            build_gallery("lk")

    def test_dispatch_kinds(self):
        from mlqfa.automata import DFA, MultiLetterQFA
        assert isinstance(build_gallery("lk", k=2), DFA)
        assert isinstance(build_gallery("astar-bstar"), DFA)
        assert isinstance(build_gallery("abstarb-2qfa"), MultiLetterQFA)
        assert build_gallery("abstarb-2qfa", mode=FLOAT).mode == FLOAT
