import json
from fractions import Fraction

import pytest

from mlqfa.analysis import classify, detect_f, detect_forbidden
from mlqfa.automata import ValidationError
from mlqfa.equivalence import decide_equivalence_unary
from mlqfa.gallery import (build_abstarb_gfa, build_abstarb_qfa, build_lk_dfa,
                           build_named_dfa, random_mmqfa, random_qfa)
from mlqfa.linalg import EXACT, FLOAT, Matrix, Scalar
from mlqfa.serialize import (automaton_from_json, automaton_to_json,
                             matrix_from_json, matrix_to_json, report_to_json,
                             scalar_from_json, scalar_to_json, verdict_to_json,
                             witness_to_json, word_from_str, word_to_str)


class TestScalarJson:
    def test_exact_roundtrip_always_slashed(self):
        s = Scalar.exact(Fraction(3, 5), Fraction(-4, 5))
        doc = scalar_to_json(s)
        assert doc == {"re": "3/5", "im": "-4/5"}
        assert scalar_from_json(doc, "x") == s

    def test_exact_integer_has_unit_denominator(self):
        assert scalar_to_json(Scalar.exact(2)) == {"re": "2/1", "im": "0/1"}

    def test_bare_integer_string_accepted(self):
        s = scalar_from_json({"re": "2", "im": "0"}, "x")
        assert s.mode == EXACT and s.re == 2

    def test_float_roundtrip(self):
        s = Scalar.of_float(0.5, -0.25)
        doc = scalar_to_json(s)
        assert doc == {"re": 0.5, "im": -0.25}
        assert scalar_from_json(doc, "x") == s

    def test_bare_number_is_float(self):
        assert scalar_from_json(0.5, "x").mode == FLOAT

    def test_mixed_forms_rejected_with_field(self):
        with pytest.raises(ValidationError, match="entry.re"):
            scalar_from_json({"re": "1/2", "im": 0.5}, "entry.re")

    def test_bad_rational_rejected(self):
        with pytest.raises(ValidationError, match="rational"):
            scalar_from_json({"re": "1/0", "im": "0/1"}, "x")


class TestMatrixJson:
    def test_roundtrip_exact(self):
        m = Matrix.from_rows([[Fraction(3, 5), Fraction(4, 5)],
                              [Fraction(-4, 5), Fraction(3, 5)]], EXACT)
        assert matrix_from_json(matrix_to_json(m), "m") == m

    def test_ragged_rejected(self):
        with pytest.raises(ValidationError, match="m"):
            matrix_from_json([[{"re": 0.0, "im": 0.0}], []], "m")


class TestAutomatonDocuments:
    @pytest.mark.parametrize("build", [
        lambda: build_lk_dfa(3),
        lambda: build_named_dfa("akv"),
        lambda: build_abstarb_gfa(),
        lambda: build_abstarb_qfa(),
        lambda: random_qfa(61, n=2, k=2, alphabet_size=2, mode=FLOAT),
        lambda: random_qfa(62, n=2, k=1, alphabet_size=1, mode=EXACT),
        lambda: random_mmqfa(63, n=3, alphabet_size=2, mode=EXACT, rotations=1),
    ])
    def test_roundtrip_through_json_text(self, build):
        a = build()
        doc = automaton_to_json(a)
        text = json.dumps(doc)
        again = automaton_to_json(automaton_from_json(json.loads(text)))
        assert doc == again

    def test_kqfa_semantics_survive_roundtrip(self):
        a = build_abstarb_qfa()
        b = automaton_from_json(automaton_to_json(a))
        from mlqfa.automata import accept_probability
        for word in [(), ("b",), ("a", "b"), ("b", "a")]:
            assert accept_probability(a, word) == accept_probability(b, word)

    def test_unknown_type_named(self):
        with pytest.raises(ValidationError, match="type"):
            automaton_from_json({"type": "pda"})

    def test_missing_field_named(self):
        doc = automaton_to_json(build_lk_dfa(2))
        del doc["initial"]
        with pytest.raises(ValidationError, match="initial"):
            automaton_from_json(doc)

    def test_bad_window_length_named(self):
        doc = automaton_to_json(build_abstarb_gfa())
        doc["transitions"]["a b b"] = doc["transitions"]["a b"]
        with pytest.raises(ValidationError, match="a b b"):
            automaton_from_json(doc)

    def test_unknown_transition_state_named(self):
        doc = automaton_to_json(build_lk_dfa(2))
        doc["transitions"]["a1"]["q0"] = "ghost"
        with pytest.raises(ValidationError, match="ghost"):
            automaton_from_json(doc)

    def test_unknown_accepting_state_named(self):
        doc = automaton_to_json(build_abstarb_qfa())
        doc["accepting"] = ["s9"]
        with pytest.raises(ValidationError, match="s9"):
            automaton_from_json(doc)

    def test_non_unitary_matrix_rejected_on_load(self):
        doc = automaton_to_json(build_abstarb_qfa())
        doc["transitions"]["b b"][0][0] = {"re": "2/1", "im": "0/1"}
        with pytest.raises(ValidationError, match="not unitary"):
            automaton_from_json(doc)


class TestVerdictJson:
    def test_equivalent_includes_stabilization_index(self):
        a = random_qfa(64, n=1, k=1, alphabet_size=1, mode=EXACT)
        v = decide_equivalence_unary(a, a)
        doc = verdict_to_json(v)
        assert doc["equivalent"] is True
        assert "stabilization_index" in doc
        assert "witness" not in doc

    def test_exact_witness_probabilities_serialize_as_fractions(self):
        from test_equivalence import one_state_identity, two_state_swap
        v = decide_equivalence_unary(one_state_identity(), two_state_swap())
        doc = verdict_to_json(v)
        assert doc["witness"] == {"length": 1, "p1": "1/1", "p2": "0/1"}

    def test_bounded_flag_appears(self):
        from mlqfa.equivalence import bounded_equivalence
        a = random_qfa(65, n=1, k=1, alphabet_size=2, mode=FLOAT)
        doc = verdict_to_json(bounded_equivalence(a, a, 2))
        assert doc["bounded"] is True


class TestWitnessAndReportJson:
    def test_f_witness_words_are_space_joined(self):
        w = detect_f(build_named_dfa("akv"))
        assert witness_to_json(w) == {"q1": "q1", "q2": "q2", "t": "a a", "z": "b"}

    def test_forbidden_witness_fields(self):
        w = detect_forbidden(build_named_dfa("astar-bstar"))
        assert witness_to_json(w) == {"p1": "q0", "p2": "q1", "x": "b",
                                      "w1": "", "w2": "a"}

    def test_report_renders_infinite(self):
        doc = report_to_json(classify(build_named_dfa("astar-bstar"), 2))
        assert doc["minimal_k"] == "infinite"
        assert doc["has_f"] is True
        assert set(doc["per_k"]) == {"1", "2"}

    def test_report_renders_finite(self):
        doc = report_to_json(classify(build_lk_dfa(3), 3))
        assert doc["minimal_k"] == 3
        assert doc["per_k"]["3"] is None


class TestWords:
    def test_roundtrip(self):
        assert word_from_str(word_to_str(("a", "b", "a"))) == ("a", "b", "a")
        assert word_from_str("") == ()
        assert word_to_str(()) == ""
