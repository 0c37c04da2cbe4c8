"""Parser and printer tests: examples, diagnostics, and round-trips."""

import random

import pytest

from qualisem.errors import ParseError, SemanticError
from qualisem.formulas import Formula, MetaAlphabet, Mode
from qualisem.syntax import parse, parse_noted, to_text

from generators import (ordered_alphabet, random_partition_alphabet,
                        random_property, random_state_formula)


class TestParseExamples:
    def test_present_formula(self, declarations):
        f = parse("present { holds(e1, temp, cold) }", declarations)
        assert f.mode is Mode.PRESENT
        assert len(f.atoms) == 1

    def test_goal_formula(self, declarations):
        f = parse("goal { holds(e1, temp, warm) }", declarations)
        assert f.mode is Mode.GOAL

    def test_alphabet(self, declarations):
        a = parse("alphabet D_temp over temp { INC: lt; DEC: gt; SAME: eq }",
                  declarations)
        assert isinstance(a, MetaAlphabet)
        assert [r.name for r in a.relations] == ["INC", "DEC", "SAME"]
        # partition property holds over the whole value space
        from qualisem.formulas import validate_jepd
        assert validate_jepd(a).ok

    def test_comments_and_whitespace_ignored(self, declarations):
        text = """
        # a comment
        present {
            holds(e1, temp, cold)   # trailing comment
            holds(e1, pos, left)
        }
        """
        f = parse(text, declarations)
        assert len(f.atoms) == 2

    def test_log_formula(self, declarations):
        text = ("log { step(0, present { holds(e1, temp, cold) }, heat, "
                "present { holds(e1, temp, cool) }) }")
        f = parse(text, declarations)
        assert f.mode is Mode.LOG
        assert f.steps[0].action == "heat"

    def test_explicit_pair_set(self, declarations):
        a = parse("alphabet N over pos { NEAR: { (left, mid), (mid, left) }; "
                  "OTHER: { (left, right), (right, left), (mid, right), (right, mid) }; "
                  "HERE: eq }", declarations)
        near = a.relation("NEAR")
        assert near.contains_names("left", "mid")
        assert not near.contains_names("left", "right")


class TestDiagnostics:
    def test_syntax_error_carries_position(self, declarations):
        with pytest.raises(ParseError) as err:
            parse("present { holds(e1, temp cold) }", declarations)
        assert err.value.line == 1
        assert err.value.column == 26
        assert "," in err.value.expected

    def test_unknown_property(self, declarations):
        with pytest.raises(SemanticError, match="unknown property"):
            parse("present { holds(e1, humidity, low) }", declarations)

    def test_unknown_value(self, declarations):
        with pytest.raises(SemanticError, match="not a value"):
            parse("present { holds(e1, temp, boiling) }", declarations)

    def test_require_jepd_flags_broken_alphabet(self, declarations):
        text = "alphabet D over temp { INC: lt; DEC: gt }"
        parse(text, declarations)  # lenient by default
        with pytest.raises(SemanticError, match="not a partition"):
            parse(text, declarations, require_jepd=True)

    def test_unexpected_character(self, declarations):
        with pytest.raises(ParseError):
            parse("present { holds(e1, temp, cold) } %", declarations)


class TestPrinting:
    def test_canonical_round_trip_example(self, declarations):
        text = to_text(parse("present { holds(e1,temp,cold) }", declarations))
        assert text == "present { holds(e1, temp, cold) }"

    def test_atoms_emitted_sorted(self, declarations):
        f = parse("present { holds(e2, temp, hot) holds(e1, temp, cold) "
                  "holds(e1, pos, left) }", declarations)
        assert to_text(f) == ("present { holds(e1, pos, left) "
                              "holds(e1, temp, cold) holds(e2, temp, hot) }")

    def test_empty_goal(self, declarations):
        assert to_text(parse("goal { }", declarations)) == "goal { }"

    def test_note_rendered_and_recovered(self, declarations):
        f = parse("goal { holds(e1, temp, warm) }", declarations)
        noted = f.with_note("decision tick=0 chosen=heat")
        text = to_text(noted)
        assert text.endswith("# decision tick=0 chosen=heat")
        again = parse_noted(text, declarations)
        assert again == f
        assert again.note == "decision tick=0 chosen=heat"
        assert to_text(again) == text


class TestRoundTripProperty:
    def test_parse_print_identity_on_generated_objects(self):
        rng = random.Random(31)
        props = {f"p{i}": random_property(rng, name=f"p{i}") for i in range(3)}
        for _ in range(200):
            roll = rng.random()
            if roll < 0.5:
                obj = random_state_formula(rng, props)
            elif roll < 0.75:
                prop = rng.choice(list(props.values()))
                obj = ordered_alphabet(prop, "DD")
            else:
                prop = rng.choice(list(props.values()))
                obj = random_partition_alphabet(rng, prop, "DP")
            assert parse(to_text(obj), props) == obj

    def test_print_parse_fixpoint_on_corpus(self, fixtures_dir, declarations):
        corpus = fixtures_dir / "corpus_formulas.txt"
        for line in corpus.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            once = to_text(parse_noted(line, declarations))
            twice = to_text(parse_noted(once, declarations))
            assert once == twice
