"""Document round trips and canonical formatting."""

import pytest

from cheaptalk import documents as docs
from cheaptalk.errors import ValidationError
from cheaptalk.gadget import build_instance
from cheaptalk.rationals import Q
from cheaptalk.sat import CnfFormula


class TestGameDocuments:
    def test_round_trip(self, table1, tmp_path):
        doc = docs.game_to_dict(table1)
        again = docs.game_from_dict(doc)
        assert again == table1
        path = tmp_path / "game.json"
        docs.save_json(path, doc)
        assert docs.game_from_dict(docs.load_json(path)) == table1
        # writing twice is byte-identical
        first = path.read_bytes()
        docs.save_json(path, docs.game_to_dict(again))
        assert path.read_bytes() == first

    def test_rationals_are_strings(self, table1):
        doc = docs.game_to_dict(table1)
        assert doc["prior"] == ["1/2", "1/2"]
        assert doc["u_S"][0] == ["-1", "2", "-2", "3"]

    def test_missing_key(self):
        with pytest.raises(ValidationError):
            docs.game_from_dict({"states": ["w0"]})

    def test_malformed_prior_rejected(self, table1):
        doc = docs.game_to_dict(table1)
        doc["prior"] = ["1", "1"]
        with pytest.raises(ValidationError):
            docs.game_from_dict(doc)


class TestProfileDocuments:
    def test_round_trip(self, table1_mixed_profile):
        doc = docs.profile_to_dict(table1_mixed_profile)
        assert docs.profile_from_dict(doc) == table1_mixed_profile

    def test_grammar(self, table1_mixed_profile):
        doc = docs.profile_to_dict(table1_mixed_profile)
        assert set(doc) == {"signals", "pi", "s"}
        assert doc["pi"][0] == ["3/4", "1/4"]


class TestMetadataDocuments:
    def test_round_trip(self):
        formula = CnfFormula.build(3, [(1, 2, 3), (-1, -2, -3)])
        _, meta = build_instance(formula, normalize=True, babbling_gap_alpha=Q(7, 8))
        doc = docs.metadata_to_dict(meta)
        again = docs.metadata_from_dict(doc)
        assert again == meta

    def test_fields(self):
        formula = CnfFormula.build(3, [(1, 2, 3), (-1, -2, -3)])
        _, meta = build_instance(formula)
        doc = docs.metadata_to_dict(meta)
        assert doc["d"] == 2
        assert doc["numClauses"] == 2
        assert len(doc["pools"]) == 32
        assert doc["babblingGapAlpha"] is None
        assert doc["stateIndex"]["c1"] == 6


class TestAssignmentDocuments:
    def test_parse_plain_and_prefixed(self):
        parsed = docs.parse_assignment_doc({"1": True, "x3": False})
        assert parsed == {1: True, 3: False}

    def test_rejects_non_boolean(self):
        with pytest.raises(ValidationError):
            docs.parse_assignment_doc({"1": "yes"})

    def test_round_trip(self):
        assigned = {2: False, 1: True}
        doc = docs.assignment_to_dict(assigned)
        assert doc == {"1": True, "2": False}
        assert docs.parse_assignment_doc(doc) == assigned
