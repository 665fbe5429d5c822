"""输入解析与确定性输出单元测试。"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import pytest

from src.domain.models.compute_limits import ComputeLimits
from src.domain.models.files import FamilyFile, PresentationFile, ReportEnvelope
from src.domain.services import codec
from src.operators.core_linear import OrderedGenSet, Vector
from src.operators.errors import InputFormatError, InstanceTooLargeError
from src.operators.reduced_basis import ReductionOperator

LIMITS = ComputeLimits(max_generators=64, matrix_form_limit=8, completable_search_limit=12)


class TestLoadAndValidate:
    """测试输入错误都带有位置。"""

    def test_json_syntax_error_has_line_and_column(self) -> None:
        with pytest.raises(InputFormatError) as excinfo:
            codec.load_json("{\n  \"generators\": [,]\n}", source="family.json")
        assert excinfo.value.position == "family.json:2:18"

    def test_missing_field(self) -> None:
        with pytest.raises(InputFormatError) as excinfo:
            codec.validate_document(FamilyFile, {"generators": ["g1"]})
        assert excinfo.value.position == "operators"

    def test_float_scalar_rejected(self) -> None:
        document = {"generators": ["g1"], "operators": [{"matrix": [[1.5]]}]}
        with pytest.raises(InputFormatError) as excinfo:
            codec.validate_document(FamilyFile, document)
        assert excinfo.value.position.startswith("operators.0.matrix.0.0")

    def test_malformed_fraction_text(self) -> None:
        document = {"generators": ["g1"], "operators": [{"matrix": [["1/0"]]}]}
        with pytest.raises(InputFormatError) as excinfo:
            codec.validate_document(FamilyFile, document)
        assert excinfo.value.position.startswith("operators.0.matrix.0.0")

    def test_unknown_fields_rejected(self) -> None:
        document = {"generators": ["g1"], "operators": [{"matrix": [[1]], "extra": 1}]}
        with pytest.raises(InputFormatError):
            codec.validate_document(FamilyFile, document)

    def test_operator_needs_a_form(self) -> None:
        with pytest.raises(InputFormatError) as excinfo:
            codec.validate_document(FamilyFile, {"generators": ["g1"], "operators": [{}]})
        assert excinfo.value.position.startswith("operators.0")


class TestVectors:
    def test_parse_vector_text(
        self, ambient: OrderedGenSet, vec: Callable[..., Vector]
    ) -> None:
        assert codec.parse_vector_text(ambient, "g4 - 2/3*g2 + g1") == vec(
            g4=1, g2="-2/3", g1=1
        )
        assert codec.parse_vector_text(ambient, "-g3") == vec(g3=-1)
        assert codec.parse_vector_text(ambient, "0").is_zero

    @pytest.mark.parametrize("text", ["", "g5", "2*", "g1 + * g2"])
    def test_parse_vector_errors(self, ambient: OrderedGenSet, text: str) -> None:
        with pytest.raises(InputFormatError) as excinfo:
            codec.parse_vector_text(ambient, text)
        assert excinfo.value.position == "vector"

    def test_unknown_label_in_kernel(self) -> None:
        document = codec.validate_document(
            FamilyFile,
            {"generators": ["a", "b"], "operators": [{"kernel": [[["1", "c"]]]}]},
        )
        with pytest.raises(InputFormatError) as excinfo:
            codec.family_from_file(document, LIMITS)
        assert excinfo.value.position == "operators.0.kernel.0"


class TestOperators:
    """测试矩阵形式与核形式的读取。"""

    def test_pair_file(
        self,
        load_document: Callable[[str], Any],
        t1: ReductionOperator,
        t2: ReductionOperator,
    ) -> None:
        family = codec.family_from_file(
            codec.validate_document(FamilyFile, load_document("pair.json")), LIMITS
        )
        assert family.members == (t1, t2)

    def test_reduction_matrix_violation_located(self) -> None:
        document = codec.validate_document(
            FamilyFile,
            {"generators": ["a", "b"], "operators": [{"matrix": [[1, 0], [1, 1]]}]},
        )
        with pytest.raises(InputFormatError) as excinfo:
            codec.family_from_file(document, LIMITS)
        assert excinfo.value.position == "operators.0.matrix"
        assert "condition 1" in str(excinfo.value)

    def test_forms_must_agree(self) -> None:
        document = codec.validate_document(
            FamilyFile,
            {
                "generators": ["a", "b"],
                "operators": [{"matrix": [[1, 1], [0, 0]], "kernel": [[["1", "b"]]]}],
            },
        )
        with pytest.raises(InputFormatError, match="different operators"):
            codec.family_from_file(document, LIMITS)

    def test_generator_limit(self) -> None:
        document = codec.validate_document(
            FamilyFile,
            {"generators": ["a", "b", "c"], "operators": [{"kernel": []}]},
        )
        small = ComputeLimits(max_generators=2, matrix_form_limit=2, completable_search_limit=2)
        with pytest.raises(InstanceTooLargeError):
            codec.family_from_file(document, small)

    def test_general_operators_need_matrix(self) -> None:
        document = codec.validate_document(
            FamilyFile,
            {"generators": ["a", "b"], "operators": [{"kernel": [[["1", "b"]]]}]},
        )
        with pytest.raises(InputFormatError) as excinfo:
            codec.projectors_from_file(document, LIMITS)
        assert excinfo.value.position == "operators.0"


class TestPresentationFile:
    def test_degree_from_flag_overrides_file(self, load_document: Callable[[str], Any]) -> None:
        document = codec.validate_document(PresentationFile, load_document("braid.json"))
        assert codec.presentation_from_file(document, None).degree == 3
        assert codec.presentation_from_file(document, 2).degree == 2

    def test_degree_required(self) -> None:
        document = codec.validate_document(PresentationFile, {"alphabet": ["x"], "rules": []})
        with pytest.raises(InputFormatError) as excinfo:
            codec.presentation_from_file(document, None)
        assert excinfo.value.position == "degree"

    def test_misoriented_rule_located(self) -> None:
        document = codec.validate_document(
            PresentationFile,
            {"alphabet": ["x", "y"], "degree": 2, "rules": [{"lhs": "x", "rhs": [["1", "y"]]}]},
        )
        with pytest.raises(InputFormatError) as excinfo:
            codec.presentation_from_file(document, None)
        assert excinfo.value.position == "rules"


class TestOutput:
    """测试输出的确定性。"""

    def test_operator_payload(self, c1: ReductionOperator) -> None:
        payload = codec.operator_payload(c1, LIMITS)
        assert payload == {
            "kernel": [[["1", "g3"], ["-1", "g1"]]],
            "matrix": [
                ["1", "0", "1", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "0", "0"],
                ["0", "0", "0", "1"],
            ],
        }

    def test_matrix_omitted_for_large_sets(self, c1: ReductionOperator) -> None:
        tight = ComputeLimits(max_generators=64, matrix_form_limit=3, completable_search_limit=12)
        assert "matrix" not in codec.operator_payload(c1, tight)

    def test_digest_ignores_key_order(self) -> None:
        first = codec.inputs_digest({"a": 1, "b": [1, 2]})
        second = codec.inputs_digest({"b": [1, 2], "a": 1})
        assert first == second
        assert first != codec.inputs_digest({"a": 1, "b": [2, 1]})

    def test_render_envelope_is_stable(self) -> None:
        envelope = ReportEnvelope(
            command="confluent",
            inputs_digest="abc",
            result={"obstructions": ["g3"], "confluent": False},
        )
        text = codec.render_envelope(envelope)
        assert text.endswith("}\n")
        assert text.index('"command"') < text.index('"inputs_digest"') < text.index('"result"')
        assert text == codec.render_envelope(envelope)
