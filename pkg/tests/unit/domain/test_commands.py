"""命令层单元测试：每个命令的结果结构与拒绝路径。"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import pytest

from src.domain.services.commands import COMMANDS, CommandOptions, execute
from src.operators.errors import (
    InputFormatError,
    NotCompletableError,
    OrderCycleError,
    PairNotConfluentError,
    ReductionError,
)

Loader = Callable[[str], Any]

MEET_KERNEL = [
    [["1", "g2"], ["-1", "g1"]],
    [["1", "g3"], ["-1", "g1"]],
    [["1", "g4"], ["-1", "g1"]],
]


class TestLatticeCommands:
    """测试 meet / join / leq / obstructions / confluent。"""

    def test_meet(self, load_document: Loader) -> None:
        envelope, outcome = execute("meet", load_document("pair.json"))
        assert envelope.command == "meet"
        assert envelope.result["meet"]["kernel"] == MEET_KERNEL
        assert envelope.result["meet"]["matrix"][0] == ["1", "1", "1", "1"]
        assert outcome.verdict is None
        assert len(envelope.inputs_digest) == 64

    def test_join(self, load_document: Loader) -> None:
        envelope, _ = execute("join", load_document("pair.json"))
        assert envelope.result["join"]["kernel"] == []
        assert envelope.result["method"] == "kernel-intersection"

    def test_join_via_duality_refuses_non_confluent_pair(self, load_document: Loader) -> None:
        with pytest.raises(PairNotConfluentError):
            execute("join", load_document("pair.json"), CommandOptions(via_duality=True))

    def test_leq(self, load_document: Loader) -> None:
        envelope, outcome = execute("leq", load_document("pair.json"))
        assert envelope.result == {"leq": False}
        assert outcome.verdict is False

    def test_leq_needs_two_operators(self, load_document: Loader) -> None:
        document = load_document("pair.json")
        document["operators"].append(document["operators"][0])
        with pytest.raises(InputFormatError) as excinfo:
            execute("leq", document)
        assert excinfo.value.position == "operators"

    def test_obstructions(self, load_document: Loader) -> None:
        envelope, _ = execute("obstructions", load_document("pair.json"))
        assert envelope.result == {"obstructions": ["g3"], "red": ["g1", "g3"], "meet_red": ["g1"]}

    def test_confluent(self, load_document: Loader) -> None:
        envelope, outcome = execute("confluent", load_document("pair.json"))
        assert envelope.result == {"confluent": False, "obstructions": ["g3"]}
        assert outcome.verdict is False

    def test_order_in_family_file_is_ignored(self, load_document: Loader) -> None:
        document = load_document("pair.json")
        document["order"] = {"pairs": [["g1", "g2"]]}
        envelope, _ = execute("confluent", document)
        assert envelope.warnings and envelope.warnings[0].startswith("order ignored")


class TestRewritingCommands:
    def test_normal_form_with_all(self, load_document: Loader) -> None:
        options = CommandOptions(vector="g4", all_normal_forms=True)
        envelope, _ = execute("normal-form", load_document("pair.json"), options)
        assert envelope.result["strategy"] == "first"
        assert envelope.result["normal_form"] == [["1", "g3"]]
        assert envelope.result["all_normal_forms"] == [[["1", "g1"]], [["1", "g3"]]]

    def test_priority_strategy(self, load_document: Loader) -> None:
        options = CommandOptions(vector="g4", strategy="priority:1")
        envelope, _ = execute("normal-form", load_document("pair.json"), options)
        assert envelope.result["normal_form"] == [["1", "g1"]]
        assert len(envelope.result["trace"]["steps"]) == 2

    def test_vector_required(self, load_document: Loader) -> None:
        with pytest.raises(InputFormatError) as excinfo:
            execute("normal-form", load_document("pair.json"))
        assert excinfo.value.position == "vector"

    def test_bad_strategy_located(self, load_document: Loader) -> None:
        options = CommandOptions(vector="g4", strategy="priority:7")
        with pytest.raises(InputFormatError) as excinfo:
            execute("normal-form", load_document("pair.json"), options)
        assert excinfo.value.position == "strategy"

    def test_braided(self, load_document: Loader) -> None:
        envelope, outcome = execute("braided", load_document("pair.json"))
        assert envelope.result["counts"]["g4"] == 2
        assert outcome.verdict is False


class TestCompletionCommands:
    def test_complement(self, load_document: Loader) -> None:
        envelope, _ = execute("complement", load_document("pair.json"))
        assert envelope.result["complement"]["kernel"] == [[["1", "g3"], ["-1", "g1"]]]
        assert envelope.result["minimal"] is True

    def test_complete(self, load_document: Loader) -> None:
        options = CommandOptions(meet_form=True)
        envelope, _ = execute("complete", load_document("pair.json"), options)
        result = envelope.result
        assert result["confluent"] is True
        assert result["obstructions"] == ["g3"]
        assert len(result["completed_family"]["operators"]) == 3
        assert result["meet_form_family"]["operators"][0]["kernel"] == MEET_KERNEL


class TestCheckCommand:
    """测试算子文件审计。"""

    def test_identity_operator_passes(self, load_document: Loader) -> None:
        envelope, outcome = execute("check", load_document("identity-operator.json"))
        assert outcome.verdict is True
        assert envelope.result["ok"] is True
        entry = envelope.result["operators"][0]
        assert entry["violations"] == []
        assert entry["idempotent"] is True

    def test_all_violations_reported(self) -> None:
        document = {"generators": ["a", "b"], "matrix": [[0, 1], [0, 1]]}
        envelope, outcome = execute("check", document)
        assert outcome.verdict is False
        checks = [v["check"] for v in envelope.result["operators"][0]["violations"]]
        assert checks == ["condition 2", "condition 3", "order"]
        assert envelope.result["operators"][0]["idempotent"] is True

    def test_non_idempotent(self) -> None:
        document = {"generators": ["a", "b"], "matrix": [[2, 0], [0, 1]]}
        envelope, _ = execute("check", document)
        entry = envelope.result["operators"][0]
        assert entry["idempotent"] is False
        assert "idempotent" in [v["check"] for v in entry["violations"]]

    def test_family_file(self, load_document: Loader) -> None:
        envelope, outcome = execute("check", load_document("pair.json"))
        assert outcome.verdict is True
        positions = [entry["position"] for entry in envelope.result["operators"]]
        assert positions == ["operators.0", "operators.1"]
        assert envelope.result["operators"][1]["kernel_dimension"] == 1

    def test_general_family_checked_against_order(self, load_document: Loader) -> None:
        envelope, outcome = execute("check", load_document("diamond.json"))
        assert outcome.verdict is True
        assert all(entry["general"] for entry in envelope.result["operators"])


class TestPresentationCommands:
    def test_check_pair_family(self, load_document: Loader) -> None:
        envelope, outcome = execute(
            "pres check", load_document("braid.json"), CommandOptions(family="pair")
        )
        assert envelope.result["obstructions"] == ["yxy"]
        assert envelope.result["family"] == "pair"
        assert envelope.degree_bound == 3
        assert outcome.verdict is False

    def test_complete(self, load_document: Loader) -> None:
        envelope, _ = execute("pres complete", load_document("braid.json"))
        assert envelope.result["added_rules"] == [{"lhs": "yxy", "rhs": [["1", "xx"]]}]
        assert envelope.result["confluent"] is True

    def test_check_completed_lists_normal_words(self, load_document: Loader) -> None:
        document = load_document("braid.json")
        document["rules"].append({"lhs": "yxy", "rhs": [["1", "xx"]]})
        envelope, outcome = execute("pres check", document)
        assert outcome.verdict is True
        assert envelope.result["normal_words"][:4] == ["1", "x", "y", "z"]
        assert "yz" not in envelope.result["normal_words"]

    def test_nf_warns_when_not_confluent(self, load_document: Loader) -> None:
        options = CommandOptions(polynomial="yzx + yz")
        envelope, _ = execute("pres nf", load_document("braid.json"), options)
        assert envelope.result["normal_form"] == "xx + x"
        assert envelope.warnings

    def test_degree_override(self, load_document: Loader) -> None:
        envelope, outcome = execute(
            "pres check", load_document("braid.json"), CommandOptions(degree=2)
        )
        assert envelope.degree_bound == 2
        assert outcome.verdict is True


class TestGeneralCommands:
    """测试偏序版本的命令。"""

    def test_order_from_projectors(self, load_document: Loader) -> None:
        envelope, outcome = execute("general order", load_document("opposite-projectors.json"))
        assert envelope.result == {"acyclic": False, "order": None}
        assert outcome.verdict is False

    def test_completable(self, load_document: Loader) -> None:
        envelope, outcome = execute("general completable", load_document("diamond.json"))
        assert envelope.result["completable"] is True
        assert envelope.result["meet"]["kernel"] == [
            [["1", "g3"], ["-1", "g1"]],
            [["1", "g4"], ["-1", "g1"]],
        ]
        assert outcome.verdict is True

    def test_vee_not_completable(self, load_document: Loader) -> None:
        envelope, outcome = execute("general completable", load_document("vee.json"))
        assert envelope.result["completable"] is False
        assert envelope.result["meet"] is None
        assert outcome.verdict is False

    def test_confluent_reports_complement(self, load_document: Loader) -> None:
        envelope, outcome = execute("general confluent", load_document("diamond.json"))
        result = envelope.result
        assert result["obstructions"] == ["g3"]
        assert result["church_rosser"] is False
        assert result["complement"]["kernel"] == [[["1", "g3"], ["-1", "g1"]]]
        assert outcome.verdict is False

    def test_confluent_refuses_non_completable(self, load_document: Loader) -> None:
        with pytest.raises(NotCompletableError):
            execute("general confluent", load_document("vee.json"))

    def test_derived_order_warns(self, load_document: Loader) -> None:
        document = load_document("diamond.json")
        del document["order"]
        envelope, _ = execute("general completable", document)
        assert "order derived from the projectors" in envelope.warnings
        assert envelope.result["completable"] is False

    def test_cyclic_projectors_refused(self, load_document: Loader) -> None:
        with pytest.raises(OrderCycleError):
            execute("general completable", load_document("opposite-projectors.json"))


class TestExecute:
    def test_every_command_registered(self) -> None:
        assert len(COMMANDS) == 16
        assert {"pres nf", "general confluent", "check"} <= set(COMMANDS)

    def test_unknown_command(self) -> None:
        with pytest.raises(ReductionError):
            execute("transpose", {})

    def test_digest_covers_options(self, load_document: Loader) -> None:
        document = load_document("pair.json")
        plain, _ = execute("normal-form", document, CommandOptions(vector="g4"))
        ranked, _ = execute(
            "normal-form", document, CommandOptions(vector="g4", strategy="priority:1")
        )
        again, _ = execute("normal-form", document, CommandOptions(vector="g4"))
        assert plain.inputs_digest == again.inputs_digest
        assert plain.inputs_digest != ranked.inputs_digest
