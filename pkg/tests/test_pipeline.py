import json

import pytest

from lamination import golden
from lamination.bratteli import BratteliDiagram
from lamination.errors import (
    InvalidConfig,
    InvalidSingularityData,
    NotContracted,
    NotErgodic,
    NotUnimodular,
    RankMismatch,
)
from lamination.pipeline import RunConfig, build_lamination_report
from lamination.schemas import validate_report
from lamination.surface import SingularityData

AB = RunConfig(labels=("a", "b"))


@pytest.fixture(scope="module")
def report():
    return build_lamination_report(golden.diagram(), golden.delta(), AB)


def test_golden_report(report):
    inv = report.invariants
    assert (inv["genus"], inv["components"], inv["intervals"]) == (1, 1, 2)
    assert abs(report.induction["theta"]["value"] - 0.6180339887) < 1e-10
    assert report.code["text"].startswith("baabaababa")
    assert report.code["length"] == 1000
    assert report.passed
    names = {c.name for c in report.theorem_checks}
    assert {
        "components m = r - 2g + 1",
        "singularity data echoed",
        "sum k_i = 2g - 2",
        "frequencies ≈ λ",
    } <= names
    assert report.ergodicity["verdict"] == "StrictlyErgodic"
    assert report.permutation["one_line"] == [2, 1]
    assert report.disclaimer and report.limitations


def test_report_deterministic(report):
    again = build_lamination_report(golden.diagram(), golden.delta(), AB)
    assert again.to_json() == report.to_json()
    assert again.to_text() == report.to_text()


def test_report_schema_round_trip(report):
    doc = json.loads(report.to_json())
    validate_report(doc)
    assert json.loads(json.dumps(doc)) == doc
    assert doc == json.loads(json.dumps(report.to_dict()))


def test_default_labels_and_no_code():
    r = build_lamination_report(golden.diagram(), golden.delta(), RunConfig(code_length=0))
    assert r.code is None
    assert r.precode["text"] == "c_2,c_1,c_1,c_1,c_1,c_1,c_1,c_1,c_1,c_1"
    validate_report(json.loads(r.to_json()))


@pytest.mark.parametrize(
    "diagram, delta, error, stage",
    [
        (golden.diagram(), SingularityData((1, 1)), RankMismatch, "rank"),
        (
            BratteliDiagram.stationary(((1, 1, 0), (0, 1, 1), (1, 0, 1))),
            SingularityData((1,)),
            InvalidSingularityData,
            "surface",
        ),
        (BratteliDiagram.stationary(((2, 1), (1, 2))), SingularityData((0,)), NotUnimodular, "unimodular"),
        (BratteliDiagram.stationary(((1, 1), (0, 1))), SingularityData((0,)), NotErgodic, "ergodicity"),
    ],
)
def test_stage_errors(diagram, delta, error, stage):
    with pytest.raises(error) as err:
        build_lamination_report(diagram, delta, RunConfig())
    assert err.value.stage == stage
    assert err.value.to_dict()["stage"] == stage


def test_shallow_induction_fails():
    with pytest.raises(NotContracted) as err:
        build_lamination_report(golden.diagram(), golden.delta(), RunConfig(depth=1))
    assert err.value.stage == "induction"


def test_wrong_label_count():
    with pytest.raises(InvalidConfig) as err:
        build_lamination_report(golden.diagram(), golden.delta(), RunConfig(labels=("a",)))
    assert err.value.stage == "labels"


@pytest.mark.parametrize(
    "kwargs", [dict(depth=0), dict(tol=0), dict(code_length=-1), dict(output_format="xml")]
)
def test_config_validation(kwargs):
    with pytest.raises(InvalidConfig):
        RunConfig(**kwargs)


def test_rank3_report():
    d = BratteliDiagram.stationary(((2, 1, 0), (1, 1, 1), (0, 1, 1)))
    r = build_lamination_report(d, SingularityData((0, 0)), RunConfig(depth=128, code_length=200))
    assert (r.invariants["genus"], r.invariants["components"]) == (1, 2)
    assert r.check("components m = r - 2g + 1").passed
    assert r.check("code = itinerary of theta").passed
    assert r.code["text"].count(",") == 199
