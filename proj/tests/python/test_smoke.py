import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import conecert

DATA = Path(os.environ.get("CONECERT_DATA_DIR", Path(__file__).resolve().parents[2] / "data" / "problems"))


def test_fibonacci_is_certified_and_verifies():
    v = conecert.prove(DATA / "fibonacci.json")
    assert v.positive
    accepted, report = conecert.verify(DATA / "fibonacci.json", v.certificate)
    assert accepted, report
    assert json.loads(v.certificate)["format"] == "conecert-certificate/1"


def test_tampered_certificate_is_rejected():
    v = conecert.prove(DATA / "sqrt2_example.json")
    cert = json.loads(v.certificate)
    cert["epsilon"] = "1/3"
    accepted, _ = conecert.verify(DATA / "sqrt2_example.json", json.dumps(cert))
    assert not accepted
    accepted, report = conecert.verify(DATA / "sqrt2_example.json", "not json")
    assert not accepted and "malformed" in report


def test_negative_witness():
    v = conecert.prove({"coefficients": [[-2], [3], [1]], "initial": ["99", "98"]})
    assert v.outcome == "not positive"
    assert (v.witness_index, v.witness_value) == (7, Fraction(-28))


def test_unroll_is_exact():
    assert conecert.unroll(DATA / "fibonacci.json", 8) == [0, 1, 1, 2, 3, 5, 8, 13]
    terms = conecert.unroll(DATA / "sqrt2_example.json", 3)
    assert terms[:2] == [Fraction(1, 64), Fraction(11, 768)]


def test_tie_is_inconclusive():
    problem = {"coefficients": [[1], [0], [1]], "initial": ["1", "1"], "options": {"max_unroll": 100}}
    v = conecert.prove(problem)
    assert v.outcome == "inconclusive"
    assert "tie" in v.reason


def test_spectrum_reports_field_and_conditions():
    text = conecert.spectrum(DATA / "sqrt2_example.json")
    assert "a^2 - 2 = 0" in text
    assert "distinct limits: false" in text


def test_invalid_problem_raises():
    with pytest.raises(ValueError):
        conecert.prove({"coefficients": [[1], [-1, 1]], "initial": ["1"]})
    with pytest.raises(conecert.InputError):
        conecert.unroll({"order": 3, "coefficients": [[1], [1]], "initial": ["1"]}, 3)
