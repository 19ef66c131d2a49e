import cmath
import json
import math
from pathlib import Path

import pytest

import kmirror

DATA = Path(__file__).resolve().parents[2] / "data"
CP1 = DATA / "cp1.json"
CP2 = DATA / "cp2.json"
T0 = math.exp(-1)


def test_potential_text():
    assert kmirror.potential_text(CP1.read_text(), T0) == "e^{-z}+e^{z-1}"
    report = kmirror.run("potential", CP2)
    assert report["data"]["W"] == "e^{-z1}+e^{-z2}+e^{z1+z2-1}"


def test_polytope_as_dict():
    doc = json.loads(CP1.read_text())
    assert kmirror.run("potential", doc)["command"] == "potential"


def test_cp2_critical_values():
    values = kmirror.critical_values(CP2.read_text(), T0)
    assert len(values) == 3
    for k in range(3):
        expect = 3 * cmath.exp(-(1 + 2j * math.pi * k) / 3)
        assert min(abs(v - expect) for v in values) < 1e-9


def test_floer_ranks():
    report = kmirror.run("hf", CP1, points=["1/2", "1/4"])
    assert [r["rank"] for r in report["data"]["ranks"]] == [2, 0]


def test_mf_unit_column():
    report = kmirror.run("mf", CP1, points=["1/4"], alpha="1/3", degree=6)
    assert report["data"]["unit_column"]["e1"] == "(z-(1/4+1/3i))"


def test_check_and_injected_fault():
    assert kmirror.run("check", CP1, energy="2", arity=5, degree=6)["verdict"] == "pass"
    bad = kmirror.run("check", CP1, energy="2", arity=5, degree=6, inject_sign_error=True)
    assert bad["verdict"] == "fail"


def test_signs():
    assert kmirror.epsilon_sign([1, 1]) == -1
    assert kmirror.eta_sign([1, 1], [1, 1]) == -1
    assert kmirror.koszul_concentrated(2, 6)


def test_errors():
    with pytest.raises(kmirror.InputError):
        kmirror.run("mf", CP1, points=["3/2"])
    with pytest.raises(kmirror.InputError):
        kmirror.run("frobnicate", CP1)
    with pytest.raises(kmirror.InputError):
        kmirror.run("check", CP1, arity=1)
    assert kmirror.run("potential", CP1, energy="1/2")["verdict"] == "inconclusive"
