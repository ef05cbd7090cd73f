import dataclasses

import pytest

from gratingpaths import cli, core, verify


@pytest.fixture
def perturbed_hbar_c(monkeypatch):
    bad = dataclasses.replace(core.CODATA, hbar_c_ev_nm=core.CODATA.hbar_c_ev_nm * 1.001)
    monkeypatch.setattr(core, "CODATA", bad)


@pytest.mark.parametrize("suite", verify.SUITES)
def test_each_suite_passes(suite):
    checks = verify.run_verify(suite)
    assert checks
    assert all(c.suite == suite for c in checks)
    failed = [c.line() for c in checks if not c.passed]
    assert not failed


def test_all_runs_every_suite_in_order():
    suites = [c.suite for c in verify.run_verify("all")]
    assert list(dict.fromkeys(suites)) == list(verify.SUITES)


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_verify("nonsense")


def test_electron_suite_has_quadrature_comparison():
    names = [c.name for c in verify.run_verify("electron_grating")]
    assert "pair_overlap_vs_quadrature" in names


def test_check_line_format():
    check = verify.Check("core", "x", 1e-13, 1e-12)
    assert check.passed
    assert check.line() == "PASS core.x: error 1.000e-13 <= 1.0e-12"
    assert verify.Check("core", "x", 1.0, 1e-12).line().startswith("FAIL")


def test_nan_measurement_fails():
    assert not verify.Check("core", "x", float("nan"), 1.0).passed


def test_hbar_c_perturbation_caught(perturbed_hbar_c):
    checks = {f"{c.suite}.{c.name}": c for c in verify.run_verify("photon_grating")}
    assert not checks["photon_grating.pitch_golden"].passed


def test_hbar_c_perturbation_exit_code(perturbed_hbar_c, capsys):
    assert cli.main(["verify"]) == cli.EXIT_VERIFY
    assert "FAIL photon_grating.pitch_golden" in capsys.readouterr().out
