from fractions import Fraction

import pytest

import bochnerkit as bk


def test_constants_are_exact():
    assert bk.const_Cpq(3, 2, 1) == Fraction(7, 3)
    assert bk.const_Cpqk(3, 1, 1, 0) == 3
    assert bk.kato_D(3, 1, 1) == Fraction(25, 36)
    assert bk.kappa_max(2.0, 0.5, 0.0) == 2.0
    with pytest.raises(ValueError, match="vacuous stratum"):
        bk.const_Cpqk(3, 1, 1, 1)


def test_models_and_spectra():
    fs = bk.model("chsc", bk.Space(n=2), 4.0)
    assert fs.kahler
    assert fs.scalar_curvature() == pytest.approx(24.0)
    eig, leak = bk.spectrum(fs, "u")
    assert list(eig) == pytest.approx([2, 2, 2, 6])
    assert leak < 1e-12
    hp = bk.model("hpm", bk.Space(m=2))
    eig, _ = bk.spectrum(hp, "sp")
    assert len(eig) == 13


def test_operator_duality():
    rm = bk.random_curvature(bk.Space(d=6), 1)
    assert rm.norm_squared() == pytest.approx(4 * (rm.operator_matrix() ** 2).sum(), rel=1e-12)


def test_json_round_trip():
    fs = bk.model("chsc", bk.Space(n=2), 4.0)
    back = bk.CurvatureTensor.from_json(fs.to_json())
    assert back.kahler
    assert (back - fs).norm_squared() == 0.0


def test_verdicts():
    eig, _ = bk.spectrum(bk.model("chsc", bk.Space(n=2), 4.0), "u")
    v = bk.check_pq(eig, 2, 1, 0)
    assert v["conclusion"] == "vanishing"
    assert v["condition_value"] > 0
    assert bk.check_pq([0, 0, 0, 0], 2, 1, 0)["conclusion"] == "parallel"
    with pytest.raises(ValueError, match="malformed"):
        bk.check_pq([1, 0, 2, 3], 2, 1, 0)


def test_kahler_identity_and_suite():
    lhs, rhs, dev = bk.kahler_sharp_identity(bk.random_kahler_curvature(bk.Space(n=2), 3))
    assert dev < 1e-8
    report = bk.run_suite("bochner-tracefree", seed=1, samples=2)
    assert report["pass"]
    assert "wall_time" not in report
    assert "lemma213" in bk.suites


def test_bad_space():
    with pytest.raises(ValueError):
        bk.Space(n=2, m=2)
