import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from rieszbounds import special
from rieszbounds.errors import DomainError, NumericalError


def test_gamma_anchors():
    assert special.gamma_fn(1.0) == 1.0
    assert special.gamma_fn(5.0) == 24.0
    assert abs(special.gamma_fn(0.5) - math.sqrt(math.pi)) < 1e-16
    with mp.workdps(30):
        want = float(mp.gamma(13.7))
    assert abs(special.gamma_fn(13.7) - want) < 1e-12 * want


def test_lambda_d_values():
    # lambda_2 = 2 exactly; the others from sqrt(pi) Gamma(d/2)/Gamma((d+1)/2)
    assert abs(special.lambda_d(2) - 2.0) < 1e-15
    assert abs(special.lambda_d(1) - math.pi) < 1e-15
    assert abs(special.lambda_d(4) - 4.0 / 3.0) < 1e-15
    assert special.lambda_d(24) > 0.0
    with pytest.raises(DomainError):
        special.lambda_d(0)


def test_sphere_area_and_ball_volume():
    assert abs(special.unit_sphere_area(1) - 2.0 * math.pi) < 1e-14
    assert abs(special.unit_sphere_area(2) - 4.0 * math.pi) < 1e-14
    assert abs(special.unit_sphere_area(3) - 2.0 * math.pi**2) < 1e-13
    assert abs(special.ball_volume(2, 1.0) - math.pi) < 1e-15
    assert abs(special.ball_volume(3, 2.0) - 32.0 * math.pi / 3.0) < 1e-13
    assert abs(special.ball_volume(1, 0.5) - 1.0) < 1e-15


@given(st.floats(min_value=0.01, max_value=3.0), st.floats(min_value=1.001, max_value=2.0))
@settings(max_examples=40, deadline=None)
def test_ball_volume_monotone_in_radius(r, factor):
    assert special.ball_volume(3, r * factor) > special.ball_volume(3, r)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.0, 6.5, 12.0])
def test_bessel_j_matches_mpmath(nu):
    with mp.workdps(30):
        for x in (0.1, 1.0, 5.0, 10.0, 40.0, 120.0):
            want = float(mp.besselj(nu, x))
            got = special.bessel_j(nu, x)
            assert abs(got - want) < 1e-12 * max(1.0, abs(want)), (nu, x, got, want)


def test_bessel_j_at_zero_argument():
    assert special.bessel_j(0.0, 0.0) == 1.0
    assert special.bessel_j(2.0, 0.0) == 0.0


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.0, 6.5, 12.0])
def test_bessel_zeros_against_bisection(nu):
    table = special.bessel_zeros(nu, 10)
    want = oracles.bessel_zero_bisect(nu, 10)
    for got, ref in zip(table.zeros, want):
        assert abs(got - ref) < 1e-12 * ref


def test_half_order_zeros_are_multiples_of_pi():
    table = special.bessel_zeros(0.5, 8)
    for i, z in enumerate(table.zeros, start=1):
        assert abs(z - i * math.pi) < 1e-12 * i


def test_bessel_zeros_table_certification():
    table = special.bessel_zeros(3.0, 6)
    assert table.certified_count == 6
    assert len(table) == 6
    assert table[0] == table.zeros[0]


def test_bessel_zeros_domain_errors():
    with pytest.raises(DomainError):
        special.bessel_zeros(-1.0, 5)
    with pytest.raises(DomainError):
        special.bessel_zeros(1.0, 0)


def test_zero_table_save_load_validate(tmp_path):
    table = special.bessel_zeros(2.0, 7)
    path = str(tmp_path / "z2.txt")
    table.save(path)
    loaded = special.BesselZeroTable.load(path)
    assert loaded.certified_count == 0  # trust nothing read from disk
    assert loaded.zeros == table.zeros
    assert loaded.validate().certified_count == 7
    corrupt = special.BesselZeroTable(2.0, table.zeros[:3] + (table.zeros[3] + 0.5,))
    with pytest.raises(NumericalError):
        corrupt.validate()


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("RIESZBOUNDS_CACHE", str(tmp_path))
    monkeypatch.setattr(special, "_zero_cache", {})
    monkeypatch.setattr(special, "_zero_checked", {})
    first = special.bessel_zeros(4.5, 6)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and "nu4.5" in files[0].name
    # wipe the in-process memo so the file is the only source
    monkeypatch.setattr(special, "_zero_cache", {})
    monkeypatch.setattr(special, "_zero_checked", {})
    second = special.bessel_zeros(4.5, 6)
    assert second.zeros == first.zeros
    assert second.certified_count == 6


def test_zero_spacing_approaches_pi():
    table = special.bessel_zeros(2.0, 30)
    gaps = [b - a for a, b in zip(table.zeros, table.zeros[1:])]
    assert abs(gaps[-1] - math.pi) < abs(gaps[0] - math.pi)
    assert abs(gaps[-1] - math.pi) < 5e-3


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0, 6.0, 12.0])
@pytest.mark.parametrize("a", [100.0, 250.5, 1000.0])
def test_hurwitz_zeta_matches_mpmath(s, a):
    want = oracles.hurwitz_mp(s, a)
    got = special.hurwitz_zeta(s, a)
    assert abs(got - want) < 1e-13 * abs(want), (s, a, got, want)


def test_hurwitz_zeta_domain_errors():
    with pytest.raises(DomainError):
        special.hurwitz_zeta(1.0, 10.0)
    with pytest.raises(DomainError):
        special.hurwitz_zeta(2.0, 0.0)
