from __future__ import annotations

import logging

import numpy as np
import pytest

import conic_heat.spectral.spectrum as spectrum_module
from conic_heat.core.errors import CertificationError
from conic_heat.model import flat_cone_eigenvalue
from conic_heat.profiles import CLOSED_SPINDLE, DIRICHLET_CAP, build_profile
from conic_heat.spectral import (
    Spectrum,
    SpectrumEntry,
    build_mode_operator,
    count_below,
    ROUNDING_LIMIT,
    eigenvalues,
    extrapolate,
    flat_cone_spectrum,
    full_spectrum,
    spectrum_from_csv,
    spectrum_to_csv,
    spindle_spectrum,
)


def test_sphere_oracle_multiplicities() -> None:
    spectrum = spindle_spectrum(1.0, 7.0)
    assert spectrum.topology == CLOSED_SPINDLE
    assert spectrum.count_below(1.0) == 1
    assert spectrum.count_below(2.5) == 4
    assert spectrum.count_below(7.0) == 9
    assert spectrum.area == pytest.approx(4.0 * np.pi)


def test_flat_cone_oracle_lowest_eigenvalue() -> None:
    spectrum = flat_cone_spectrum(1.0, 50.0)
    assert spectrum.topology == DIRICHLET_CAP
    assert spectrum.entries[0].lam == pytest.approx(flat_cone_eigenvalue(1.0, 0, 1), rel=1e-12)
    assert spectrum.entries[0].mult == 1
    assert spectrum.area == pytest.approx(np.pi)


def test_oracle_below_lowest_eigenvalue_is_empty() -> None:
    spectrum = flat_cone_spectrum(0.5, 1.0)
    assert spectrum.entries == ()
    assert spectrum.k_max == 0


@pytest.mark.parametrize("value", [0.0, 1.5])
def test_oracle_rejects_bad_slope(value: float) -> None:
    with pytest.raises(ValueError):
        spindle_spectrum(value, 10.0)
    with pytest.raises(ValueError):
        flat_cone_spectrum(value, 10.0)


def test_csv_rejects_wrong_columns() -> None:
    with pytest.raises(ValueError, match="columns"):
        spectrum_from_csv(
            "k,n,lam\n0,1,2.0\n", lambda_max=3.0, k_max=0, topology=CLOSED_SPINDLE, area=1.0
        )


def test_csv_payload_keeps_every_digit() -> None:
    entry = SpectrumEntry(lam=0.1 + 0.2, k=1, n=2, mult=2, err=1e-13)
    spectrum = Spectrum((entry,), lambda_max=1.0, k_max=1, topology=DIRICHLET_CAP, area=0.5)
    parsed = spectrum_from_csv(spectrum_to_csv(spectrum), **spectrum.metadata())
    assert parsed.entries == spectrum.entries


def test_content_hash_tracks_metadata() -> None:
    first = spindle_spectrum(1.0, 7.0)
    again = spindle_spectrum(1.0, 7.0)
    assert first.content_hash == again.content_hash
    wider = Spectrum(
        first.entries, lambda_max=8.0, k_max=first.k_max, topology=first.topology, area=first.area
    )
    assert wider.content_hash != first.content_hash


def test_pruefer_count_matches_flat_cone_oracle() -> None:
    op = build_mode_operator(build_profile("flat_cone", {"c": 0.5}), 1)
    expected = sum(1 for entry in flat_cone_spectrum(0.5, 500.0).entries if entry.k == 1)
    assert expected > 0
    assert count_below(op, 500.0) == expected


def test_pruefer_count_on_sphere_axis_mode() -> None:
    op = build_mode_operator(build_profile("sphere"), 0)
    assert count_below(op, 6.5) == 3
    assert count_below(op, 1.0) == 1


def test_eigenvalues_trivial_cases() -> None:
    op = build_mode_operator(build_profile("flat_cone", {"c": 0.5}), 0)
    assert eigenvalues(op, 0.0) == []
    assert eigenvalues(op, 1.0) == []
    with pytest.raises(ValueError):
        eigenvalues(op, 100.0, tol=1e-14)


def test_full_spectrum_rejects_bad_arguments() -> None:
    profile = build_profile("sphere")
    with pytest.raises(ValueError):
        full_spectrum(profile, 10.0, threads=0)
    with pytest.raises(ValueError):
        full_spectrum(profile, -1.0)


def test_potential_has_conic_leading_term() -> None:
    op = build_mode_operator(build_profile("flat_cone", {"c": 0.5}), 1)
    for r in (1e-3, 1e-4):
        assert r * r * op.potential_at(r) == pytest.approx(3.75, rel=1e-12)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_curved_tip_potential_leading_term(k: int) -> None:
    op = build_mode_operator(build_profile("curved_spindle", {"c": 0.6, "kappa": 0.4}), k)
    coarse = 1e-6 * op.potential_at(1e-3)
    fine = 1e-8 * op.potential_at(1e-4)
    leading = (10.0 * fine - coarse) / 9.0
    assert leading == pytest.approx((k / 0.6) ** 2 - 0.25, rel=1e-5), f"k={k}"


def test_potential_grows_with_mode() -> None:
    profile = build_profile("curved_spindle", {"c": 0.6, "kappa": 0.4})
    r = np.linspace(0.01, profile.R - 0.01, 200)
    base = build_mode_operator(profile, 0).potential(r)
    for k in (1, 2, 5):
        assert np.all(build_mode_operator(profile, k).potential(r) >= base), f"k={k}"


def test_extrapolate_removes_geometric_tail() -> None:
    i = np.arange(4.0)
    levels = np.column_stack([5.0 + 0.1 * 0.1**i, 7.0 - 0.2 * 0.3**i])
    values, errors = extrapolate(levels)
    np.testing.assert_allclose(values, [5.0, 7.0], rtol=1e-13)
    steps = np.abs(np.diff(levels, axis=0))[-1]
    assert np.all(errors >= steps)


def test_extrapolate_widens_bound_past_resolved_level() -> None:
    levels = np.array([[1.0], [1.0 + 1e-12], [1.0 - 1e-12], [1.0 + 2e-12]])
    values, errors = extrapolate(levels)
    assert values[0] == 1.0 + 1e-12
    assert errors[0] >= 1.9e-12


def test_extrapolate_needs_two_levels() -> None:
    with pytest.raises(ValueError):
        extrapolate(np.array([[1.0, 2.0]]))


def _growing_rounding(monkeypatch: pytest.MonkeyPatch, amplitude: float) -> None:
    def fake(op: object, n: int) -> np.ndarray:
        return np.array([2.0, 6.0, 50.0, 80.0]) + amplitude * n / 50.0

    monkeypatch.setattr(spectrum_module, "collocation_eigenvalues", fake)
    monkeypatch.setattr(spectrum_module, "count_below", lambda op, lam: 2)


def test_stalled_refinement_reports_rounding_error(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    _growing_rounding(monkeypatch, 1e-8)
    op = build_mode_operator(build_profile("sphere"), 1)
    with caplog.at_level(logging.WARNING, logger="conic_heat"):
        pairs = eigenvalues(op, 10.0, 1e-12)
    assert "stalled" in caplog.text
    assert [lam for lam, _ in pairs] == pytest.approx([2.0, 6.0], abs=1e-7)
    for lam, err in pairs:
        assert 1e-12 * lam < err <= ROUNDING_LIMIT * lam


def test_stall_above_rounding_limit_fails(monkeypatch: pytest.MonkeyPatch) -> None:
    _growing_rounding(monkeypatch, 1e-3)
    op = build_mode_operator(build_profile("sphere"), 1)
    with pytest.raises(CertificationError, match="stalled"):
        eigenvalues(op, 10.0, 1e-9)


def test_unexpected_mode_failure_becomes_certification_error(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    def broken(*args: object, **kwargs: object) -> list[tuple[float, float]]:
        raise RuntimeError("integrator state clobbered")

    monkeypatch.setattr(spectrum_module, "eigenvalues", broken)
    with pytest.raises(CertificationError, match="RuntimeError"):
        full_spectrum(build_profile("sphere"), 10.0)


def test_solver_is_thread_count_independent() -> None:
    profile = build_profile("sphere")
    serial = full_spectrum(profile, 21.0, threads=1)
    pooled = full_spectrum(profile, 21.0, threads=3)
    assert [(e.k, e.n) for e in serial.entries] == [(e.k, e.n) for e in pooled.entries]
    np.testing.assert_allclose(pooled.eigenvalues, serial.eigenvalues, rtol=1e-12, atol=1e-12)
    oracle = spindle_spectrum(1.0, 21.0)
    assert serial.count_below(21.0) == oracle.count_below(21.0) == 25
    np.testing.assert_allclose(serial.eigenvalues, oracle.eigenvalues, rtol=1e-7, atol=1e-9)


def test_first_eigenvalue_grows_with_mode() -> None:
    spectrum = full_spectrum(build_profile("spindle", {"beta": 0.5}), 40.0, threads=2)
    first = {}
    for entry in spectrum.entries:
        first.setdefault(entry.k, entry.lam)
    ordered = [first[k] for k in sorted(first)]
    assert len(ordered) >= 2
    assert all(a < b for a, b in zip(ordered, ordered[1:]))


@pytest.mark.slow
@pytest.mark.parametrize("c", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("k", range(9))
def test_mode_eigenvalues_match_bessel_zeros(c: float, k: int) -> None:
    op = build_mode_operator(build_profile("flat_cone", {"c": c}), k)
    solved = [lam for lam, _ in eigenvalues(op, 400.0, 1e-10)]
    expected = [entry.lam for entry in flat_cone_spectrum(c, 400.0).entries if entry.k == k]
    assert len(solved) == len(expected), f"c={c}, k={k}"
    np.testing.assert_allclose(solved[:15], expected[:15], rtol=1e-7)


@pytest.mark.slow
def test_sphere_spectrum_matches_legendre_degrees() -> None:
    solved = full_spectrum(build_profile("sphere"), 60.0, threads=2)
    oracle = spindle_spectrum(1.0, 60.0)
    assert solved.count_below(60.0) == oracle.count_below(60.0) == 64
    np.testing.assert_allclose(solved.eigenvalues, oracle.eigenvalues, rtol=1e-7, atol=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("key", "params", "beta"), [("sphere", {}, 1.0), ("spindle", {"beta": 0.5}, 0.5)]
)
def test_solver_matches_closed_form_spectrum(
    key: str, params: dict[str, float], beta: float
) -> None:
    solved = full_spectrum(build_profile(key, params), 1000.0, threads=4)
    oracle = spindle_spectrum(beta, 1000.0)
    assert solved.count_below(1000.0) == oracle.count_below(1000.0)
    np.testing.assert_allclose(solved.eigenvalues, oracle.eigenvalues, rtol=1e-7, atol=1e-9)
    assert np.all(np.abs(solved.eigenvalues - oracle.eigenvalues) <= 10.0 * solved.errors + 1e-9)
