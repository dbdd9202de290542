import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primelab import (ResidueClass, StepCounter, WindowSource, bt_check_ap,
                      bt_check_field, cramer_window_scan, delta, delta_K,
                      delta_series, euler_phi, inertia_scan, mean_square,
                      mean_square_sampled, meansq_ratio, preset)
from primelab.sieve import EVERYTHING

from conftest import is_prime_trial


def synthetic_source(positions, weights, drift, span, label="synthetic"):
    positions = np.asarray(positions, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    psi = StepCounter.from_events(positions, weights)
    return WindowSource(psi=psi, pi=psi, drift=drift, span=span, label=label)


# --- euler phi ----------------------------------------------------------

def test_euler_phi_values():
    assert [euler_phi(q) for q in (1, 2, 4, 12, 97)] == [1, 1, 2, 4, 96]
    with pytest.raises(ValueError):
        euler_phi(0)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(1, 300), b=st.integers(1, 300))
def test_euler_phi_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert euler_phi(a * b) == euler_phi(a) * euler_phi(b)


def test_euler_phi_counts_units():
    for q in range(1, 60):
        assert euler_phi(q) == sum(math.gcd(a, q) == 1 for a in range(1, q + 1))


# --- delta --------------------------------------------------------------

def test_delta_spec_values():
    # psi(110) - psi(100) - 10 over all residues
    val = delta(100, 10, EVERYTHING)
    expect = math.fsum(math.log(p) for p in (101, 103, 107, 109)) - 10
    assert val == pytest.approx(expect, rel=1e-13)
    assert delta_K(preset("Q(i)"), 20, 5) == pytest.approx(
        2 * math.log(5) - 5, rel=1e-13)


def test_delta_series_matches_direct_probes():
    X, h = 1000, 50
    for target in (EVERYTHING, ResidueClass(4, 1), preset("Q(i)")):
        series = delta_series(X, h, target)
        rng = np.random.default_rng(3)
        xs = np.sort(rng.uniform(X, 2 * X, 300))
        if isinstance(target, ResidueClass):
            direct = [delta(float(x), h, target) for x in xs]
        else:
            direct = [delta_K(target, float(x), h) for x in xs]
        assert np.max(np.abs(series.value_at(xs) - np.array(direct))) < 1e-9


def test_delta_series_right_continuous():
    series = delta_series(100, 10, EVERYTHING)
    bp = series.breakpoints
    # value at a breakpoint equals the value just above it
    for b in bp[:20]:
        assert series.value_at(float(b)) \
            == series.value_at(float(b) + 1e-9)
    assert series.piece_lengths().sum() == pytest.approx(100.0)


# --- mean square --------------------------------------------------------

def test_mean_square_validation():
    with pytest.raises(ValueError):
        mean_square(100, 1, EVERYTHING)
    with pytest.raises(ValueError):
        mean_square(100, 200, EVERYTHING)


def test_mean_square_synthetic_box():
    """One event of weight w in [X, 2X] with zero drift: Delta is w on
    [n - h, n) ... value checked analytically."""
    src = synthetic_source([150.0], [2.0], drift=0.0, span=400.0)
    # Delta = 2 on [150 - 20, 150), zero elsewhere in [100, 200]
    assert mean_square(100, 20, src) == pytest.approx(4.0 * 20.0)


def test_mean_square_constant_drift_only():
    src = synthetic_source([], [], drift=0.5, span=400.0)
    # Delta = -h * 0.5 everywhere
    assert mean_square(100, 10, src) == pytest.approx(25.0 * 100.0)


def test_mean_square_matches_sampled_oracle():
    for target in (EVERYTHING, ResidueClass(3, 1), preset("Q(i)")):
        for h in (5.0, 17.0):
            exact = mean_square(500, h, target)
            sampled = mean_square_sampled(500, h, target, step=1e-2)
            assert sampled == pytest.approx(exact, rel=2e-4), (target, h)


def test_mean_square_rational_field_equals_trivial_class():
    assert mean_square(300, 12, preset("Q")) \
        == pytest.approx(mean_square(300, 12, EVERYTHING), rel=1e-12)


def test_meansq_ratio_report():
    rep = meansq_ratio(1000, 30, ResidueClass(4, 1))
    assert rep.verdict == "report-only"
    assert rep.bound == pytest.approx(30 * 1000 * math.log(4000) ** 2)
    assert rep.ratio == pytest.approx(rep.metric / rep.bound)
    assert meansq_ratio(1000, 30, ResidueClass(4, 1),
                        ceiling=10.0).verdict == "pass"
    assert meansq_ratio(1000, 30, ResidueClass(4, 1),
                        ceiling=1e-12).verdict == "fail"


# --- inertia ------------------------------------------------------------

def gap_fixture(X=10**4, h=200.0):
    """Unit-weight events at integer spacing 1/drift, with a gap of
    length 2h cut around 1.5 X: inside the gap Delta drops to -h*drift
    and must exceed any quarter-drift threshold."""
    drift = 1.0
    positions = np.arange(2, int(2.5 * X), dtype=np.float64)
    gap_lo, gap_hi = 1.5 * X, 1.5 * X + 2 * h
    keep = (positions < gap_lo) | (positions >= gap_hi)
    positions = positions[keep]
    weights = np.full(len(positions), drift)
    return synthetic_source(positions, weights, drift, 2.5 * X,
                            label="gap-fixture"), gap_lo, gap_hi


def test_inertia_gap_detected():
    src, gap_lo, gap_hi = gap_fixture()
    h = 200.0
    report = inertia_scan(10**4, h, src)
    assert not report.is_empty
    assert report.threshold == pytest.approx(h / 4)
    # some exceedance interval covers the middle of the gap
    mid = 0.5 * (gap_lo + gap_hi) - h / 2
    assert any(lo <= mid <= hi for lo, hi in report.exceedance_intervals)
    # persistence: |Delta| > h/8 on a radius >= h/8 around the worst point
    radii = [r for _, r in report.persistence]
    assert max(radii) >= h / 8
    assert report.persistence_level == pytest.approx(h / 8)


def test_inertia_persistence_is_honest():
    """The reported radius must be certified by the series itself."""
    src, _, _ = gap_fixture()
    report = inertia_scan(10**4, 200.0, src)
    for x_bar, radius in report.persistence:
        for probe in np.linspace(x_bar - radius * 0.999,
                                 x_bar + radius * 0.999, 11):
            assert abs(report.series.value_at(float(probe))) \
                > report.persistence_level


def test_inertia_empty_for_smooth_fixture():
    src = synthetic_source(np.arange(2, 25000, dtype=np.float64),
                           np.ones(24998), 1.0, 25000.0)
    report = inertia_scan(10**4, 200.0, src)
    assert report.is_empty
    assert report.persistence == []


def test_inertia_range_warning(caplog):
    import logging
    src = synthetic_source(np.arange(2, 2600, dtype=np.float64),
                           np.ones(2598), 1.0, 2600.0)
    with caplog.at_level(logging.WARNING, logger="primelab.intervals"):
        inertia_scan(1000, 1.5, src)
    assert "range condition" in caplog.text


# --- Brun-Titchmarsh ----------------------------------------------------

def test_bt_ap_spec_example():
    rep = bt_check_ap(10**4, 400, ResidueClass(4, 1))
    assert rep.verdict == "pass"
    expect = sum(1 for n in range(10001, 10401)
                 if n % 4 == 1 and is_prime_trial(n))
    assert rep.metric == expect
    assert rep.bound == pytest.approx(2 * 400 / (2 * math.log(100)))


def test_bt_ap_counts_match_trial_division():
    rep = bt_check_ap(1000, 120, ResidueClass(3, 2))
    expect = sum(1 for n in range(1001, 1121)
                 if n % 3 == 2 and is_prime_trial(n))
    assert rep.metric == expect


def test_bt_ap_validation():
    with pytest.raises(ValueError, match="h > q"):
        bt_check_ap(1000, 4, ResidueClass(4, 1))
    with pytest.raises(ValueError, match="gcd"):
        bt_check_ap(1000, 100, ResidueClass(4, 2))


def test_bt_field_spec_example():
    rep = bt_check_field(preset("Q(i)"), 10**4, 400)
    assert rep.verdict == "pass"
    assert rep.bound == pytest.approx(8 * 400 / math.log(400))
    with pytest.raises(ValueError):
        bt_check_field(preset("Q(i)"), 100, 200)


# --- Cramer scans -------------------------------------------------------

def test_cramer_scan_trivial_class():
    res = cramer_window_scan(10**3, 10**4, 4.0, EVERYTHING)
    assert res.verdict == "pass"
    assert all(count >= 1 for _, _, count, _ in res.windows)
    assert res.c2_empirical > 0.25
    assert 0 < res.c1_empirical < 4.0
    # window law: h = 4 sqrt(x) log x for q = 1
    x, h, _, _ = res.windows[0]
    assert h == pytest.approx(4 * math.sqrt(x) * math.log(x))


def test_cramer_scan_gaussian_field():
    res = cramer_window_scan(10**3, 10**4, 4.0, preset("Q(i)"))
    assert res.verdict == "pass"
    x, h, _, _ = res.windows[0]
    expect = 4 * (2 * math.log(x) + math.log(4)) * math.sqrt(x)
    assert h == pytest.approx(expect)


def test_cramer_scan_workers_agree():
    a = cramer_window_scan(10**3, 10**4, 4.0, ResidueClass(4, 1))
    b = cramer_window_scan(10**3, 10**4, 4.0, ResidueClass(4, 1), workers=4)
    assert a.verdict == b.verdict == "pass"
    assert a.c1_empirical == pytest.approx(b.c1_empirical)
    # worker chunks restart the stride at each boundary, so only compare
    # the summary statistics
    assert b.c2_empirical > 0


def test_cramer_scan_counts_against_oracle():
    res = cramer_window_scan(2000, 3000, 4.0, EVERYTHING)
    for x, h, count, _ in res.windows:
        expect = sum(1 for n in range(int(math.floor(x)) + 1,
                                      int(math.floor(x + h)) + 1)
                     if n > x and n <= x + h and is_prime_trial(n))
        assert count == expect


def test_cramer_scan_requires_unit_class():
    with pytest.raises(ValueError):
        cramer_window_scan(10**3, 10**4, 4.0, ResidueClass(4, 2))


def test_cramer_window_reports_shape():
    res = cramer_window_scan(10**3, 2 * 10**3, 4.0, EVERYTHING)
    rows = res.window_reports()
    assert len(rows) == len(res.windows)
    assert all(r.experiment == "cramer_window" for r in rows)
    summary = res.summary_report()
    assert summary.metric == res.c2_empirical
    assert summary.verdict == "pass"
