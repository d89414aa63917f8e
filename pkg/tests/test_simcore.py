"""Platform simulator: billing, cold starts, autoscaling, breakeven."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from faasim import catalog as cat
from faasim import simcore as sim
from faasim import workloads as wl
from faasim.money import usd


@pytest.fixture(scope="module")
def fn_spec():
    return cat.load_default_catalog().compute_service("serverless")


@pytest.fixture(scope="module")
def vm_spec():
    return cat.load_default_catalog().compute_service("serverful")


def platform(fn_spec, cold=(0.0, 0.0, 0.0), keep_alive=600.0, prestarted=0):
    return sim.PlatformConfig(
        compute=fn_spec,
        cold_start=sim.ColdStartModel(*cold),
        keep_alive_s=keep_alive,
        warm_pool_prestarted=prestarted,
    )


def trace(*pairs, memory=0.125):
    return wl.InvocationTrace(entries=tuple(wl.Invocation(a, d, memory) for a, d in pairs))


def max_overlap(entries):
    """Sweep-line oracle: most intervals [arrival, arrival+duration) alive."""
    events = []
    for inv in entries:
        events.append((inv.arrival_s, 1))
        events.append((inv.arrival_s + inv.duration_s, -1))
    events.sort(key=lambda e: (e[0], e[1]))  # departures before arrivals at ties
    alive = peak = 0
    for _, delta in events:
        alive += delta
        peak = max(peak, alive)
    return peak


# --- billing -----------------------------------------------------------------


def test_billing_table_values(fn_spec):
    assert sim.bill_invocation(0.1, 0.125, fn_spec) == usd("2e-7")
    assert sim.bill_invocation(0.25, 0.125, fn_spec) == usd("6e-7")  # 3 units
    assert sim.billed_units(0.25, fn_spec) == 3


def test_billing_rejects_over_limit(fn_spec):
    with pytest.raises(sim.BillingError, match="limit"):
        sim.bill_invocation(901, 0.125, fn_spec)
    assert sim.bill_invocation(900, 0.125, fn_spec) == 9000 * usd("2e-7")


def test_billing_rejects_memory_out_of_range(fn_spec):
    with pytest.raises(sim.BillingError, match="memory"):
        sim.bill_invocation(1, 0.05, fn_spec)
    with pytest.raises(sim.BillingError, match="memory"):
        sim.bill_invocation(1, 4.0, fn_spec)


def test_billing_memory_scaling(fn_spec):
    assert sim.bill_invocation(0.1, 0.25, fn_spec) == 2 * usd("2e-7")
    assert sim.bill_invocation(0.1, 3.0, fn_spec) == 24 * usd("2e-7")


def test_billing_ceil_against_integer_oracle(fn_spec):
    """1,000 pseudo-random durations vs pure integer-ms arithmetic."""
    rng = wl.SplitMix64(2024)
    unit_ms = 100
    for _ in range(1000):
        duration_ms = 1 + rng.next_u64() % 900_000
        expected_units = (duration_ms + unit_ms - 1) // unit_ms
        duration_s = duration_ms / 1000.0
        assert sim.billed_units(duration_s, fn_spec) == expected_units


@given(st.integers(min_value=1, max_value=900_000), st.integers(min_value=0, max_value=9_000))
def test_billing_monotone(fn_spec, duration_ms, bump_ms):
    shorter = sim.billed_units(duration_ms / 1000.0, fn_spec)
    longer = sim.billed_units((duration_ms + bump_ms) / 1000.0, fn_spec)
    assert longer >= shorter


# --- simulation --------------------------------------------------------------


def test_empty_trace_scales_to_zero(fn_spec):
    result = sim.simulate(trace(), platform(fn_spec))
    assert result.cost_usd == 0
    assert result.instances_created == 0
    assert result.peak_concurrency == 0
    assert result.instance_seconds_running == 0


def test_cold_then_warm_reuse(fn_spec):
    # Cold start 0.5 + 10 + 2 = 12.5 s; the instance frees at t = 14.5,
    # a second call one second later reuses it warm at zero latency.
    result = sim.simulate(
        trace((0.0, 2.0), (15.5, 2.0)),
        platform(fn_spec, cold=(0.5, 10.0, 2.0)),
    )
    first, second = result.invocations
    assert first.start_latency_s == 12.5 and first.cold
    assert second.start_latency_s == 0.0 and not second.cold
    assert result.instances_created == 1
    assert result.cold_starts == 1


def test_simultaneous_arrivals_need_two_instances(fn_spec):
    result = sim.simulate(trace((0.0, 1.0), (0.0, 1.0)), platform(fn_spec, cold=(0.5, 0, 0)))
    assert result.cold_starts == 2
    assert result.peak_concurrency == 2
    assert result.instances_created == 2


def test_prestarted_environment_skips_to_app_init(fn_spec):
    result = sim.simulate(
        trace((0.0, 1.0), (0.0, 1.0)),
        platform(fn_spec, cold=(0.5, 10.0, 2.0), prestarted=1),
    )
    latencies = sorted(i.start_latency_s for i in result.invocations)
    assert latencies == [2.0, 12.5]


def test_rejected_invocations_reported(fn_spec):
    result = sim.simulate(trace((0.0, 901.0), (1.0, 1.0)), platform(fn_spec))
    assert len(result.rejected) == 1
    assert result.rejected[0].index == 0
    assert "max run time" in result.rejected[0].reason
    assert len(result.invocations) == 1


def test_retirement_at_arrival_instant_wins(fn_spec):
    # keep-alive 5: instance idles at t=1, retires at t=6; an arrival at
    # exactly t=6 must provision a fresh instance.
    result = sim.simulate(trace((0.0, 1.0), (6.0, 1.0)), platform(fn_spec, keep_alive=5.0))
    assert result.cold_starts == 2
    # one tick earlier the warm instance is still there
    result = sim.simulate(trace((0.0, 1.0), (5.9, 1.0)), platform(fn_spec, keep_alive=5.0))
    assert result.cold_starts == 1


def test_completion_at_arrival_instant_allows_reuse(fn_spec):
    result = sim.simulate(trace((0.0, 1.0), (1.0, 1.0)), platform(fn_spec))
    assert result.cold_starts == 1
    assert result.invocations[1].start_latency_s == 0.0


def test_determinism_byte_identical(fn_spec):
    poisson = wl.poisson_trace(60, 2.0, 0.4, seed=11)
    config = platform(fn_spec, cold=(0.5, 1.0, 0.25), keep_alive=2.0)
    first = sim.simulate(poisson, config)
    second = sim.simulate(poisson, config)
    assert first.to_json() == second.to_json()


def test_conservation_and_utilization(fn_spec):
    poisson = wl.poisson_trace(40, 1.5, 0.7, seed=5)
    result = sim.simulate(poisson, platform(fn_spec, cold=(0.3, 0.2, 0.1), keep_alive=3.0))
    assert sum(i.billed_units for i in result.invocations) == result.billed_units
    assert sum((i.cost_usd for i in result.invocations), Fraction(0)) == result.cost_usd
    assert result.busy_seconds <= result.instance_seconds_running + 1e-9
    assert 0.0 <= result.utilization <= 1.0


def test_cost_identity_uniform_memory(fn_spec):
    entries = trace((0.0, 0.35), (1.0, 0.2), (2.5, 1.0), memory=0.25)
    result = sim.simulate(entries, platform(fn_spec))
    scaling = Fraction(1, 4) / fn_spec.base_memory_gib
    expected = result.billed_units * fn_spec.price_usd_per_unit * scaling
    expected += len(result.invocations) * fn_spec.request_fee_usd
    assert result.cost_usd == expected


@pytest.mark.parametrize("seed", range(100))
def test_peak_concurrency_matches_overlap_oracle(fn_spec, seed):
    poisson = wl.poisson_trace(30, 4.0, 0.5, seed=seed)
    result = sim.simulate(poisson, platform(fn_spec, cold=(0, 0, 0), keep_alive=1.0))
    assert result.peak_concurrency == max_overlap(poisson.entries)


def test_keep_alive_monotone_cold_starts(fn_spec):
    for seed in range(20):
        poisson = wl.poisson_trace(40, 1.0, 0.3, seed=seed)
        cold_counts = [
            sim.simulate(poisson, platform(fn_spec, cold=(0.5, 0.5, 0), keep_alive=ka)).cold_starts
            for ka in (0.0, 0.5, 1.0, 5.0, 50.0)
        ]
        assert cold_counts == sorted(cold_counts, reverse=True)


def test_warm_reuse_requires_matching_memory(fn_spec):
    entries = wl.InvocationTrace(entries=(
        wl.Invocation(0.0, 1.0, 0.125),
        wl.Invocation(2.0, 1.0, 0.25),
    ))
    result = sim.simulate(entries, platform(fn_spec, cold=(0.5, 0, 0)))
    assert result.cold_starts == 2


# --- serverful + breakeven ----------------------------------------------------


def test_serverful_cost_examples(vm_spec):
    hour = sim.serverful_cost(3600, vm_spec)
    assert hour == 60 * usd("0.0000867")
    assert float(hour) == pytest.approx(0.0052, abs=5e-5)
    assert sim.serverful_cost(0, vm_spec) == 0
    assert sim.serverful_cost(90, vm_spec) == 2 * usd("0.0000867")


def test_breakeven_duty_cycle():
    duty = sim.breakeven_duty_cycle(7.5)
    assert duty == Fraction(2, 15)
    assert abs(float(duty) - 0.1333) < 1e-3
    assert sim.breakeven_duty_cycle(1) == 1
    with pytest.raises(ValueError):
        sim.breakeven_duty_cycle(0)


def test_breakeven_simulation_cross_check(vm_spec):
    ratio = usd(sim.FALLACY_COST_RATIO)
    fn_price = ratio * vm_spec.price_usd_per_unit / 600
    fn = cat.ComputeServiceSpec(
        name="scaled", kind="serverless-function",
        memory_min_gib=vm_spec.base_memory_gib, memory_max_gib=vm_spec.base_memory_gib,
        max_local_storage_gib=Fraction(1, 2), accounting_unit_s=Fraction(1, 10),
        price_usd_per_unit=fn_price, base_memory_gib=vm_spec.base_memory_gib,
        max_run_time_s=Fraction(900),
    )
    low_fn, low_vm = sim.duty_cycle_costs(0.10, 3600, fn, vm_spec)
    high_fn, high_vm = sim.duty_cycle_costs(0.20, 3600, fn, vm_spec)
    assert low_fn < low_vm
    assert high_fn > high_vm


def test_platform_validation(fn_spec, vm_spec):
    with pytest.raises(sim.SimulationError):
        sim.PlatformConfig(compute=vm_spec)
    with pytest.raises(sim.SimulationError):
        platform(fn_spec, keep_alive=-1)
    with pytest.raises(sim.SimulationError):
        sim.ColdStartModel(-0.1, 0, 0)
