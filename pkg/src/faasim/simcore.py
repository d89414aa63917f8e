"""Discrete-event simulation of a function-as-a-service platform.

The platform model: every arrival is served by its own function instance
(no request queuing and no sharing of a busy instance). An idle warm
instance with matching memory is reused at zero extra latency; otherwise
a new instance is provisioned, paying the three-part cold-start latency
(resource scheduling + environment initialization + application
initialization), or application initialization alone when a pre-started
environment is available. Idle instances retire after a keep-alive
window, so the platform scales to zero instances and zero cost in the
absence of demand.

Billing charges execution time only, rounded up to the accounting unit,
scaled linearly with configured memory, plus an optional per-invocation
request fee. Event ordering at equal timestamps is fixed (completions,
then retirements, then arrivals in trace order) so results are
deterministic and serialize byte-identically across runs.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from .catalog import ComputeServiceSpec
from .money import usd_json
from .workloads import Invocation, InvocationTrace

# Published price multiple of a function instance versus an always-on VM
# of equal memory; not derivable from list prices, so it is an input with
# this value as the conventional default.
FALLACY_COST_RATIO = 7.5


class SimulationError(ValueError):
    pass


class BillingError(ValueError):
    pass


@dataclass(frozen=True)
class ColdStartModel:
    """Three additive cold-start components, all in seconds."""

    t_schedule_s: float = 0.5
    t_env_s: float = 0.0
    t_app_s: float = 0.0

    def __post_init__(self):
        if min(self.t_schedule_s, self.t_env_s, self.t_app_s) < 0:
            raise SimulationError("cold start components must be non-negative")

    @property
    def full_s(self) -> float:
        return self.t_schedule_s + self.t_env_s + self.t_app_s

    @property
    def prestarted_s(self) -> float:
        """A pre-started environment skips scheduling and env download."""
        return self.t_app_s


@dataclass(frozen=True)
class PlatformConfig:
    compute: ComputeServiceSpec
    cold_start: ColdStartModel = ColdStartModel()
    keep_alive_s: float = 600.0
    warm_pool_prestarted: int = 0

    def __post_init__(self):
        if self.compute.kind != "serverless-function":
            raise SimulationError("platform requires a serverless-function compute spec")
        if self.keep_alive_s < 0:
            raise SimulationError("keep-alive must be non-negative")
        if self.warm_pool_prestarted < 0:
            raise SimulationError("prestarted count must be non-negative")


@dataclass(frozen=True)
class InvocationResult:
    arrival_s: float
    start_latency_s: float
    duration_s: float
    cold: bool
    billed_units: int
    cost_usd: Fraction


@dataclass(frozen=True)
class RejectedInvocation:
    index: int
    arrival_s: float
    duration_s: float
    reason: str


@dataclass(frozen=True)
class SimResult:
    invocations: tuple[InvocationResult, ...]
    rejected: tuple[RejectedInvocation, ...]
    billed_units: int
    cost_usd: Fraction
    cold_starts: int
    peak_concurrency: int
    instances_created: int
    instance_seconds_running: float
    busy_seconds: float

    @property
    def utilization(self) -> float:
        if self.instance_seconds_running == 0:
            return 0.0
        return self.busy_seconds / self.instance_seconds_running

    def to_json_dict(self) -> dict:
        return {
            "invocations": [
                {
                    "arrival_s": r.arrival_s,
                    "start_latency_s": r.start_latency_s,
                    "duration_s": r.duration_s,
                    "cold": r.cold,
                    "billed_units": r.billed_units,
                    "cost_usd": usd_json(r.cost_usd),
                }
                for r in self.invocations
            ],
            "rejected": [
                {"index": r.index, "arrival_s": r.arrival_s, "duration_s": r.duration_s, "reason": r.reason}
                for r in self.rejected
            ],
            "billed_units": self.billed_units,
            "cost_usd": usd_json(self.cost_usd),
            "cold_starts": self.cold_starts,
            "peak_concurrency": self.peak_concurrency,
            "instances_created": self.instances_created,
            "instance_seconds_running": self.instance_seconds_running,
            "busy_seconds": self.busy_seconds,
            "utilization": self.utilization,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


def _decimal_seconds(value: float | int | str | Decimal) -> Decimal:
    """Seconds as the decimal literal the caller wrote (repr of floats)."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(repr(value))
    return Decimal(value)


def billed_units(duration_s, spec: ComputeServiceSpec) -> int:
    """Accounting units for one execution: ceil(duration / unit), exactly.

    Durations are interpreted by their decimal literal, so 0.1 s on a
    0.1 s unit bills exactly one unit despite binary float rounding.
    """
    duration = _decimal_seconds(duration_s)
    if duration <= 0:
        raise BillingError("duration must be positive")
    unit = Decimal(spec.accounting_unit_s.numerator) / Decimal(spec.accounting_unit_s.denominator)
    quotient, remainder = divmod(duration, unit)
    return int(quotient) + (1 if remainder else 0)


def bill_invocation(duration_s, memory_gb, spec: ComputeServiceSpec) -> Fraction:
    """Dollar cost of one invocation at the given memory configuration."""
    duration = _decimal_seconds(duration_s)
    if spec.max_run_time_s is not None and Fraction(duration) > spec.max_run_time_s:
        raise BillingError(
            f"duration {duration}s exceeds the {spec.max_run_time_s}s run-time limit"
        )
    memory = Fraction(_decimal_seconds(memory_gb))
    if not spec.memory_min_gib <= memory <= spec.memory_max_gib:
        raise BillingError(
            f"memory {memory_gb} GiB outside [{spec.memory_min_gib}, {spec.memory_max_gib}]"
        )
    units = billed_units(duration_s, spec)
    return units * spec.price_usd_per_unit * (memory / spec.base_memory_gib) + spec.request_fee_usd


# Event kinds, in tie-breaking order at equal timestamps.
_COMPLETE, _RETIRE, _ARRIVE = 0, 1, 2


@dataclass
class _Instance:
    memory_gb: float
    created_s: float
    busy: bool = True
    idle_since: float = 0.0
    idle_token: int = 0
    busy_seconds: float = 0.0


def simulate(trace: InvocationTrace, platform: PlatformConfig) -> SimResult:
    """Run an invocation trace against the platform model.

    Deterministic: a given (trace, platform) pair always produces the
    identical SimResult. Over-limit invocations are reported in
    `rejected` rather than silently dropped.
    """
    entries = trace.entries if isinstance(trace, InvocationTrace) else tuple(trace)
    spec = platform.compute
    cold = platform.cold_start

    events: list[tuple[float, int, int]] = []  # (time, kind, seq)
    for seq, inv in enumerate(entries):
        heapq.heappush(events, (inv.arrival_s, _ARRIVE, seq))

    instances: dict[int, _Instance] = {}
    idle_by_memory: dict[float, list[int]] = {}
    prestarted_left = platform.warm_pool_prestarted
    next_instance = 0
    # Auxiliary payloads keyed by event seq for completions/retirements.
    completion_payload: dict[int, int] = {}  # seq -> instance
    retire_payload: dict[int, tuple[int, int]] = {}  # seq -> (instance, idle_token)
    next_seq = len(entries)

    results: list[InvocationResult | None] = [None] * len(entries)
    rejected: list[RejectedInvocation] = []
    running = 0
    peak = 0
    total_units = 0
    total_cost = Fraction(0)
    cold_starts = 0
    lifetime = 0.0
    busy_total = 0.0

    def mark_idle(inst_id: int, now: float):
        nonlocal next_seq
        inst = instances[inst_id]
        inst.busy = False
        inst.idle_since = now
        inst.idle_token += 1
        idle_by_memory.setdefault(inst.memory_gb, []).append(inst_id)
        retire_payload[next_seq] = (inst_id, inst.idle_token)
        heapq.heappush(events, (now + platform.keep_alive_s, _RETIRE, next_seq))
        next_seq += 1

    while events:
        now, kind, seq = heapq.heappop(events)
        if kind == _COMPLETE:
            inst_id = completion_payload.pop(seq)
            running -= 1
            mark_idle(inst_id, now)
        elif kind == _RETIRE:
            inst_id, token = retire_payload.pop(seq)
            inst = instances.get(inst_id)
            if inst is None or inst.busy or inst.idle_token != token:
                continue  # reused since; retirement was superseded
            idle_by_memory[inst.memory_gb].remove(inst_id)
            lifetime += now - inst.created_s
            busy_total += inst.busy_seconds
            del instances[inst_id]
        else:  # arrival
            inv = entries[seq]
            if spec.max_run_time_s is not None and Fraction(_decimal_seconds(inv.duration_s)) > spec.max_run_time_s:
                rejected.append(
                    RejectedInvocation(seq, inv.arrival_s, inv.duration_s, "duration exceeds max run time")
                )
                continue
            pool = idle_by_memory.get(inv.memory_gb)
            if pool:
                inst_id = pool.pop()  # most recently idled first
                inst = instances[inst_id]
                inst.busy = True
                latency = 0.0
                was_cold = False
            else:
                if prestarted_left > 0:
                    prestarted_left -= 1
                    latency = cold.prestarted_s
                else:
                    latency = cold.full_s
                inst_id = next_instance
                next_instance += 1
                instances[inst_id] = inst = _Instance(memory_gb=inv.memory_gb, created_s=now)
                was_cold = True
                cold_starts += 1
            occupied = latency + inv.duration_s
            inst.busy_seconds += occupied
            running += 1
            peak = max(peak, running)
            cost = bill_invocation(inv.duration_s, inv.memory_gb, spec)
            units = billed_units(inv.duration_s, spec)
            total_units += units
            total_cost += cost
            results[seq] = InvocationResult(
                arrival_s=inv.arrival_s,
                start_latency_s=latency,
                duration_s=inv.duration_s,
                cold=was_cold,
                billed_units=units,
                cost_usd=cost,
            )
            completion_payload[next_seq] = inst_id
            heapq.heappush(events, (now + occupied, _COMPLETE, next_seq))
            next_seq += 1

    # Scale-to-zero: once the event queue drains, every instance has retired.
    assert not instances and running == 0

    return SimResult(
        invocations=tuple(r for r in results if r is not None),
        rejected=tuple(rejected),
        billed_units=total_units,
        cost_usd=total_cost,
        cold_starts=cold_starts,
        peak_concurrency=peak,
        instances_created=next_instance,
        instance_seconds_running=lifetime,
        busy_seconds=busy_total,
    )


def serverful_cost(span_s, spec: ComputeServiceSpec) -> Fraction:
    """Always-on instance cost for a wall-clock span (60 s minimum units)."""
    span = _decimal_seconds(span_s)
    if span < 0:
        raise BillingError("span must be non-negative")
    if span == 0:
        return Fraction(0)
    unit = Decimal(spec.accounting_unit_s.numerator) / Decimal(spec.accounting_unit_s.denominator)
    quotient, remainder = divmod(span, unit)
    units = int(quotient) + (1 if remainder else 0)
    return units * spec.price_usd_per_unit


def breakeven_duty_cycle(per_minute_cost_ratio) -> Fraction:
    """Busy fraction below which functions beat an equal-memory VM: 1/ratio."""
    ratio = Fraction(_decimal_seconds(per_minute_cost_ratio)) if not isinstance(
        per_minute_cost_ratio, Fraction
    ) else per_minute_cost_ratio
    if ratio <= 0:
        raise ValueError("cost ratio must be positive")
    return 1 / ratio


def duty_cycle_costs(
    busy_fraction: float,
    span_s: float,
    serverless_spec: ComputeServiceSpec,
    serverful_spec: ComputeServiceSpec,
    slot_s: float = 60.0,
) -> tuple[Fraction, Fraction]:
    """(serverless, serverful) cost of a span busy for the given fraction.

    Busy time is spread over the span as evenly spaced `slot_s`-long
    invocations, then both billing paths are applied.
    """
    if not 0 <= busy_fraction <= 1:
        raise ValueError("busy fraction must be in [0, 1]")
    slots = round(busy_fraction * span_s / slot_s)
    interval = span_s / max(slots, 1)
    from .workloads import fixed_interval_trace

    memory = float(serverless_spec.base_memory_gib)
    trace = fixed_interval_trace(slots, interval, slot_s, memory_gb=memory)
    platform = PlatformConfig(compute=serverless_spec, cold_start=ColdStartModel(0, 0, 0), keep_alive_s=0.0)
    return simulate(trace, platform).cost_usd, serverful_cost(span_s, serverful_spec)
