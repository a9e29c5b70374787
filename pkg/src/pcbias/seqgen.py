"""Combination keystream generators over periodic devices, plus estimators.

A generator feeds n independent periodic devices into a combining function.
Supported devices: explicit periodic bit lists, LFSRs, and NLFSRs (Fibonacci
style, output taken from the low state bit).  Periods are computed exactly by
walking the state cycle, so registers are capped at 20 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfun import BooleanFunction, DyadicRational
from .parity import ParityCheckSpec

MAX_REGISTER_LEN = 20

# normal quantile for a two-sided 99% interval
_Z99 = 2.5758293035489004

__all__ = [
    "MAX_REGISTER_LEN",
    "DeviceError",
    "ExplicitSequence",
    "Lfsr",
    "Nlfsr",
    "Generator",
    "BiasEstimate",
    "AttackCost",
    "least_period",
    "keystream",
    "parity_check_samples",
    "empirical_bias",
    "empirical_bias_single_stream",
    "attack_cost",
    "generator_from_dict",
]


class DeviceError(ValueError):
    """Invalid device description or a state orbit that is not purely periodic."""


def _least_period_of_list(bits: np.ndarray) -> int:
    """Least p such that the periodic extension of `bits` has period p.

    Any period of a (two-sided) periodic sequence is a multiple of the least
    one, so only divisors of len(bits) need checking.
    """
    length = len(bits)
    for p in range(1, length + 1):
        if length % p == 0 and np.array_equal(bits, np.tile(bits[:p], length // p)):
            return p
    return length


class ExplicitSequence:
    """Periodic device given directly by one period of output bits."""

    def __init__(self, bits):
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size == 0:
            raise DeviceError("explicit sequence needs at least one bit")
        if arr.max(initial=0) > 1:
            raise DeviceError("sequence entries must be 0 or 1")
        self._bits = arr[: _least_period_of_list(arr)].copy()
        self._bits.setflags(write=False)

    @property
    def least_period(self) -> int:
        return len(self._bits)

    def period_bits(self) -> np.ndarray:
        return self._bits


class _FeedbackRegister:
    """Shared machinery for shift registers; output is state bit 0."""

    def __init__(self, length: int, state: int):
        if not 1 <= length <= MAX_REGISTER_LEN:
            raise DeviceError(f"register length must be in 1..{MAX_REGISTER_LEN}")
        if not 0 <= state < (1 << length):
            raise DeviceError("initial state out of range")
        if state == 0:
            raise DeviceError("all-zero register state")
        self.length = length
        self.state = state
        self._cycle_bits: np.ndarray | None = None

    def _step(self, state: int) -> int:
        raise NotImplementedError

    def _cycle(self) -> np.ndarray:
        if self._cycle_bits is None:
            bits = [self.state & 1]
            state = self._step(self.state)
            limit = 1 << self.length
            for _ in range(limit):
                if state == self.state:
                    break
                bits.append(state & 1)
                state = self._step(state)
            else:
                raise DeviceError(
                    "state orbit is only eventually periodic; "
                    "the initial state does not lie on a cycle"
                )
            arr = np.asarray(bits, dtype=np.uint8)
            self._cycle_bits = arr[: _least_period_of_list(arr)].copy()
            self._cycle_bits.setflags(write=False)
        return self._cycle_bits

    @property
    def least_period(self) -> int:
        return len(self._cycle())

    def period_bits(self) -> np.ndarray:
        return self._cycle()


class Lfsr(_FeedbackRegister):
    """Fibonacci LFSR: new high bit is the parity of (state & taps)."""

    def __init__(self, length: int, taps: int, state: int):
        super().__init__(length, state)
        if not 0 <= taps < (1 << length):
            raise DeviceError("tap mask out of range")
        self.taps = taps

    def _step(self, state: int) -> int:
        fb = (state & self.taps).bit_count() & 1
        return (state >> 1) | (fb << (self.length - 1))


class Nlfsr(_FeedbackRegister):
    """Nonlinear feedback register: new high bit is feedback(state bits)."""

    def __init__(self, length: int, feedback: BooleanFunction, state: int):
        super().__init__(length, state)
        if feedback.n != length:
            raise DeviceError("feedback function arity must equal the register length")
        self.feedback = feedback

    def _step(self, state: int) -> int:
        return (state >> 1) | (self.feedback(state) << (self.length - 1))


def least_period(device) -> int:
    """Exact least period of the device's output sequence."""
    return device.least_period


@dataclass(frozen=True)
class Generator:
    """n periodic devices combined by a Boolean function of n variables."""

    devices: tuple
    combiner: BooleanFunction

    def __post_init__(self):
        object.__setattr__(self, "devices", tuple(self.devices))
        if self.combiner.n != len(self.devices):
            raise ValueError(
                f"combiner takes {self.combiner.n} inputs but "
                f"{len(self.devices)} devices were given"
            )

    def device_periods(self) -> tuple[int, ...]:
        return tuple(d.least_period for d in self.devices)


def keystream(gen: Generator, length: int) -> np.ndarray:
    """First `length` keystream bits s(t) = f(x1(t), ..., xn(t))."""
    t = np.arange(length, dtype=np.int64)
    idx = np.zeros(length, dtype=np.int64)
    for j, device in enumerate(gen.devices):
        bits = device.period_bits()
        idx |= bits[t % len(bits)].astype(np.int64) << j
    return gen.combiner.table[idx]


def parity_check_samples(stream, spec, t_values) -> np.ndarray:
    """Relation samples: xor of the stream at offsets t + tau over the check set.

    `spec` may be a ParityCheckSpec or a bare iterable of offsets (offsets are
    set-valued, duplicates are dropped).
    """
    stream = np.asarray(stream, dtype=np.uint8)
    t = np.asarray(list(t_values), dtype=np.int64)
    if isinstance(spec, ParityCheckSpec):
        offsets = spec.offset_set
    else:
        offsets = tuple(sorted({int(tau) for tau in spec}))
        if not offsets or offsets[0] < 0:
            raise ValueError("offsets must be a nonempty set of non-negative ints")
    if len(t) and int(t.max()) + max(offsets) >= len(stream):
        raise ValueError(
            "index overflow: stream too short for the requested sample positions"
        )
    if len(t) and int(t.min()) < 0:
        raise ValueError("sample positions must be non-negative")
    out = np.zeros(len(t), dtype=np.uint8)
    for tau in offsets:
        out ^= stream[t + tau]
    return out


@dataclass(frozen=True)
class BiasEstimate:
    """Monte-Carlo bias estimate with a normal-approximation 99% interval."""

    estimate: float
    stderr: float
    interval99: tuple[float, float]
    trials: int
    seed: int | None
    estimator: str

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "interval99": list(self.interval99),
            "trials": self.trials,
            "seed": self.seed,
            "estimator": self.estimator,
        }


def _finish_estimate(total: int, trials: int, seed, estimator: str) -> BiasEstimate:
    estimate = total / trials
    stderr = math.sqrt(max(0.0, 1.0 - estimate * estimate) / trials)
    return BiasEstimate(
        estimate=estimate,
        stderr=stderr,
        interval99=(estimate - _Z99 * stderr, estimate + _Z99 * stderr),
        trials=trials,
        seed=seed,
        estimator=estimator,
    )


_TRIAL_CHUNK = 1 << 16


def empirical_bias(
    gen: Generator, spec: ParityCheckSpec, trials: int, rng_seed: int
) -> BiasEstimate:
    """Estimate the relation bias under random period contents and phases.

    Each trial conceptually redraws every device's period bits uniformly at
    random along with a random phase and sample position t.  For any phase the
    relation taps each device at a fixed pattern of residues modulo its
    period, and distinct positions of a uniformly random period are
    independent fair bits, so the sampler draws exactly one fresh bit per
    (device, offset-residue-class); phases and t integrate out.  Trials use
    PCG64 streams spawned from rng_seed in fixed chunk order, so results are
    deterministic for a given (rng_seed, trials) on any worker layout.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if len(gen.devices) != spec.n:
        raise ValueError("spec names a different number of devices")
    offsets = spec.offsets
    class_ids = []
    class_counts = []
    for device in gen.devices:
        period = device.least_period
        classes: dict[int, int] = {}
        ids = [classes.setdefault(off % period, len(classes)) for off in offsets]
        class_ids.append(ids)
        class_counts.append(len(classes))

    table = gen.combiner.table
    n_chunks = (trials + _TRIAL_CHUNK - 1) // _TRIAL_CHUNK
    children = np.random.SeedSequence(int(rng_seed)).spawn(n_chunks)
    total = 0
    done = 0
    for child in children:
        m = min(_TRIAL_CHUNK, trials - done)
        rng = np.random.default_rng(child)
        draws = [
            rng.integers(0, 2, size=(m, count), dtype=np.uint8)
            for count in class_counts
        ]
        pc = np.zeros(m, dtype=np.uint8)
        for c in range(len(offsets)):
            idx = np.zeros(m, dtype=np.int64)
            for j in range(spec.n):
                idx |= draws[j][:, class_ids[j][c]].astype(np.int64) << j
            pc ^= table[idx]
        total += m - 2 * int(pc.sum(dtype=np.int64))
        done += m
    return _finish_estimate(total, trials, int(rng_seed), "random-phase")


def empirical_bias_single_stream(
    gen: Generator, spec: ParityCheckSpec, t_count: int, t_start: int = 0
) -> BiasEstimate:
    """Estimate the bias by sliding t over one keystream of the generator.

    Uses the devices' actual contents and initial phases, so unlike the
    random-phase estimator this one is phase and content dependent and is not
    guaranteed to converge to the exact model bias.
    """
    if t_count < 1:
        raise ValueError("t_count must be >= 1")
    stream = keystream(gen, t_start + t_count + max(spec.offset_set))
    samples = parity_check_samples(stream, spec, range(t_start, t_start + t_count))
    total = t_count - 2 * int(samples.sum(dtype=np.int64))
    return _finish_estimate(total, t_count, None, "single-stream")


@dataclass(frozen=True)
class AttackCost:
    """Distinguisher cost: time ~ eps**-2 * 2**s, data ~ eps**-2 + max offset."""

    time: int
    data: int

    def to_json_dict(self) -> dict:
        return {"time": str(self.time), "data": str(self.data)}


def attack_cost(epsilon, spec: ParityCheckSpec) -> AttackCost:
    """Cost of distinguishing with a relation of bias epsilon over this set."""
    if isinstance(epsilon, DyadicRational):
        frac = epsilon.as_fraction()
    else:
        frac = Fraction(epsilon)
    if frac <= 0:
        raise ValueError("epsilon must be positive")
    if frac > 1:
        raise ValueError("epsilon must be at most 1")
    num, den = frac.numerator, frac.denominator
    inv_sq = (den * den + num * num - 1) // (num * num)
    return AttackCost(
        time=inv_sq * (1 << spec.s),
        data=inv_sq + max(spec.offset_set),
    )


def _combiner_from_dict(d: dict) -> BooleanFunction:
    if "anf" in d:
        return BooleanFunction.from_anf(d["anf"], d.get("n"))
    return BooleanFunction.from_hex(d["tt"], int(d["n"]))


def _device_from_dict(d: dict):
    kind = d.get("type")
    if kind == "explicit":
        return ExplicitSequence(d["bits"])
    if kind == "lfsr":
        taps = d["taps"]
        if isinstance(taps, str):
            taps = int(taps, 0)
        return Lfsr(int(d["length"]), taps, int(d["state"]))
    if kind == "nlfsr":
        feedback = _combiner_from_dict(dict(d["feedback"], n=d["length"]))
        return Nlfsr(int(d["length"]), feedback, int(d["state"]))
    raise DeviceError(f"unknown device type {kind!r}")


def generator_from_dict(d: dict) -> Generator:
    """Build a Generator from its JSON configuration dict."""
    devices = tuple(_device_from_dict(dev) for dev in d["devices"])
    combiner = _combiner_from_dict(d["combiner"])
    return Generator(devices=devices, combiner=combiner)
