"""Exact biases and bounds for parity-check relations over periodic sequences.

A check set is built from s blocks of the combiner's input variables.  Block i
contributes a shift M_i, a positive multiple of the lcm of the block's device
periods, and the relation xors the keystream at the 2**s offsets
sum(c_i * M_i) for c in {0,1}**s.  Because each M_i is a period of its own
block's variables, the repeated first-k-variable values across the 2**s terms
are determined by k * 2**(s-1) free bits; enumerating those bits yields the
relation's exact bias from either the restriction biases or the Walsh
coefficients of the combiner.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._enum import indexed_product_sum, indexed_xor_ones
from .boolfun import (
    BooleanFunction,
    DyadicRational,
    _fwht_inplace,
    plateaued_amplitude,
    resiliency_order,
)

MAX_EXACT_FREE_BITS = 40
MAX_ORACLE_FREE_BITS = 30

PASS = "PASS"
PASS_WEAK = "PASS-WEAK"
FAIL = "FAIL"

__all__ = [
    "MAX_EXACT_FREE_BITS",
    "MAX_ORACLE_FREE_BITS",
    "PASS",
    "PASS_WEAK",
    "FAIL",
    "ValidationError",
    "IndependenceError",
    "BudgetError",
    "NotSeparableError",
    "IndependenceVerdict",
    "ParityCheckSpec",
    "FreeBitWord",
    "SeparableApproximation",
    "LinearBound",
    "BiasReport",
    "validate_independence",
    "fresh_bit_index",
    "input_bit_sources",
    "repeated_inputs",
    "exact_bias_restrictions",
    "exact_bias_walsh",
    "exact_bias_auto",
    "brute_force_oracle",
    "lower_bound_linear",
    "lower_bound_separable",
    "closed_form_single_coefficient",
    "plateaued_bound",
    "plateaued_bound_value",
    "bound_report",
]


class ValidationError(Exception):
    """Input rejected before any computation ran."""


class IndependenceError(ValidationError):
    """The check set fails the independence requirements of the exact formulas."""


class BudgetError(ValidationError):
    """The enumeration would exceed the configured size budget."""


class NotSeparableError(ValidationError):
    """A claimed block-separable approximation does not factor over the blocks."""


@dataclass(frozen=True)
class IndependenceVerdict:
    status: str
    reasons: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def __str__(self):
        if not self.reasons:
            return self.status
        return f"{self.status} ({'; '.join(self.reasons)})"


@dataclass(frozen=True)
class ParityCheckSpec:
    """Block structure, multipliers, and device periods defining a check set.

    blocks name disjoint 1-based input variables of the combiner; their union
    is the set of k repeated variables.  Variables may be listed in any order,
    the analysis relabels them internally so the named ones occupy positions
    1..k (blocks first, in order).  periods[j-1] is the least period of the
    j-th device; multipliers[i-1] is the factor q_i applied to the lcm of
    block i's periods.
    """

    periods: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    multipliers: tuple[int, ...]

    def __post_init__(self):
        periods = tuple(int(t) for t in self.periods)
        blocks = tuple(tuple(int(v) for v in b) for b in self.blocks)
        multipliers = tuple(int(q) for q in self.multipliers)
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "multipliers", multipliers)
        n = len(periods)
        if n < 1:
            raise ValueError("at least one period is required")
        if any(t < 1 for t in periods):
            raise ValueError("periods must be positive")
        if not blocks:
            raise ValueError("at least one block is required")
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        if len(multipliers) != len(blocks):
            raise ValueError("one multiplier per block is required")
        if any(q < 1 for q in multipliers):
            raise ValueError("multipliers must be positive")
        named = [v for b in blocks for v in b]
        if len(set(named)) != len(named):
            raise ValueError("blocks must name disjoint variables")
        if any(not 1 <= v <= n for v in named):
            raise ValueError(f"block variables must be in 1..{n}")

    @property
    def n(self) -> int:
        return len(self.periods)

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return sum(len(b) for b in self.blocks)

    @cached_property
    def shifts(self) -> tuple[int, ...]:
        """M_i for each block: multiplier times the lcm of the block's periods."""
        return tuple(
            q * math.lcm(*(self.periods[v - 1] for v in block))
            for block, q in zip(self.blocks, self.multipliers)
        )

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """The 2**s relation offsets, indexed by the term word c."""
        shifts = self.shifts
        return tuple(
            sum(shifts[i] for i in range(self.s) if (c >> i) & 1)
            for c in range(1 << self.s)
        )

    @property
    def offset_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.offsets)))

    @cached_property
    def variable_order(self) -> tuple[int, ...]:
        """Original variable indices in analysis order: blocks first, rest ascending."""
        named = [v for b in self.blocks for v in b]
        rest = [v for v in range(1, self.n + 1) if v not in set(named)]
        return tuple(named + rest)

    @cached_property
    def block_of_position(self) -> tuple[int, ...]:
        """1-based block index of each relabeled position 1..k."""
        out = []
        for i, block in enumerate(self.blocks, start=1):
            out.extend([i] * len(block))
        return tuple(out)

    @property
    def is_normalized(self) -> bool:
        return self.variable_order == tuple(range(1, self.n + 1))

    def normalized(self) -> "ParityCheckSpec":
        """Equivalent spec with the named variables relabeled to positions 1..k."""
        if self.is_normalized:
            return self
        order = self.variable_order
        sizes = [len(b) for b in self.blocks]
        blocks = []
        start = 1
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return ParityCheckSpec(
            periods=tuple(self.periods[v - 1] for v in order),
            blocks=tuple(blocks),
            multipliers=self.multipliers,
        )

    @property
    def repeated_free_bits(self) -> int:
        """k * 2**(s-1): free bits determining all repeated variable values."""
        return self.k << (self.s - 1)

    @property
    def model_free_bits(self) -> int:
        """Free bits of the whole relation model when independence holds."""
        return self.repeated_free_bits + (self.n - self.k) * (1 << self.s)

    def to_dict(self) -> dict:
        return {
            "periods": list(self.periods),
            "blocks": [list(b) for b in self.blocks],
            "multipliers": list(self.multipliers),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParityCheckSpec":
        return cls(
            periods=tuple(d["periods"]),
            blocks=tuple(tuple(b) for b in d["blocks"]),
            multipliers=tuple(d["multipliers"]),
        )


@dataclass(frozen=True)
class FreeBitWord:
    """The k * 2**(s-1) free bits fixing every repeated first-k-variable value.

    bits holds k sub-words of 2**(s-1) bits each, sub-word j covering the
    relabeled variable at position j; bit (j-1) * 2**(s-1) + m is sub-word
    bit m.
    """

    k: int
    s: int
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if self.k < 1 or self.s < 1:
            raise ValueError("k and s must be positive")
        if len(bits) != self.k << (self.s - 1):
            raise ValueError(
                f"expected {self.k << (self.s - 1)} bits, got {len(bits)}"
            )
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_int(cls, value: int, k: int, s: int) -> "FreeBitWord":
        width = k << (s - 1)
        if not 0 <= value < (1 << width):
            raise ValueError(f"value out of range for {width} bits")
        return cls(k, s, tuple((value >> i) & 1 for i in range(width)))

    @property
    def as_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def subword(self, position: int) -> tuple[int, ...]:
        if not 1 <= position <= self.k:
            raise ValueError(f"position {position} out of range")
        w = 1 << (self.s - 1)
        return self.bits[(position - 1) * w : position * w]

    def bit(self, position: int, m: int) -> int:
        word = self.subword(position)
        if not 0 <= m < len(word):
            raise ValueError(f"sub-word bit {m} out of range")
        return word[m]


def _check_c(spec: ParityCheckSpec, c: int) -> None:
    if not 0 <= c < (1 << spec.s):
        raise ValueError(f"term index {c} out of range for s={spec.s}")


def fresh_bit_index(spec: ParityCheckSpec, c: int, position: int) -> int:
    """Sub-word bit index feeding the variable at `position` in term c.

    Dropping bit (i-1) of c, where i is the position's block, enumerates the
    2**(s-1) fresh bits of the position's sub-word; the two terms that differ
    only in block i read the same bit, which realizes the repetition pattern
    forced by the block shifts.
    """
    _check_c(spec, c)
    if not 1 <= position <= spec.k:
        raise ValueError(f"position {position} out of range for k={spec.k}")
    pos = spec.block_of_position[position - 1] - 1
    return ((c >> (pos + 1)) << pos) | (c & ((1 << pos) - 1))


def input_bit_sources(spec: ParityCheckSpec, c: int):
    """(position, sub-word bit, fresh) for every repeated variable of term c.

    fresh is True when term c is the first term consuming that bit, i.e. the
    block's bit of c is zero.
    """
    _check_c(spec, c)
    out = []
    for position in range(1, spec.k + 1):
        i = spec.block_of_position[position - 1]
        fresh = not (c >> (i - 1)) & 1
        out.append((position, fresh_bit_index(spec, c, position), fresh))
    return tuple(out)


def repeated_inputs(spec: ParityCheckSpec, c: int, word) -> int:
    """k-bit value of the repeated variables in term c under the free bits.

    `word` is a FreeBitWord or its packed integer form.  Bit j-1 of the result
    is the value of the relabeled variable at position j.
    """
    _check_c(spec, c)
    packed = word.as_int if isinstance(word, FreeBitWord) else int(word)
    w = 1 << (spec.s - 1)
    value = 0
    for position in range(1, spec.k + 1):
        m = fresh_bit_index(spec, c, position)
        bit = (packed >> ((position - 1) * w + m)) & 1
        value |= bit << (position - 1)
    return value


def validate_independence(spec: ParityCheckSpec) -> IndependenceVerdict:
    """Classify whether the exact formulas apply to this check set.

    PASS requires, per relabeled variable position j with period T:
      - j <= k: the offsets collapse modulo T into exactly the 2**(s-1)
        pairs that differ only in the variable's own block, and
      - j > k: all 2**s offsets are distinct modulo T.
    PASS-WEAK keeps only the weaker literal condition that no nonzero offset
    is a multiple of T for j > k; the exact algorithms warn on such specs.
    Duplicate offsets or a collapsed repetition structure are always FAIL.
    """
    offsets = spec.offsets
    s, k, n = spec.s, spec.k, spec.n
    order = spec.variable_order
    fail, weak = [], []

    if len(set(offsets)) != len(offsets):
        fail.append("duplicate offsets in the check set")

    for position in range(1, k + 1):
        var = order[position - 1]
        period = spec.periods[var - 1]
        distinct = len({o % period for o in offsets})
        if distinct != 1 << (s - 1):
            fail.append(
                f"repetition structure of variable x{var} collapses "
                f"(expected {1 << (s - 1)} residue classes mod {period}, got {distinct})"
            )

    for position in range(k + 1, n + 1):
        var = order[position - 1]
        period = spec.periods[var - 1]
        if any(o != 0 and o % period == 0 for o in offsets):
            fail.append(f"an offset is a multiple of the period {period} of x{var}")
        elif len({o % period for o in offsets}) != 1 << s:
            weak.append(
                f"two offsets coincide modulo the period {period} of x{var}"
            )

    if fail:
        return IndependenceVerdict(FAIL, tuple(fail + weak))
    if weak:
        return IndependenceVerdict(PASS_WEAK, tuple(weak))
    return IndependenceVerdict(PASS)


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class LinearBound:
    value: DyadicRational
    mask: int


@dataclass(frozen=True)
class BiasReport:
    """Outcome of one bias computation or bound evaluation."""

    independence: str
    lower_bound: DyadicRational
    lower_bound_mask: int
    op_count: int
    precompute_ops: int
    exact: DyadicRational | None = None
    method: str | None = None
    plateaued_bound: DyadicRational | None = None
    equality_condition_met: bool | None = None
    log2_bias: float = field(default=float("-inf"))

    def to_json_dict(self) -> dict:
        log2 = self.log2_bias
        return {
            "independence": self.independence,
            "method": self.method,
            "exact": self.exact.to_json_dict() if self.exact is not None else None,
            "log2_bias": log2 if math.isfinite(log2) else None,
            "lower_bound": self.lower_bound.to_json_dict(),
            "lower_bound_mask": self.lower_bound_mask,
            "plateaued_bound": (
                self.plateaued_bound.to_json_dict()
                if self.plateaued_bound is not None
                else None
            ),
            "equality_condition_met": self.equality_condition_met,
            "op_count": self.op_count,
            "precompute_ops": self.precompute_ops,
        }


def _log2_of(value: DyadicRational) -> float:
    if value.numerator <= 0:
        return float("-inf")
    return value.log2()


def _make_report(
    verdict: IndependenceVerdict,
    bound: LinearBound,
    op_count: int,
    precompute_ops: int,
    exact: DyadicRational | None = None,
    method: str | None = None,
    plateaued: DyadicRational | None = None,
    equality: bool | None = None,
) -> BiasReport:
    witness = exact if exact is not None else (plateaued or bound.value)
    return BiasReport(
        independence=verdict.status,
        lower_bound=bound.value,
        lower_bound_mask=bound.mask,
        op_count=op_count,
        precompute_ops=precompute_ops,
        exact=exact,
        method=method,
        plateaued_bound=plateaued,
        equality_condition_met=equality,
        log2_bias=_log2_of(witness),
    )


# -- shared precomputations --------------------------------------------------


def _require_function(f: BooleanFunction, spec: ParityCheckSpec) -> None:
    if f.n != spec.n:
        raise ValueError(
            f"function has {f.n} variables but the spec names {spec.n} periods"
        )


def _require_valid(
    f: BooleanFunction, spec: ParityCheckSpec, warn_weak: bool = True
) -> IndependenceVerdict:
    _require_function(f, spec)
    verdict = validate_independence(spec)
    if verdict.status == FAIL:
        raise IndependenceError(str(verdict))
    if warn_weak and verdict.status == PASS_WEAK:
        warnings.warn(
            "independence holds only in the weak literal sense; "
            f"the exact formulas may not match the true bias: {verdict}",
            RuntimeWarning,
            stacklevel=3,
        )
    return verdict


def _named_masks(spec: ParityCheckSpec) -> np.ndarray:
    """n-bit masks (original numbering) spanned by the named variables.

    Entry a places the k bits of a on the named variables in relabeled order,
    so the array maps relabeled-span indices to original-spectrum masks.
    """
    span = np.arange(1 << spec.k, dtype=np.int64)
    masks = np.zeros(1 << spec.k, dtype=np.int64)
    for position, var in enumerate(spec.variable_order[: spec.k], start=1):
        masks |= ((span >> (position - 1)) & 1) << (var - 1)
    return masks


def _named_projection(spec: ParityCheckSpec) -> np.ndarray:
    """Map every n-bit input to the k-bit word of its named-variable values."""
    full = np.arange(1 << spec.n, dtype=np.int64)
    idx = np.zeros(1 << spec.n, dtype=np.int64)
    for position, var in enumerate(spec.variable_order[: spec.k], start=1):
        idx |= ((full >> (var - 1)) & 1) << (position - 1)
    return idx


def _named_restriction_sums(f: BooleanFunction, spec: ParityCheckSpec) -> np.ndarray:
    """Signed restriction sums over the named variables: entry a is the
    +/-1 count of f with the named variables pinned to a."""
    idx = _named_projection(spec)
    ones = np.bincount(idx[f.table == 1], minlength=1 << spec.k).astype(np.int64)
    return (1 << (spec.n - spec.k)) - 2 * ones


def _span_coefficients(f: BooleanFunction, spec: ParityCheckSpec) -> np.ndarray:
    """Walsh coefficients of f at the named-variable span, relabeled order."""
    return f.spectrum().coeffs[_named_masks(spec)].astype(np.int64)


def _linear_bound_from(coeffs: np.ndarray, spec: ParityCheckSpec) -> LinearBound:
    idx = int(np.argmax(np.abs(coeffs)))
    value = DyadicRational(int(coeffs[idx]), spec.n) ** (1 << spec.s)
    mask = int(_named_masks(spec)[idx])
    return LinearBound(value=value, mask=mask)


def _alpha_pairs(spec: ParityCheckSpec):
    """Per-term (free-bit position, index bit) scatter pairs for the enumeration."""
    w = 1 << (spec.s - 1)
    pairs = []
    for c in range(1 << spec.s):
        pairs.append(
            [
                ((position - 1) * w + fresh_bit_index(spec, c, position), position - 1)
                for position in range(1, spec.k + 1)
            ]
        )
    return pairs


def _check_exact_budget(spec: ParityCheckSpec) -> None:
    if spec.repeated_free_bits > MAX_EXACT_FREE_BITS:
        raise BudgetError(
            f"k * 2^(s-1) = {spec.repeated_free_bits} exceeds the "
            f"{MAX_EXACT_FREE_BITS}-bit enumeration budget"
        )


# -- exact algorithms --------------------------------------------------------


def exact_bias_restrictions(
    f: BooleanFunction, spec: ParityCheckSpec, *, workers: int | None = None
) -> BiasReport:
    """Exact relation bias from the biases of the named-variable restrictions.

    Precomputes the 2**k restriction sums in one pass over the table, then
    averages the product of the 2**s looked-up restriction biases over all
    free-bit words.  The inner loop performs exactly 2**(k * 2**(s-1) + s)
    lookup-and-multiply steps; arithmetic is exact end to end.
    """
    verdict = _require_valid(f, spec)
    _check_exact_budget(spec)
    sums = _named_restriction_sums(f, spec)
    total, op_count = indexed_product_sum(
        sums,
        _alpha_pairs(spec),
        spec.repeated_free_bits,
        value_bits=spec.n - spec.k,
        workers=workers,
    )
    exact = DyadicRational(
        total, spec.repeated_free_bits + (spec.n - spec.k) * (1 << spec.s)
    )
    bound = _linear_bound_from(_fwht_inplace(sums.copy()), spec)
    return _make_report(
        verdict, bound, op_count, 1 << spec.n, exact=exact, method="restriction"
    )


def exact_bias_walsh(
    f: BooleanFunction, spec: ParityCheckSpec, *, workers: int | None = None
) -> BiasReport:
    """Exact relation bias from the Walsh coefficients of the combiner.

    Same enumeration as the restriction route, but the table holds the
    spectrum over the named-variable span and the accumulated integer is
    divided by 2**(n * 2**s) at the end.  Bit-for-bit equal to
    exact_bias_restrictions on every valid spec.
    """
    verdict = _require_valid(f, spec)
    _check_exact_budget(spec)
    coeffs = _span_coefficients(f, spec)
    total, op_count = indexed_product_sum(
        coeffs,
        _alpha_pairs(spec),
        spec.repeated_free_bits,
        value_bits=spec.n,
        workers=workers,
    )
    exact = DyadicRational(total, spec.n * (1 << spec.s))
    bound = _linear_bound_from(coeffs, spec)
    return _make_report(
        verdict, bound, op_count, 1 << spec.n, exact=exact, method="walsh"
    )


def exact_bias_auto(
    f: BooleanFunction, spec: ParityCheckSpec, *, workers: int | None = None
) -> BiasReport:
    """Walsh route when the spectrum is already cached, else restrictions."""
    if f.has_cached_spectrum:
        return exact_bias_walsh(f, spec, workers=workers)
    return exact_bias_restrictions(f, spec, workers=workers)


def _oracle_slot_pairs(spec: ParityCheckSpec):
    """Free-bit slots of the full relation model, one per (variable, residue
    class of the offsets modulo the variable's period)."""
    offsets = spec.offsets
    per_term = [[] for _ in offsets]
    base = 0
    for var in range(1, spec.n + 1):
        period = spec.periods[var - 1]
        class_of: dict[int, int] = {}
        for c, off in enumerate(offsets):
            residue = off % period
            slot = class_of.setdefault(residue, base + len(class_of))
            per_term[c].append((slot, var - 1))
        base += len(class_of)
    return per_term, base


def brute_force_oracle(
    f: BooleanFunction, spec: ParityCheckSpec, *, workers: int | None = None
) -> BiasReport:
    """Ground-truth bias by exhausting the relation's free bits directly.

    Works on the original variable numbering and never consults the
    repetition map: offsets are grouped by residue modulo each period, one
    independent bit per group, and the relation is evaluated for every
    assignment.  Under a PASS verdict the bit count is
    k * 2**(s-1) + (n-k) * 2**s.
    """
    verdict = _require_valid(f, spec, warn_weak=False)
    per_term, free_bits = _oracle_slot_pairs(spec)
    if free_bits > MAX_ORACLE_FREE_BITS:
        raise BudgetError(
            f"{free_bits} free bits exceed the {MAX_ORACLE_FREE_BITS}-bit oracle budget"
        )
    ones = indexed_xor_ones(f.table, per_term, free_bits, workers=workers)
    exact = DyadicRational((1 << free_bits) - 2 * ones, free_bits)
    bound = _linear_bound_from(_span_coefficients(f, spec), spec)
    op_count = (1 << free_bits) * (1 << spec.s)
    return _make_report(
        verdict, bound, op_count, 1 << spec.n, exact=exact, method="oracle"
    )


# -- bounds and closed forms --------------------------------------------------


def lower_bound_linear(f: BooleanFunction, spec: ParityCheckSpec) -> LinearBound:
    """Best piling-up bound over the linear functions of the named variables.

    Returns max over masks a in their span of bias(f xor phi_a)**(2**s),
    together with the maximizing mask (original numbering).  Valid even when
    the all-ones coefficient vanishes.
    """
    _require_function(f, spec)
    return _linear_bound_from(_span_coefficients(f, spec), spec)


@dataclass(frozen=True)
class SeparableApproximation:
    """A k-variable function certified to split as a xor over the spec's blocks.

    `function` takes the named variables in relabeled order; parts[i] is the
    block-i component (constant term folded into the first part).
    """

    function: BooleanFunction
    parts: tuple[BooleanFunction, ...]
    block_sizes: tuple[int, ...]

    @classmethod
    def build(cls, g: BooleanFunction, spec: ParityCheckSpec) -> "SeparableApproximation":
        sizes = tuple(len(b) for b in spec.blocks)
        if g.n != sum(sizes):
            raise ValueError(
                f"approximation must take k={sum(sizes)} variables, got {g.n}"
            )
        constant = g(0)
        parts = []
        offset = 0
        for size in sizes:
            table = [g(u << offset) ^ constant for u in range(1 << size)]
            parts.append(BooleanFunction(size, table))
            offset += size
        if constant:
            first = parts[0]
            parts[0] = BooleanFunction(first.n, first.table ^ 1)
        span = np.arange(1 << g.n, dtype=np.int64)
        rebuilt = np.zeros(1 << g.n, dtype=np.uint8)
        offset = 0
        for part, size in zip(parts, sizes):
            rebuilt ^= part.table[(span >> offset) & ((1 << size) - 1)]
            offset += size
        if not np.array_equal(rebuilt, g.table):
            raise NotSeparableError(
                "function does not factor as a xor over the block partition"
            )
        return cls(function=g, parts=tuple(parts), block_sizes=sizes)


def lower_bound_separable(
    f: BooleanFunction,
    g: SeparableApproximation | BooleanFunction,
    spec: ParityCheckSpec,
) -> DyadicRational:
    """Piling-up bound bias(f xor g)**(2**s) for a block-separable g.

    Always a true lower bound on the exact relation bias.  g is certified (or
    re-certified) to factor over the spec's block partition.
    """
    _require_function(f, spec)
    if isinstance(g, BooleanFunction):
        g = SeparableApproximation.build(g, spec)
    elif g.block_sizes != tuple(len(b) for b in spec.blocks):
        raise NotSeparableError("approximation was built for a different partition")
    g_on_named = g.function.table[_named_projection(spec)]
    disagreements = int(np.count_nonzero(f.table ^ g_on_named))
    agreement_bias = DyadicRational((1 << spec.n) - 2 * disagreements, spec.n)
    return agreement_bias ** (1 << spec.s)


def closed_form_single_coefficient(
    f: BooleanFunction, spec: ParityCheckSpec
) -> BiasReport | None:
    """Closed-form exact bias when a single named-span coefficient is nonzero.

    Applies whenever exactly one linear function of the named variables is
    correlated with f; the exact bias is then that bias raised to 2**s.  For a
    (k-1)-resilient combiner the surviving mask is the all-ones word on the
    named variables.  Returns None when the hypothesis fails.
    """
    _require_function(f, spec)
    verdict = validate_independence(spec)
    coeffs = _span_coefficients(f, spec)
    nonzero = np.flatnonzero(coeffs)
    if len(nonzero) != 1:
        return None
    idx = int(nonzero[0])
    exact = DyadicRational(int(coeffs[idx]), spec.n) ** (1 << spec.s)
    bound = _linear_bound_from(coeffs, spec)
    return _make_report(
        verdict,
        bound,
        op_count=1 << spec.k,
        precompute_ops=1 << spec.n,
        exact=exact,
        method="closed-form",
    )


def bound_report(f: BooleanFunction, spec: ParityCheckSpec) -> BiasReport:
    """Bounds-only report: the plateaued bound when applicable, else just the
    linear piling-up lower bound."""
    report = plateaued_bound(f, spec)
    if report is not None:
        return report
    _require_function(f, spec)
    verdict = validate_independence(spec)
    bound = lower_bound_linear(f, spec)
    return _make_report(
        verdict, bound, op_count=1 << spec.k, precompute_ops=1 << spec.n
    )


def plateaued_bound_value(
    support_size: int, amplitude: DyadicRational, s: int
) -> DyadicRational:
    """The plateaued upper bound |A|**(2**(s-1)) * amplitude**(2**s)."""
    return DyadicRational(support_size ** (1 << (s - 1))) * (amplitude ** (1 << s))


def plateaued_bound(
    f: BooleanFunction, spec: ParityCheckSpec
) -> BiasReport | None:
    """Upper bound |A|**(2**(s-1)) * amplitude**(2**s) for plateaued combiners.

    Requires f plateaued and exactly (k-2)-resilient; A collects the
    named-span masks with nonzero coefficient.  The report's
    equality_condition_met flag evaluates the tightness predicate: some block
    shift M_i is a period of every variable that appears complemented in A
    (i.e. is zero in some mask of A).  Returns None when the hypotheses fail.
    """
    _require_function(f, spec)
    amplitude = plateaued_amplitude(f)
    if amplitude is None:
        return None
    if resiliency_order(f) != spec.k - 2:
        return None
    verdict = validate_independence(spec)
    coeffs = _span_coefficients(f, spec)
    support = np.flatnonzero(coeffs)
    bound_value = plateaued_bound_value(len(support), amplitude, spec.s)
    complemented: set[int] = set()
    order = spec.variable_order
    for a in support:
        for position in range(1, spec.k + 1):
            if not (int(a) >> (position - 1)) & 1:
                complemented.add(order[position - 1])
    met = any(
        all(shift % spec.periods[var - 1] == 0 for var in complemented)
        for shift in spec.shifts
    )
    linear = _linear_bound_from(coeffs, spec)
    return _make_report(
        verdict,
        linear,
        op_count=1 << spec.k,
        precompute_ops=1 << spec.n,
        plateaued=bound_value,
        equality=met,
    )
