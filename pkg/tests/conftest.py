"""Shared test helpers: an independent brute-force reference and instance makers.

The reference bias below deliberately shares no code with the library's
enumeration kernels: it rebuilds the offsets from the raw spec fields and
walks the assignment space with plain Python ints and dicts.
"""

import math
import random
from fractions import Fraction
from itertools import product

import pytest

from pcbias import BooleanFunction, ParityCheckSpec, validate_independence

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]


def reference_model_bias(f: BooleanFunction, spec: ParityCheckSpec) -> Fraction:
    """Model bias by direct enumeration over one fresh bit per
    (variable, offset residue class).  Exact for any spec; O(2^bits)."""
    shifts = [
        q * math.lcm(*(spec.periods[v - 1] for v in block))
        for block, q in zip(spec.blocks, spec.multipliers)
    ]
    offsets = [
        sum(m for m, bit in zip(shifts, bits) if bit)
        for bits in product([0, 1], repeat=len(shifts))
    ]
    n = len(spec.periods)
    slots: dict[tuple[int, int], int] = {}
    for j in range(1, n + 1):
        for off in offsets:
            slots.setdefault((j, off % spec.periods[j - 1]), len(slots))
    width = len(slots)
    assert width <= 16, "reference oracle is for tiny instances only"
    total = 0
    for assignment in range(1 << width):
        pc = 0
        for off in offsets:
            x = 0
            for j in range(1, n + 1):
                bit = (assignment >> slots[(j, off % spec.periods[j - 1])]) & 1
                x |= bit << (j - 1)
            pc ^= f(x)
        total += 1 - 2 * pc
    return Fraction(total, 1 << width)


def random_pass_instance(
    rnd: random.Random,
    n_range=(2, 5),
    k_max=3,
    s_max=2,
    multiplier_choices=(1, 2, 3),
):
    """A random (function, spec) pair with a strong PASS independence verdict.

    Named variables are sampled and shuffled, so non-identity relabelings are
    exercised routinely.
    """
    for _ in range(500):
        n = rnd.randint(*n_range)
        k = rnd.randint(1, min(k_max, n))
        s = rnd.randint(1, min(s_max, k))
        named = rnd.sample(range(1, n + 1), k)
        cuts = sorted(rnd.sample(range(1, k), s - 1)) if s > 1 else []
        blocks, start = [], 0
        for cut in cuts + [k]:
            blocks.append(tuple(named[start:cut]))
            start = cut
        spec = ParityCheckSpec(
            periods=tuple(rnd.sample(SMALL_PRIMES, n)),
            blocks=tuple(blocks),
            multipliers=tuple(rnd.choice(multiplier_choices) for _ in range(s)),
        )
        if validate_independence(spec).status != "PASS":
            continue
        f = BooleanFunction(n, [rnd.randint(0, 1) for _ in range(1 << n)])
        return f, spec
    raise RuntimeError("could not sample a PASS instance")


@pytest.fixture(scope="session")
def pass_instances():
    """A reusable batch of random PASS instances (seeded, so stable)."""
    rnd = random.Random(20260810)
    return [random_pass_instance(rnd) for _ in range(210)]
