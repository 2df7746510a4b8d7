"""Pure-Python sampling kernels.

This module is the reference implementation of the deterministic core
every sampler builds on.  A compiled twin lives in ``_native.pyx``; the
two must produce bit-identical output for equal inputs, which the test
suite enforces whenever the extension is importable.

PRNG contract
-------------
All randomness comes from SplitMix64 (Steele, Lea & Flood): the state
advances by the 64-bit golden-ratio constant and each output is the
standard two-round multiply-xorshift finalizer.  Seeds are taken modulo
2**64.  Bounded draws use mask-and-reject: draw 64 bits, mask down to
the smallest covering power of two, reject values >= bound.  A bound of
1 consumes no PRNG output.  Substreams (one per stratum, one per Monte
Carlo trial) are derived as ``mix64(seed + GAMMA * (index + 1))`` so
that adding a stratum or trial never perturbs earlier streams.

Every function here is a pure function of its arguments; golden output
vectors for pinned seeds are committed under ``tests/golden/``.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15

_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 output finalizer (two multiply-xorshift rounds)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Derive the substream seed for ``index`` (stratum or trial number)."""
    return mix64((seed + GAMMA * (index + 1)) & MASK64)


class Rng:
    """SplitMix64 stream over a 64-bit seed."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound) via mask-and-reject."""
        if bound <= 1:
            return 0
        mask = (1 << (bound - 1).bit_length()) - 1
        while True:
            value = self.next_u64() & mask
            if value < bound:
                return value


def permutation(count: int, seed: int) -> list[int]:
    """Fisher-Yates permutation of 0..count-1, high index downward."""
    items = list(range(count))
    rng = Rng(seed)
    for i in range(count - 1, 0, -1):
        j = rng.randbelow(i + 1)
        items[i], items[j] = items[j], items[i]
    return items


def sample_without_replacement(population: int, count: int, seed: int) -> list[int]:
    """Uniform simple random sample of distinct 1-based positions, ascending.

    Runs a partial Fisher-Yates over the virtual array 0..population-1,
    tracking only touched slots, then sorts the selection.  When
    ``count >= population`` the whole population is returned and no PRNG
    output is consumed.
    """
    if count >= population:
        return list(range(1, population + 1))
    rng = Rng(seed)
    swaps: dict[int, int] = {}
    out = []
    for i in range(count):
        j = i + rng.randbelow(population - i)
        taken = swaps.get(j, j)
        swaps[j] = swaps.get(i, i)
        out.append(taken + 1)
    out.sort()
    return out


def sample_with_replacement(population: int, count: int, seed: int) -> list[int]:
    """``count`` independent uniform draws of 1-based positions, draw order."""
    rng = Rng(seed)
    return [rng.randbelow(population) + 1 for _ in range(count)]


def _class_lookup(counts: list[int]) -> list[int]:
    """Expand per-class counts into a position -> class-index table."""
    lookup = []
    for index, count in enumerate(counts):
        lookup.extend([index] * count)
    return lookup


def missing_class_trials(
    counts: list[int],
    draw: int,
    trials: int,
    seed: int,
    with_replacement: bool = False,
) -> list[int]:
    """Per-trial missing-class counts for repeated uniform sampling.

    The population is the concatenation of class blocks sized by
    ``counts``; trial ``t`` runs on the substream ``derive_seed(seed, t)``.
    Exchangeability makes the block layout statistically identical to any
    record ordering for uniform draws.
    """
    population = sum(counts)
    n_classes = len(counts)
    lookup = _class_lookup(counts)
    draw = min(draw, population) if not with_replacement else draw
    seen = [-1] * n_classes
    results = []
    for trial in range(trials):
        rng = Rng(derive_seed(seed, trial))
        randbelow = rng.randbelow
        found = 0
        if with_replacement:
            for _ in range(draw):
                cls = lookup[randbelow(population)]
                if seen[cls] != trial:
                    seen[cls] = trial
                    found += 1
        else:
            swaps: dict[int, int] = {}
            get = swaps.get
            for i in range(draw):
                j = i + randbelow(population - i)
                taken = get(j, j)
                swaps[j] = get(i, i)
                cls = lookup[taken]
                if seen[cls] != trial:
                    seen[cls] = trial
                    found += 1
        results.append(n_classes - found)
    return results


def class_total_trials(
    counts: list[int],
    draw: int,
    trials: int,
    seed: int,
    with_replacement: bool = False,
) -> list[int]:
    """Summed per-class sampled counts over ``trials`` substream runs."""
    population = sum(counts)
    lookup = _class_lookup(counts)
    draw = min(draw, population) if not with_replacement else draw
    totals = [0] * len(counts)
    for trial in range(trials):
        rng = Rng(derive_seed(seed, trial))
        randbelow = rng.randbelow
        if with_replacement:
            for _ in range(draw):
                totals[lookup[randbelow(population)]] += 1
        else:
            swaps: dict[int, int] = {}
            get = swaps.get
            for i in range(draw):
                j = i + randbelow(population - i)
                taken = get(j, j)
                swaps[j] = get(i, i)
                totals[lookup[taken]] += 1
    return totals
