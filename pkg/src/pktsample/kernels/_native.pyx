# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernels: bit-identical twin of ``pure.py``.

Same SplitMix64 stream, same mask-and-reject bounded draws, same draw
order everywhere.  Keep the two modules in lockstep; the test suite
diffs their outputs whenever this extension is importable.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int64_t, uint64_t

MASK64 = (1 << 64) - 1

cdef uint64_t _GAMMA = 0x9E3779B97F4A7C15UL
cdef uint64_t _MUL1 = 0xBF58476D1CE4E5B9UL
cdef uint64_t _MUL2 = 0x94D049BB133111EBUL

GAMMA = _GAMMA


cdef inline uint64_t _mix64(uint64_t z):
    z = (z ^ (z >> 30)) * _MUL1
    z = (z ^ (z >> 27)) * _MUL2
    return z ^ (z >> 31)


cdef inline uint64_t _next_u64(uint64_t *state):
    state[0] = state[0] + _GAMMA
    return _mix64(state[0])


cdef inline uint64_t _randbelow(uint64_t *state, uint64_t bound):
    cdef uint64_t mask = 0
    cdef uint64_t span = bound - 1
    cdef uint64_t value
    if bound <= 1:
        return 0
    while span:
        mask = (mask << 1) | 1
        span >>= 1
    while True:
        value = _next_u64(state) & mask
        if value < bound:
            return value


def mix64(z):
    """SplitMix64 output finalizer (two multiply-xorshift rounds)."""
    return _mix64(<uint64_t> (z & MASK64))


def derive_seed(seed, index):
    """Derive the substream seed for ``index`` (stratum or trial number)."""
    cdef uint64_t s = <uint64_t> ((seed + GAMMA * (index + 1)) & MASK64)
    return _mix64(s)


cdef class Rng:
    """SplitMix64 stream over a 64-bit seed."""

    cdef uint64_t state

    def __init__(self, seed):
        self.state = <uint64_t> (seed & MASK64)

    def next_u64(self):
        return _next_u64(&self.state)

    def randbelow(self, bound):
        """Uniform integer in [0, bound) via mask-and-reject."""
        return _randbelow(&self.state, <uint64_t> bound)


def permutation(count, seed):
    """Fisher-Yates permutation of 0..count-1, high index downward."""
    cdef int64_t n = count
    cdef uint64_t state = <uint64_t> (seed & MASK64)
    cdef int64_t i, j, tmp
    cdef int64_t *items = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(n, 1))
    if items == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            items[i] = i
        for i in range(n - 1, 0, -1):
            j = <int64_t> _randbelow(&state, <uint64_t> (i + 1))
            tmp = items[i]
            items[i] = items[j]
            items[j] = tmp
        return [items[i] for i in range(n)]
    finally:
        PyMem_Free(items)


def sample_without_replacement(population, count, seed):
    """Uniform simple random sample of distinct 1-based positions, ascending.

    Partial Fisher-Yates over 0..population-1; whole population (and no
    PRNG consumption) when ``count >= population``.
    """
    cdef int64_t pop = population
    cdef int64_t n = count
    cdef uint64_t state = <uint64_t> (seed & MASK64)
    cdef int64_t i, j, taken
    cdef int64_t *table
    cdef list out
    if n >= pop:
        return list(range(1, pop + 1))
    table = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(pop, 1))
    if table == NULL:
        raise MemoryError()
    try:
        for i in range(pop):
            table[i] = i
        out = []
        for i in range(n):
            j = i + <int64_t> _randbelow(&state, <uint64_t> (pop - i))
            taken = table[j]
            table[j] = table[i]
            out.append(taken + 1)
        out.sort()
        return out
    finally:
        PyMem_Free(table)


def sample_with_replacement(population, count, seed):
    """``count`` independent uniform draws of 1-based positions, draw order."""
    cdef int64_t pop = population
    cdef int64_t n = count
    cdef uint64_t state = <uint64_t> (seed & MASK64)
    cdef int64_t i
    return [<int64_t> _randbelow(&state, <uint64_t> pop) + 1 for i in range(n)]


cdef struct TrialBuffers:
    int64_t *lookup
    int64_t *table
    int64_t *undo_index
    int64_t *undo_value
    int64_t *per_class


cdef int _alloc_buffers(TrialBuffers *buf, int64_t pop, int64_t draw, int64_t n_classes) except -1:
    buf.lookup = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(pop, 1))
    buf.table = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(pop, 1))
    buf.undo_index = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(draw, 1))
    buf.undo_value = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(draw, 1))
    buf.per_class = <int64_t *> PyMem_Malloc(sizeof(int64_t) * max(n_classes, 1))
    if (buf.lookup == NULL or buf.table == NULL or buf.undo_index == NULL
            or buf.undo_value == NULL or buf.per_class == NULL):
        _free_buffers(buf)
        raise MemoryError()
    return 0


cdef void _free_buffers(TrialBuffers *buf):
    PyMem_Free(buf.lookup)
    PyMem_Free(buf.table)
    PyMem_Free(buf.undo_index)
    PyMem_Free(buf.undo_value)
    PyMem_Free(buf.per_class)


cdef void _fill_lookup(TrialBuffers *buf, list counts, int64_t pop):
    cdef int64_t pos = 0
    cdef int64_t cls, c, k
    for cls in range(len(counts)):
        c = counts[cls]
        for k in range(c):
            buf.lookup[pos] = cls
            pos += 1
    for k in range(pop):
        buf.table[k] = k


def missing_class_trials(counts, draw, trials, seed, with_replacement=False):
    """Per-trial missing-class counts for repeated uniform sampling."""
    cdef list counts_list = list(counts)
    cdef int64_t n_classes = len(counts_list)
    cdef int64_t pop = 0
    cdef int64_t i
    for i in range(n_classes):
        pop += <int64_t> counts_list[i]
    cdef int64_t n_draw = draw
    cdef bint wr = with_replacement
    if not wr and n_draw > pop:
        n_draw = pop
    cdef TrialBuffers buf
    _alloc_buffers(&buf, pop, n_draw, n_classes)
    cdef uint64_t base = <uint64_t> (seed & MASK64)
    cdef uint64_t state
    cdef int64_t trial, j, taken, cls, found, undo_top
    cdef list results = []
    try:
        _fill_lookup(&buf, counts_list, pop)
        for i in range(n_classes):
            buf.per_class[i] = -1
        for trial in range(trials):
            state = _mix64(base + _GAMMA * (<uint64_t> trial + 1))
            found = 0
            if wr:
                for i in range(n_draw):
                    cls = buf.lookup[<int64_t> _randbelow(&state, <uint64_t> pop)]
                    if buf.per_class[cls] != trial:
                        buf.per_class[cls] = trial
                        found += 1
            else:
                undo_top = 0
                for i in range(n_draw):
                    j = i + <int64_t> _randbelow(&state, <uint64_t> (pop - i))
                    taken = buf.table[j]
                    buf.undo_index[undo_top] = j
                    buf.undo_value[undo_top] = taken
                    undo_top += 1
                    buf.table[j] = buf.table[i]
                    cls = buf.lookup[taken]
                    if buf.per_class[cls] != trial:
                        buf.per_class[cls] = trial
                        found += 1
                while undo_top > 0:
                    undo_top -= 1
                    buf.table[buf.undo_index[undo_top]] = buf.undo_value[undo_top]
            results.append(n_classes - found)
        return results
    finally:
        _free_buffers(&buf)


def class_total_trials(counts, draw, trials, seed, with_replacement=False):
    """Summed per-class sampled counts over ``trials`` substream runs."""
    cdef list counts_list = list(counts)
    cdef int64_t n_classes = len(counts_list)
    cdef int64_t pop = 0
    cdef int64_t i
    for i in range(n_classes):
        pop += <int64_t> counts_list[i]
    cdef int64_t n_draw = draw
    cdef bint wr = with_replacement
    if not wr and n_draw > pop:
        n_draw = pop
    cdef TrialBuffers buf
    _alloc_buffers(&buf, pop, n_draw, n_classes)
    cdef uint64_t base = <uint64_t> (seed & MASK64)
    cdef uint64_t state
    cdef int64_t trial, j, taken, undo_top
    try:
        _fill_lookup(&buf, counts_list, pop)
        for i in range(n_classes):
            buf.per_class[i] = 0
        for trial in range(trials):
            state = _mix64(base + _GAMMA * (<uint64_t> trial + 1))
            if wr:
                for i in range(n_draw):
                    buf.per_class[buf.lookup[<int64_t> _randbelow(&state, <uint64_t> pop)]] += 1
            else:
                undo_top = 0
                for i in range(n_draw):
                    j = i + <int64_t> _randbelow(&state, <uint64_t> (pop - i))
                    taken = buf.table[j]
                    buf.undo_index[undo_top] = j
                    buf.undo_value[undo_top] = taken
                    undo_top += 1
                    buf.table[j] = buf.table[i]
                    buf.per_class[buf.lookup[taken]] += 1
                while undo_top > 0:
                    undo_top -= 1
                    buf.table[buf.undo_index[undo_top]] = buf.undo_value[undo_top]
        return [buf.per_class[i] for i in range(n_classes)]
    finally:
        _free_buffers(&buf)
