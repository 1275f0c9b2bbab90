#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 2026

This module holds the spirality algebra: exact value sets over doubled
spiralities, Cartesian sums (shift-OR over Python integers, with an optional
numpy FFT convolution path), the series and parallel composition rules, the
support tree used to reroot S-nodes, and the measurement of the spirality of
a component inside a realized orthogonal representation.

Spiralities can be semi-integers, so every value is stored doubled.

Written in Python 3.6
"""
import itertools
import logging
from collections import deque, namedtuple

import numpy as np

from orthotest.config import get_config
from orthotest.errors import RepresentationError

logger = logging.getLogger(__name__)


################################################################################
## VALUES AND SETS
################################################################################

class SpiralityValue(namedtuple('SpiralityValue', ['doubled'])):
    """A spirality stored as twice its value."""
    __slots__ = ()

    @property
    def sigma(self):
        return doubled_to_sigma(self.doubled)


def doubled_to_sigma(doubled):
    """Convert a doubled value to an int, or a float for semi-integers."""
    return doubled // 2 if doubled % 2 == 0 else doubled / 2


def sigma_to_doubled(sigma):
    doubled = round(2 * sigma)
    if abs(doubled - 2 * sigma) > 1e-9:
        raise ValueError(f"{sigma} is neither an integer nor a semi-integer")
    return int(doubled)


class SpiralitySet(object):
    """Immutable set of doubled spirality values.

    The set is an offset plus a Python integer used as a bitset: bit i set
    means the doubled value offset + i is admitted. Instances are normalized
    so that bit 0 is set (or the set is empty with offset 0), which makes
    equality structural.
    """
    __slots__ = ('offset', 'bits')

    def __init__(self, offset=0, bits=0):
        if bits < 0:
            raise ValueError("bitset must be non-negative")
        if bits == 0:
            offset = 0
        else:
            low = (bits & -bits).bit_length() - 1
            bits >>= low
            offset += low
        object.__setattr__(self, 'offset', offset)
        object.__setattr__(self, 'bits', bits)

    def __setattr__(self, name, value):
        raise AttributeError("SpiralitySet is immutable")

    @classmethod
    def from_doubled(cls, values):
        values = sorted(set(int(v) for v in values))
        if not values:
            return cls()
        bits = 0
        for v in values:
            bits |= 1 << (v - values[0])
        return cls(values[0], bits)

    @classmethod
    def from_values(cls, sigmas):
        return cls.from_doubled(sigma_to_doubled(s) for s in sigmas)

    @classmethod
    def from_range(cls, lo, hi, step=2):
        """Doubled values lo, lo+step, ..., hi."""
        if hi < lo:
            return cls()
        bits = 0
        for i in range(0, hi - lo + 1, step):
            bits |= 1 << i
        return cls(lo, bits)

    @property
    def is_empty(self):
        return self.bits == 0

    def __bool__(self):
        return self.bits != 0

    def __len__(self):
        return bin(self.bits).count('1')

    def __eq__(self, other):
        return (isinstance(other, SpiralitySet) and self.offset == other.offset
                and self.bits == other.bits)

    def __hash__(self):
        return hash((self.offset, self.bits))

    def __repr__(self):
        return f"SpiralitySet({self.to_halves()})"

    def doubled_values(self):
        bits, offset, out = self.bits, self.offset, []
        i = 0
        while bits:
            if bits & 1:
                out.append(offset + i)
            bits >>= 1
            i += 1
        return out

    def values(self):
        return [doubled_to_sigma(d) for d in self.doubled_values()]

    def to_halves(self):
        """Sorted list of spiralities (ints, or floats for semi-integers)."""
        return self.values()

    @property
    def min_doubled(self):
        return self.offset if self.bits else None

    @property
    def max_doubled(self):
        return self.offset + self.bits.bit_length() - 1 if self.bits else None

    def has(self, doubled):
        i = doubled - self.offset
        return i >= 0 and (self.bits >> i) & 1 == 1

    def admits(self, sigma):
        return self.has(sigma_to_doubled(sigma))

    def shift(self, delta):
        return SpiralitySet(self.offset + delta, self.bits) if self.bits else self

    def negate(self):
        if not self.bits:
            return self
        width = self.bits.bit_length()
        reversed_bits = int(format(self.bits, f'0{width}b')[::-1], 2)
        return SpiralitySet(-(self.offset + width - 1), reversed_bits)

    def _aligned(self, other):
        base = min(self.offset, other.offset)
        return (base, self.bits << (self.offset - base),
                other.bits << (other.offset - base))

    def union(self, other):
        if not other.bits:
            return self
        if not self.bits:
            return other
        base, a, b = self._aligned(other)
        return SpiralitySet(base, a | b)

    def intersect(self, other):
        if not self.bits or not other.bits:
            return SpiralitySet()
        base, a, b = self._aligned(other)
        return SpiralitySet(base, a & b)

    def nonnegative(self):
        """Restriction to values >= 0 (the non-negative part of the set)."""
        if not self.bits or self.offset >= 0:
            return self
        return SpiralitySet(0, self.bits >> (-self.offset))

    def is_symmetric(self):
        return self == self.negate()


EMPTY = SpiralitySet()
ZERO = SpiralitySet(0, 1)


################################################################################
## CARTESIAN SUMS
################################################################################

def _bits_to_array(bits):
    width = bits.bit_length()
    raw = bits.to_bytes((width + 7) // 8, 'little')
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8),
                         bitorder='little')[:width].astype(np.float64)


def _array_to_bits(array):
    packed = np.packbits(array.astype(np.uint8), bitorder='little')
    return int.from_bytes(packed.tobytes(), 'little')


def _fft_sum_bits(a_bits, b_bits):
    a = _bits_to_array(a_bits)
    b = _bits_to_array(b_bits)
    size = len(a) + len(b) - 1
    nfft = 1 << (size - 1).bit_length()
    product = np.fft.irfft(np.fft.rfft(a, nfft) * np.fft.rfft(b, nfft), nfft)
    return _array_to_bits(product[:size] > 0.5)


def _shift_or_sum_bits(a_bits, b_bits):
    if bin(a_bits).count('1') < bin(b_bits).count('1'):
        a_bits, b_bits = b_bits, a_bits
    out, i = 0, 0
    while b_bits:
        if b_bits & 1:
            out |= a_bits << i
        b_bits >>= 1
        i += 1
    return out


def cartesian_sum(a, b, config=None):
    """{x + y : x in a, y in b}; empty when either operand is empty."""
    if not a.bits or not b.bits:
        return EMPTY
    config = get_config(config)
    if (config.USE_FFT and a.bits.bit_length() >= config.FFT_MIN_BITS
            and b.bits.bit_length() >= config.FFT_MIN_BITS):
        bits = _fft_sum_bits(a.bits, b.bits)
    else:
        bits = _shift_or_sum_bits(a.bits, b.bits)
    return SpiralitySet(a.offset + b.offset, bits)


def q_star_set(length):
    """All integer spiralities in [-(length-1), length-1]."""
    if length < 1:
        raise ValueError(f"chain length must be >= 1, got {length}")
    return SpiralitySet.from_range(-2 * (length - 1), 2 * (length - 1), 2)


def compose_series(child_sets, config=None):
    result = ZERO
    for s in child_sets:
        result = cartesian_sum(result, s, config)
        if not result:
            return EMPTY
    return result


################################################################################
## PARALLEL COMPOSITION
################################################################################

P3Choice = namedtuple('P3Choice', ['order', 'values'])
P2Choice = namedtuple('P2Choice', ['order', 'joins', 'values'])
# alpha and k are dicts keyed 'ul', 'ur', 'vl', 'vr'; k holds 2k (1 or 2)
ParallelJoinVars = namedtuple('ParallelJoinVars', ['alpha', 'k'])

ALPHA_KEYS = ('ul', 'ur', 'vl', 'vr')
FREE_ALPHA = {key: (0, 1) for key in ALPHA_KEYS}


def compose_parallel3(sets, target):
    """Feasible left-to-right orders of a three-child P-node at a doubled target.

    The left child must admit target+4, the centre the target and the right
    child target-4 (all doubled)."""
    choices = []
    for order in itertools.permutations(range(3)):
        l, c, r = order
        if (sets[l].has(target + 4) and sets[c].has(target)
                and sets[r].has(target - 4)):
            choices.append(P3Choice(order, (target + 4, target, target - 4)))
    return choices


def compose_parallel3_set(sets):
    if any(not s for s in sets):
        return EMPTY
    result = EMPTY
    for l, c, r in itertools.permutations(range(3)):
        part = sets[l].shift(-4).intersect(sets[c]).intersect(sets[r].shift(4))
        result = result.union(part)
    return result


def join_coefficients(child_indegrees, outdegrees):
    """Doubled k coefficients per child and pole.

    child_indegrees holds (indeg at u, indeg at v) per child; outdegrees holds
    (outdeg at u, outdeg at v) of the P-node. 2k is 2 when both the child's
    indegree and the P-node's outdegree at the pole are 1, else 1."""
    coefficients = []
    for indeg_u, indeg_v in child_indegrees:
        coefficients.append((
            2 if indeg_u == 1 and outdegrees[0] == 1 else 1,
            2 if indeg_v == 1 and outdegrees[1] == 1 else 1,
        ))
    return tuple(coefficients)


def alpha_assignments(alpha_choices=None):
    """All alpha tuples respecting the per-key choices and 1 <= l+r <= 2."""
    choices = dict(FREE_ALPHA)
    if alpha_choices:
        choices.update(alpha_choices)
    out = []
    for values in itertools.product(*(choices[key] for key in ALPHA_KEYS)):
        alpha = dict(zip(ALPHA_KEYS, values))
        if alpha['ul'] + alpha['ur'] >= 1 and alpha['vl'] + alpha['vr'] >= 1:
            out.append(alpha)
    return out


def _join_shifts(coefficients, order, alpha):
    left, right = order
    k = {'ul': coefficients[left][0], 'vl': coefficients[left][1],
         'ur': coefficients[right][0], 'vr': coefficients[right][1]}
    left_shift = k['ul'] * alpha['ul'] + k['vl'] * alpha['vl']
    right_shift = k['ur'] * alpha['ur'] + k['vr'] * alpha['vr']
    return ParallelJoinVars(dict(alpha), k), left_shift, right_shift


def compose_parallel2(sets, coefficients, target, alpha_choices=None):
    """Feasible (order, alpha) choices of a two-child P-node at a doubled target.

    For order (l, r): child l must admit target + shift_l and child r must
    admit target - shift_r, where shift_d sums 2k*alpha over both poles."""
    choices = []
    for order in ((0, 1), (1, 0)):
        for alpha in alpha_assignments(alpha_choices):
            joins, left_shift, right_shift = _join_shifts(coefficients, order, alpha)
            lv, rv = target + left_shift, target - right_shift
            if sets[order[0]].has(lv) and sets[order[1]].has(rv):
                choices.append(P2Choice(order, joins, (lv, rv)))
    return choices


def compose_parallel2_set(sets, coefficients, alpha_choices=None):
    if any(not s for s in sets):
        return EMPTY
    result = EMPTY
    for order in ((0, 1), (1, 0)):
        for alpha in alpha_assignments(alpha_choices):
            _, left_shift, right_shift = _join_shifts(coefficients, order, alpha)
            part = sets[order[0]].shift(-left_shift).intersect(
                sets[order[1]].shift(right_shift))
            result = result.union(part)
    return result


################################################################################
## SUPPORT TREE
################################################################################

class SupportTree(object):
    """Complete binary tree of partial Cartesian sums over an S-node's children.

    Leaves are padded with {0} dummies up to the next power of two; each
    internal node stores the sum of its two children. delta_without(j) sums
    the siblings along the path from leaf j to the root, which is the sum of
    every child set except the j-th.
    """
    def __init__(self, child_sets, config=None):
        if len(child_sets) < 2:
            raise ValueError("a support tree needs at least two children")
        self.config = config
        self.size = len(child_sets)
        width = 1
        while width < self.size:
            width *= 2
        self.width = width
        self.dummies = width - self.size
        self.nodes = [EMPTY] * (2 * width)
        for i, s in enumerate(list(child_sets) + [ZERO] * self.dummies):
            self.nodes[width + i] = s
        for i in range(width - 1, 0, -1):
            self.nodes[i] = cartesian_sum(self.nodes[2 * i], self.nodes[2 * i + 1],
                                          config)

    @property
    def root(self):
        return self.nodes[1]

    def leaf(self, j):
        return self.nodes[self.width + j]

    def delta_without(self, j):
        if not 0 <= j < self.size:
            raise IndexError(j)
        result = ZERO
        index = self.width + j
        while index > 1:
            result = cartesian_sum(result, self.nodes[index ^ 1], self.config)
            index //= 2
        return result


def build_support_tree(child_sets, config=None):
    return SupportTree(child_sets, config)


def delta_without(tree, j):
    return tree.delta_without(j)


def reroot_series(tree, j, parent_set, config=None):
    """Set of an S-node whose j-th neighbour became its parent and whose former
    parent, with set parent_set, became a child."""
    return cartesian_sum(tree.delta_without(j), parent_set, config)


################################################################################
## MEASUREMENT
################################################################################

def turn_value(d_in, d_out):
    """+1 for a right turn, -1 for a left turn, 0 when straight."""
    delta = (d_out - d_in) % 4
    if delta == 2:
        raise RepresentationError("U-turn along a spine")
    return {0: 0, 1: -1, 3: 1}[delta]


def _pole_path(block, edge_ids, u, v):
    allowed = set(edge_ids)
    previous = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for e in sorted(block.adjacency[x]):
            if e not in allowed:
                continue
            y = block.other(e, x)
            if y not in previous:
                previous[y] = x
                queue.append(y)
    if v not in previous:
        raise RepresentationError("poles are not connected inside the component")
    path = [v]
    while path[-1] != u:
        path.append(previous[path[-1]])
    return path[::-1]


def measure_spirality(rep, node, view, path=None):
    """Spirality of a component inside a realized representation.

    rep must expose direction(a, b) for every edge of the block the view was
    built on. `path` may fix the pole-to-pole path; by default a BFS path
    inside the pertinent graph is used."""
    u, v = view.poles(node)
    if path is None:
        path = _pole_path(view.block, view.pertinent_edges(node), u, v)
    elif path[0] != u or path[-1] != v:
        raise RepresentationError("path does not run between the poles")
    doubled = 0
    for i in range(1, len(path) - 1):
        doubled += 2 * turn_value(rep.direction(path[i - 1], path[i]),
                                  rep.direction(path[i], path[i + 1]))
    if len(path) < 2:
        raise RepresentationError("degenerate pole path")
    # u side: travel from each alias into u, then along the first path edge
    first = rep.direction(path[0], path[1])
    doubled += _alias_contribution(rep, view, node, u, first, outgoing=True)
    last = rep.direction(path[-2], path[-1])
    doubled += _alias_contribution(rep, view, node, v, last, outgoing=False)
    return SpiralityValue(doubled)


def _alias_contribution(rep, view, node, pole, path_dir, outgoing):
    if view.indeg(node, pole) == 1:
        return 0
    outside = view.outside_neighbors(node, pole)
    if not outside:
        raise RepresentationError(f"pole {pole} has no outside edge")
    turns = []
    for x in outside:
        if outgoing:
            turns.append(turn_value((rep.direction(pole, x) + 2) % 4, path_dir))
        else:
            turns.append(turn_value(path_dir, rep.direction(pole, x)))
    total = 2 * sum(turns)
    if total % len(turns):
        raise RepresentationError("alias turns do not average to a half-integer")
    return total // len(turns)
