#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file holds the linear-time test for independent-parallel SP-graphs,
where no two P-nodes share a pole. There every non-negative spirality set
takes one of six shapes:

    [0]   [1]   [1,2]^1   [0,M]^1   [0,M]^2   [1,M]^2

where ^1 means all integers in the range and ^2 every other integer. An
Interval stores the shape in constant space, and the composition rules work
on shapes through membership probes instead of materialized sets.

Written in Python 3.6
"""
import logging
from collections import namedtuple

from orthotest.config import get_config
from orthotest.errors import ConstraintError, ConstructionError
from orthotest.realizer import NodeAssignment
from orthotest.sp_tester import chain_turns
from orthotest.spirality_core import SpiralitySet, alpha_assignments
from orthotest.spq_decomposition import (P_NODE, Q_NODE, S_NODE, RootedView,
                                         build_spq_star, is_independent_parallel)

logger = logging.getLogger(__name__)

EMPTY_SHAPE = 'empty'
TRIVIAL = 'trivial'
JUMP1 = 'jump1'
JUMP2 = 'jump2'

# values up to this bound are probed one by one; above it only the range
# and parity of each child matter
SMALL = 4

# root pairs never need spiralities beyond this bound, see root_check
PROBE_BOUND = 10


################################################################################
## INTERVALS
################################################################################

class Interval(namedtuple('Interval', ['shape', 'm', 'M'])):
    """Non-negative part of a symmetric spirality set.

    shape is 'trivial' ({M}), 'jump1' (every integer in [m, M]), 'jump2'
    (every integer in [m, M] with the parity of M) or 'empty'."""
    __slots__ = ()

    @classmethod
    def make(cls, shape, m, M):
        """Normalized constructor: degenerate ranges become trivial."""
        if shape == EMPTY_SHAPE:
            return EMPTY
        if m == M:
            return cls(TRIVIAL, M, M)
        return cls(shape, m, M)

    @property
    def is_empty(self):
        return self.shape == EMPTY_SHAPE

    def admits(self, sigma):
        """Membership of an integer spirality, either sign."""
        x = abs(sigma)
        if self.shape == EMPTY_SHAPE:
            return False
        if self.shape == TRIVIAL:
            return x == self.M
        if not self.m <= x <= self.M:
            return False
        return self.shape == JUMP1 or (self.M - x) % 2 == 0

    def to_set(self):
        """The full symmetric set, doubled."""
        if self.is_empty:
            return SpiralitySet()
        step = 1 if self.shape == JUMP1 else 2
        values = set()
        for x in range(self.m if self.shape != TRIVIAL else self.M, self.M + 1, step):
            values.update((x, -x))
        return SpiralitySet.from_values(values)

    @classmethod
    def from_set(cls, s):
        """Classify a symmetric set into one of the six shapes.

        Returns None when the set has no such shape (semi-integers, gaps or
        asymmetry)."""
        if not s:
            return EMPTY
        if not s.is_symmetric() or any(d % 2 for d in s.doubled_values()):
            return None
        values = [d // 2 for d in s.nonnegative().doubled_values()]
        M = values[-1]
        m = values[0]
        if len(values) == 1:
            candidate = cls.make(TRIVIAL, M, M)
        elif values == list(range(m, M + 1)):
            candidate = cls.make(JUMP1, m, M)
        elif values == list(range(m, M + 1, 2)):
            candidate = cls.make(JUMP2, m, M)
        else:
            return None
        if candidate.shape != TRIVIAL and m > 1:
            return None
        if candidate.shape == JUMP1 and m == 1 and M != 2:
            return None
        return candidate

    @property
    def label(self):
        if self.shape == EMPTY_SHAPE:
            return '{}'
        if self.shape == TRIVIAL:
            return f'[{self.M}]'
        return f"[{self.m},{self.M}]^{1 if self.shape == JUMP1 else 2}"

    def __str__(self):
        return self.label


EMPTY = Interval(EMPTY_SHAPE, 0, -1)


def _classify(admits, M):
    """Shape of a set given its maximum and a membership probe."""
    if M is None:
        return EMPTY
    if M == 0:
        return Interval.make(TRIVIAL, 0, 0)
    zero = admits(0)
    if M == 1:
        return Interval.make(JUMP1, 0, 1) if zero else Interval.make(TRIVIAL, 1, 1)
    if admits(M - 1):
        return Interval.make(JUMP1, 0 if zero else 1, M)
    return Interval.make(JUMP2, M % 2, M)


def _top(constraints):
    """Largest sigma >= 0 with every child admitting sigma + offset.

    `constraints` lists (interval, offset) pairs. Above SMALL each child
    only bounds sigma and possibly fixes its parity, so probing the two
    highest candidates decides; below it every value is probed."""
    if any(i.is_empty for i, _ in constraints):
        return None
    upper = min(i.M - offset for i, offset in constraints)

    def ok(sigma):
        return all(i.admits(sigma + offset) for i, offset in constraints)

    for sigma in (upper, upper - 1):
        if sigma > SMALL and ok(sigma):
            return sigma
    for sigma in range(min(upper, SMALL), -1, -1):
        if ok(sigma):
            return sigma
    return None


def _best(candidates):
    found = [c for c in candidates if c is not None]
    return max(found) if found else None


################################################################################
## NODE RULES
################################################################################

def interval_q(length):
    if length < 1:
        raise ValueError(f"chain length must be >= 1, got {length}")
    return Interval.make(JUMP1, 0, length - 1)


class SeriesCounters(namedtuple('SeriesCounters', ['n', 'x', 'y', 'z', 'M', 'empty'])):
    """Counts over the children of an S-node.

    x counts [0] children, y counts [1,2]^1 children, z counts jump-1
    children, M sums the maxima and empty counts empty children."""
    __slots__ = ()

    @classmethod
    def of(cls, intervals):
        counters = cls(0, 0, 0, 0, 0, 0)
        for interval in intervals:
            counters = counters.add(interval)
        return counters

    def _delta(self, interval, sign):
        if interval.is_empty:
            return self._replace(n=self.n + sign, empty=self.empty + sign)
        return SeriesCounters(
            self.n + sign,
            self.x + sign * (interval.shape == TRIVIAL and interval.M == 0),
            self.y + sign * (interval.shape == JUMP1 and interval.m == 1),
            self.z + sign * (interval.shape == JUMP1),
            self.M + sign * interval.M,
            self.empty)

    def add(self, interval):
        return self._delta(interval, 1)

    def remove(self, interval):
        return self._delta(interval, -1)


def reroot_counters(counters, removed, added):
    """Counters after the child with interval `removed` became the parent and
    the former parent, with interval `added`, became a child."""
    return counters.remove(removed).add(added)


def interval_series(counters):
    if counters.empty:
        return EMPTY
    M = counters.M
    if counters.z > 0:
        if M == 2 and counters.y == 1 and counters.x + counters.y == counters.n:
            return Interval.make(JUMP1, 1, 2)
        return Interval.make(JUMP1, 0, M)
    if M <= 1:
        return Interval.make(TRIVIAL, M, M)
    return Interval.make(JUMP2, M % 2, M)


_P3_ORDERS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def _p3_admits(children, sigma):
    return any(children[l].admits(sigma + 2) and children[c].admits(sigma)
               and children[r].admits(sigma - 2) for l, c, r in _P3_ORDERS)


def interval_p3(a, b, c):
    children = (a, b, c)
    M = _best(_top([(children[l], 2), (children[m], 0), (children[r], -2)])
              for l, m, r in _P3_ORDERS)
    return _classify(lambda s: _p3_admits(children, s), M)


def _join_offsets():
    """(left, right) spirality offsets over all alpha assignments, with
    unit join coefficients."""
    pairs = []
    for alpha in alpha_assignments():
        pair = (alpha['ul'] + alpha['vl'], alpha['ur'] + alpha['vr'])
        if pair not in pairs:
            pairs.append(pair)
    return tuple(pairs)


_P2_OFFSETS = _join_offsets()


def _p2_admits(children, sigma):
    return any(children[l].admits(sigma + left) and children[r].admits(sigma - right)
               for l, r in ((0, 1), (1, 0)) for left, right in _P2_OFFSETS)


def interval_p2(a, b):
    children = (a, b)
    M = _best(_top([(children[l], left), (children[r], -right)])
              for l, r in ((0, 1), (1, 0)) for left, right in _P2_OFFSETS)
    return _classify(lambda s: _p2_admits(children, s), M)


def root_window(length):
    """Spiralities of the root child compatible with a chain of `length`."""
    return 4 - (length - 1), 4 + (length - 1)


def root_pair(child, length):
    """Root child spirality with the smallest magnitude that closes the
    drawing with the reference chain, or None."""
    lo, hi = root_window(length)
    candidates = range(max(lo, -PROBE_BOUND), min(hi, PROBE_BOUND) + 1)
    for sigma in sorted(candidates, key=lambda x: (abs(x), x)):
        if child.admits(sigma):
            return sigma
    return None


def root_check(child, length):
    return root_pair(child, length) is not None


################################################################################
## TABLE
################################################################################

class IpTable(object):
    """Intervals of an SPQ*-tree keyed by (node, parent).

    S-nodes keep the counters of the children they had when first evaluated;
    every other parent is served by a constant-time counter update.

    Attributes:
        reroots (int): S-node sets obtained by a counter update.
    """
    def __init__(self, tree):
        self.tree = tree
        self._intervals = {}
        self._counters = {}
        self.reroots = 0

    def __len__(self):
        return len(self._intervals)

    def counters(self, node):
        """(base parent, counters) of an S-node evaluated at least once."""
        return self._counters.get(node)

    def interval_of(self, node, parent):
        key = (node, parent)
        if key in self._intervals:
            return self._intervals[key]
        stack = [key]
        while stack:
            top = stack[-1]
            if top in self._intervals:
                stack.pop()
                continue
            missing = [k for k in self._dependencies(*top) if k not in self._intervals]
            if missing:
                stack.extend(missing)
                continue
            self._intervals[top] = self._compute(*top)
            stack.pop()
        return self._intervals[key]

    def _dependencies(self, node, parent):
        rec = self.tree.nodes[node]
        if rec.kind == Q_NODE:
            return []
        if rec.kind == S_NODE and node in self._counters:
            base = self._counters[node][0]
            return [] if parent == base else [(base, node), (parent, node)]
        return [(c, node) for c in rec.neighbors if c != parent]

    def _compute(self, node, parent):
        rec = self.tree.nodes[node]
        if rec.kind == Q_NODE:
            return interval_q(rec.length)
        if rec.kind == P_NODE:
            kids = [self._intervals[(c, node)] for c in rec.neighbors if c != parent]
            if len(kids) == 3:
                return interval_p3(*kids)
            return interval_p2(*kids)
        if node not in self._counters:
            counters = SeriesCounters.of(self._intervals[(c, node)]
                                         for c in rec.neighbors if c != parent)
            self._counters[node] = (parent, counters)
        else:
            base, base_counters = self._counters[node]
            counters = reroot_counters(base_counters, self._intervals[(parent, node)],
                                       self._intervals[(base, node)])
            self.reroots += 1
        return interval_series(counters)


################################################################################
## TESTING
################################################################################

class IpWitness(object):
    """A root passing the interval root check, with sigma values in units."""
    def __init__(self, root, sigma_child, sigma_root, view, table):
        self.root = root
        self.sigma_child = sigma_child
        self.sigma_root = sigma_root
        self.view = view
        self.table = table
        self.assignment = None

    def to_dict(self):
        doc = {'kind': 'ip', 'root': self.root,
               'root_chain': list(self.view.oriented_chain(self.root)),
               'sigma_root_child': self.sigma_child,
               'sigma_root': self.sigma_root}
        if self.assignment is not None:
            doc['assignment'] = self.assignment.to_dict()
        return doc


def use_fast_path(g, config=None, tree=None):
    """Whether the interval test applies to block g under the configuration."""
    config = get_config(config)
    mode = str(config.FAST_PATH).lower()
    if mode == 'off':
        return False
    tree = tree if tree is not None else build_spq_star(g)
    if is_independent_parallel(tree):
        return True
    if mode == 'on':
        logger.warning("fast path requested but the block is not "
                       "independent-parallel; using the general test")
    return False


def test_ip(g, config=None, tree=None):
    """Interval test of an independent-parallel SP block.

    Returns an IpWitness or None."""
    tree = tree if tree is not None else build_spq_star(g)
    if not is_independent_parallel(tree):
        raise ConstraintError("the interval test needs an independent-parallel block")
    table = IpTable(tree)
    for root in tree.chain_roots():
        child = tree.nodes[root].neighbors[0]
        interval = table.interval_of(child, root)
        length = tree.nodes[root].length
        sigma = root_pair(interval, length)
        logger.debug("root %d (length %d): child interval %s", root, length, interval)
        if sigma is not None:
            return IpWitness(root, sigma, sigma - 4, RootedView(tree, root), table)
    return None


################################################################################
## CONSTRUCTION
################################################################################

def _remaining_shapes(intervals):
    """Interval of the sum over intervals[j + 1:], for every j."""
    counters = SeriesCounters.of([])
    shapes = [interval_series(counters)]
    for interval in reversed(intervals[1:]):
        counters = counters.add(interval)
        shapes.append(interval_series(counters))
    return shapes[::-1]


def _split_candidates(interval, rest, target):
    """Values for one child worth probing against the rest of the series.

    Outside the few values near the range ends, near 0 and near target, a
    feasible value stays feasible two steps closer to the low end, so one of
    these candidates is feasible whenever any value is."""
    lo = max(-interval.M, target - rest.M)
    hi = min(interval.M, target + rest.M)
    if lo > hi:
        return []
    points = set(range(lo, lo + 4)) | set(range(hi - 3, hi + 1))
    points |= set(range(-3, 4)) | set(range(target - 3, target + 4))
    points |= {interval.M, -interval.M, target - rest.M, target + rest.M}
    return sorted((x for x in points if lo <= x <= hi), key=lambda x: (abs(x), x))


def reduce_series(intervals, target):
    """Child spiralities in the given intervals summing to target, or None.

    Children are fixed one at a time; a value is kept only if the interval of
    the remaining children admits what is left of the target."""
    values = []
    for interval, rest in zip(intervals, _remaining_shapes(intervals)):
        for x in _split_candidates(interval, rest, target):
            if interval.admits(x) and rest.admits(target - x):
                break
        else:
            return None
        values.append(x)
        target -= x
    return values


def construct_ip(g, witness, config=None):
    """NodeAssignment for the witness root, built on intervals.

    Values are expressed in the pole orientation of the witness view, which
    the intervals ignore since every set is symmetric."""
    view, table = witness.view, witness.table
    tree = view.tree
    assignment = NodeAssignment(witness.root, 2 * witness.sigma_root)
    assignment.turns[witness.root] = chain_turns(tree.nodes[witness.root].length,
                                                 2 * witness.sigma_root)
    stack = [(view.root_child(), witness.sigma_child)]
    while stack:
        node, sigma = stack.pop()
        parent = view.parent(node)
        if not table.interval_of(node, parent).admits(sigma):
            raise ConstructionError(f"node {node} does not admit {sigma}")
        assignment.sigma[node] = 2 * sigma
        kind = view.kind(node)
        kids = view.child_ids(node)
        intervals = [table.interval_of(c, node) for c in kids]
        if kind == Q_NODE:
            assignment.turns[node] = chain_turns(tree.nodes[node].length, 2 * sigma)
        elif kind == S_NODE:
            values = reduce_series(intervals, sigma)
            if values is None:
                raise ConstructionError(
                    f"no split of {sigma} over the children of S-node {node}")
            stack.extend(zip(kids, values))
        elif len(kids) == 3:
            for l, c, r in _P3_ORDERS:
                if (intervals[l].admits(sigma + 2) and intervals[c].admits(sigma)
                        and intervals[r].admits(sigma - 2)):
                    break
            else:
                raise ConstructionError(f"no order for P-node {node}")
            assignment.order[node] = (kids[l], kids[c], kids[r])
            stack.extend([(kids[l], sigma + 2), (kids[c], sigma), (kids[r], sigma - 2)])
        else:
            choice = None
            for l, r in ((0, 1), (1, 0)):
                for alpha in alpha_assignments():
                    left = alpha['ul'] + alpha['vl']
                    right = alpha['ur'] + alpha['vr']
                    if (intervals[l].admits(sigma + left)
                            and intervals[r].admits(sigma - right)):
                        choice = (l, r, alpha, left, right)
                        break
                if choice:
                    break
            if choice is None:
                raise ConstructionError(f"no order or alpha for P-node {node}")
            l, r, alpha, left, right = choice
            assignment.order[node] = (kids[l], kids[r])
            assignment.alpha[node] = dict(alpha)
            stack.extend([(kids[l], sigma + left), (kids[r], sigma - right)])
    witness.assignment = assignment
    return assignment
