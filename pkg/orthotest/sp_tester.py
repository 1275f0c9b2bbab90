#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file contains the rectilinear planarity test for a single biconnected
series-parallel block. Spirality sets are computed bottom-up for every root
of the SPQ*-tree; a set only depends on the node and on the neighbour acting
as its parent, so one DpTable is shared by all roots of a block. When a root
passes the root condition the witness can be expanded top-down into a
NodeAssignment for the realizer.

Simple cycles have no SPQ*-tree and are decided by the turn-sum closed form.

Written in Python 3.6
"""
import logging
from collections import namedtuple

from orthotest.config import get_config
from orthotest.errors import ConstraintError, ConstructionError
from orthotest.graph_model import is_simple_cycle
from orthotest.realizer import NodeAssignment
from orthotest.spirality_core import (SupportTree, compose_parallel2,
                                      compose_parallel2_set, compose_parallel3,
                                      compose_parallel3_set, compose_series,
                                      cartesian_sum, join_coefficients,
                                      q_star_set, reroot_series, SpiralitySet)
from orthotest.spq_decomposition import (P_NODE, Q_NODE, S_NODE, RootedView,
                                         build_spq_star)

logger = logging.getLogger(__name__)


################################################################################
## ROOT CONSTRAINTS
################################################################################

NO_CONSTRAINT = 'None'
REFLEX_AT_VERTEX = 'ReflexAtVertex'
EXTERNAL_FLAT = 'ExternalFlatAngle'
EXTERNAL_NONRIGHT = 'ExternalNonRightAngle'
EXTERNAL_REFLEX = 'ExternalReflexAngle'
FORCED_ROOT_CHAIN = 'ForcedRootChain'

# `vertex` is the constrained vertex; `edge` is any edge of a forced root chain
RootConstraint = namedtuple('RootConstraint', ['kind', 'vertex', 'edge'])

NONE = RootConstraint(NO_CONSTRAINT, None, None)


def reflex_at_vertex(c):
    return RootConstraint(REFLEX_AT_VERTEX, c, None)


def external_flat_angle(c):
    return RootConstraint(EXTERNAL_FLAT, c, None)


def external_nonright_angle(c):
    return RootConstraint(EXTERNAL_NONRIGHT, c, None)


def external_reflex_angle(c):
    return RootConstraint(EXTERNAL_REFLEX, c, None)


def forced_root_chain(edge):
    return RootConstraint(FORCED_ROOT_CHAIN, None, edge)


################################################################################
## SIMPLE CYCLES
################################################################################

# Turns walking a cycle clockwise: +1 is a convex (90 degree) corner of the
# inner face, -1 a reflex one. The turns of a cycle sum to 4.
CYCLE_TURNS = {
    NO_CONSTRAINT: (-1, 0, 1),
    REFLEX_AT_VERTEX: (-1,),
    EXTERNAL_REFLEX: (1,),
    EXTERNAL_NONRIGHT: (0, 1),
    EXTERNAL_FLAT: (0,),
}
# a reflex corner on either side of the cycle, used for inner cutvertices
EITHER_REFLEX = (-1, 1)


def realize_cycle(n, allowed):
    """Clockwise turn sequence of an n-cycle with per-vertex allowed turns.

    `allowed` maps a vertex position to the tuple of turns it may take;
    positions not listed are free. Returns a tuple of n turns summing to 4, or
    None when no such sequence exists. Turns are fixed from the last vertex
    backwards, preferring convex corners."""
    options = [tuple(allowed.get(i, CYCLE_TURNS[NO_CONSTRAINT])) for i in range(n)]
    reach = [{0}]
    for i in range(n):
        reach.append({s + t for s in reach[-1] for t in options[i]})
    if 4 not in reach[n]:
        return None
    turns = [0] * n
    remaining = 4
    for i in range(n - 1, -1, -1):
        for t in sorted(options[i], reverse=True):
            if remaining - t in reach[i]:
                turns[i] = t
                remaining -= t
                break
    return tuple(turns)


def cycle_feasible(n, constraint=NONE):
    """Closed-form test of an n-cycle with at most one constrained vertex."""
    kind = constraint.kind if isinstance(constraint, RootConstraint) else constraint
    if kind == FORCED_ROOT_CHAIN:
        raise ConstraintError("a simple cycle has no root chain to force")
    if kind not in CYCLE_TURNS:
        raise ConstraintError(f"unknown constraint {kind!r}")
    return realize_cycle(n, {0: CYCLE_TURNS[kind]}) is not None


def cycle_order(block, start=0):
    """Vertices of a cycle block in walking order from `start`."""
    order = [start]
    previous, x = None, start
    while True:
        nxt = min(y for y in block.neighbors(x) if y != previous)
        if nxt == start:
            return tuple(order)
        order.append(nxt)
        previous, x = x, nxt


class CycleWitness(object):
    """Turn sequence of a cycle block, clockwise along `cycle`."""
    def __init__(self, cycle, turns, constraint=NONE):
        self.cycle = tuple(cycle)
        self.turns = tuple(turns)
        self.constraint = constraint

    def to_dict(self):
        return {'kind': 'cycle', 'cycle': list(self.cycle),
                'turns': list(self.turns), 'constraint': self.constraint.kind}


################################################################################
## SPIRALITY TABLE
################################################################################

class DpTable(object):
    """Memoized spirality sets of one SPQ*-tree.

    Sets are keyed by (node, parent) and stored in the node's canonical pole
    order (smaller vertex first), so an entry is valid for every root that
    induces the same parent. S-nodes keep a support tree over the children
    they had when first computed; a different parent is then served by one
    rerooting sum.

    Attributes:
        pins (dict): (P-node, parent) -> alpha choices in canonical order.
        hits, misses (int): memo statistics.
    """
    def __init__(self, tree, config=None, memoize=True, pins=None):
        self.tree = tree
        self.block = tree.block
        self.config = get_config(config)
        self.memoize = memoize
        self.pins = dict(pins or {})
        self._sets = {}
        self._support = {}
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._sets)

    def reset(self):
        self._sets.clear()
        self._support.clear()

    def alpha_choices(self, node, parent):
        frame = self.tree.frame(node, parent)
        choices = {}
        for side, w in zip('uv', frame.poles):
            # all four angles at a degree-4 pole are right angles
            if self.block.degree(w) >= 4:
                choices[side + 'l'] = (1,)
                choices[side + 'r'] = (1,)
        choices.update(self.pins.get((node, parent), {}))
        return choices

    def coefficients(self, node, parent):
        frame = self.tree.frame(node, parent)
        u, v = frame.poles
        kids = [self.tree.frame(c, node) for c, _, _ in frame.children]
        return join_coefficients(
            [(f.indeg_at(u), f.indeg_at(v)) for f in kids],
            (self.block.degree(u) - frame.indeg[0],
             self.block.degree(v) - frame.indeg[1]))

    def child_set(self, child, node, a, b):
        """Set of a child oriented from a to b."""
        s = self._sets.get((child, node))
        if s is None:
            s = self.set_of(child, node)
        return s if a < b else s.negate()

    def set_of(self, node, parent):
        key = (node, parent)
        if key in self._sets:
            self.hits += 1
            return self._sets[key]
        stack = [key]
        while stack:
            top = stack[-1]
            if top in self._sets:
                stack.pop()
                continue
            missing = [k for k in self._dependencies(*top) if k not in self._sets]
            if missing:
                stack.extend(missing)
                continue
            self._sets[top] = self._compute(*top)
            self.misses += 1
            stack.pop()
        return self._sets[key]

    def _dependencies(self, node, parent):
        rec = self.tree.nodes[node]
        if rec.kind == Q_NODE and parent is not None:
            return []
        if rec.kind == S_NODE and self.memoize and node in self._support:
            base, _, _ = self._support[node]
            return [] if parent == base else [(base, node)]
        frame = self.tree.frame(node, parent)
        return [(c, node) for c, _, _ in frame.children]

    def _compute(self, node, parent):
        rec = self.tree.nodes[node]
        if rec.kind == Q_NODE:
            if parent is None:
                raise ValueError("the root chain has no spirality set")
            return q_star_set(rec.length)
        if rec.kind == P_NODE:
            frame = self.tree.frame(node, parent)
            sets = [self._sets[(c, node)] for c, _, _ in frame.children]
            if len(sets) == 3:
                return compose_parallel3_set(sets)
            return compose_parallel2_set(sets, self.coefficients(node, parent),
                                         self.alpha_choices(node, parent))
        return self._compute_series(node, parent)

    def _forward(self, node, i):
        """Set of the i-th skeleton neighbour oriented along the cycle."""
        rec = self.tree.nodes[node]
        a, b = rec.cycle[i], rec.cycle[(i + 1) % len(rec.cycle)]
        return self.child_set(rec.neighbors[i], node, a, b)

    def _compute_series(self, node, parent):
        rec = self.tree.nodes[node]
        m = len(rec.cycle)
        p = rec.neighbors.index(parent)
        if not self.memoize:
            total = compose_series([self._forward(node, i) for i in range(m) if i != p],
                                   self.config)
        elif node not in self._support:
            others = [i for i in range(m) if i != p]
            support = SupportTree([self._forward(node, i) for i in others], self.config)
            self._support[node] = (parent, support, {i: j for j, i in enumerate(others)})
            total = support.root
        else:
            base, support, index = self._support[node]
            b = rec.neighbors.index(base)
            total = reroot_series(support, index[p], self._forward(node, b), self.config)
        # the sum runs along the cycle, from cycle[p+1] back to cycle[p]
        u, v = self.tree.frame(node, parent).poles
        return total if u == rec.cycle[(p + 1) % m] else total.negate()

    def rooted_set(self, view, node):
        """Set of a node in the orientation of a rooted view."""
        s = self.set_of(node, view.parent(node))
        return s.negate() if view.flipped(node) else s


################################################################################
## TESTING
################################################################################

class Witness(object):
    """A root that passes the root condition, with the tables that proved it.

    Attributes:
        root (int): the Q*-node of the reference chain.
        sigma_child, sigma_root (int): doubled root pair, with
            sigma_child - sigma_root = 8.
        view (RootedView): the tree rooted at `root`.
        table (DpTable): the sets used for the test.
    """
    def __init__(self, root, sigma_child, sigma_root, view, table, constraint=NONE):
        self.root = root
        self.sigma_child = sigma_child
        self.sigma_root = sigma_root
        self.view = view
        self.table = table
        self.constraint = constraint
        self.assignment = None

    def to_dict(self):
        doc = {'kind': 'sp', 'root': self.root,
               'root_chain': list(self.view.oriented_chain(self.root)),
               'sigma_root_child': self.sigma_child / 2,
               'sigma_root': self.sigma_root / 2,
               'constraint': self.constraint.kind}
        if self.assignment is not None:
            doc['assignment'] = self.assignment.to_dict()
        return doc


def root_range(length, constraint=NONE):
    """Doubled spiralities the reference chain may take."""
    if constraint.kind == EXTERNAL_NONRIGHT:
        return SpiralitySet.from_range(-2 * (length - 1), 2 * (length - 2), 2)
    return q_star_set(length)


def choose_root_pair(child_set, allowed_root):
    """Root pair (sigma_child, sigma_root) with the smallest |sigma_child|."""
    for d in sorted(child_set.doubled_values(), key=lambda x: (abs(x), x)):
        if allowed_root.has(d - 8):
            return d, d - 8
    return None


def _check_vertex(block, c):
    if c is None or not 0 <= c < block.n:
        raise ConstraintError(f"constraint vertex {c} is not in the block")


def candidate_roots(tree, constraint=NONE):
    """Q*-nodes that may act as root under a constraint, in test order."""
    block = tree.block
    roots = tree.chain_roots()
    kind = constraint.kind
    if kind == NO_CONSTRAINT:
        return roots
    if kind == FORCED_ROOT_CHAIN:
        picked = [q for q in roots if constraint.edge in tree.nodes[q].chain.edges]
        if not picked:
            raise ConstraintError(f"edge {constraint.edge} is not in the block")
        return picked
    c = constraint.vertex
    _check_vertex(block, c)
    if kind == EXTERNAL_NONRIGHT:
        if block.degree(c) != 2:
            raise ConstraintError(f"non-right constraint needs a degree-2 vertex, "
                                  f"{c} has degree {block.degree(c)}")
        return [q for q in roots if c in tree.nodes[q].chain.vertices[1:-1]]
    if kind == EXTERNAL_FLAT:
        if block.degree(c) != 3:
            raise ConstraintError(f"flat constraint needs a degree-3 vertex, "
                                  f"{c} has degree {block.degree(c)}")
        return [q for q in roots if c in tree.nodes[q].poles]
    raise ConstraintError(f"constraint {kind} is handled by the block composer")


def _flat_pins(view, c):
    """Pin the external angle at c, on the left of the root child, to 180."""
    child = view.root_child()
    side = 'u' if view.poles(child)[0] == c else 'v'
    return {(child, view.root): {side + 'l': (0,)}}


def test_block(block, constraint=NONE, config=None, memoize=True, tree=None,
               roots=None):
    """Test a biconnected SP block (or simple cycle) under a root constraint.

    Returns a Witness (CycleWitness for cycles) or None when the block has no
    rectilinear representation satisfying the constraint. `roots` replaces
    the default root order; it must list candidate roots only."""
    config = get_config(config)
    if is_simple_cycle(block):
        kind = constraint.kind
        allowed = {}
        start = 0
        if constraint.vertex is not None:
            _check_vertex(block, constraint.vertex)
            start = constraint.vertex
        if kind == FORCED_ROOT_CHAIN:
            raise ConstraintError("a simple cycle has no root chain to force")
        if kind != NO_CONSTRAINT:
            allowed[0] = CYCLE_TURNS[kind]
        order = cycle_order(block, start)
        turns = realize_cycle(block.n, allowed)
        logger.debug("cycle of length %d under %s: %s", block.n, kind,
                     'feasible' if turns else 'infeasible')
        return CycleWitness(order, turns, constraint) if turns else None

    tree = tree if tree is not None else build_spq_star(block)
    allowed_roots = candidate_roots(tree, constraint)
    if roots is None:
        roots = allowed_roots
    elif not set(roots) <= set(allowed_roots):
        raise ConstraintError("root order names a chain the constraint excludes")
    shared = DpTable(tree, config, memoize=memoize)
    for root in roots:
        view = RootedView(tree, root)
        if constraint.kind == EXTERNAL_FLAT:
            table = DpTable(tree, config, memoize=memoize,
                            pins=_flat_pins(view, constraint.vertex))
        else:
            table = shared
            if not memoize:
                table.reset()
        child = view.root_child()
        child_set = table.set_of(child, root)
        allowed = root_range(tree.nodes[root].length, constraint)
        pair = choose_root_pair(child_set, allowed)
        logger.debug("root %d (length %d): child set %s, pair %s", root,
                     tree.nodes[root].length, child_set, pair)
        if pair is not None:
            return Witness(root, pair[0], pair[1], view, table, constraint)
    return None


def spirality_tables(block, root=None, config=None):
    """Per-node spirality sets of the view rooted at `root` (default: the
    first root in test order), in the view's pole orientation."""
    tree = build_spq_star(block)
    root = tree.chain_roots()[0] if root is None else root
    view = RootedView(tree, root)
    table = DpTable(tree, config)
    sets = {}
    for node in view.postorder():
        if node == view.root:
            continue
        sets[node] = table.rooted_set(view, node)
    return view, sets


################################################################################
## CONSTRUCTION
################################################################################

def chain_turns(length, doubled, avoid=None):
    """Turns (+1 right) over the internal vertices of a chain.

    Right turns go first, then straight vertices; negative spiralities use
    left turns from the start. `avoid` is an internal position that must not
    turn right."""
    if doubled % 2:
        raise ConstructionError("a chain cannot take a semi-integer spirality")
    sigma = doubled // 2
    count = length - 1
    if abs(sigma) > count:
        raise ConstructionError(f"chain of length {length} cannot reach {sigma}")
    turns = [0] * count
    if sigma < 0:
        for i in range(-sigma):
            turns[i] = -1
        return tuple(turns)
    positions = [i for i in range(count) if i != avoid]
    if sigma > len(positions):
        raise ConstructionError("no room for the right turns of the root chain")
    for i in positions[:sigma]:
        turns[i] = 1
    return tuple(turns)


def split_series(child_sets, target, config=None):
    """Values x_j in child_sets[j] summing to target, via prefix sums."""
    prefix = [child_sets[0]]
    for s in child_sets[1:]:
        prefix.append(cartesian_sum(prefix[-1], s, config))
    if not prefix[-1].has(target):
        raise ConstructionError(f"series target {target} not admitted")
    values = [0] * len(child_sets)
    remaining = target
    for j in range(len(child_sets) - 1, 0, -1):
        for x in sorted(child_sets[j].doubled_values(), key=lambda y: (abs(y), y)):
            if prefix[j - 1].has(remaining - x):
                values[j] = x
                remaining -= x
                break
        else:
            raise ConstructionError("prefix sets are inconsistent")
    values[0] = remaining
    return values


_FLIP_ALPHA = {'ul': 'vr', 'ur': 'vl', 'vl': 'ur', 'vr': 'ul'}


def _rooted_alpha(alpha, flipped):
    if not flipped:
        return dict(alpha)
    return {key: alpha[_FLIP_ALPHA[key]] for key in alpha}


def construct(block, witness, config=None):
    """Expand a witness into spiralities, P-node orders and alpha values.

    The assignment is expressed in the pole orientation of the witness view."""
    if isinstance(witness, CycleWitness):
        raise ConstructionError("cycle witnesses carry their turns already")
    config = get_config(config)
    view, table = witness.view, witness.table
    tree = view.tree
    root = view.root
    assignment = NodeAssignment(root, witness.sigma_root)
    avoid = None
    if witness.constraint.kind == EXTERNAL_NONRIGHT:
        avoid = list(view.oriented_chain(root)).index(witness.constraint.vertex) - 1
    assignment.turns[root] = chain_turns(tree.nodes[root].length,
                                         witness.sigma_root, avoid)

    def push(child, canonical, a, b):
        # canonical is oriented a -> b; convert to the child's view orientation
        value = canonical if (a, b) == view.poles(child) else -canonical
        stack.append((child, value))

    stack = [(view.root_child(), witness.sigma_child)]
    while stack:
        node, value = stack.pop()
        parent = view.parent(node)
        flipped = view.flipped(node)
        target = -value if flipped else value
        if not table.set_of(node, parent).has(target):
            raise ConstructionError(f"node {node} does not admit {value / 2}")
        assignment.sigma[node] = value
        kind = tree.nodes[node].kind
        frame = tree.frame(node, parent)
        if kind == Q_NODE:
            assignment.turns[node] = chain_turns(tree.nodes[node].length, value)
            continue
        if kind == S_NODE:
            sets = [table.child_set(c, node, a, b) for c, a, b in frame.children]
            values = split_series(sets, target, config)
            for (c, a, b), x in zip(frame.children, values):
                push(c, x, a, b)
            continue
        sets = [table.set_of(c, node) for c, _, _ in frame.children]
        if len(sets) == 3:
            choices = compose_parallel3(sets, target)
            if not choices:
                raise ConstructionError(f"no order for P-node {node}")
            choice = choices[0]
        else:
            choices = compose_parallel2(sets, table.coefficients(node, parent),
                                        target, table.alpha_choices(node, parent))
            if not choices:
                raise ConstructionError(f"no order or alpha for P-node {node}")
            choice = choices[0]
            assignment.alpha[node] = _rooted_alpha(choice.joins.alpha, flipped)
        order = [frame.children[i][0] for i in choice.order]
        assignment.order[node] = tuple(reversed(order)) if flipped else tuple(order)
        for i, x in zip(choice.order, choice.values):
            c, a, b = frame.children[i]
            push(c, x, a, b)
    witness.assignment = assignment
    return assignment
