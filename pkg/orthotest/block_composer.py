#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file extends the block tester to connected partial 2-trees with
cutvertices. Every block is tested once per configuration (the cutvertex
through which it hangs from its parent, or none for the root of the
block-cutvertex tree); the constraint imposed at each cutvertex only depends
on the degrees around it. Local labels record the outcome of these tests and
cumulative labels propagate them towards the root of the block-cutvertex
tree. Once a root with a true cumulative label is found the block drawings
are merged at the shared cutvertices.

Written in Python 3.6
"""
import logging
from collections import deque, namedtuple

from orthotest.config import get_config
from orthotest.errors import ConstraintError, ConstructionError
from orthotest.graph_model import (Graph, NOT_PARTIAL_2TREE, SIMPLE_CYCLE,
                                   SP_BLOCK, block_graph, build_bc_tree,
                                   is_simple_cycle, validate_partial2tree)
from orthotest.ip_fastpath import IpWitness, construct_ip, test_ip, use_fast_path
from orthotest.realizer import (E, OrthoRep, layout, synthesize,
                                synthesize_cycle, validate_rep)
from orthotest.sp_tester import (CYCLE_TURNS, EITHER_REFLEX, EXTERNAL_FLAT,
                                 EXTERNAL_NONRIGHT, EXTERNAL_REFLEX, NONE,
                                 CycleWitness, construct, cycle_order,
                                 external_flat_angle, external_nonright_angle,
                                 forced_root_chain, realize_cycle, test_block)

logger = logging.getLogger(__name__)

REFLEX_ANGLE = 'ReflexAngle'


################################################################################
## CONFIGURATIONS
################################################################################

BlockConfig = namedtuple('BlockConfig', ['block', 'parent', 'children', 'constraints'])


def external_constraint(bc, b, c):
    """Constraint on the external angle of block b at its parent cutvertex c.

    Returns one of the external constraint kinds, or None."""
    if c is None:
        return None
    g = bc.graph
    own = bc.degree_in_block(c, b)
    if own == 1:
        return None
    others = sorted(bc.degree_in_block(c, x) for x in bc.blocks_at(c) if x != b)
    if own == 3:
        return EXTERNAL_FLAT
    if others == [2]:
        return EXTERNAL_REFLEX
    if all(d == 1 for d in others):
        return EXTERNAL_NONRIGHT
    raise ConstraintError(f"cutvertex {c} of degree {g.degree(c)} has an "
                          f"unexpected degree split {own}/{others}")


def needs_reflex(bc, c, b):
    """True when c joins block b to exactly one other block and both use two
    of its edges: whichever block is the parent, b must leave a reflex angle
    at c for the other one."""
    blocks = bc.blocks_at(c)
    return (len(blocks) == 2
            and all(bc.degree_in_block(c, x) == 2 for x in blocks)
            and b in blocks)


def block_config(bc, b, parent=None):
    """Configuration of block b when it hangs from cutvertex `parent`."""
    children = tuple(c for c in bc.cutvertices_of(b) if c != parent)
    constraints = {}
    if parent is not None:
        constraints[parent] = external_constraint(bc, b, parent)
    for c in children:
        constraints[c] = REFLEX_ANGLE if needs_reflex(bc, c, b) else None
    return BlockConfig(b, parent, children, constraints)


def rooted_bc_tree(bc, root_block):
    """Parent cutvertex of every block when the tree is rooted at root_block,
    in breadth-first order."""
    parents = {root_block: None}
    queue = deque([root_block])
    while queue:
        b = queue.popleft()
        for c in bc.cutvertices_of(b):
            if c == parents[b]:
                continue
            for x in bc.blocks_at(c):
                if x != b and x not in parents:
                    parents[x] = c
                    queue.append(x)
    return parents


def derive_constraints(bc, root_block):
    """BlockConfig of every block of the tree rooted at root_block."""
    return {b: block_config(bc, b, c)
            for b, c in rooted_bc_tree(bc, root_block).items()}


################################################################################
## REFLEX-ANGLE GADGET
################################################################################

# `path` runs u, a, b, d, v along the length-four path; u-x-v is the other one
Gadget = namedtuple('Gadget', ['c', 'p', 'q', 'u', 'v', 'x', 'path'])


def apply_reflex_gadget(block, c):
    """Subdivide both edges at c and join the subdivision vertices by a path
    of length two and one of length four.

    Returns the new block and the Gadget record; new vertices take the ids
    block.n .. block.n + 5."""
    if not 0 <= c < block.n or block.degree(c) != 2:
        raise ConstraintError(f"the reflex gadget needs a degree-2 vertex, got {c}")
    p, q = sorted(block.neighbors(c))
    u, v, x, a, b, d = range(block.n, block.n + 6)
    edges = [e for e in block.edges if c not in e]
    edges += [(p, u), (u, c), (c, v), (v, q), (u, x), (x, v),
              (u, a), (a, b), (b, d), (d, v)]
    logger.debug("reflex gadget at %d between %d and %d", c, p, q)
    return Graph(block.n + 6, edges), Gadget(c, p, q, u, v, x, (u, a, b, d, v))


def gadget_root_edge(gadgeted, gadget):
    """An edge of the length-four path, used to force it as reference chain."""
    return gadgeted.edge_id(gadget.path[0], gadget.path[1])


def strip_reflex_gadget(rep, gadget):
    """Remove a gadget from a representation of the gadgeted block.

    The length-two path opposite to p at u is kept; its middle vertex turns,
    and it takes the place of c with the edges to p and q. The gadget must be
    the last one applied, so that its vertices carry the highest ids."""
    c, p, q, u, v, x, path = gadget
    if min(path + (x,)) != rep.n - 6:
        raise ConstructionError("gadgets must be stripped in reverse order")
    dirs = rep.directions()
    opposite = (dirs[(u, p)] + 2) % 4
    mid = c if dirs[(u, c)] == opposite else x
    if dirs[(u, mid)] != opposite or dirs[(v, mid)] != (dirs[(v, q)] + 2) % 4:
        raise ConstructionError(f"gadget at {c} has no straight middle path")
    removed = {u, v, x} | set(path)
    kept = {}
    for (s, t), d in dirs.items():
        if s in removed or t in removed or c in (s, t):
            continue
        kept[(s, t)] = d
    kept[(c, p)] = dirs[(mid, u)]
    kept[(c, q)] = dirs[(mid, v)]
    edges = [e for e in rep.edges if not (set(e) & removed) and c not in e]
    edges += [(min(c, p), max(c, p)), (min(c, q), max(c, q))]
    return OrthoRep.from_directions(rep.n - 6, edges, kept)


################################################################################
## LOCAL LABELS
################################################################################

class BlockOutcome(object):
    """Result of testing one block under one configuration.

    Attributes:
        ok (bool): the local label.
        graph (Graph): the tested graph, gadgets included.
        vmap (tuple): local id of the original block -> vertex of g.
        witness: Witness, CycleWitness or None.
        gadgets (list): gadgets in the order they were applied.
    """
    def __init__(self, config, graph, vmap, witness, gadgets=()):
        self.config = config
        self.ok = witness is not None
        self.graph = graph
        self.vmap = vmap
        self.witness = witness
        self.gadgets = list(gadgets)

    def realize(self, config=None):
        """Representation of the original block in local ids."""
        if not self.ok:
            raise ConstructionError(f"block {self.config.block} failed its test")
        if isinstance(self.witness, CycleWitness):
            return synthesize_cycle(self.graph.n, self.witness.cycle,
                                    self.witness.turns)
        assignment = construct(self.graph, self.witness, config)
        rep = synthesize(assignment, self.witness.view)
        for gadget in reversed(self.gadgets):
            rep = strip_reflex_gadget(rep, gadget)
        return rep


def test_configured_block(g, bc, b, parent=None, config=None):
    """Test block b in the configuration where it hangs from `parent`."""
    cfg = block_config(bc, b, parent)
    block, vmap = block_graph(g, bc, b)
    local = {v: i for i, v in enumerate(vmap)}
    reflex = [local[c] for c, kind in cfg.constraints.items() if kind == REFLEX_ANGLE]
    outside = cfg.constraints.get(parent) if parent is not None else None

    if is_simple_cycle(block):
        order = cycle_order(block, 0)
        position = {w: i for i, w in enumerate(order)}
        allowed = {position[w]: EITHER_REFLEX for w in reflex}
        if outside is not None:
            allowed[position[local[parent]]] = CYCLE_TURNS[outside]
        turns = realize_cycle(block.n, allowed)
        witness = CycleWitness(order, turns) if turns is not None else None
        return BlockOutcome(cfg, block, vmap, witness)

    gadgets = []
    work = block
    for w in reflex:
        work, gadget = apply_reflex_gadget(work, w)
        gadgets.append(gadget)
    constraint = NONE
    if outside == EXTERNAL_REFLEX:
        work, gadget = apply_reflex_gadget(work, local[parent])
        gadgets.append(gadget)
        constraint = forced_root_chain(gadget_root_edge(work, gadget))
    elif outside == EXTERNAL_FLAT:
        constraint = external_flat_angle(local[parent])
    elif outside == EXTERNAL_NONRIGHT:
        constraint = external_nonright_angle(local[parent])
    witness = test_block(work, constraint, config)
    return BlockOutcome(cfg, work, vmap, witness, gadgets)


################################################################################
## CUMULATIVE LABELS
################################################################################

class LabelTable(object):
    """Local and cumulative labels over the block-cutvertex tree.

    Nodes are ('B', block) and ('C', cutvertex). The cumulative label of a
    node depends on the node and on its parent only, so labels are memoised
    per (node, parent) and shared by every root. The first time a node is
    evaluated its false children are recorded; for any other parent the
    label follows in constant time from that record and from the label of
    the first parent seen as a child.

    Attributes:
        local (dict): (block, parent cutvertex or None) -> BlockOutcome.
        cumulative (dict): (node, parent) -> bool.
        computations (int): number of cumulative labels computed.
    """
    def __init__(self, g, bc, config=None):
        self.graph = g
        self.bc = bc
        self.config = get_config(config)
        self.local = {}
        self.cumulative = {}
        self.computations = 0
        self._base = {}

    def preprocess(self):
        """Compute the local label of every non-trivial block and config."""
        for block in self.bc.blocks:
            if block.trivial:
                continue
            for parent in (None,) + tuple(self.bc.cutvertices_of(block.index)):
                self.local_label(block.index, parent)
        logger.debug("pre-processed %d local labels", len(self.local))

    def local_label(self, b, parent=None):
        if self.bc.blocks[b].trivial:
            return True
        key = (b, parent)
        if key not in self.local:
            self.local[key] = test_configured_block(self.graph, self.bc, b,
                                                    parent, self.config)
        return self.local[key].ok

    def outcome(self, b, parent=None):
        self.local_label(b, parent)
        return self.local.get((b, parent))

    def _children(self, node, parent):
        return [x for x in self.bc.neighbors(node) if x != parent]

    def _dependencies(self, node, parent):
        if node in self._base:
            base = self._base[node][0]
            return [(base, node)] if base is not None else []
        return [(x, node) for x in self._children(node, parent)]

    def _compute(self, node, parent):
        self.computations += 1
        if node in self._base:
            base, false_kids = self._base[node]
            false = [x for x in false_kids if x != parent]
            if base is not None and not self.cumulative[(base, node)]:
                false.append(base)
        else:
            false = [x for x in self._children(node, parent)
                     if not self.cumulative[(x, node)]]
            self._base[node] = (parent, false)
        if false:
            return False
        if node[0] == 'B':
            return self.local_label(node[1], parent[1] if parent else None)
        return True

    def label(self, node, parent=None):
        """Cumulative label of `node` in the tree where `parent` is above it."""
        key = (node, parent)
        if key in self.cumulative:
            return self.cumulative[key]
        stack = [key]
        while stack:
            current = stack[-1]
            if current in self.cumulative:
                stack.pop()
                continue
            missing = [d for d in self._dependencies(*current)
                       if d not in self.cumulative]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            self.cumulative[current] = self._compute(*current)
        return self.cumulative[key]

    def false_children(self, node, parent=None):
        return [x for x in self._children(node, parent) if not self.label(x, node)]


################################################################################
## TESTING
################################################################################

class CompositionResult(object):
    """Verdict of the partial 2-tree test.

    Attributes:
        ok (bool): the verdict.
        root_block (int): a block whose rooted tree passed, or None.
        case (str): 'root', 'two-false-subtrees', 'reroot' or 'exhausted'.
        labels (LabelTable): the labels computed on the way.
    """
    def __init__(self, ok, root_block, case, bc, labels):
        self.ok = ok
        self.root_block = root_block
        self.case = case
        self.bc = bc
        self.labels = labels

    def outcomes(self):
        """BlockOutcome of every non-trivial block in the passing tree."""
        if not self.ok:
            return {}
        parents = rooted_bc_tree(self.bc, self.root_block)
        return {b: self.labels.outcome(b, c) for b, c in parents.items()
                if not self.bc.blocks[b].trivial}

    def to_dict(self):
        doc = {'ok': self.ok, 'root_block': self.root_block, 'case': self.case,
               'label_computations': self.labels.computations}
        if self.ok:
            doc['blocks'] = {
                str(b): {'parent': o.config.parent,
                         'constraints': {str(c): k for c, k in o.config.constraints.items()},
                         'witness': o.witness.to_dict()}
                for b, o in sorted(self.outcomes().items())}
        return doc


def _subtree_blocks(bc, node, parent):
    """Block nodes below `node` (included) when `parent` is above it."""
    found = []
    queue = deque([(node, parent)])
    while queue:
        current, above = queue.popleft()
        if current[0] == 'B':
            found.append(current[1])
        for x in bc.neighbors(current):
            if x != above:
                queue.append((x, current))
    return found


def test_partial2tree(g, config=None, bc=None):
    """Rectilinear planarity test of a connected partial 2-tree."""
    config = get_config(config)
    bc = bc if bc is not None else build_bc_tree(g)
    labels = LabelTable(g, bc, config)
    if not bc.blocks:
        return CompositionResult(True, None, 'root', bc, labels)
    if not config.LAZY_LABELS:
        labels.preprocess()

    first = ('B', 0)
    if labels.label(first):
        logger.debug("block 0 passes as root")
        return CompositionResult(True, 0, 'root', bc, labels)

    # the false labels form a single path from the root, or the answer is no
    node, parent = first, None
    deepest = (first, None)
    while True:
        false = labels.false_children(node, parent)
        if len(false) >= 2:
            logger.debug("two false subtrees below %s", node)
            return CompositionResult(False, None, 'two-false-subtrees', bc, labels)
        if not false:
            break
        parent, node = node, false[0]
        if node[0] == 'B':
            deepest = (node, parent)

    logger.debug("deepest false block %s, trying the roots below it", deepest[0])
    for b in _subtree_blocks(bc, *deepest):
        if b != 0 and labels.label(('B', b)):
            return CompositionResult(True, b, 'reroot', bc, labels)
    return CompositionResult(False, None, 'exhausted', bc, labels)


################################################################################
## MERGING
################################################################################

TRANSFORMS = tuple((r, mirror) for mirror in (False, True) for r in range(4))


def _transform(d, rotation, mirror):
    return ((-d if mirror else d) + rotation) % 4


def external_sector(rep, c):
    """Directions strictly inside the angle at c on the external face."""
    faces = rep.faces()
    for a, b in faces[rep.external_face()]:
        if b == c:
            nxt = rep.next_dart(a, b)[1]
            start = rep.direction(c, nxt)
            return {(start + k) % 4 for k in range(1, rep.angles[(c, nxt)])}
    raise ConstructionError(f"vertex {c} is not on the external face")


def _trivial_rep(edge):
    a, b = edge
    return OrthoRep.from_directions(2, [(0, 1)], {(0, 1): E}), (a, b)


def merge_blocks(g, bc, root_block, block_reps):
    """Glue block representations at the cutvertices of the tree rooted at
    root_block.

    `block_reps` maps each non-trivial block to (rep, vmap) in local ids;
    single-edge blocks are drawn on the fly. A child block is rotated or
    mirrored until everything already drawn at the cutvertex lies inside its
    external angle there."""
    def rep_of(b):
        if b in block_reps:
            return block_reps[b]
        return _trivial_rep(g.edges[bc.blocks[b].edges[0]])

    placed = {}
    rep, vmap = rep_of(root_block)
    for (a, b), d in rep.directions().items():
        placed[(vmap[a], vmap[b])] = d

    queue = deque([(root_block, None)])
    while queue:
        b, parent = queue.popleft()
        for c in bc.cutvertices_of(b):
            if c == parent:
                continue
            kids = [x for x in bc.blocks_at(c) if x != b]
            kids.sort(key=lambda x: (bc.blocks[x].trivial, x))
            for child in kids:
                rep, vmap = rep_of(child)
                used = {d for (s, _), d in placed.items() if s == c}
                local_c = vmap.index(c)
                base = rep.directions()
                for rotation, mirror in TRANSFORMS:
                    dirs = {dart: _transform(d, rotation, mirror)
                            for dart, d in base.items()}
                    moved = OrthoRep.from_directions(rep.n, rep.edges, dirs)
                    if used <= external_sector(moved, local_c):
                        break
                else:
                    raise ConstructionError(
                        f"block {child} does not fit at cutvertex {c}")
                for (s, t), d in dirs.items():
                    placed[(vmap[s], vmap[t])] = d
                queue.append((child, c))
    merged = OrthoRep.from_directions(g.n, g.edges, placed)
    report = validate_rep(merged)
    if not report.ok:
        raise ConstructionError("merged representation is invalid: "
                                + "; ".join(report.violations))
    return merged


################################################################################
## WHOLE GRAPHS
################################################################################

GraphVerdict = namedtuple('GraphVerdict', ['ok', 'kind', 'detail'])


def test_graph(g, config=None):
    """Classify g and run the matching test.

    `detail` is a CycleWitness or Witness for single blocks and a
    CompositionResult otherwise; it is None for a no-instance block."""
    config = get_config(config)
    kind = validate_partial2tree(g)
    if kind == NOT_PARTIAL_2TREE:
        return GraphVerdict(False, kind, None)
    if kind == SIMPLE_CYCLE:
        detail = test_block(g, NONE, config)
        return GraphVerdict(detail is not None, kind, detail)
    if kind == SP_BLOCK:
        if use_fast_path(g, config):
            detail = test_ip(g, config)
        else:
            detail = test_block(g, NONE, config)
        return GraphVerdict(detail is not None, kind, detail)
    result = test_partial2tree(g, config)
    return GraphVerdict(result.ok, kind, result)


def realize_graph(g, verdict, config=None):
    """Representation of a yes-instance with grid coordinates attached."""
    if not verdict.ok:
        raise ConstructionError("cannot realize a no-instance")
    detail = verdict.detail
    if isinstance(detail, CycleWitness):
        rep = synthesize_cycle(g.n, detail.cycle, detail.turns)
    elif isinstance(detail, IpWitness):
        assignment = construct_ip(g, detail, config)
        rep = synthesize(assignment, detail.view)
    elif isinstance(detail, CompositionResult):
        if detail.root_block is None:
            rep = OrthoRep.from_directions(g.n, [], {})
        else:
            reps = {b: (o.realize(config), o.vmap)
                    for b, o in detail.outcomes().items()}
            rep = merge_blocks(g, detail.bc, detail.root_block, reps)
    else:
        rep = synthesize(construct(g, detail, config), detail.view)
    return layout(rep)
