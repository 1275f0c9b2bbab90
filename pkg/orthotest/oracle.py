#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file contains the brute-force oracle used to cross-check the testers
on small graphs. It enumerates every rotation system of genus zero (mirror
images included, since they flip spirality signs), tries every face as the
external one and searches for vertex angles with the right sums by
backtracking.

Only desk-scale graphs are accepted; the bound comes from the configuration
and exceeding it is an error rather than a silent truncation.

Written in Python 3.6
"""
import itertools
import logging
from collections import namedtuple

from orthotest.config import get_config
from orthotest.errors import OracleSizeError
from orthotest.graph_model import Graph
from orthotest.sp_tester import (EXTERNAL_FLAT, EXTERNAL_NONRIGHT,
                                 EXTERNAL_REFLEX, FORCED_ROOT_CHAIN,
                                 NO_CONSTRAINT, REFLEX_AT_VERTEX)
from orthotest.spirality_core import SpiralitySet, measure_spirality
from orthotest.spq_decomposition import RootedView, build_spq_star

logger = logging.getLogger(__name__)

# a 270 degree angle at the vertex, in any face
REFLEX_ANY_FACE = 'ReflexAngle'

# angle tuples (quarter turns, counterclockwise from each edge to the next)
ANGLE_OPTIONS = {
    1: ((4,),),
    2: ((1, 3), (2, 2), (3, 1)),
    3: ((1, 1, 2), (1, 2, 1), (2, 1, 1)),
    4: ((1, 1, 1, 1),),
}


################################################################################
## EMBEDDINGS
################################################################################

RotationSystem = namedtuple('RotationSystem', ['rotation', 'faces'])


def _check_size(g, config):
    config = get_config(config)
    if g.n > config.MAX_ORACLE_N or g.m > config.MAX_ORACLE_M:
        raise OracleSizeError(
            f"oracle bound is n <= {config.MAX_ORACLE_N}, m <= {config.MAX_ORACLE_M}; "
            f"got n={g.n}, m={g.m}")


def trace_faces(rotation):
    """Faces as tuples of darts, each face on the left of its darts."""
    seen = set()
    faces = []
    for a in sorted(rotation):
        for b in rotation[a]:
            if (a, b) in seen:
                continue
            walk = []
            dart = (a, b)
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                x, y = dart
                rot = rotation[y]
                dart = (y, rot[rot.index(x) - 1])
            faces.append(tuple(walk))
    return faces


def _rotation_systems(g):
    orders = []
    for v in range(g.n):
        nbrs = sorted(g.neighbors(v))
        if len(nbrs) <= 2:
            orders.append([tuple(nbrs)])
        else:
            orders.append([(nbrs[0],) + p for p in itertools.permutations(nbrs[1:])])
    for choice in itertools.product(*orders):
        yield {v: choice[v] for v in range(g.n)}


def _genus_zero(g, rotation):
    faces = trace_faces(rotation)
    return faces if g.n - g.m + len(faces) == 2 else None


def enumerate_embeddings(g, config=None):
    """Yield (RotationSystem, external face index) for every planar rotation
    system of g and every face."""
    _check_size(g, config)
    for rotation in _rotation_systems(g):
        faces = _genus_zero(g, rotation)
        if faces is None:
            continue
        rs = RotationSystem(rotation, faces)
        for f in range(len(faces)):
            yield rs, f


def count_embeddings(g, config=None):
    """Number of planar rotation systems of g."""
    _check_size(g, config)
    return sum(1 for r in _rotation_systems(g) if _genus_zero(g, r) is not None)


################################################################################
## ANGLES
################################################################################

def _corner(rotation, dart):
    """(vertex, angle index) of the corner at the head of `dart`."""
    a, b = dart
    rot = rotation[b]
    return b, (rot.index(a) - 1) % len(rot)


def _assignments(rotation, faces, targets, options, order):
    """Backtracking over vertex angle tuples.

    targets[f] is the turn sum face f must reach, or None when the face is
    unconstrained. Yields dicts vertex -> angle tuple."""
    face_of = {}
    for f, face in enumerate(faces):
        for dart in face:
            face_of[_corner(rotation, dart)] = f
    remaining = [len(face) for face in faces]
    sums = [0] * len(faces)
    chosen = {}

    def fits(f):
        if targets[f] is None:
            return True
        gap = targets[f] - sums[f]
        if remaining[f] == 0:
            return gap == 0
        return -2 * remaining[f] <= gap <= remaining[f]

    def search(i):
        if i == len(order):
            yield dict(chosen)
            return
        v = order[i]
        for option in options[v]:
            touched = []
            for j, angle in enumerate(option):
                f = face_of[(v, j)]
                sums[f] += 2 - angle
                remaining[f] -= 1
                touched.append(f)
            if all(fits(f) for f in touched):
                chosen[v] = option
                yield from search(i + 1)
                del chosen[v]
            for j, angle in enumerate(option):
                f = face_of[(v, j)]
                sums[f] -= 2 - angle
                remaining[f] += 1

    yield from search(0)


def _constraint_options(rs, external, constraint, options):
    """Restrict the angle tuples of the constrained vertex. Returns False
    when the constraint cannot hold for this external face."""
    kind = constraint.kind
    if kind == NO_CONSTRAINT:
        return True
    if kind == FORCED_ROOT_CHAIN:
        return any(edge in rs.faces[external] for edge in constraint.edge)
    c = constraint.vertex
    outer = {j for v, j in (_corner(rs.rotation, d) for d in rs.faces[external]) if v == c}
    if kind == REFLEX_ANY_FACE:
        keep = [o for o in options[c] if 3 in o]
    elif kind == REFLEX_AT_VERTEX:
        keep = [o for o in options[c]
                if any(a == 3 and j not in outer for j, a in enumerate(o))]
    elif kind == EXTERNAL_REFLEX:
        keep = [o for o in options[c] if any(o[j] == 3 for j in outer)]
    elif kind == EXTERNAL_FLAT:
        keep = [o for o in options[c] if any(o[j] == 2 for j in outer)]
    elif kind == EXTERNAL_NONRIGHT:
        keep = [o for o in options[c] if outer and all(o[j] >= 2 for j in outer)]
    else:
        raise ValueError(f"unknown constraint {kind!r}")
    options[c] = keep
    return bool(keep)


def _vertex_order(n, faces):
    """Vertices by first appearance along faces sorted by decreasing length,
    so long faces complete early."""
    order, seen = [], set()
    for face in sorted(faces, key=lambda f: -len(f)):
        for _, b in face:
            if b not in seen:
                seen.add(b)
                order.append(b)
    return order + [v for v in range(n) if v not in seen]


def zero_bend_feasible(g, rs, external, constraints=()):
    """Vertex angles making (rs, external) a rectilinear representation, or
    None. Returns vertex -> tuple of angles in the order of rs.rotation."""
    options = {v: ANGLE_OPTIONS[len(rs.rotation[v])] for v in range(g.n)
               if rs.rotation[v]}
    for constraint in constraints:
        if not _constraint_options(rs, external, constraint, options):
            return None
    targets = [-4 if f == external else 4 for f in range(len(rs.faces))]
    order = _vertex_order(g.n, rs.faces)
    order = [v for v in order if v in options]
    for angles in _assignments(rs.rotation, rs.faces, targets, options, order):
        return angles
    return None


def _expand_constraints(g, constraints):
    """Forced root chains are given by one edge id; the oracle needs the
    darts of the whole chain."""
    out = []
    for constraint in constraints:
        if constraint.kind != FORCED_ROOT_CHAIN:
            out.append(constraint)
            continue
        a, b = g.edges[constraint.edge]
        chain = {(a, b), (b, a)}
        for start, previous in ((a, b), (b, a)):
            x, back = start, previous
            while g.degree(x) == 2:
                nxt = next(w for w in g.neighbors(x) if w != back)
                chain.update({(x, nxt), (nxt, x)})
                back, x = x, nxt
        out.append(constraint._replace(edge=frozenset(chain)))
    return out


def oracle_test(g, constraints=(), config=None):
    """True iff some embedding and external face admit zero-bend angles."""
    if g.m == 0:
        return True
    constraints = _expand_constraints(g, constraints)
    checked = 0
    for rs, external in enumerate_embeddings(g, config):
        checked += 1
        if zero_bend_feasible(g, rs, external, constraints) is not None:
            logger.debug("oracle: feasible after %d (embedding, face) pairs", checked)
            return True
    logger.debug("oracle: %d (embedding, face) pairs, none feasible", checked)
    return False


################################################################################
## SPIRALITY SETS
################################################################################

class _HostDirections(object):
    """Edge directions of a host drawing, addressed with block vertex ids."""
    def __init__(self, dirs, local, stubs):
        self.dirs = dirs
        self.local = local
        self.stubs = stubs

    def direction(self, a, b):
        if (a, b) in self.stubs:
            return self.dirs[(self.local[a], self.stubs[(a, b)])]
        return self.dirs[(self.local[a], self.local[b])]


def _propagate(rotation, angles, start, free):
    """Directions of every dart reachable from `start` through constrained
    vertices; the first edge at `start` heads east."""
    first = rotation[start][0]
    dirs = {(start, first): 0, (first, start): 2}
    stack = [start]
    seen = {start}
    while stack:
        v = stack.pop()
        rot = rotation[v]
        d = next(dirs[(v, w)] for w in rot if (v, w) in dirs)
        i0 = next(i for i, w in enumerate(rot) if (v, w) in dirs)
        for step in range(len(rot)):
            i = (i0 + step) % len(rot)
            w = rot[i]
            dirs[(v, w)] = d
            dirs[(w, v)] = (d + 2) % 4
            if w not in seen and w not in free:
                seen.add(w)
                stack.append(w)
            d = (d + angles[v][i]) % 4
    return dirs


def free_host(block, view, node):
    """The pertinent graph of `node` plus one stub per outside edge at each
    pole, all stubs ending at one virtual vertex.

    Returns (host, local, stubs, free): local maps block ids of the component
    to host ids, stubs maps (pole, outside neighbour) to the stub vertex and
    free holds the stub and virtual vertices."""
    edges = sorted(view.pertinent_edges(node))
    vertices = sorted({w for e in edges for w in block.edges[e]})
    local = {w: i for i, w in enumerate(vertices)}
    host_edges = [(local[block.edges[e][0]], local[block.edges[e][1]]) for e in edges]
    stubs = {}
    nxt = len(vertices)
    for pole in view.poles(node):
        for x in view.outside_neighbors(node, pole):
            stubs[(pole, x)] = nxt
            host_edges.append((local[pole], nxt))
            nxt += 1
    virtual = nxt
    host_edges.extend((s, virtual) for s in stubs.values())
    free = set(stubs.values()) | {virtual}
    return Graph(virtual + 1, host_edges, max_degree=None), local, stubs, free


def oracle_spirality_set(block, root, node, config=None):
    """Every spirality the component of `node` takes in the view rooted at
    `root`, over all rectilinear drawings against a free host. Faces and
    vertices of the host outside the component carry no constraint."""
    config = get_config(config)
    _check_size(block, config)
    view = RootedView(build_spq_star(block), root)
    host, local, stubs, free = free_host(block, view, node)
    options = {v: ANGLE_OPTIONS[host.degree(v)] for v in range(host.n) if v not in free}
    u = local[view.poles(node)[0]]
    values = set()
    for rotation in _rotation_systems(host):
        faces = _genus_zero(host, rotation)
        if faces is None:
            continue
        targets = [None if any(b in free for _, b in face) else 4 for face in faces]
        order = [v for v in _vertex_order(host.n, faces) if v not in free]
        for chosen in _assignments(rotation, faces, targets, options, order):
            dirs = _propagate(rotation, chosen, u, free)
            values.add(measure_spirality(_HostDirections(dirs, local, stubs),
                                         node, view).doubled)
    return SpiralitySet.from_doubled(values)
