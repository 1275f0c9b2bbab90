#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file contains the instance generators behind the `gen` and `bench`
commands: the recursive lower-bound family, whose drawings force one deep
chain to a spirality linear in the family parameter, and seeded random
graphs of three kinds (series-parallel blocks, independent-parallel blocks
and multi-block partial 2-trees).

Every generator builds its graph by expanding series and parallel
compositions, so the kind of the result holds by construction; the random
generators assert it anyway before returning.

Written in Python 3.6
"""
import logging
from collections import namedtuple

import numpy as np

from orthotest.errors import GeneratorError
from orthotest.graph_model import PARTIAL_2TREE, SP_BLOCK, Graph, validate_partial2tree
from orthotest.spq_decomposition import build_spq_star, is_independent_parallel

logger = logging.getLogger(__name__)

KIND_SP = 'sp'
KIND_PARTIAL2TREE = 'partial2tree'
KIND_IP = 'independent_parallel'
KINDS = (KIND_SP, KIND_PARTIAL2TREE, KIND_IP)

MAX_GENERATED_VERTICES = 2000000


################################################################################
## COMPOSITION TREES
################################################################################

def chain(length):
    """A path of `length` edges between the two poles."""
    return ('Q', length)


def series(*parts):
    return ('S', parts)


def parallel(*parts):
    return ('P', parts)


class GraphBuilder(object):
    """Accumulates vertices and edges while expanding compositions.

    Methods:
        vertex: allocate a fresh vertex id.
        path: add a path of a given length between two existing vertices.
        expand: expand a composition tree between two poles.
        graph: freeze into a Graph.
    """
    def __init__(self):
        self.n = 0
        self.edges = []

    def vertex(self):
        self.n += 1
        return self.n - 1

    def path(self, s, t, length):
        previous = s
        for _ in range(length - 1):
            w = self.vertex()
            self.edges.append((previous, w))
            previous = w
        self.edges.append((previous, t))

    def expand(self, tree, s, t):
        # explicit stack, the lower-bound trees nest deeply for large N
        stack = [(tree, s, t)]
        while stack:
            (kind, body), s, t = stack.pop()
            if kind == 'Q':
                self.path(s, t, body)
            elif kind == 'S':
                ends = [s] + [self.vertex() for _ in body[:-1]] + [t]
                stack.extend((part, ends[i], ends[i + 1]) for i, part in enumerate(body))
            else:
                stack.extend((part, s, t) for part in body)

    def graph(self):
        return Graph(self.n, self.edges)


################################################################################
## LOWER-BOUND FAMILY
################################################################################

class LowerBoundParams(namedtuple('LowerBoundParams', ['N'])):
    """Parameter of the lower-bound family: N even, N >= 2; L = N/2 + 1 is
    the nesting depth."""
    __slots__ = ()

    @property
    def L(self):
        return self.N // 2 + 1


def lower_bound_sizes(p):
    """Vertex counts n_0..n_L of the nested components and the total."""
    sizes = [p.N + 4]
    for k in range(1, p.L + 1):
        if k == 1:
            sizes.append(3 * sizes[0] - 4)
        else:
            sizes.append(3 * sizes[-1] + 2)
    return sizes, 2 * sizes[-1] + 4


def lower_bound_tree(p, k):
    """Composition tree of the k-th nested component."""
    tree = chain(p.N + 3)
    if k == 0:
        return tree
    tree = parallel(tree, tree, tree)
    for _ in range(2, k + 1):
        wrapped = series(chain(1), tree, chain(1))
        tree = parallel(wrapped, wrapped, wrapped)
    return tree


def gen_lower_bound(p):
    """Two copies of the deepest component closed into a cycle by two chains
    of three edges. Every drawing gives one of the innermost chains spirality
    N + 2 in absolute value."""
    if isinstance(p, int):
        p = LowerBoundParams(p)
    if p.N < 2 or p.N % 2:
        raise GeneratorError(f"N must be even and at least 2, got {p.N}")
    _, total = lower_bound_sizes(p)
    if total > MAX_GENERATED_VERTICES:
        raise GeneratorError(f"N={p.N} gives {total} vertices, above "
                             f"{MAX_GENERATED_VERTICES}")
    deepest = lower_bound_tree(p, p.L)
    builder = GraphBuilder()
    a, b, c, d = (builder.vertex() for _ in range(4))
    builder.path(a, b, 3)
    builder.expand(deepest, b, c)
    builder.path(c, d, 3)
    builder.expand(deepest, d, a)
    g = builder.graph()
    assert g.n == total
    assert is_independent_parallel(build_spq_star(g))
    logger.debug("lower bound N=%d: n=%d m=%d", p.N, g.n, g.m)
    return g


################################################################################
## RANDOM GRAPHS
################################################################################

def _random_sp(rng, n):
    """Biconnected series-parallel block on n vertices: start from the diamond
    and repeatedly expand an edge into a series or parallel composition."""
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
    degree = [3, 2, 3, 2] + [0] * (n - 4)
    size = 4
    while size < n:
        left = n - size
        i = rng.randint(len(edges))
        u, v = edges[i]
        if rng.rand() < 0.5 and degree[u] < 4 and degree[v] < 4:
            inner = 1 if left == 1 else 1 + rng.randint(2)
            path = [u] + list(range(size, size + inner)) + [v]
            edges.extend(zip(path, path[1:]))
            degree[u] += 1
            degree[v] += 1
            for w in path[1:-1]:
                degree[w] = 2
            size += inner
        else:
            edges[i] = (u, size)
            edges.append((size, v))
            degree[size] = 2
            size += 1
    return edges


def _random_ip(rng, n):
    """Independent-parallel block on n vertices. Nested parallel components
    hang between chains of at least one edge, so no two of them share a
    pole."""
    builder = GraphBuilder()
    s, t = builder.vertex(), builder.vertex()
    stack = [('P', s, t, n - 2, 3)]
    while stack:
        kind, s, t, budget, width = stack.pop()
        if kind == 'P':
            k = width or (3 if budget >= 4 and rng.rand() < 0.5 else 2)
            # child 0 may be a single edge, the others need an inner vertex
            shares = [0] + [1] * (k - 1)
            extra = budget - (k - 1)
            if extra < 0:
                raise GeneratorError(f"parallel component needs {k - 1} vertices, got {budget}")
            for j, add in enumerate(rng.multinomial(extra, [1.0 / k] * k)):
                shares[j] += int(add)
            stack.extend(('S', s, t, share, None) for share in shares)
        elif budget < 7 or rng.rand() < 0.3:
            builder.path(s, t, budget + 1)
        else:
            l1, l2 = 1 + rng.randint(3), 1 + rng.randint(3)
            p1, p2 = builder.vertex(), builder.vertex()
            builder.path(s, p1, l1)
            builder.path(p2, t, l2)
            stack.append(('P', p1, p2, budget - (l1 - 1) - (l2 - 1) - 2, None))
    return builder.n, builder.edges


def _random_blocks(rng, n):
    """Several blocks (edges, cycles, series-parallel blocks) glued at
    vertices of degree at most two, so glued degrees stay within four."""
    def piece(room):
        kinds = ['edge']
        if room >= 4:
            kinds += ['cycle', 'sp']
        kind = kinds[rng.randint(len(kinds))]
        if kind == 'edge':
            return 2, [(0, 1)]
        if kind == 'cycle':
            k = 4 + rng.randint(min(room, 6) - 3)
            return k, [(i, (i + 1) % k) for i in range(k)]
        k = 4 + rng.randint(min(room, 12) - 3)
        return k, _random_sp(rng, k)

    size, edges = piece(n - 1)
    degree = np.zeros(n, dtype=int)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    blocks = 1
    while size < n or blocks < 2:
        k, local = piece(n - size + 1)
        low = np.flatnonzero(degree[:size] <= 2)
        c = int(low[rng.randint(len(low))])
        piece_degree = np.zeros(k, dtype=int)
        for u, v in local:
            piece_degree[u] += 1
            piece_degree[v] += 1
        x_low = np.flatnonzero(piece_degree <= 2)
        x = int(x_low[rng.randint(len(x_low))])
        ids = {}
        for w in range(k):
            if w == x:
                ids[w] = c
            else:
                ids[w] = size
                size += 1
        for u, v in local:
            edges.append((ids[u], ids[v]))
            degree[ids[u]] += 1
            degree[ids[v]] += 1
        blocks += 1
    return size, edges


def gen_random(kind, n, seed):
    """Seeded random graph of the given kind on n vertices."""
    if kind not in KINDS:
        raise GeneratorError(f"unknown kind {kind!r}, expected one of {', '.join(KINDS)}")
    if n < 4:
        raise GeneratorError(f"n must be at least 4, got {n}")
    if n > MAX_GENERATED_VERTICES:
        raise GeneratorError(f"n={n} is above {MAX_GENERATED_VERTICES}")
    rng = np.random.RandomState(seed)
    if kind == KIND_SP:
        g = Graph(n, _random_sp(rng, n))
        assert validate_partial2tree(g) == SP_BLOCK
    elif kind == KIND_IP:
        g = Graph(*_random_ip(rng, n))
        assert is_independent_parallel(build_spq_star(g))
    else:
        g = Graph(*_random_blocks(rng, n))
        assert validate_partial2tree(g) == PARTIAL_2TREE
    logger.debug("random %s graph: n=%d m=%d seed=%s", kind, g.n, g.m, seed)
    return g
