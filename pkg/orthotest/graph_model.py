#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 2026

This module defines the graph universe used by every other part of the
tester: a simple undirected graph with dense vertex and edge ids, the parser
for the JSON and edge-list input formats, the partial 2-tree classifier and
the block-cutvertex decomposition.

Written in Python 3.6
"""
import json
import logging
from collections import Counter, namedtuple

import networkx as nx

from orthotest.errors import GraphFormatError, GraphValidationError

logger = logging.getLogger(__name__)

SIMPLE_CYCLE = 'SimpleCycle'
SP_BLOCK = 'SpBlock'
PARTIAL_2TREE = 'Partial2Tree'
NOT_PARTIAL_2TREE = 'NotPartial2Tree'

MAX_DEGREE = 4


################################################################################
## GRAPH
################################################################################

class Graph(object):
    """Simple undirected graph with dense integer vertex and edge ids.

    Edges are stored as (u, v) pairs with u < v, sorted lexicographically, so
    edge ids are a deterministic function of the edge set. Instances are never
    mutated after construction.

    Attributes:
        n (int): number of vertices, ids 0..n-1.
        edges (tuple): sorted (u, v) pairs with u < v; the edge id is the index.
        adjacency (tuple): per vertex, the tuple of incident edge ids.
    """
    def __init__(self, n, edges, max_degree=MAX_DEGREE):
        self.n = int(n)
        normalized = []
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphValidationError(f"Self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphValidationError(
                    f"Edge ({u}, {v}) references a vertex id >= n={self.n}")
            normalized.append((min(u, v), max(u, v)))
        counts = Counter(normalized)
        duplicates = sorted(e for e, c in counts.items() if c > 1)
        if duplicates:
            raise GraphValidationError(f"Duplicate edge {duplicates[0]}")
        self.edges = tuple(sorted(normalized))
        self._edge_index = {e: i for i, e in enumerate(self.edges)}
        adjacency = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            adjacency[u].append(i)
            adjacency[v].append(i)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        if max_degree is not None:
            for v in range(self.n):
                if len(self.adjacency[v]) > max_degree:
                    raise GraphValidationError(
                        f"Vertex {v} has degree {len(self.adjacency[v])} > "
                        f"{max_degree}")

    @property
    def m(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def other(self, e, v):
        """Return the endpoint of edge `e` that is not `v`."""
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v):
        return [self.other(e, v) for e in self.adjacency[v]]

    def edge_id(self, u, v):
        return self._edge_index[(min(u, v), max(u, v))]

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_index

    def is_connected(self):
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_networkx(self):
        nxg = nx.Graph()
        nxg.add_nodes_from(range(self.n))
        nxg.add_edges_from(self.edges)
        return nxg

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def graph_to_json(g):
    """Serialize a graph to the canonical JSON document (sorted edges)."""
    return json.dumps({'n': g.n, 'edges': [list(e) for e in g.edges]},
                      sort_keys=True)


def relabel(g, permutation):
    """Return the graph obtained by mapping vertex v to permutation[v]."""
    return Graph(g.n, [(permutation[u], permutation[v]) for u, v in g.edges])


################################################################################
## PARSING
################################################################################

def _parse_json(text):
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise GraphFormatError(f"Malformed JSON: {e}")
    if not isinstance(doc, dict) or 'n' not in doc or 'edges' not in doc:
        raise GraphFormatError("JSON graph must be an object with 'n' and 'edges'")
    n = doc['n']
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError(f"'n' must be a non-negative integer, got {n!r}")
    edges = []
    for item in doc['edges']:
        if (not isinstance(item, (list, tuple)) or len(item) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool)
                           for x in item)):
            raise GraphFormatError(f"Malformed edge entry {item!r}")
        if item[0] < 0 or item[1] < 0:
            raise GraphValidationError(f"Negative vertex id in edge {item!r}")
        edges.append((item[0], item[1]))
    return n, edges


def _parse_edge_list(text):
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"Line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"Line {lineno}: non-integer vertex id")
        if u < 0 or v < 0:
            raise GraphValidationError(f"Line {lineno}: negative vertex id")
        edges.append((u, v))
    n = 1 + max((max(e) for e in edges), default=-1)
    return n, edges


def parse_graph(text):
    """Parse a JSON or edge-list document into a validated Graph.

    Raises GraphFormatError for syntax problems and GraphValidationError for
    duplicate edges, self-loops, out-of-range ids, degree above four and
    disconnected input."""
    if isinstance(text, bytes):
        text = text.decode('utf-8')
    stripped = text.lstrip()
    if stripped.startswith('{'):
        n, edges = _parse_json(stripped)
    else:
        n, edges = _parse_edge_list(text)
    g = Graph(n, edges)
    if not g.is_connected():
        raise GraphValidationError("Graph is disconnected")
    return g


################################################################################
## BLOCK-CUTVERTEX TREE
################################################################################

Block = namedtuple('Block', ['index', 'vertices', 'edges', 'trivial'])


class BcTree(object):
    """Block-cutvertex decomposition of a connected graph.

    Methods:
        blocks_at(c): block indices containing cutvertex c, ascending.
        cutvertices_of(b): cutvertices of block b, ascending.
        degree_in_block(c, b): number of edges of block b incident to c.
        neighbors(node): BC-tree neighbors of ('B', b) or ('C', c) nodes.

    Attributes:
        blocks (tuple): Block records sorted by their minimum edge.
        cutvertices (tuple): sorted cutvertex ids.
        block_of_edge (tuple): block index per edge id.
    """
    def __init__(self, g, blocks, cutvertices):
        self.graph = g
        self.blocks = tuple(blocks)
        self.cutvertices = tuple(sorted(cutvertices))
        block_of_edge = [None] * g.m
        for b in self.blocks:
            for e in b.edges:
                block_of_edge[e] = b.index
        self.block_of_edge = tuple(block_of_edge)
        cut_set = set(self.cutvertices)
        self._blocks_at = {c: [] for c in self.cutvertices}
        self._cuts_of = []
        self._block_degree = []
        for b in self.blocks:
            degree = Counter()
            for e in b.edges:
                u, v = g.edges[e]
                degree[u] += 1
                degree[v] += 1
            self._block_degree.append(degree)
            cuts = sorted(v for v in b.vertices if v in cut_set)
            self._cuts_of.append(tuple(cuts))
            for c in cuts:
                self._blocks_at[c].append(b.index)

    def blocks_at(self, c):
        return tuple(self._blocks_at.get(c, ()))

    def cutvertices_of(self, b):
        return self._cuts_of[b]

    def degree_in_block(self, c, b):
        return self._block_degree[b][c]

    def block_containing(self, v):
        """Return the blocks that contain vertex v."""
        return tuple(b.index for b in self.blocks if v in self._block_degree[b.index])

    def neighbors(self, node):
        kind, ident = node
        if kind == 'B':
            return [('C', c) for c in self._cuts_of[ident]]
        return [('B', b) for b in self._blocks_at[ident]]

    def is_cycle_block(self, b):
        block = self.blocks[b]
        return (not block.trivial and len(block.vertices) >= 3
                and all(self._block_degree[b][v] == 2 for v in block.vertices))

    def __repr__(self):
        return (f"BcTree(blocks={len(self.blocks)}, "
                f"cutvertices={len(self.cutvertices)})")


def build_bc_tree(g):
    """Decompose a connected graph into its blocks and cutvertices."""
    nxg = g.to_networkx()
    raw = []
    for component in nx.biconnected_component_edges(nxg):
        edge_ids = sorted(g.edge_id(u, v) for u, v in component)
        raw.append(edge_ids)
    raw.sort(key=lambda ids: g.edges[ids[0]])
    blocks = []
    for index, edge_ids in enumerate(raw):
        vertices = sorted({v for e in edge_ids for v in g.edges[e]})
        blocks.append(Block(index, tuple(vertices), tuple(edge_ids),
                            len(edge_ids) == 1))
    cutvertices = sorted(nx.articulation_points(nxg)) if g.n > 2 else []
    return BcTree(g, blocks, cutvertices)


def block_graph(g, bc, b):
    """Extract block b as a stand-alone Graph with dense local ids.

    Returns the block graph and the tuple mapping local ids to ids of g."""
    block = bc.blocks[b]
    vmap = block.vertices
    local = {v: i for i, v in enumerate(vmap)}
    edges = [(local[g.edges[e][0]], local[g.edges[e][1]]) for e in block.edges]
    return Graph(len(vmap), edges), tuple(vmap)


################################################################################
## CLASSIFICATION
################################################################################

def is_series_parallel_block(n, edges):
    """Series-parallel reduction on a biconnected edge set.

    Vertices with two distinct neighbours are suppressed and parallel edges
    merged; the block is an SP-graph iff two vertices remain."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    queue = sorted(v for v in adj if len(adj[v]) == 2)
    while queue and len(adj) > 2:
        w = queue.pop()
        if w not in adj or len(adj[w]) != 2:
            continue
        a, b = sorted(adj[w])
        adj[a].discard(w)
        adj[b].discard(w)
        del adj[w]
        adj[a].add(b)
        adj[b].add(a)
        for x in (a, b):
            if len(adj[x]) == 2:
                queue.append(x)
    return len(adj) <= 2


def is_simple_cycle(g):
    return (g.n >= 3 and g.m == g.n and g.is_connected()
            and all(g.degree(v) == 2 for v in range(g.n)))


def validate_partial2tree(g):
    """Classify g as SimpleCycle, SpBlock, Partial2Tree or NotPartial2Tree."""
    if is_simple_cycle(g):
        return SIMPLE_CYCLE
    bc = build_bc_tree(g)
    for block in bc.blocks:
        if block.trivial or bc.is_cycle_block(block.index):
            continue
        pairs = [g.edges[e] for e in block.edges]
        if not is_series_parallel_block(len(block.vertices), pairs):
            logger.debug("Block %d with %d edges is not series-parallel",
                         block.index, len(block.edges))
            return NOT_PARTIAL_2TREE
    if len(bc.blocks) == 1 and not bc.blocks[0].trivial:
        return SP_BLOCK
    return PARTIAL_2TREE
