#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 2026

This module builds the SPQ*-tree of a biconnected series-parallel block and
the per-root views on it.

Maximal chains through degree-2 vertices become Q*-nodes. The remaining
multigraph on the branch vertices is reduced by series and parallel steps
with the first chain as the reference, which yields the S- and P-nodes.

Per (node, parent) pair a Frame records the canonical pole order (smaller
vertex id first), the children ordered and oriented along that pole order,
the in-degrees at the poles and the pertinent size. Frames do not depend on
which root induced the parent, so they are shared by every RootedView.

Written in Python 3.6
"""
import logging
from collections import deque, namedtuple

from orthotest.errors import NotSeriesParallelError

logger = logging.getLogger(__name__)

Q_NODE = 'Q'
S_NODE = 'S'
P_NODE = 'P'

Chain = namedtuple('Chain', ['vertices', 'edges'])


class SpqNode(object):
    """One node of the unrooted SPQ*-tree.

    Attributes:
        id (int): node id; Q*-nodes come first and share the chain index.
        kind (str): 'Q', 'S' or 'P'.
        neighbors (list): adjacent node ids. For S-nodes neighbor i lies on
            the skeleton edge (cycle[i], cycle[i+1 mod m]).
        chain (Chain): Q*-nodes only, the vertex path and its edge ids.
        cycle (tuple): S-nodes only, skeleton cycle vertices.
        poles (tuple): P-nodes and Q*-nodes, the two attachment vertices
            with the smaller id first.
    """
    def __init__(self, node_id, kind, chain=None, cycle=None, poles=None):
        self.id = node_id
        self.kind = kind
        self.neighbors = []
        self.chain = chain
        self.cycle = cycle
        self.poles = poles

    @property
    def length(self):
        return len(self.chain.edges) if self.chain is not None else None

    def __repr__(self):
        return f"SpqNode({self.id}, {self.kind})"


class Frame(namedtuple('Frame', ['node', 'parent', 'poles', 'children',
                                   'indeg', 'size'])):
    """Root-independent data of a node seen from a given parent."""
    __slots__ = ()

    def indeg_at(self, w):
        if w == self.poles[0]:
            return self.indeg[0]
        if w == self.poles[1]:
            return self.indeg[1]
        raise KeyError(f"vertex {w} is not a pole of node {self.node}")


################################################################################
## CONSTRUCTION
################################################################################

def _extract_chains(block):
    branch = [v for v in range(block.n) if block.degree(v) >= 3]
    if len(branch) < 2:
        raise NotSeriesParallelError(
            "block has fewer than two branch vertices (cycle or not biconnected)")
    seen_edges = set()
    chains = []
    for a in branch:
        for e in block.adjacency[a]:
            if e in seen_edges:
                continue
            vertices, edges = [a], []
            x, edge = a, e
            while True:
                seen_edges.add(edge)
                edges.append(edge)
                y = block.other(edge, x)
                vertices.append(y)
                if block.degree(y) >= 3:
                    break
                nxt = [f for f in block.adjacency[y] if f != edge]
                x, edge = y, nxt[0]
            if vertices[0] == vertices[-1]:
                raise NotSeriesParallelError(
                    f"chain from {a} returns to itself; block is not biconnected")
            if vertices[0] > vertices[-1]:
                vertices.reverse()
                edges.reverse()
            chains.append(Chain(tuple(vertices), tuple(edges)))
    chains.sort(key=lambda c: (c.vertices[0], c.vertices[-1], c.edges[0]))
    return chains


class _Reducer(object):
    """Two-terminal series-parallel reduction of the chain multigraph."""
    def __init__(self, tree, chains, reference):
        self.tree = tree
        self.s, self.t = chains[reference].vertices[0], chains[reference].vertices[-1]
        self.edges = {}
        self.at = {}
        self.pairs = {}
        # series records per S-node id: list of (child, start, end)
        self.sequences = {}
        self.next_edge = 0
        for i, chain in enumerate(chains):
            if i == reference:
                continue
            self._add(chain.vertices[0], chain.vertices[-1], i)

    def _add(self, x, y, node):
        e = self.next_edge
        self.next_edge += 1
        self.edges[e] = (x, y, node)
        self.at.setdefault(x, set()).add(e)
        self.at.setdefault(y, set()).add(e)
        self.pairs.setdefault((min(x, y), max(x, y)), set()).add(e)
        return e

    def _remove(self, e):
        x, y, node = self.edges.pop(e)
        self.at[x].discard(e)
        self.at[y].discard(e)
        self.pairs[(min(x, y), max(x, y))].discard(e)
        return x, y, node

    def _parallel(self, pair):
        eids = sorted(self.pairs.get(pair, ()))
        if len(eids) < 2:
            return False
        children = []
        for e in eids:
            _, _, node = self._remove(e)
            if self.tree.nodes[node].kind == P_NODE:
                children.extend(self.tree.nodes[node].neighbors)
                self.tree._discard(node)
            else:
                children.append(node)
        p = self.tree._new_node(P_NODE, poles=pair)
        for child in sorted(children):
            p.neighbors.append(child)
            self.tree._set_parent(child, p.id)
        self._add(pair[0], pair[1], p.id)
        return True

    def _oriented_sequence(self, node, start, end):
        if self.tree.nodes[node].kind != S_NODE:
            return [(node, start, end)]
        seq = self.sequences[node]
        if seq[0][1] == start:
            return list(seq)
        return [(c, b, a) for c, a, b in reversed(seq)]

    def _series(self, w):
        e1, e2 = sorted(self.at[w])
        x1, y1, n1 = self._remove(e1)
        x2, y2, n2 = self._remove(e2)
        x = x1 if y1 == w else y1
        y = x2 if y2 == w else y2
        del self.at[w]
        seq = self._oriented_sequence(n1, x, w) + self._oriented_sequence(n2, w, y)
        for node in (n1, n2):
            if self.tree.nodes[node].kind == S_NODE:
                del self.sequences[node]
                self.tree._discard(node)
        s = self.tree._new_node(S_NODE)
        self.sequences[s.id] = seq
        for child, _, _ in seq:
            self.tree._set_parent(child, s.id)
        self._add(x, y, s.id)
        return x, y

    def run(self):
        pending_pairs = deque(sorted(p for p, e in self.pairs.items() if len(e) > 1))
        pending_vertices = deque(sorted(
            v for v, e in self.at.items()
            if len(e) == 2 and v not in (self.s, self.t)))
        while pending_pairs or pending_vertices:
            if pending_pairs:
                pair = pending_pairs.popleft()
                if self._parallel(pair):
                    for w in pair:
                        if w not in (self.s, self.t) and len(self.at[w]) == 2:
                            pending_vertices.append(w)
                continue
            w = pending_vertices.popleft()
            if w not in self.at or len(self.at[w]) != 2:
                continue
            x, y = self._series(w)
            pair = (min(x, y), max(x, y))
            if len(self.pairs[pair]) > 1:
                pending_pairs.append(pair)
        if len(self.edges) != 1:
            raise NotSeriesParallelError(
                "series-parallel reduction left more than one component")
        (x, y, node), = self.edges.values()
        if {x, y} != {self.s, self.t}:
            raise NotSeriesParallelError("reduction did not end at the reference poles")
        return node


class SpqTree(object):
    """Unrooted SPQ*-tree of a biconnected SP block.

    Methods:
        q_nodes(): ids of the Q*-nodes.
        frame(node, parent): the Frame of a node for a given parent (None only
            for a Q*-node acting as root).
        chain_roots(): Q*-nodes in root iteration order.

    Attributes:
        block (Graph): the block the tree decomposes.
        nodes (list): SpqNode records indexed by id.
        chains (list): Chain records; chain i is Q*-node i.
    """
    def __init__(self, block):
        self.block = block
        self.nodes = []
        self._parents = {}
        self._frames = {}

    # construction helpers
    def _new_node(self, kind, **kwargs):
        node = SpqNode(len(self.nodes), kind, **kwargs)
        self.nodes.append(node)
        return node

    def _set_parent(self, child, parent):
        self._parents[child] = parent

    def _discard(self, node):
        self.nodes[node] = None

    def q_nodes(self):
        return [n.id for n in self.nodes if n.kind == Q_NODE]

    def chain_roots(self):
        return sorted(self.q_nodes(), key=lambda q: (-self.nodes[q].length, q))

    def neighbors(self, node):
        return self.nodes[node].neighbors

    def node(self, node):
        return self.nodes[node]

    def __len__(self):
        return len(self.nodes)

    ############################################################################
    ## FRAMES
    ############################################################################

    def _oriented_children(self, node, parent):
        """Children of node for the given parent, oriented along the node's
        canonical pole order."""
        rec = self.nodes[node]
        if rec.kind == Q_NODE:
            if parent is not None:
                return rec.poles, ()
            u, v = rec.poles
            return rec.poles, ((rec.neighbors[0], u, v),)
        if rec.kind == P_NODE:
            u, v = rec.poles
            return rec.poles, tuple((c, u, v) for c in rec.neighbors if c != parent)
        cycle, m = rec.cycle, len(rec.cycle)
        p = rec.neighbors.index(parent)
        a, b = cycle[p], cycle[(p + 1) % m]
        u, v = min(a, b), max(a, b)
        children = []
        if u == b:
            for step in range(1, m):
                i = (p + step) % m
                children.append((rec.neighbors[i], cycle[i], cycle[(i + 1) % m]))
        else:
            for step in range(1, m):
                i = (p - step) % m
                children.append((rec.neighbors[i], cycle[(i + 1) % m], cycle[i]))
        return (u, v), tuple(children)

    def frame(self, node, parent):
        key = (node, parent)
        if key in self._frames:
            return self._frames[key]
        stack = [key]
        while stack:
            n, p = stack[-1]
            if (n, p) in self._frames:
                stack.pop()
                continue
            poles, children = self._oriented_children(n, p)
            if self.nodes[n].kind == Q_NODE and p is not None:
                frame = Frame(n, p, poles, (), (1, 1), self.nodes[n].length)
                self._frames[(n, p)] = frame
                stack.pop()
                continue
            if self.nodes[n].kind == Q_NODE:
                # the root chain: its single child spans the same poles
                missing = [(c, n) for c, _, _ in children if (c, n) not in self._frames]
                if missing:
                    stack.extend(missing)
                    continue
                child = self._frames[(children[0][0], n)]
                frame = Frame(n, None, poles, children, (1, 1),
                              self.nodes[n].length + child.size)
                self._frames[(n, p)] = frame
                stack.pop()
                continue
            missing = [(c, n) for c, _, _ in children if (c, n) not in self._frames]
            if missing:
                stack.extend(missing)
                continue
            child_frames = [self._frames[(c, n)] for c, _, _ in children]
            size = sum(f.size for f in child_frames)
            u, v = poles
            if self.nodes[n].kind == P_NODE:
                indeg = (sum(f.indeg_at(u) for f in child_frames),
                         sum(f.indeg_at(v) for f in child_frames))
            else:
                indeg = (child_frames[0].indeg_at(u), child_frames[-1].indeg_at(v))
            self._frames[(n, p)] = Frame(n, p, poles, children, indeg, size)
            stack.pop()
        return self._frames[key]


def build_spq_star(block):
    """Build the SPQ*-tree of a biconnected SP block that is not a cycle."""
    chains = _extract_chains(block)
    tree = SpqTree(block)
    tree.chains = chains
    for chain in chains:
        tree._new_node(Q_NODE, chain=chain,
                       poles=(chain.vertices[0], chain.vertices[-1]))
    reducer = _Reducer(tree, chains, 0)
    top = reducer.run()
    for s_id, seq in reducer.sequences.items():
        node = tree.nodes[s_id]
        node.cycle = tuple(a for _, a, _ in seq) + (seq[-1][2],)
        # the parent is appended later and closes the skeleton cycle
        node.neighbors = [c for c, _, _ in seq]
    tree._set_parent(top, 0)
    tree._set_parent(0, top)
    _attach_parents(tree)
    # compact ids after flattened intermediate nodes
    _renumber(tree)
    logger.debug("SPQ* tree: %d nodes, %d chains", len(tree.nodes), len(chains))
    return tree


def _attach_parents(tree):
    for node in tree.nodes:
        if node is None:
            continue
        parent = tree._parents.get(node.id)
        if node.kind == Q_NODE:
            node.neighbors = [parent]
        elif parent is not None:
            node.neighbors.append(parent)


def _renumber(tree):
    alive = [n for n in tree.nodes if n is not None]
    mapping = {n.id: i for i, n in enumerate(alive)}
    for n in alive:
        n.id = mapping[n.id]
        n.neighbors = [mapping[x] for x in n.neighbors]
    tree.nodes = alive
    tree._parents = {}


################################################################################
## ROOTED VIEWS
################################################################################

class RootedView(object):
    """The SPQ*-tree rooted at a Q*-node.

    The reference chain runs from s (its smaller endpoint) to t. Every node
    gets its poles oriented (u, v) by its parent: P-node children inherit the
    parent's order and S-node children run along the skeleton cycle from u
    to v. flipped(node) tells whether that order is the reverse of the
    canonical (smaller id first) order used by frames.
    """
    def __init__(self, tree, root):
        if tree.nodes[root].kind != Q_NODE:
            raise ValueError(f"root {root} is not a Q*-node")
        self.tree = tree
        self.block = tree.block
        self.root = root
        self._parent = {root: None}
        self._oriented = {}
        self._children = {}
        self._pertinent = {}
        order = [root]
        s, t = tree.nodes[root].poles
        self._oriented[root] = (s, t)
        queue = deque([root])
        while queue:
            node = queue.popleft()
            frame = tree.frame(node, self._parent[node])
            flipped = self._oriented[node] != frame.poles
            kids = list(frame.children)
            if flipped:
                kids = [(c, b, a) for c, a, b in reversed(kids)]
            self._children[node] = tuple(kids)
            for child, a, b in kids:
                self._parent[child] = node
                self._oriented[child] = (a, b)
                order.append(child)
                queue.append(child)
        self.order = tuple(order)

    @property
    def s(self):
        return self._oriented[self.root][0]

    @property
    def t(self):
        return self._oriented[self.root][1]

    def parent(self, node):
        return self._parent[node]

    def children(self, node):
        """Children as (child, a, b) tuples oriented from a to b."""
        return self._children[node]

    def child_ids(self, node):
        return [c for c, _, _ in self._children[node]]

    def root_child(self):
        return self._children[self.root][0][0]

    def frame(self, node):
        return self.tree.frame(node, self._parent[node])

    def poles(self, node):
        return self._oriented[node]

    def flipped(self, node):
        return self._oriented[node] != self.frame(node).poles

    def kind(self, node):
        return self.tree.nodes[node].kind

    def indeg(self, node, w):
        if node == self.root:
            return 1
        return self.frame(node).indeg_at(w)

    def outdeg(self, node, w):
        return self.block.degree(w) - self.indeg(node, w)

    def size(self, node):
        if node == self.root:
            return self.tree.nodes[node].length
        return self.frame(node).size

    def pertinent_edges(self, node):
        if node in self._pertinent:
            return self._pertinent[node]
        edges = set()
        stack = [node]
        while stack:
            x = stack.pop()
            rec = self.tree.nodes[x]
            if rec.kind == Q_NODE:
                edges.update(rec.chain.edges)
            if x == self.root:
                continue
            stack.extend(self.child_ids(x))
        result = frozenset(edges)
        self._pertinent[node] = result
        return result

    def outside_neighbors(self, node, w):
        inside = self.pertinent_edges(node)
        return sorted(self.block.other(e, w) for e in self.block.adjacency[w]
                      if e not in inside)

    def postorder(self):
        return tuple(reversed(self.order))

    def oriented_chain(self, node):
        """Vertex path of a Q*-node from its u pole to its v pole."""
        vertices = self.tree.nodes[node].chain.vertices
        if vertices[0] == self._oriented[node][0]:
            return vertices
        return tuple(reversed(vertices))


def rooted_view(tree, root):
    return RootedView(tree, root)


################################################################################
## PREDICATES AND DUMPS
################################################################################

def is_independent_parallel(tree):
    """True iff no vertex is a pole of two distinct P-nodes."""
    seen = set()
    for node in tree.nodes:
        if node.kind != P_NODE:
            continue
        for w in node.poles:
            if w in seen:
                return False
            seen.add(w)
    return True


def dump_tree(tree, view=None):
    """JSON-ready description of the tree and optionally of a rooted view."""
    nodes = []
    for node in tree.nodes:
        entry = {'id': node.id, 'kind': node.kind, 'neighbors': list(node.neighbors)}
        if node.kind == Q_NODE:
            entry['chain'] = list(node.chain.vertices)
            entry['length'] = node.length
        elif node.kind == S_NODE:
            m = len(node.cycle)
            entry['skeleton'] = [[node.cycle[i], node.cycle[(i + 1) % m]]
                                 for i in range(m)]
        else:
            entry['poles'] = list(node.poles)
            entry['skeleton'] = [list(node.poles)] * len(node.neighbors)
        if view is not None:
            u, v = view.poles(node.id)
            entry['parent'] = view.parent(node.id)
            entry['poles'] = [u, v]
            entry['indeg'] = [view.indeg(node.id, u), view.indeg(node.id, v)]
            entry['outdeg'] = [view.outdeg(node.id, u), view.outdeg(node.id, v)]
            entry['size'] = view.size(node.id)
        nodes.append(entry)
    doc = {'nodes': nodes}
    if view is not None:
        doc['root'] = view.root
        doc['s'], doc['t'] = view.s, view.t
    return doc
