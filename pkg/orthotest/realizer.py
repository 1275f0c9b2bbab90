#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Created on Sun Oct 18 2026

This file turns spirality assignments into orthogonal representations and
drawings. An OrthoRep stores, per vertex, the counterclockwise order of its
neighbours and the angle (in quarter turns) from each incident edge to the
next one; edge directions, faces and turn sums are derived from that. The
module also validates representations, compacts them to integer grid
coordinates and writes them out as SVG or JSON.

Directions are numbered counterclockwise: E=0, N=1, W=2, S=3.

Written in Python 3.6
"""
import json
import logging
from collections import namedtuple

import networkx as nx
import numpy as np

from orthotest.errors import ConstructionError, RepresentationError

logger = logging.getLogger(__name__)

E, N, W, S = 0, 1, 2, 3
DIRECTION_NAMES = ('E', 'N', 'W', 'S')
STEP = {E: (1, 0), N: (0, 1), W: (-1, 0), S: (0, -1)}


################################################################################
## ASSIGNMENTS
################################################################################

class NodeAssignment(object):
    """Spiralities, child orders and alpha values for every SPQ*-node.

    Values are doubled and expressed in the pole orientation of the rooted
    view they were built for.

    Attributes:
        root (int): the Q*-node of the reference chain.
        root_sigma (int): doubled spirality of the reference chain, s to t.
        sigma (dict): node -> doubled spirality.
        order (dict): P-node -> child ids from left to right.
        alpha (dict): two-child P-node -> {'ul', 'ur', 'vl', 'vr'} values.
        turns (dict): Q*-node -> turns (+1 right) at its internal vertices.
    """
    def __init__(self, root, root_sigma):
        self.root = root
        self.root_sigma = root_sigma
        self.sigma = {}
        self.order = {}
        self.alpha = {}
        self.turns = {}

    def to_dict(self):
        return {
            'root': self.root,
            'root_sigma': self.root_sigma / 2,
            'sigma': {str(k): v / 2 for k, v in sorted(self.sigma.items())},
            'order': {str(k): list(v) for k, v in sorted(self.order.items())},
            'alpha': {str(k): dict(sorted(v.items()))
                      for k, v in sorted(self.alpha.items())},
            'turns': {str(k): list(v) for k, v in sorted(self.turns.items())},
        }


################################################################################
## REPRESENTATION
################################################################################

class OrthoRep(object):
    """Zero-bend orthogonal representation of a connected graph.

    Methods:
        direction(a, b): direction of the edge a->b.
        faces(): boundary walks, each a tuple of darts with the face on the left.
        face_turns(): per face, the sum of 2 - angle over its corners.
        external_face(): index of the face whose turns sum to -4.

    Attributes:
        rotation (dict): vertex -> neighbours in counterclockwise order.
        angles (dict): (v, w) -> quarter turns from edge v-w counterclockwise
            to the next edge at v (4 at a degree-1 vertex).
        coords (tuple): optional (x, y) per vertex.
    """
    def __init__(self, n, edges, rotation, angles, coords=None, anchor=None):
        self.n = n
        self.edges = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        self.rotation = {v: tuple(rotation.get(v, ())) for v in range(n)}
        self.angles = dict(angles)
        self.coords = tuple(tuple(c) for c in coords) if coords is not None else None
        self.anchor = anchor
        self._directions = None
        self._faces = None

    @classmethod
    def from_directions(cls, n, edges, directions, coords=None):
        """Build the rotation and angles from one direction per dart."""
        edges = list(edges)
        dirs = {}
        for (a, b), d in directions.items():
            dirs[(a, b)] = d % 4
            back = (d + 2) % 4
            if dirs.get((b, a), back) != back:
                raise RepresentationError(f"edge ({a}, {b}) has inconsistent directions")
            dirs[(b, a)] = back
        adjacency = {v: [] for v in range(n)}
        for a, b in edges:
            if (a, b) not in dirs:
                raise RepresentationError(f"edge ({a}, {b}) has no direction")
            adjacency[a].append(b)
            adjacency[b].append(a)
        rotation, angles = {}, {}
        for v, nbrs in adjacency.items():
            ordered = sorted(nbrs, key=lambda w: dirs[(v, w)])
            rotation[v] = tuple(ordered)
            for i, w in enumerate(ordered):
                nxt = ordered[(i + 1) % len(ordered)]
                gap = (dirs[(v, nxt)] - dirs[(v, w)]) % 4
                angles[(v, w)] = gap if gap else 4
        anchor = None
        if edges:
            a, b = edges[0]
            anchor = (a, b, dirs[(a, b)])
        return cls(n, edges, rotation, angles, coords, anchor)

    @property
    def m(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.rotation[v])

    def with_coordinates(self, coords):
        return OrthoRep(self.n, self.edges, self.rotation, self.angles, coords,
                        self.anchor)

    def directions(self):
        """Propagate edge directions from the anchor dart through the angles."""
        if self._directions is not None:
            return self._directions
        dirs = {}
        if not self.edges:
            self._directions = dirs
            return dirs
        a, b, d = self.anchor if self.anchor is not None else (
            self.edges[0][0], self.edges[0][1], E)
        dirs[(a, b)] = d
        stack = [a]
        while stack:
            v = stack.pop()
            rot = self.rotation[v]
            known = [i for i, w in enumerate(rot) if (v, w) in dirs]
            if not known:
                continue
            i0 = known[0]
            current = dirs[(v, rot[i0])]
            for step in range(len(rot)):
                w = rot[(i0 + step) % len(rot)]
                if dirs.get((v, w), current) != current:
                    raise RepresentationError(f"angles around vertex {v} are inconsistent")
                dirs[(v, w)] = current
                back = (current + 2) % 4
                if (w, v) not in dirs:
                    dirs[(w, v)] = back
                    stack.append(w)
                elif dirs[(w, v)] != back:
                    raise RepresentationError(f"edge ({v}, {w}) gets two directions")
                current = (current + self.angles[(v, w)]) % 4
        if len(dirs) != 2 * self.m:
            raise RepresentationError("representation is not connected")
        self._directions = dirs
        return dirs

    def direction(self, a, b):
        return self.directions()[(a, b)]

    def next_dart(self, a, b):
        """Dart following a->b on the face to its left."""
        rot = self.rotation[b]
        return b, rot[rot.index(a) - 1]

    def faces(self):
        if self._faces is not None:
            return self._faces
        seen = set()
        faces = []
        for a, b in self.edges:
            for dart in ((a, b), (b, a)):
                if dart in seen:
                    continue
                walk = []
                x = dart
                while x not in seen:
                    seen.add(x)
                    walk.append(x)
                    x = self.next_dart(*x)
                faces.append(tuple(walk))
        self._faces = faces
        return faces

    def corner_angle(self, dart):
        """Angle at the head of `dart` inside the face to its left."""
        _, b = dart
        nxt = self.next_dart(*dart)[1]
        return self.angles[(b, nxt)]

    def face_turns(self):
        return [sum(2 - self.corner_angle(d) for d in face) for face in self.faces()]

    def external_face(self):
        turns = self.face_turns()
        if not turns:
            return None
        return min(range(len(turns)), key=lambda i: (turns[i], i))

    def __eq__(self, other):
        return (isinstance(other, OrthoRep) and self.n == other.n
                and self.edges == other.edges and self.rotation == other.rotation
                and self.angles == other.angles and self.coords == other.coords)

    def __repr__(self):
        return f"OrthoRep(n={self.n}, m={self.m})"


################################################################################
## SYNTHESIS
################################################################################

def _chain_corners(rotation, angles, path, turns):
    """Rotation and angles at the internal vertices of a path with turns."""
    for i, t in enumerate(turns):
        p, x, q = path[i], path[i + 1], path[i + 2]
        rotation[x] = (p, q)
        angles[(x, p)] = 2 - t
        angles[(x, q)] = 2 + t


def _fans(assignment, view):
    """Left-to-right edges (as neighbours) of every node at its poles, and
    the P-node that spreads them."""
    fans, owners = {}, {}
    for node in view.postorder():
        if node == view.root:
            continue
        u, v = view.poles(node)
        kind = view.kind(node)
        if kind == 'Q':
            path = view.oriented_chain(node)
            fans[node] = {u: (path[1],), v: (path[-2],)}
            owners[node] = {u: None, v: None}
        elif kind == 'S':
            kids = view.child_ids(node)
            fans[node] = {u: fans[kids[0]][u], v: fans[kids[-1]][v]}
            owners[node] = {u: owners[kids[0]][u], v: owners[kids[-1]][v]}
        else:
            order = assignment.order[node]
            fans[node] = {w: tuple(x for c in order for x in fans[c][w]) for w in (u, v)}
            owners[node] = {u: node, v: node}
    return fans, owners


def _branch_corners(rotation, angles, block, assignment, w, in_fan, out_fan,
                    owner, side):
    """Counterclockwise order at a branch vertex: outgoing fan right to left,
    then incoming fan left to right."""
    ccw = list(reversed(out_fan)) + list(in_fan)
    if len(ccw) != block.degree(w):
        raise ConstructionError(f"fans at vertex {w} miss some edges")
    gaps = [1] * len(ccw)
    if len(ccw) == 3:
        left, right = len(out_fan) - 1, len(ccw) - 1
        inner = 0 if len(out_fan) == 2 else len(out_fan)
        alpha = assignment.alpha.get(owner)
        if alpha is None:
            raise ConstructionError(f"no alpha values for P-node {owner} at {w}")
        if alpha[side + 'l'] == 0:
            flat = left
        elif alpha[side + 'r'] == 0:
            flat = right
        else:
            flat = inner
        gaps[flat] = 2
    rotation[w] = tuple(ccw)
    for x, gap in zip(ccw, gaps):
        angles[(w, x)] = gap


def synthesize(assignment, view):
    """Orthogonal representation of a block from a NodeAssignment.

    The reference chain leaves s heading south; every other direction follows
    from the rotations and angles."""
    block = view.block
    rotation, angles = {}, {}
    for node in view.order:
        if view.kind(node) == 'Q':
            _chain_corners(rotation, angles, view.oriented_chain(node),
                           assignment.turns[node])
    fans, owners = _fans(assignment, view)
    for node in view.order:
        if view.kind(node) != 'S':
            continue
        kids = view.child_ids(node)
        for left, right in zip(kids, kids[1:]):
            w = view.poles(left)[1]
            in_fan, out_fan = fans[left][w], fans[right][w]
            if len(out_fan) == 2:
                owner, side = owners[right][w], 'u'
            else:
                owner, side = owners[left][w], 'v'
            _branch_corners(rotation, angles, block, assignment, w, in_fan,
                            out_fan, owner, side)
    reference = view.oriented_chain(view.root)
    child = view.root_child()
    s, t = view.s, view.t
    _branch_corners(rotation, angles, block, assignment, s, (reference[1],),
                    fans[child][s], child, 'u')
    _branch_corners(rotation, angles, block, assignment, t, fans[child][t],
                    (reference[-2],), child, 'v')
    rep = OrthoRep(block.n, block.edges, rotation, angles,
                   anchor=(s, reference[1], S))
    try:
        rep.directions()
    except RepresentationError as e:
        raise ConstructionError(f"assignment does not close up: {e}")
    return rep


def synthesize_cycle(n, cycle, turns):
    """Representation of a cycle walked clockwise with the given turns."""
    rotation, angles = {}, {}
    k = len(cycle)
    closed = list(cycle) + list(cycle[:2])
    # position i of `turns` belongs to cycle[i]; rotate so it sits mid-path
    shifted = list(turns[1:]) + [turns[0]]
    _chain_corners(rotation, angles, closed, shifted)
    edges = [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
    return OrthoRep(n, edges, rotation, angles, anchor=(cycle[0], cycle[1], E))


################################################################################
## VALIDATION
################################################################################

ValidationReport = namedtuple('ValidationReport', ['ok', 'violations'])


def check_segments(rep):
    """Pairs of edges whose segments meet outside a shared endpoint."""
    if rep.coords is None:
        raise RepresentationError("representation has no coordinates")
    if rep.m < 2:
        return []
    xy = np.asarray(rep.coords, dtype=np.int64)
    ends = np.asarray(rep.edges, dtype=np.int64)
    a, b = xy[ends[:, 0]], xy[ends[:, 1]]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    overlap = np.ones((rep.m, rep.m), dtype=bool)
    for axis in (0, 1):
        overlap &= (np.maximum(lo[:, None, axis], lo[None, :, axis])
                    <= np.minimum(hi[:, None, axis], hi[None, :, axis]))
    share = np.zeros((rep.m, rep.m), dtype=bool)
    for i in (0, 1):
        for j in (0, 1):
            share |= ends[:, None, i] == ends[None, :, j]
    bad = np.triu(overlap & ~share, k=1)
    rows, cols = np.nonzero(bad)
    return [(rep.edges[i], rep.edges[j]) for i, j in zip(rows.tolist(), cols.tolist())]


def validate_rep(rep):
    """Check the angle and turn identities, Euler's formula and, when
    coordinates are present, the geometry of the segments."""
    violations = []
    adjacency = {v: set() for v in range(rep.n)}
    for a, b in rep.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    for v in range(rep.n):
        if set(rep.rotation[v]) != adjacency[v] or len(rep.rotation[v]) != len(adjacency[v]):
            violations.append(f"vertex {v}: rotation does not match its edges")
            continue
        if not adjacency[v]:
            continue
        total = sum(rep.angles.get((v, w), 0) for w in rep.rotation[v])
        if total != 4:
            violations.append(f"vertex {v}: angles sum to {total * 90} degrees")
        for w in rep.rotation[v]:
            if rep.angles.get((v, w), 0) < 1:
                violations.append(f"vertex {v}: empty angle after edge to {w}")
    if violations:
        return ValidationReport(False, violations)
    if rep.m == 0:
        ok = rep.n <= 1
        return ValidationReport(ok, [] if ok else ["graph without edges is disconnected"])
    turns = rep.face_turns()
    external = [i for i, t in enumerate(turns) if t == -4]
    for i, t in enumerate(turns):
        if t not in (4, -4):
            violations.append(f"face {i}: turn sum {t}")
    if len(external) != 1:
        violations.append(f"{len(external)} faces with turn sum -4")
    faces = len(rep.faces())
    if rep.n - rep.m + faces != 2:
        violations.append(f"Euler: V - E + F = {rep.n - rep.m + faces}")
    try:
        dirs = rep.directions()
    except RepresentationError as e:
        violations.append(str(e))
        dirs = None
    if rep.coords is not None and dirs is not None:
        for a, b in rep.edges:
            (xa, ya), (xb, yb) = rep.coords[a], rep.coords[b]
            dx, dy = xb - xa, yb - ya
            sx, sy = STEP[dirs[(a, b)]]
            if dx * sy - dy * sx != 0 or dx * sx + dy * sy <= 0:
                violations.append(f"edge ({a}, {b}) is not drawn heading "
                                  f"{DIRECTION_NAMES[dirs[(a, b)]]}")
        for e1, e2 in check_segments(rep):
            violations.append(f"edges {e1} and {e2} cross")
    return ValidationReport(not violations, violations)


################################################################################
## COMPACTION
################################################################################

def _left_turn(d_in, d_out):
    return {0: 0, 1: 1, 2: -2, 3: -1}[(d_out - d_in) % 4]


class _Refiner(object):
    """Rectangular refinement of an orthogonal representation.

    A frame is put around the drawing and joined to it by one edge; then every
    reflex corner of an inner face is cut by an edge running straight ahead to
    the front edge of the face, until all inner faces are rectangles."""
    def __init__(self, rep):
        self.dirs = dict(rep.directions())
        self.next_id = rep.n
        self.faces = {}
        self.owner = {}
        self.next_face = 0
        self._frame(rep)

    def _new_vertex(self):
        self.next_id += 1
        return self.next_id - 1

    def _set(self, a, b, d):
        self.dirs[(a, b)] = d % 4
        self.dirs[(b, a)] = (d + 2) % 4

    def _frame(self, rep):
        face = rep.faces()[rep.external_face()]
        corner = None
        for i, dart in enumerate(face):
            nxt = face[(i + 1) % len(face)]
            if _left_turn(self.dirs[dart], self.dirs[nxt]) < 0:
                corner = dart
                break
        if corner is None:
            raise RepresentationError("external face has no reflex corner")
        w, heading = corner[1], self.dirs[corner]
        bl, br, tr, tl, z = (self._new_vertex() for _ in range(5))
        sides = [(bl, br, E), (br, tr, N), (tr, tl, W), (tl, bl, S)]
        # the connector meets the side it is heading to
        facing = {E: 1, N: 2, W: 3, S: 0}[heading]
        for k, (a, b, d) in enumerate(sides):
            if k == facing:
                self._set(a, z, d)
                self._set(z, b, d)
            else:
                self._set(a, b, d)
        self._set(w, z, heading)
        # reversed opposite side: the outside of the frame lies on its left
        a, b, _ = sides[(facing + 2) % 4]
        self.outer = (b, a)
        self._trace()

    def _trace(self):
        rotation = {}
        for a, b in self.dirs:
            rotation.setdefault(a, []).append(b)
        for a in rotation:
            rotation[a].sort(key=lambda b: self.dirs[(a, b)])
        seen = set()
        for dart in sorted(self.dirs):
            if dart in seen:
                continue
            walk, x = [], dart
            while x not in seen:
                seen.add(x)
                walk.append(x)
                rot = rotation[x[1]]
                x = (x[1], rot[rot.index(x[0]) - 1])
            self._register(walk)

    def _register(self, walk):
        fid = self.next_face
        self.next_face += 1
        self.faces[fid] = walk
        for dart in walk:
            self.owner[dart] = fid
        return fid

    def _turns(self, walk):
        return [_left_turn(self.dirs[walk[i]], self.dirs[walk[(i + 1) % len(walk)]])
                for i in range(len(walk))]

    def run(self):
        outer = self.owner[self.outer]
        pending = sorted(f for f in self.faces if f != outer)
        steps = 0
        while pending:
            fid = pending.pop()
            walk = self.faces[fid]
            turns = self._turns(walk)
            reflex = [i for i, t in enumerate(turns) if t < 0]
            if not reflex:
                continue
            pending.extend(self._split(fid, walk, turns, reflex[0]))
            steps += 1
        logger.debug("rectangular refinement: %d cuts", steps)
        return self.dirs

    def _split(self, fid, walk, turns, i):
        size = len(walk)
        w = walk[i][1]
        heading = self.dirs[walk[i]]
        total, k = turns[i], i + 1
        while True:
            total += turns[k % size]
            if total == 1:
                break
            k += 1
        rot = walk[i + 1:] + walk[:i + 1]
        f = (k + 1 - (i + 1)) % size
        a, b = rot[f]
        z = self._new_vertex()
        d = self.dirs.pop((a, b))
        del self.dirs[(b, a)]
        self.owner.pop((a, b), None)
        self._set(a, z, d)
        self._set(z, b, d)
        self._set(w, z, heading)
        first = rot[:f] + [(a, z), (z, w)]
        second = [(z, b)] + rot[f + 1:] + [(w, z)]
        del self.faces[fid]
        ids = [self._register(first), self._register(second)]
        twin = self.owner.pop((b, a))
        other = self.faces[twin]
        j = other.index((b, a))
        other[j:j + 1] = [(b, z), (z, a)]
        self.owner[(b, z)] = twin
        self.owner[(z, a)] = twin
        return ids


def _layer(dirs, along, across):
    """Longest-path coordinates along one axis.

    Edges heading in `across` directions glue vertices into segments sharing
    the coordinate; edges heading `along[0]` order the segments."""
    glue = nx.Graph()
    glue.add_nodes_from({a for a, _ in dirs})
    glue.add_edges_from((a, b) for (a, b), d in dirs.items() if d in across)
    group = {}
    for index, component in enumerate(sorted(nx.connected_components(glue),
                                             key=min)):
        for v in component:
            group[v] = index
    order = nx.DiGraph()
    order.add_nodes_from(set(group.values()))
    order.add_edges_from((group[a], group[b]) for (a, b), d in dirs.items()
                         if d == along)
    try:
        ranked = list(nx.lexicographical_topological_sort(order))
    except nx.NetworkXUnfeasible:
        raise RepresentationError("segment order has a cycle; representation is not planar")
    level = {}
    for g in ranked:
        level[g] = max((level[p] + 1 for p in order.predecessors(g)), default=0)
    return {v: level[group[v]] for v in group}


def compact(rep):
    """Integer coordinates for every vertex of a valid representation."""
    if rep.m == 0:
        return tuple((0, 0) for _ in range(rep.n))
    dirs = _Refiner(rep).run()
    xs = _layer(dirs, E, (N, S))
    ys = _layer(dirs, N, (E, W))
    x0 = min(xs[v] for v in range(rep.n))
    y0 = min(ys[v] for v in range(rep.n))
    return tuple((xs[v] - x0, ys[v] - y0) for v in range(rep.n))


def layout(rep):
    """The representation with compacted coordinates attached."""
    return rep.with_coordinates(compact(rep))


################################################################################
## OUTPUT
################################################################################

class SvgDocument(object):
    """Small SVG 1.1 writer producing byte-identical output for equal input."""
    def __init__(self):
        self.svg = ""

    def header(self, width, height):
        self.svg += f"""<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">
"""

    def line(self, x1, y1, x2, y2, stroke="#000000", width=2):
        self.svg += (f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                     f'stroke="{stroke}" stroke-width="{width}"/>\n')

    def circle(self, x, y, r, fill="#ffffff", stroke="#000000"):
        self.svg += (f'<circle cx="{x}" cy="{y}" r="{r}" fill="{fill}" '
                     f'stroke="{stroke}"/>\n')

    def text(self, x, y, string, size=10):
        self.svg += (f'<text x="{x}" y="{y}" font-size="{size}" '
                     f'text-anchor="middle">{string}</text>\n')

    def get_svg(self):
        return f"{self.svg}</svg>\n"


def to_svg(rep, scale=40, margin=20, labels=True):
    if rep.coords is None:
        raise RepresentationError("representation has no coordinates; compact it first")
    width = margin * 2 + scale * max((x for x, _ in rep.coords), default=0)
    height = margin * 2 + scale * max((y for _, y in rep.coords), default=0)

    def point(v):
        x, y = rep.coords[v]
        return margin + scale * x, height - margin - scale * y

    doc = SvgDocument()
    doc.header(width, height)
    for a, b in rep.edges:
        (x1, y1), (x2, y2) = point(a), point(b)
        doc.line(x1, y1, x2, y2)
    radius = max(3, scale // 8)
    for v in range(rep.n):
        x, y = point(v)
        doc.circle(x, y, radius)
        if labels:
            doc.text(x, y - radius - 2, v)
    return doc.get_svg()


def rep_to_dict(rep):
    return {
        'n': rep.n,
        'edges': [list(e) for e in rep.edges],
        'rotation': [list(rep.rotation[v]) for v in range(rep.n)],
        'angles': [[rep.angles[(v, w)] for w in rep.rotation[v]] for v in range(rep.n)],
        'anchor': list(rep.anchor) if rep.anchor is not None else None,
        'coordinates': [list(c) for c in rep.coords] if rep.coords is not None else None,
    }


def to_json(rep):
    return json.dumps(rep_to_dict(rep), sort_keys=True)


def from_json(document):
    try:
        doc = json.loads(document) if isinstance(document, (str, bytes)) else document
        n = doc['n']
        rotation = {v: tuple(doc['rotation'][v]) for v in range(n)}
        angles = {}
        for v in range(n):
            for w, a in zip(doc['rotation'][v], doc['angles'][v]):
                angles[(v, w)] = a
        anchor = tuple(doc['anchor']) if doc.get('anchor') is not None else None
        return OrthoRep(n, [tuple(e) for e in doc['edges']], rotation, angles,
                        doc.get('coordinates'), anchor)
    except (KeyError, IndexError, TypeError, ValueError) as e:
        raise RepresentationError(f"malformed representation document: {e}")
