"""Combinatorial plane embeddings on the sphere.

A :class:`PlaneEmbedding` is a rotation system (counter-clockwise neighbour
order at every vertex) together with *anchors* that say where each
connected component sits relative to the others.

Faces are traced over darts (directed edges): the successor of ``u -> v``
is ``v -> w`` where ``w`` immediately precedes ``u`` in the rotation list
of ``v`` (cyclically).  With counter-clockwise rotations this keeps the face
on the left of every dart, so "the face left of ``x -> y``" is simply the
face whose boundary contains the dart ``(x, y)``.

Every component contributes one closed walk per face it bounds; an isolated
vertex contributes a degenerate walk of its own.  The anchor of a non-base
component ``C`` records the dart ``x -> y`` of its parent component whose
face contains ``C``, and the dart of ``C`` on the walk of ``C`` that faces
the parent.  Anchors are normalised on construction, so two embeddings
describing the same arrangement compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import networkx as nx

from .errors import InvalidAnchors, MalformedRotation, NotAddable, TooFewVertices, UnknownEdge
from .graph_core import Graph, bits

Dart = tuple[int, int]

#: Face id of the single region of an edgeless embedding.
OPEN_REGION: Dart = (-1, -1)


@dataclass(frozen=True, order=True)
class Anchor:
    """Placement of the component containing ``rep``.

    ``parent`` is ``None`` for the base component.  ``child`` is the dart of
    the component itself on the side facing the parent (``None`` for an
    isolated vertex).
    """

    rep: int
    parent: Dart | None = None
    child: Dart | None = None


@dataclass(frozen=True)
class Face:
    id: Dart
    walks: tuple[tuple[Dart, ...], ...]
    isolated: frozenset[int]

    @property
    def length(self) -> int:
        return sum(len(w) for w in self.walks)

    @property
    def boundary_vertices(self) -> frozenset[int]:
        return frozenset(d[0] for w in self.walks for d in w)

    @property
    def vertices(self) -> frozenset[int]:
        return self.boundary_vertices | self.isolated

    @property
    def is_triangle(self) -> bool:
        """A single boundary walk of length three with nothing inside."""
        return len(self.walks) == 1 and len(self.walks[0]) == 3 and not self.isolated

    @property
    def has_triangular_boundary(self) -> bool:
        """Like :attr:`is_triangle` but ignoring isolated vertices inside."""
        return len(self.walks) == 1 and len(self.walks[0]) == 3


@dataclass(frozen=True, order=True)
class AddablePair:
    """Non-adjacent vertices ``u < v`` that both lie on face ``face``."""

    u: int
    v: int
    face: Dart

    def __post_init__(self) -> None:
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)


class NonPlanar:
    """Verdict of :func:`planar_embed` for a graph with no plane embedding."""

    def __init__(self, certificate: Graph | None = None) -> None:
        self.certificate = certificate

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NonPlanar()"


# ---------------------------------------------------------------------------
# structure derivation
# ---------------------------------------------------------------------------


def _trace(rotation: tuple[tuple[int, ...], ...]) -> tuple[list[tuple[Dart, ...]], dict[Dart, int]]:
    pos = [{u: i for i, u in enumerate(r)} for r in rotation]
    darts = sorted((v, w) for v, r in enumerate(rotation) for w in r)
    dart_walk: dict[Dart, int] = {}
    walks: list[tuple[Dart, ...]] = []
    for d in darts:
        if d in dart_walk:
            continue
        idx = len(walks)
        walk = []
        cur = d
        while cur not in dart_walk:
            dart_walk[cur] = idx
            walk.append(cur)
            u, v = cur
            rv = rotation[v]
            cur = (v, rv[pos[v][u] - 1])
        if cur != d:
            raise MalformedRotation("face tracing did not close up")
        walks.append(tuple(walk))
    return walks, dart_walk


class _Structure:
    """Walks, components and face grouping of an embedding."""

    __slots__ = (
        "walks", "dart_walk", "comps", "comp_of", "comp_walks", "walk_comp",
        "iso_walk", "group_of", "groups", "faces", "face_index", "anchors",
    )

    def __init__(self, graph: Graph, rotation: tuple[tuple[int, ...], ...]) -> None:
        n = graph.vertex_count
        walks, dart_walk = _trace(rotation)
        comps = graph.components()
        comp_of = [0] * n
        for ci, c in enumerate(comps):
            for v in c:
                comp_of[v] = ci
        comp_walks: list[list[int]] = [[] for _ in comps]
        walk_comp: list[int] = []
        for wi, w in enumerate(walks):
            ci = comp_of[w[0][0]]
            comp_walks[ci].append(wi)
            walk_comp.append(ci)
        iso_walk: dict[int, int] = {}
        for ci, c in enumerate(comps):
            if len(c) == 1:
                (v,) = c
                wi = len(walk_comp)
                iso_walk[v] = wi
                walk_comp.append(ci)
                comp_walks[ci].append(wi)
            else:
                ne = sum(graph.degrees[v] for v in c) // 2
                if len(c) - ne + len(comp_walks[ci]) != 2:
                    raise MalformedRotation(
                        f"component of vertex {min(c)} is not embedded in the sphere"
                    )
        self.walks = walks
        self.dart_walk = dart_walk
        self.comps = comps
        self.comp_of = comp_of
        self.comp_walks = comp_walks
        self.walk_comp = walk_comp
        self.iso_walk = iso_walk

    # walk index -> representative dart (None for isolated pseudo-walks)
    def first_dart(self, wi: int) -> Dart | None:
        return self.walks[wi][0] if wi < len(self.walks) else None

    def set_groups(self, group_of: list[int]) -> None:
        """Install a walk -> face partition and derive faces and anchors."""
        nwalk = len(self.walk_comp)
        buckets: dict[int, list[int]] = {}
        for wi in range(nwalk):
            buckets.setdefault(group_of[wi], []).append(wi)
        groups = list(buckets.values())
        c = len(self.comps)
        if len(groups) != nwalk - (c - 1):
            raise InvalidAnchors("component arrangement is not a tree")
        gid = [0] * nwalk
        for gi, g in enumerate(groups):
            for wi in g:
                gid[wi] = gi
        self.group_of = gid
        self.groups = groups
        self._derive_anchors()
        faces = []
        for g in groups:
            ws = tuple(sorted(self.walks[wi] for wi in g if wi < len(self.walks)))
            iso = frozenset(min(self.comps[self.walk_comp[wi]]) for wi in g if wi >= len(self.walks))
            fid = ws[0][0] if ws else OPEN_REGION
            faces.append(Face(fid, ws, iso))
        order = sorted(range(len(faces)), key=lambda i: faces[i].id)
        self.faces = tuple(faces[i] for i in order)
        remap = {old: new for new, old in enumerate(order)}
        self.group_of = [remap[g] for g in gid]
        self.groups = [groups[i] for i in order]
        self.face_index = {f.id: i for i, f in enumerate(self.faces)}

    def _derive_anchors(self) -> None:
        comps = self.comps
        has_edges = [len(c) > 1 for c in comps]
        if not any(has_edges):
            if len(self.groups) != 1:
                raise InvalidAnchors("edgeless embedding must be a single region")
            self.anchors = tuple(Anchor(min(c)) for c in comps)
            return
        root = has_edges.index(True)
        anchors = [Anchor(min(comps[root]))]
        seen_comp = {root}
        seen_group: set[int] = set()
        queue = [root]
        while queue:
            p = queue.pop(0)
            for wi in sorted(self.comp_walks[p], key=lambda w: self.walks[w][0] if w < len(self.walks) else (1 << 60, 0)):
                g = self.group_of[wi]
                if g in seen_group:
                    continue
                seen_group.add(g)
                for w2 in self.groups[g]:
                    if w2 == wi:
                        continue
                    ci = self.walk_comp[w2]
                    if ci in seen_comp:
                        raise InvalidAnchors("component arrangement contains a cycle")
                    seen_comp.add(ci)
                    anchors.append(Anchor(min(comps[ci]), self.walks[wi][0], self.first_dart(w2)))
                    queue.append(ci)
        if len(seen_comp) != len(comps):
            raise InvalidAnchors("component arrangement is disconnected")
        self.anchors = tuple(sorted(anchors))


def _groups_from_anchors(s: _Structure, anchors: Iterable[Anchor]) -> list[int]:
    nwalk = len(s.walk_comp)
    parent = list(range(nwalk))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp_parent = list(range(len(s.comps)))

    def cfind(x: int) -> int:
        while comp_parent[x] != x:
            comp_parent[x] = comp_parent[comp_parent[x]]
            x = comp_parent[x]
        return x

    seen: dict[int, Anchor] = {}
    roots = []
    for a in anchors:
        if not (0 <= a.rep < len(s.comp_of)):
            raise InvalidAnchors(f"anchor vertex {a.rep} out of range")
        ci = s.comp_of[a.rep]
        if ci in seen:
            raise InvalidAnchors(f"component of vertex {a.rep} anchored twice")
        seen[ci] = a
        if a.parent is None:
            roots.append(ci)
    missing = [ci for ci in range(len(s.comps)) if ci not in seen]
    roots.extend(missing)
    any_edges = any(len(c) > 1 for c in s.comps)
    if any_edges:
        if len(roots) != 1:
            raise InvalidAnchors(f"expected one base component, found {len(roots)}")
    else:
        # edgeless: every vertex is in the single open region
        for ci in range(1, len(s.comps)):
            parent[find(s.comp_walks[ci][0])] = find(s.comp_walks[0][0])
        return [find(w) for w in range(nwalk)]
    for ci, a in seen.items():
        if a.parent is None:
            continue
        pw = s.dart_walk.get(tuple(a.parent))
        if pw is None:
            raise InvalidAnchors(f"anchor dart {a.parent} is not a dart of the embedding")
        pc = s.walk_comp[pw]
        if pc == ci:
            raise InvalidAnchors(f"component of vertex {a.rep} anchored to itself")
        own = [w for w in s.comp_walks[ci]]
        if a.child is None:
            if len(own) != 1:
                raise InvalidAnchors(f"component of vertex {a.rep} needs a child dart")
            cw = own[0]
        else:
            cw = s.dart_walk.get(tuple(a.child))
            if cw is None or s.walk_comp[cw] != ci:
                raise InvalidAnchors(f"child dart {a.child} not in component of {a.rep}")
        r1, r2 = cfind(ci), cfind(pc)
        if r1 == r2:
            raise InvalidAnchors("anchors form a cycle")
        comp_parent[r1] = r2
        parent[find(cw)] = find(pw)
    return [find(w) for w in range(nwalk)]


# ---------------------------------------------------------------------------
# the embedding value type
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PlaneEmbedding:
    """A plane graph on the sphere; immutable, all operations return new values."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    anchors: tuple[Anchor, ...] = ()

    def __post_init__(self) -> None:
        g = self.graph
        rot = tuple(tuple(r) for r in self.rotation)
        if len(rot) != g.vertex_count:
            raise MalformedRotation("one rotation list per vertex is required")
        for v, r in enumerate(rot):
            if len(r) != len(set(r)) or set(r) != g.adjacency[v]:
                raise MalformedRotation(f"rotation at {v} is not a permutation of its neighbours")
        object.__setattr__(self, "rotation", rot)
        s = _Structure(g, rot)
        s.set_groups(_groups_from_anchors(s, [Anchor(a.rep, _dart(a.parent), _dart(a.child)) for a in self.anchors]))
        object.__setattr__(self, "anchors", s.anchors)
        object.__setattr__(self, "_s", s)

    @classmethod
    def from_rotation(cls, rotation: Iterable[Iterable[int]], anchors: Iterable[Anchor] = ()) -> PlaneEmbedding:
        rot = tuple(tuple(r) for r in rotation)
        edges = {(min(v, w), max(v, w)) for v, r in enumerate(rot) for w in r}
        return cls(Graph(len(rot), frozenset(edges)), rot, tuple(anchors))

    @classmethod
    def edgeless(cls, n: int) -> PlaneEmbedding:
        return cls(Graph(n), tuple(() for _ in range(n)), ())

    # value semantics ------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneEmbedding):
            return NotImplemented
        return (self.graph == other.graph and self.rotation == other.rotation
                and self.anchors == other.anchors)

    def __hash__(self) -> int:
        return hash((self.graph.vertex_count, self.rotation, self.anchors))

    def __repr__(self) -> str:
        return (f"PlaneEmbedding(n={self.vertex_count}, e={self.edge_count}, "
                f"faces={len(self.faces)}, components={len(self.components)})")

    # basic accessors ------------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._s.faces

    @property
    def components(self) -> list[frozenset[int]]:
        return self._s.comps

    def face(self, fid: Dart) -> Face:
        i = self._s.face_index.get(tuple(fid))
        if i is None:
            raise KeyError(f"no face with id {fid}")
        return self._s.faces[i]

    def face_of_dart(self, d: Dart) -> Face:
        wi = self._s.dart_walk.get(tuple(d))
        if wi is None:
            raise UnknownEdge(f"{d} is not a dart of this embedding")
        return self._s.faces[self._s.group_of[wi]]

    def face_of_isolated(self, v: int) -> Face:
        return self._s.faces[self._s.group_of[self._s.iso_walk[v]]]

    def faces_at(self, v: int) -> list[Face]:
        """Faces incident to ``v`` (boundary or contents), ordered by id."""
        s = self._s
        if v in s.iso_walk:
            return [self.face_of_isolated(v)]
        idx = sorted({s.group_of[s.dart_walk[(v, w)]] for w in self.rotation[v]})
        return [s.faces[i] for i in idx]

    def successor(self, d: Dart) -> Dart:
        u, v = d
        r = self.rotation[v]
        return (v, r[r.index(u) - 1])

    def _labels(self) -> tuple[dict[Dart, int], dict[int, int]]:
        s = self._s
        dl = {d: s.group_of[wi] for d, wi in s.dart_walk.items()}
        il = {v: s.group_of[wi] for v, wi in s.iso_walk.items()}
        return dl, il


def _dart(d) -> Dart | None:
    return None if d is None else (int(d[0]), int(d[1]))


def _make(graph: Graph, rotation: list[list[int]] | tuple, dart_label: Mapping[Dart, object],
          iso_label: Mapping[int, object]) -> PlaneEmbedding:
    """Build an embedding whose faces are given by labels on darts and isolated vertices."""
    rot = tuple(tuple(r) for r in rotation)
    s = _Structure(graph, rot)
    keys: dict[object, int] = {}
    group_of = []
    for wi in range(len(s.walk_comp)):
        if wi < len(s.walks):
            w = s.walks[wi]
            lab = dart_label[w[0]]
            for d in w[1:]:
                if dart_label[d] != lab:
                    raise InvalidAnchors("face labels are inconsistent along a walk")
        else:
            v = next(iter(s.comps[s.walk_comp[wi]]))
            lab = iso_label[v]
        group_of.append(keys.setdefault(lab, len(keys)))
    s.set_groups(group_of)
    obj = object.__new__(PlaneEmbedding)
    object.__setattr__(obj, "graph", graph)
    object.__setattr__(obj, "rotation", rot)
    object.__setattr__(obj, "anchors", s.anchors)
    object.__setattr__(obj, "_s", s)
    return obj


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def faces(e: PlaneEmbedding) -> list[Face]:
    return list(e.faces)


def euler_holds(e: PlaneEmbedding) -> bool:
    """``v - e + f == 1 + c`` and every dart on exactly one face walk."""
    v, m, f, c = e.vertex_count, e.edge_count, len(e.faces), len(e.components)
    seen: list[Dart] = [d for face in e.faces for w in face.walks for d in w]
    darts = {(x, y) for x, r in enumerate(e.rotation) for y in r}
    return v - m + f == 1 + c and len(seen) == len(set(seen)) == 2 * m and set(seen) == darts


def is_maximal_plane(e: PlaneEmbedding) -> bool:
    n = e.vertex_count
    return n >= 3 and e.edge_count == 3 * n - 6 and all(f.is_triangle for f in e.faces)


def addable_pairs(e: PlaneEmbedding) -> list[AddablePair]:
    """Every non-adjacent pair sharing a face, once per shared face."""
    masks = e.graph.masks
    out = []
    for f in e.faces:
        vs = sorted(f.vertices)
        allm = 0
        for x in vs:
            allm |= 1 << x
        for x in vs:
            cand = allm & ~masks[x] & ~((1 << (x + 1)) - 1)
            for y in bits(cand):
                out.append(AddablePair(x, y, f.id))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# edits
# ---------------------------------------------------------------------------


def _corner_insert(rot: list[list[int]], face: Face, w: int, other: int) -> None:
    """Insert ``other`` into the rotation of ``w`` at its first corner on ``face``."""
    if not rot[w]:
        rot[w].append(other)
        return
    for walk in face.walks:
        for i, (a, b) in enumerate(walk):
            if a == w:
                t = walk[i - 1][0]
                r = rot[w]
                r.insert(r.index(t), other)
                return
    raise NotAddable(f"vertex {w} is not on face {face.id}")


def insert_edge(e: PlaneEmbedding, p: AddablePair) -> PlaneEmbedding:
    """Add edge ``p.u p.v`` inside face ``p.face``.

    When both endpoints are on the same component the face splits in two;
    the other contents of the face stay on the side holding the old walk's
    least dart.
    """
    u, v = p.u, p.v
    try:
        face = e.face(p.face)
    except KeyError:
        raise NotAddable(f"no face {p.face}") from None
    if u == v or e.graph.has_edge(u, v) or u not in face.vertices or v not in face.vertices:
        raise NotAddable(f"pair ({u}, {v}) is not addable in face {p.face}")
    s = e._s
    dl, il = e._labels()
    label = s.face_index[face.id]
    rot = [list(r) for r in e.rotation]
    _corner_insert(rot, face, u, v)
    _corner_insert(rot, face, v, u)
    graph = e.graph.with_edges([(u, v)])
    same = (s.comp_of[u] == s.comp_of[v])
    dl = dict(dl)
    il = dict(il)
    il.pop(u, None)
    il.pop(v, None)
    dl[(u, v)] = label
    dl[(v, u)] = label
    if same:
        walks, dart_walk = _trace(tuple(tuple(r) for r in rot))
        wa, wb = dart_walk[(u, v)], dart_walk[(v, u)]
        old_walk = next(w for w in face.walks if any(d[0] == u for d in w))
        keep = wa if dart_walk[old_walk[0]] == wa else wb
        fresh = ("split", label)
        for d in walks[wa if keep == wb else wb]:
            dl[d] = fresh
    return _make(graph, rot, dl, il)


def delete_edges(e: PlaneEmbedding, removed: Iterable[tuple[int, int]]) -> PlaneEmbedding:
    """Remove edges; faces on both sides of a removed edge merge."""
    removed = {(min(a, b), max(a, b)) for a, b in removed}
    if not removed:
        return e
    for a, b in removed:
        if not e.graph.has_edge(a, b):
            raise UnknownEdge(f"edge ({a}, {b}) not in embedding")
    dl, il = e._labels()
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in removed:
        ra, rb = find(dl[(a, b)]), find(dl[(b, a)])
        if ra != rb:
            parent[ra] = rb
    rot = [[w for w in r if (min(v, w), max(v, w)) not in removed] for v, r in enumerate(e.rotation)]
    graph = e.graph.without_edges(removed)
    ndl = {d: find(lab) for d, lab in dl.items() if (min(d), max(d)) not in removed}
    nil = {v: find(lab) for v, lab in il.items()}
    for v in range(e.vertex_count):
        if not rot[v] and v not in nil:
            nil[v] = find(dl[(v, e.rotation[v][0])])
    return _make(graph, rot, ndl, nil)


def move_isolated(e: PlaneEmbedding, moves: Mapping[int, Dart]) -> PlaneEmbedding:
    """Re-anchor isolated vertices into the faces with the given ids."""
    dl, il = e._labels()
    il = dict(il)
    s = e._s
    for v, fid in moves.items():
        if v not in il:
            raise ValueError(f"vertex {v} is not isolated")
        i = s.face_index.get(tuple(fid))
        if i is None:
            raise KeyError(f"no face with id {fid}")
        il[v] = i
    return _make(e.graph, e.rotation, dl, il)


def induced_plane_subgraph(e: PlaneEmbedding, keep: Iterable[int], *, relabel: bool = True) -> PlaneEmbedding:
    """Restriction of ``e`` to the vertices in ``keep``.

    With ``relabel`` the kept vertices are renumbered ``0..len(keep)-1`` in
    increasing order and all other vertices are dropped; otherwise they stay
    as isolated vertices in the faces that contained them.
    """
    keep = set(keep)
    cut = [(u, v) for u, v in e.graph.edges if u not in keep or v not in keep]
    sub = delete_edges(e, cut)
    if not relabel or len(keep) == e.vertex_count:
        return sub
    order = sorted(keep)
    new = {v: i for i, v in enumerate(order)}
    dl, il = sub._labels()
    rot = [[new[w] for w in sub.rotation[v]] for v in order]
    graph = Graph(len(order), frozenset((new[a], new[b]) for a, b in sub.graph.edges))
    ndl = {(new[a], new[b]): lab for (a, b), lab in dl.items()}
    nil = {new[v]: lab for v, lab in il.items() if v in new}
    return _make(graph, rot, ndl, nil)


def extend_to_triangulation(e: PlaneEmbedding) -> PlaneEmbedding:
    """Add edges until every face is a triangle (``3v - 6`` edges).

    Repeatedly inserts the lexicographically least addable pair; a plane
    graph with no addable pair on at least three vertices is a triangulation.
    """
    if e.vertex_count < 3:
        raise TooFewVertices("triangulations need at least 3 vertices")
    cur = e
    while True:
        pairs = addable_pairs(cur)
        if not pairs:
            break
        cur = insert_edge(cur, pairs[0])
    assert cur.edge_count == 3 * cur.vertex_count - 6
    return cur


def planar_embed(g: Graph) -> PlaneEmbedding | NonPlanar:
    """A plane embedding of ``g`` or a :class:`NonPlanar` verdict."""
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.sorted_edges)
    planar, cert = nx.check_planarity(G, counterexample=True)
    if not planar:
        return NonPlanar(Graph(g.vertex_count, frozenset(cert.edges())))
    rot = []
    for v in range(g.vertex_count):
        if g.degrees[v] == 0:
            rot.append(())
            continue
        cw = list(cert.neighbors_cw_order(v))
        ccw = cw[::-1]
        i = ccw.index(min(ccw))
        rot.append(tuple(ccw[i:] + ccw[:i]))
    rot = tuple(rot)
    comps = g.components()
    anchors = []
    root = next((c for c in comps if len(c) > 1), None)
    if root is not None:
        r0 = min(root)
        _, dart_walk = _trace(rot)
        root_dart = min(d for d in dart_walk if d[0] in root)
        anchors.append(Anchor(r0))
        for c in comps:
            if c is root:
                continue
            m = min(c)
            child = None if len(c) == 1 else min(d for d in dart_walk if d[0] in c)
            anchors.append(Anchor(m, root_dart, child))
    return PlaneEmbedding(g, rot, tuple(anchors))
