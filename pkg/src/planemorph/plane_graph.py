"""Combinatorial plane embeddings as rotation systems.

A plane graph is stored as a clockwise cyclic neighbor order per vertex plus
one directed edge anchoring the outer face.  Faces are recovered by the
standard traversal: after arriving along a -> b, leave along the clockwise
successor of a at b, which produces walks with the face interior on the
left (counter-clockwise walks for internal faces, clockwise for the outer
one, once coordinates exist).

Everything here is purely combinatorial; drawings live elsewhere and are
checked against these embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import DegenerateInputError, InternalInvariantViolation

Vertex = int
DirEdge = Tuple[Vertex, Vertex]


@dataclass(frozen=True)
class Face:
    walk: Tuple[DirEdge, ...]
    is_outer: bool

    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(e[0] for e in self.walk)

    def edge_set(self) -> FrozenSet[FrozenSet[Vertex]]:
        return frozenset(frozenset(e) for e in self.walk)

    def __len__(self) -> int:
        return len(self.walk)


class PlaneGraph:
    """Simple connected graph with a clockwise rotation system and outer face."""

    def __init__(self, rotations: Dict[Vertex, Sequence[Vertex]], outer_anchor: DirEdge):
        self.rotations: Dict[Vertex, Tuple[Vertex, ...]] = {
            v: tuple(ns) for v, ns in rotations.items()
        }
        self.outer_anchor: DirEdge = (outer_anchor[0], outer_anchor[1])
        self._faces: Optional[List[Face]] = None
        self._triangles: Optional[set] = None
        self._validate_structure()

    # -- structure ----------------------------------------------------------

    def _validate_structure(self) -> None:
        rot = self.rotations
        if not rot:
            raise DegenerateInputError("empty graph")
        for v, ns in rot.items():
            if len(set(ns)) != len(ns) or v in ns:
                raise DegenerateInputError(f"rotation at {v} not simple")
            for w in ns:
                if w not in rot or v not in rot[w]:
                    raise DegenerateInputError(f"asymmetric adjacency {v}-{w}")
        # connectivity
        verts = list(rot)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            u = stack.pop()
            for w in rot[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(verts):
            raise DegenerateInputError("graph not connected")
        a, b = self.outer_anchor
        if len(verts) == 1:
            if a != verts[0] or b != verts[0]:
                raise DegenerateInputError("bad outer anchor for single vertex")
        elif b not in rot.get(a, ()):
            raise DegenerateInputError("outer anchor is not an edge")
        # Euler check comes with face traversal
        self.faces()

    @property
    def vertices(self) -> List[Vertex]:
        return sorted(self.rotations)

    def num_vertices(self) -> int:
        return len(self.rotations)

    def edges(self) -> List[FrozenSet[Vertex]]:
        out = set()
        for v, ns in self.rotations.items():
            for w in ns:
                out.add(frozenset((v, w)))
        return sorted(out, key=lambda e: tuple(sorted(e)))

    def num_edges(self) -> int:
        return sum(len(ns) for ns in self.rotations.values()) // 2

    def has_edge(self, a: Vertex, b: Vertex) -> bool:
        return b in self.rotations.get(a, ())

    def degree(self, v: Vertex) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.rotations[v]

    def rotation_successor(self, v: Vertex, w: Vertex) -> Vertex:
        ns = self.rotations[v]
        return ns[(ns.index(w) + 1) % len(ns)]

    def rotation_predecessor(self, v: Vertex, w: Vertex) -> Vertex:
        ns = self.rotations[v]
        return ns[(ns.index(w) - 1) % len(ns)]

    # -- faces ---------------------------------------------------------------

    def next_in_face(self, e: DirEdge) -> DirEdge:
        a, b = e
        return (b, self.rotation_successor(b, a))

    def faces(self) -> List[Face]:
        if self._faces is not None:
            return self._faces
        if self.num_vertices() == 1:
            f = Face(walk=(), is_outer=True)
            self._faces = [f]
            return self._faces
        unused = {(v, w) for v, ns in self.rotations.items() for w in ns}
        walks: List[Tuple[DirEdge, ...]] = []
        outer_idx = None
        while unused:
            start = unused.pop()
            walk = [start]
            cur = self.next_in_face(start)
            while cur != start:
                unused.discard(cur)
                walk.append(cur)
                cur = self.next_in_face(cur)
            walks.append(tuple(walk))
        for i, w in enumerate(walks):
            if self.outer_anchor in w:
                outer_idx = i
                break
        if outer_idx is None:
            raise DegenerateInputError("outer anchor not found on any face walk")
        v, e = self.num_vertices(), self.num_edges()
        if v - e + len(walks) != 2:
            raise DegenerateInputError(
                f"rotation system is not planar: V={v} E={e} F={len(walks)}"
            )
        self._faces = [Face(walk=w, is_outer=(i == outer_idx)) for i, w in enumerate(walks)]
        return self._faces

    def outer_face(self) -> Face:
        for f in self.faces():
            if f.is_outer:
                return f
        raise InternalInvariantViolation("no outer face", self)

    def triangle_faces(self) -> set:
        if self._triangles is None:
            self._triangles = {
                frozenset(f.vertices()) for f in self.faces() if len(f) == 3
            }
        return self._triangles

    def is_maximal(self) -> bool:
        n, e = self.num_vertices(), self.num_edges()
        return n >= 3 and e == 3 * n - 6 and all(len(f) == 3 for f in self.faces())

    def face_at_corner(self, prev_v: Vertex, v: Vertex, next_v: Vertex) -> Face:
        """The face whose walk contains edges prev_v->v, v->next_v consecutively."""
        target = (prev_v, v)
        for f in self.faces():
            walk = f.walk
            for i, e in enumerate(walk):
                if e == target and walk[(i + 1) % len(walk)] == (v, next_v):
                    return f
        raise DegenerateInputError(f"no face at corner {prev_v}-{v}-{next_v}")

    # -- equality / identity --------------------------------------------------

    def same_embedding(self, other: "PlaneGraph") -> bool:
        if set(self.rotations) != set(other.rotations):
            return False
        for v, ns in self.rotations.items():
            ms = other.rotations[v]
            if len(ns) != len(ms):
                return False
            if len(ns) == 0:
                continue
            if set(ns) != set(ms):
                return False
            if len(ns) > 1:
                k = ms.index(ns[0])
                if tuple(ms[(k + i) % len(ms)] for i in range(len(ms))) != ns:
                    return False
        outer_s = frozenset(self.outer_face().walk)
        outer_o = frozenset(other.outer_face().walk)
        return outer_s == outer_o


# ---------------------------------------------------------------------------
# quasi-contractible vertices
# ---------------------------------------------------------------------------


def is_quasi_contractible(g: PlaneGraph, v: Vertex) -> bool:
    """Degree at most 5, and every adjacent neighbor pair forms a face with v."""
    ns = g.rotations[v]
    if len(ns) > 5:
        return False
    triangles = g.triangle_faces()
    for i, u in enumerate(ns):
        for w in ns[i + 1 :]:
            if g.has_edge(u, w) and frozenset((u, v, w)) not in triangles:
                return False
    return True


def find_quasi_contractible(g: PlaneGraph) -> Vertex:
    for v in g.vertices:
        if is_quasi_contractible(g, v):
            return v
    raise InternalInvariantViolation("no quasi-contractible vertex found", g)


# ---------------------------------------------------------------------------
# contraction and vertex removal
# ---------------------------------------------------------------------------


def contract(g: PlaneGraph, v: Vertex, x: Vertex) -> PlaneGraph:
    """Contract v onto its neighbor x, splicing v's fan into x's rotation."""
    if not g.has_edge(v, x):
        raise DegenerateInputError(f"({v},{x}) is not an edge")
    if not is_quasi_contractible(g, v):
        raise DegenerateInputError(f"{v} is not quasi-contractible")
    rot = {u: list(ns) for u, ns in g.rotations.items()}
    vns = rot.pop(v)
    k = vns.index(x)
    fan = [vns[(k + i) % len(vns)] for i in range(1, len(vns))]  # after x, before x
    xrot = rot[x]
    slot = xrot.index(v)
    insert = [w for w in fan if w not in xrot]
    rot[x] = xrot[:slot] + insert + xrot[slot + 1 :]
    for w in vns:
        if w == x:
            continue
        wrot = rot[w]
        i = wrot.index(v)
        if x in wrot:
            rot[w] = wrot[:i] + wrot[i + 1 :]
        else:
            rot[w] = wrot[:i] + [x] + wrot[i + 1 :]
    anchor = _surviving_outer_anchor(g, v, x)
    return PlaneGraph({u: tuple(ns) for u, ns in rot.items()}, anchor)


def _surviving_outer_anchor(g: PlaneGraph, v: Vertex, x: Vertex) -> DirEdge:
    walk = g.outer_face().walk
    if len(walk) == 0:
        return (x, x)
    for a, b in walk:
        if v not in (a, b):
            return (a, b)
    # every outer edge touches v: substitute x for v along the walk
    for a, b in walk:
        na, nb = (x if a == v else a), (x if b == v else b)
        if na != nb:
            return (na, nb)
    return (x, x)  # graph degenerates to a single vertex


def remove_vertex(g: PlaneGraph, v: Vertex) -> PlaneGraph:
    """Delete v and its edges; v must not lie on the outer face walk."""
    if any(v in e for e in g.outer_face().walk):
        raise DegenerateInputError("removing an outer-face vertex would change the outer face")
    rot = {
        u: tuple(w for w in ns if w != v)
        for u, ns in g.rotations.items()
        if u != v
    }
    return PlaneGraph(rot, g.outer_anchor)


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------


def _connected_after_removal(g: PlaneGraph, removed: set) -> bool:
    remaining = [v for v in g.rotations if v not in removed]
    if not remaining:
        return True
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        u = stack.pop()
        for w in g.rotations[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(remaining)


def is_triconnected(g: PlaneGraph) -> bool:
    """Exhaustive separating-pair scan; intended for desk-scale validation."""
    verts = g.vertices
    if len(verts) < 4:
        raise DegenerateInputError("triconnectivity needs at least 4 vertices")
    for i, a in enumerate(verts):
        if not _connected_after_removal(g, {a}):
            return False
        for b in verts[i + 1 :]:
            if not _connected_after_removal(g, {a, b}):
                return False
    return True
