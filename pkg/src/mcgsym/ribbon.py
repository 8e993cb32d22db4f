"""Ribbon graphs: combinatorial closed oriented surfaces and their homology.

A ribbon graph on darts ``0..n-1`` is a pair of permutations: the fixed-point
free involution ``edge_pairing`` and ``vertex_rotation``, whose cycles are the
vertices. Faces are the cycles of ``vertex_rotation . edge_pairing``. A dart is
an oriented edge-side; its tail is the vertex whose rotation cycle contains it.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import intlin
from .intlin import Matrix, Vector


class MalformedGraphError(ValueError):
    pass


class NotACycleError(ValueError):
    pass


class OrientationReversingError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Raised when a closed surface produces an impossible homology result."""


def _check_perm(p: Sequence[int], n: int, what: str) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise MalformedGraphError(f"{what} is not a permutation of {n} darts")


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class RibbonGraph:
    darts: int
    edge_pairing: tuple[int, ...]
    vertex_rotation: tuple[int, ...]
    labels: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.darts
        object.__setattr__(self, "edge_pairing", tuple(self.edge_pairing))
        object.__setattr__(self, "vertex_rotation", tuple(self.vertex_rotation))
        _check_perm(self.edge_pairing, n, "edge_pairing")
        _check_perm(self.vertex_rotation, n, "vertex_rotation")
        for d, e in enumerate(self.edge_pairing):
            if e == d or self.edge_pairing[e] != d:
                raise MalformedGraphError("edge_pairing must be a fixed-point-free involution")
        vert = [0] * n
        for k, cyc in enumerate(_cycles(self.vertex_rotation)):
            for d in cyc:
                vert[d] = k
        object.__setattr__(self, "_vertex_of", tuple(vert))
        fperm = tuple(self.vertex_rotation[self.edge_pairing[d]] for d in range(n))
        object.__setattr__(self, "_face_perm", fperm)

    # -- combinatorics -------------------------------------------------

    def vertex(self, d: int) -> int:
        return self._vertex_of[d]

    def head(self, d: int) -> int:
        return self._vertex_of[self.edge_pairing[d]]

    def face_permutation(self) -> tuple[int, ...]:
        return self._face_perm

    def vertices(self) -> list[list[int]]:
        return _cycles(self.vertex_rotation)

    def faces(self) -> list[list[int]]:
        return _cycles(self._face_perm)

    def edges(self) -> list[int]:
        """Canonical dart of each edge: the smaller of the pair."""
        return [d for d in range(self.darts) if d < self.edge_pairing[d]]

    def euler_characteristic(self) -> int:
        return len(self.vertices()) - self.darts // 2 + len(self.faces())

    def is_connected(self) -> bool:
        n = self.darts
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.edge_pairing[d], self.vertex_rotation[d]):
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
        return len(seen) == n

    # -- serialisation -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "darts": self.darts,
            "edge_pairing": list(self.edge_pairing),
            "vertex_rotation": list(self.vertex_rotation),
            "labels": dict(self.labels),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "RibbonGraph":
        return cls(
            darts=int(data["darts"]),
            edge_pairing=tuple(data["edge_pairing"]),
            vertex_rotation=tuple(data["vertex_rotation"]),
            labels=dict(data.get("labels", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "RibbonGraph":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_faces(cls, faces: Sequence[Sequence[tuple[int, int]]], labels=None) -> "RibbonGraph":
        """Build from 2-cells listed as cyclic sequences of (edge, +-1).

        Edge k owns darts 2k (traversed forwards) and 2k+1 (backwards). Every
        dart must occur in exactly one face; faces are oriented coherently,
        so each edge is used once in each direction.
        """
        nedges = 1 + max(e for f in faces for e, _ in f)
        n = 2 * nedges
        nxt = [-1] * n
        for f in faces:
            ds = [2 * e + (0 if s > 0 else 1) for e, s in f]
            for a, b in zip(ds, ds[1:] + ds[:1]):
                if nxt[a] != -1:
                    raise MalformedGraphError(f"dart {a} used by two faces")
                nxt[a] = b
        if -1 in nxt:
            raise MalformedGraphError("some dart lies on no face")
        pairing = [d ^ 1 for d in range(n)]
        rotation = [nxt[pairing[d]] for d in range(n)]
        return cls(n, tuple(pairing), tuple(rotation), labels or {})


def genus(rg: RibbonGraph) -> int:
    if not rg.is_connected():
        raise MalformedGraphError("surface is not connected")
    chi = rg.euler_characteristic()
    if chi > 2 or chi % 2:
        raise MalformedGraphError(f"Euler characteristic {chi} is not that of a closed orientable surface")
    return (2 - chi) // 2


# -- cycles and chains ----------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    darts: tuple[int, ...]
    name: str | None = None


def reverse_cycle(rg: RibbonGraph, c: Cycle) -> Cycle:
    return Cycle(tuple(rg.edge_pairing[d] for d in reversed(c.darts)), c.name)


def check_cycle(rg: RibbonGraph, c: Cycle) -> None:
    ds = c.darts
    if not ds:
        raise NotACycleError("empty edge path")
    for a, b in zip(ds, ds[1:] + ds[:1]):
        if rg.head(a) != rg.vertex(b):
            raise NotACycleError(f"darts {a} and {b} do not meet at a vertex")


def chain_of(rg: RibbonGraph, darts: Sequence[int]) -> dict[int, int]:
    """Integer 1-chain keyed by canonical dart."""
    out: dict[int, int] = {}
    for d in darts:
        e = rg.edge_pairing[d]
        if d < e:
            out[d] = out.get(d, 0) + 1
        else:
            out[e] = out.get(e, 0) - 1
    return {k: v for k, v in out.items() if v}


def _dart_value(rg: RibbonGraph, chain: Mapping[int, int], d: int) -> int:
    e = rg.edge_pairing[d]
    return chain.get(d, 0) if d < e else -chain.get(e, 0)


def intersection(rg: RibbonGraph, path: Cycle, chain: Mapping[int, int]) -> int:
    """Algebraic intersection of a closed edge path with an integer 1-cycle.

    The path is pushed off to one side: at each vertex it visits, the pushed
    copy sweeps the darts strictly between the outgoing and incoming darts in
    rotation order, crossing every edge of ``chain`` found there.
    """
    ds = path.darts
    total = 0
    rot = rg.vertex_rotation
    for prev, out in zip(ds[-1:] + ds[:-1], ds):
        incoming = rg.edge_pairing[prev]
        d = rot[out]
        guard = 0
        while d != incoming:
            total += _dart_value(rg, chain, d)
            d = rot[d]
            guard += 1
            if guard > rg.darts:
                raise NotACycleError("path does not pass through a vertex consistently")
    return total


# -- homology -------------------------------------------------------------


@dataclass(frozen=True)
class HomologyBasis:
    """Generators of H_1 and coordinates on it.

    ``cycles`` are the fundamental cycles of the leftover edges (neither in
    the spanning tree nor dual to the co-tree). Each has a dual loop in the
    dual graph crossing it exactly once; raw coordinates of any 1-cycle are
    its crossing numbers with those dual loops.
    """

    cycles: tuple[Cycle, ...]
    classes: tuple[Vector, ...]
    form: Matrix
    change_of_basis: Matrix
    leftover_edges: tuple[int, ...]
    dual_loops: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _inverse: Matrix = field(repr=False, compare=False, default=())

    @property
    def genus(self) -> int:
        return len(self.leftover_edges) // 2

    def raw_coordinates(self, rg: RibbonGraph, c: Cycle) -> Vector:
        return self.raw_chain_coordinates(rg, chain_of(rg, c.darts))

    def raw_chain_coordinates(self, rg: RibbonGraph, chain: Mapping[int, int]) -> Vector:
        return tuple(sum(_dart_value(rg, chain, d) for d in loop) for loop in self.dual_loops)

    def to_standard(self, raw: Sequence[int]) -> Vector:
        return intlin.matvec(self._inverse, raw)


def _spanning_tree(rg: RibbonGraph) -> set[int]:
    """BFS spanning tree from the vertex of dart 0, in dart order."""
    verts = rg.vertices()
    vid = {d: k for k, cyc in enumerate(verts) for d in cyc}
    seen = {vid[0]}
    tree: set[int] = set()
    queue = deque([vid[0]])
    while queue:
        v = queue.popleft()
        for d in sorted(verts[v]):
            w = vid[rg.edge_pairing[d]]
            if w not in seen:
                seen.add(w)
                tree.add(min(d, rg.edge_pairing[d]))
                queue.append(w)
    return tree


def _cotree(rg: RibbonGraph, tree: set[int]) -> tuple[set[int], dict[int, int]]:
    """BFS spanning tree of the dual graph avoiding tree edges.

    Returns the co-tree edges and, per face, the dart crossed to reach it
    from its parent face (faces indexed as in ``rg.faces()``).
    """
    faces = rg.faces()
    fid = {d: k for k, cyc in enumerate(faces) for d in cyc}
    seen = {0}
    parent: dict[int, int] = {0: -1}
    cot: set[int] = set()
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for d in sorted(faces[f]):
            e = min(d, rg.edge_pairing[d])
            if e in tree:
                continue
            h = fid[rg.edge_pairing[d]]
            if h not in seen:
                seen.add(h)
                cot.add(e)
                parent[h] = d
                queue.append(h)
    return cot, parent


def _dual_root_path(rg: RibbonGraph, parent: dict[int, int], fid: dict[int, int], f: int) -> list[int]:
    """Darts crossed walking the co-tree from the root face to face f."""
    out = []
    while parent[f] != -1:
        d = parent[f]
        out.append(d)
        f = fid[d]
    return out[::-1]


def _tree_path(rg: RibbonGraph, tree: set[int], src: int, dst: int) -> list[int]:
    """Darts of the tree path from vertex src to vertex dst."""
    if src == dst:
        return []
    verts = rg.vertices()
    vid = {d: k for k, cyc in enumerate(verts) for d in cyc}
    parent: dict[int, int] = {src: -1}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for d in sorted(verts[v]):
            if min(d, rg.edge_pairing[d]) not in tree:
                continue
            w = vid[rg.edge_pairing[d]]
            if w not in parent:
                parent[w] = d
                queue.append(w)
    path = []
    v = dst
    while v != src:
        d = parent[v]
        path.append(d)
        v = vid[d]
    return path[::-1]


def homology_basis(rg: RibbonGraph, seed: Sequence[Cycle] | None = None) -> HomologyBasis:
    """Tree/co-tree generators of H_1, their intersection form, and a
    unimodular change of basis to J_std.

    With ``seed`` (2g cycles forming a basis of H_1), the symplectic
    reduction starts from the seed classes instead of the tree cycles.
    """
    g = genus(rg)
    tree = _spanning_tree(rg)
    cot, parent = _cotree(rg, tree)
    fid = {d: k for k, cyc in enumerate(rg.faces()) for d in cyc}
    left = tuple(e for e in rg.edges() if e not in tree and e not in cot)
    if len(left) != 2 * g:
        raise ConsistencyError(f"{len(left)} leftover edges for genus {g}")
    cycles = []
    loops = []
    for e in left:
        back = _tree_path(rg, tree, rg.head(e), rg.vertex(e))
        cycles.append(Cycle((e,) + tuple(back)))
        # dual loop: cross e from its left face, return through the co-tree
        to_left = _dual_root_path(rg, parent, fid, fid[e])
        to_right = _dual_root_path(rg, parent, fid, fid[rg.edge_pairing[e]])
        loop = [e] + [rg.edge_pairing[d] for d in reversed(to_right)] + to_left
        loops.append(tuple(loop))
    n = 2 * g
    eye = intlin.identity(n)
    omega = tuple(
        tuple(intersection(rg, cycles[i], chain_of(rg, cycles[j].darts)) for j in range(n))
        for i in range(n)
    )
    if any(omega[i][j] != -omega[j][i] for i in range(n) for j in range(n)):
        raise ConsistencyError("intersection form is not skew-symmetric")
    if intlin.det(omega) != 1:
        raise ConsistencyError("intersection form is not unimodular")

    if seed is None:
        start = eye
    else:
        if len(seed) != n:
            raise ValueError(f"seed needs {n} cycles")
        raw = []
        for c in seed:
            check_cycle(rg, c)
            ch = chain_of(rg, c.darts)
            raw.append(tuple(sum(_dart_value(rg, ch, d) for d in loop) for loop in loops))
        start = intlin.from_columns(raw)
        if abs(intlin.det(start)) != 1:
            raise ValueError("seed cycles do not form a basis of H_1")
    omega_start = intlin.matmul(intlin.matmul(intlin.transpose(start), omega), start)
    p = intlin.matmul(start, intlin.symplectic_reduce(omega_start))
    check = intlin.matmul(intlin.matmul(intlin.transpose(p), omega), p)
    if check != intlin.j_std(g):
        raise ConsistencyError("symplectic reduction failed")
    # P^T omega P = J  =>  P^-1 = -J P^T omega
    pinv = intlin.scale(intlin.matmul(intlin.matmul(intlin.j_std(g), intlin.transpose(p)), omega), -1)
    return HomologyBasis(
        cycles=tuple(cycles),
        classes=tuple(intlin.columns(eye)),
        form=omega,
        change_of_basis=p,
        leftover_edges=left,
        dual_loops=tuple(loops),
        _inverse=pinv,
    )


def cycle_class(rg: RibbonGraph, basis: HomologyBasis, c: Cycle) -> Vector:
    """Coordinates of [c] in the standard symplectic basis.

    A nonzero class certifies that c is nonseparating; zero is only
    necessary for separating.
    """
    check_cycle(rg, c)
    return basis.to_standard(basis.raw_coordinates(rg, c))


def face_boundary(rg: RibbonGraph, face: Sequence[int]) -> Cycle:
    return Cycle(tuple(face))


# -- automorphisms --------------------------------------------------------


@dataclass(frozen=True)
class GraphAutomorphism:
    perm: tuple[int, ...]
    name: str | None = None


def check_automorphism(rg: RibbonGraph, phi: GraphAutomorphism) -> None:
    p = phi.perm
    _check_perm(p, rg.darts, "automorphism")
    a, s = rg.edge_pairing, rg.vertex_rotation
    if any(p[a[d]] != a[p[d]] for d in range(rg.darts)):
        raise MalformedGraphError("automorphism does not commute with edge_pairing")
    if all(p[s[d]] == s[p[d]] for d in range(rg.darts)):
        return
    inv = [0] * rg.darts
    for d, e in enumerate(s):
        inv[e] = d
    if all(p[s[d]] == inv[p[d]] for d in range(rg.darts)):
        raise OrientationReversingError("orientation-reversing maps are not mapping classes here")
    raise MalformedGraphError("dart permutation does not preserve the rotation system")


def apply_to_cycle(phi: GraphAutomorphism, c: Cycle) -> Cycle:
    return Cycle(tuple(phi.perm[d] for d in c.darts), c.name)


def compose(phi: GraphAutomorphism, psi: GraphAutomorphism, name=None) -> GraphAutomorphism:
    """phi after psi."""
    return GraphAutomorphism(tuple(phi.perm[d] for d in psi.perm), name)


def induced_map(rg: RibbonGraph, basis: HomologyBasis, phi: GraphAutomorphism) -> Matrix:
    """Matrix of phi_* on H_1 in standard symplectic coordinates."""
    check_automorphism(rg, phi)
    raw_images = [basis.raw_coordinates(rg, apply_to_cycle(phi, c)) for c in basis.cycles]
    m_raw = intlin.from_columns(raw_images)
    p = basis.change_of_basis
    m = intlin.matmul(intlin.matmul(basis._inverse, m_raw), p)
    if not intlin.is_symplectic(m):
        raise ConsistencyError("induced map does not preserve the intersection form")
    return m
