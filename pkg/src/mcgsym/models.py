"""Concrete surface models: the circular model and its good lantern.

The circular model of genus g is the boundary of a thickened wheel graph in
R^3: a hub joined by g spokes to a rim cycle of g vertices. The g triangular
holes are the handles of the circle of handles. Rotating the wheel by 2pi/g
gives R_g, with two fixed points over the hub; rotating R^3 by pi about a
line in the plane of the wheel flips the surface over and gives rho_1 and
rho_2. The line of rho_1 runs through the hub and rim vertex 1, the line of
rho_2 through the hub and the midpoint of the neighbouring rim edge, so that
rho_1 rho_2 = R_g as dart permutations.

Curves (0-indexed handles i = 0..g-1, published names are 1-indexed):

* alpha_{i+1}: meridian of rim edge i;
* beta_{i+1}: the seam loop around hole i;
* gamma_{i+1}: meridian of spoke i+1, between holes i and i+1.

The surface is the double of the planar ribbon surface F around the wheel.
For each planar dart h there are two seam points L(h), R(h) (left/right of
the band where it leaves its vertex) and four surface edges

* ta(h): R(h) -> L(h) across the band mouth on the top sheet,
* ba(h): the same on the bottom sheet,
* c(h):  L(h) -> R(sigma h) along the seam around the vertex,
* side(h): L(h) -> R(alpha h) along the seam beside the band.

2-cells are the top and bottom copies of the vertex disks and of the bands.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from . import intlin
from .intlin import Matrix, Vector
from .ribbon import (
    Cycle,
    GraphAutomorphism,
    HomologyBasis,
    RibbonGraph,
    compose,
    cycle_class,
    homology_basis,
    induced_map,
)


class UnsupportedGenusError(ValueError):
    pass


class ConstructionError(RuntimeError):
    pass


TA, BA, CORNER, SIDE = range(4)


@dataclass(frozen=True)
class PlanarMap:
    """Plane ribbon graph: sigma rotates counterclockwise seen from above."""

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    @property
    def darts(self) -> int:
        return len(self.sigma)

    def sigma_inv(self, h: int) -> int:
        return self.sigma.index(h)


def wheel(g: int) -> PlanarMap:
    """Wheel with hub and rim vertices 0..g-1.

    Darts: 2i / 2i+1 are spoke i outwards / inwards, 2(g+i) / 2(g+i)+1 are
    rim edge i from rim i to rim i+1 / back.
    """
    n = 4 * g
    sigma = [0] * n
    for i in range(g):
        sp_out, sp_in = 2 * i, 2 * i + 1
        re_f = 2 * (g + i)
        re_b_prev = 2 * (g + (i - 1) % g) + 1
        sigma[sp_out] = 2 * ((i + 1) % g)
        sigma[re_f] = sp_in
        sigma[sp_in] = re_b_prev
        sigma[re_b_prev] = re_f
    alpha = [h ^ 1 for h in range(n)]
    return PlanarMap(tuple(sigma), tuple(alpha))


def wheel_rotation(g: int) -> tuple[int, ...]:
    perm = [0] * (4 * g)
    for i in range(g):
        j = (i + 1) % g
        perm[2 * i], perm[2 * i + 1] = 2 * j, 2 * j + 1
        perm[2 * (g + i)], perm[2 * (g + i) + 1] = 2 * (g + j), 2 * (g + j) + 1
    return tuple(perm)


def wheel_reflection(g: int, c: int) -> tuple[int, ...]:
    """Mirror of the wheel sending rim vertex i to rim vertex c - i."""
    perm = [0] * (4 * g)
    for i in range(g):
        j = (c - i) % g
        k = (c - i - 1) % g
        perm[2 * i], perm[2 * i + 1] = 2 * j, 2 * j + 1
        perm[2 * (g + i)] = 2 * (g + k) + 1
        perm[2 * (g + i) + 1] = 2 * (g + k)
    return tuple(perm)


def _edge(h: int, kind: int) -> int:
    return 4 * h + kind


def double_surface(pm: PlanarMap) -> RibbonGraph:
    faces: list[list[tuple[int, int]]] = []
    sigma, alpha = pm.sigma, pm.alpha
    seen: set[int] = set()
    for start in range(pm.darts):
        if start in seen:
            continue
        around = []
        h = start
        while h not in seen:
            seen.add(h)
            around.append(h)
            h = sigma[h]
        top = []
        bottom = []
        for h in around:
            top += [(_edge(h, TA), 1), (_edge(h, CORNER), 1)]
            bottom += [(_edge(h, BA), 1), (_edge(h, CORNER), 1)]
        faces.append(top)
        faces.append([(e, -s) for e, s in reversed(bottom)])
    for h in range(pm.darts):
        hp = alpha[h]
        if h > hp:
            continue
        faces.append([(_edge(hp, SIDE), -1), (_edge(hp, TA), -1), (_edge(h, SIDE), -1), (_edge(h, TA), -1)])
        faces.append([(_edge(h, BA), 1), (_edge(h, SIDE), 1), (_edge(hp, BA), 1), (_edge(hp, SIDE), 1)])
    return RibbonGraph.from_faces(faces)


def lift_automorphism(pm: PlanarMap, psi: Sequence[int], name: str | None = None) -> GraphAutomorphism:
    """Lift a plane symmetry of the wheel to the doubled surface.

    Rotations of the plane keep the sheets; mirrors are realised by a
    half-turn of R^3, which also exchanges the top and bottom sheets.
    """
    sigma = pm.sigma
    preserving = all(psi[sigma[h]] == sigma[psi[h]] for h in range(pm.darts))
    perm = [0] * (8 * pm.darts)

    def put(src_edge, dst_edge, flip):
        perm[2 * src_edge] = 2 * dst_edge + flip
        perm[2 * src_edge + 1] = 2 * dst_edge + 1 - flip

    for h in range(pm.darts):
        ph = psi[h]
        if preserving:
            for kind in (TA, BA, CORNER, SIDE):
                put(_edge(h, kind), _edge(ph, kind), 0)
        else:
            put(_edge(h, TA), _edge(ph, BA), 1)
            put(_edge(h, BA), _edge(ph, TA), 1)
            put(_edge(h, CORNER), _edge(pm.sigma_inv(ph), CORNER), 1)
            put(_edge(h, SIDE), _edge(pm.alpha[ph], SIDE), 1)
    return GraphAutomorphism(tuple(perm), name)


def meridian(h: int) -> Cycle:
    """Loop around the band of planar dart h, at the end where h starts."""
    return Cycle((2 * _edge(h, TA), 2 * _edge(h, BA) + 1))


def seam_loop(pm: PlanarMap, h: int) -> Cycle:
    """Seam circle of the planar face on the left of dart h."""
    darts = []
    start = h
    while True:
        nxt = pm.sigma_inv(pm.alpha[h])
        darts.append(2 * _edge(h, SIDE))
        darts.append(2 * _edge(nxt, CORNER) + 1)
        h = nxt
        if h == start:
            break
    return Cycle(tuple(darts))


# -- tables ---------------------------------------------------------------


@dataclass
class CurveTable:
    genus: int
    classes: dict[str, Vector] = field(default_factory=dict)
    cycles: dict[str, Cycle] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Vector:
        return self.classes[name]

    def __contains__(self, name: str) -> bool:
        return name in self.classes

    def to_dict(self) -> dict:
        return {k: list(v) for k, v in self.classes.items()}


@dataclass(frozen=True)
class Symmetry:
    matrix: Matrix
    provenance: str  # "geometric" or "solved"


@dataclass
class SymmetryTable:
    genus: int
    entries: dict[str, Symmetry] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Matrix:
        return self.entries[name].matrix

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def to_dict(self) -> dict:
        return {
            k: {"matrix": [list(r) for r in s.matrix], "provenance": s.provenance}
            for k, s in self.entries.items()
        }


def tables_to_json(curves: CurveTable, symmetries: SymmetryTable) -> str:
    doc = {"genus": curves.genus, "curves": curves.to_dict(), "symmetries": symmetries.to_dict()}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def tables_from_json(text: str) -> tuple[CurveTable, SymmetryTable]:
    doc = json.loads(text)
    g = int(doc["genus"])
    curves = CurveTable(g, {k: tuple(v) for k, v in doc["curves"].items()})
    syms = SymmetryTable(g)
    for k, entry in doc["symmetries"].items():
        m = intlin.as_matrix(entry["matrix"])
        if not intlin.is_symplectic(m):
            raise ConstructionError(f"imported symmetry {k} is not symplectic")
        syms.entries[k] = Symmetry(m, entry["provenance"])
    return curves, syms


# -- the circular model ---------------------------------------------------


@dataclass
class CircularModel:
    genus: int
    planar: PlanarMap
    surface: RibbonGraph
    basis: HomologyBasis
    automorphisms: dict[str, GraphAutomorphism]
    curves: CurveTable
    symmetries: SymmetryTable


def circular_model(g: int) -> CircularModel:
    if g < 2:
        raise UnsupportedGenusError("the circular model needs g >= 2 (genus 1 is SL(2,Z), handled separately)")
    pm = wheel(g)
    rg = double_surface(pm)
    cyc: dict[str, Cycle] = {}
    for i in range(g):
        cyc[f"alpha{i + 1}"] = meridian(2 * (g + i))
        cyc[f"beta{i + 1}"] = seam_loop(pm, 2 * i)
        cyc[f"gamma{i + 1}"] = meridian(2 * ((i + 1) % g))
    seed = []
    for i in range(1, g + 1):
        seed += [cyc[f"alpha{i}"], cyc[f"beta{i}"]]
    basis = homology_basis(rg, seed)
    curves = CurveTable(g)
    for name, c in cyc.items():
        curves.cycles[name] = Cycle(c.darts, name)
        curves.classes[name] = cycle_class(rg, basis, c)

    rot = lift_automorphism(pm, wheel_rotation(g), "R_g")
    rho1 = lift_automorphism(pm, wheel_reflection(g, 2), "rho1")
    rho2 = lift_automorphism(pm, wheel_reflection(g, 1), "rho2")
    if compose(rho1, rho2).perm != rot.perm:
        raise ConstructionError("R_g != rho1 rho2 at the dart level")
    autos = {"R_g": rot, "rho1": rho1, "rho2": rho2}
    syms = SymmetryTable(g)
    for name, phi in autos.items():
        syms.entries[name] = Symmetry(induced_map(rg, basis, phi), "geometric")
    return CircularModel(g, pm, rg, basis, autos, curves, syms)


# -- lantern and pair swaps -----------------------------------------------


def _sign_match(u: Sequence[int], v: Sequence[int]) -> int:
    """+1 or -1 if u = +-v, else 0."""
    if tuple(u) == tuple(v):
        return 1
    if tuple(u) == tuple(-x for x in v):
        return -1
    return 0


def _add(*vs: Sequence[int]) -> Vector:
    return tuple(sum(xs) for xs in zip(*vs))


def _neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def good_lantern(model: CircularModel) -> CurveTable:
    """Extend the curve table by a good lantern a1..a4, x1..x3.

    a1 = alpha_1, a3 = R_g^2(beta_1) = beta_3, a4 = gamma_1 and x1 =
    rho_1(a1) = alpha_2. Boundary classes are oriented so that
    a1 + a2 + a3 + a4 = 0; then x_j = a_j + a4 for j = 1, 2, 3, so x1
    separates {a1, a4} from {a2, a3}.
    """
    g = model.genus
    if g < 3:
        raise UnsupportedGenusError("good lanterns need g >= 3")
    cur = model.curves
    a1 = cur["alpha1"]
    beta_img = intlin.matvec(intlin.matpow(model.symmetries["R_g"], 2), cur["beta1"])
    if not _sign_match(beta_img, cur["beta3"]):
        raise ConstructionError("R_g^2(beta_1) is not beta_3 in homology")
    a3 = cur["beta3"]
    x1 = intlin.matvec(model.symmetries["rho1"], a1)
    gam = cur["gamma1"]
    a4 = None
    for s in (1, -1):
        cand = tuple(s * x for x in gam)
        if _sign_match(_add(a1, cand), x1):
            a4 = cand
    if a4 is None:
        raise ConstructionError("rho1(alpha1) does not cobound a pair of pants with alpha1 and gamma1")
    a2 = _neg(_add(a1, a3, a4))
    ext = CurveTable(g, dict(cur.classes), dict(cur.cycles))
    ext.classes.update(
        a1=a1,
        a2=a2,
        a3=a3,
        a4=a4,
        x1=_add(a1, a4),
        x2=_add(a2, a4),
        x3=_add(a3, a4),
    )
    _check_lantern(ext)
    return ext


def _check_lantern(t: CurveTable) -> None:
    names = ["a1", "a2", "a3", "a4", "x1", "x2", "x3"]
    for u in names:
        if not intlin.is_primitive(t[u]):
            raise ConstructionError(f"lantern curve {u} has non-primitive class")
        for v in names:
            if intlin.form(t[u], t[v]):
                raise ConstructionError(f"lantern curves {u}, {v} intersect algebraically")
    if any(_add(t["a1"], t["a2"], t["a3"], t["a4"])):
        raise ConstructionError("lantern boundary classes do not sum to zero")


def pair_swaps(model: CircularModel, lantern: CurveTable) -> SymmetryTable:
    """Complete the symmetry table with I1, J1, J2, J3, J4.

    I1 is rho1 itself (it takes a1 to x1). J1, J2, J3 act on the boundary
    classes as the transpositions (a1 a2), (a1 a3) and (a1 a2)(a3 a4) and are
    completed as symplectic involutions; J4 = J2 J3 J2.
    """
    g = model.genus
    t = lantern
    table = SymmetryTable(g, dict(model.symmetries.entries))
    rho1 = model.symmetries["rho1"]
    if not _sign_match(intlin.matvec(rho1, t["x1"]), t["a1"]):
        raise ConstructionError("rho1 does not take x1 to a1")
    table.entries["I1"] = Symmetry(rho1, "geometric")
    j1 = _boundary_involution({"a1": "a2", "a2": "a1", "a3": "a3", "a4": "a4"}, t, g)
    j2 = _boundary_involution({"a1": "a3", "a3": "a1", "a2": "a2", "a4": "a4"}, t, g)
    j3 = _boundary_involution({"a1": "a2", "a2": "a1", "a3": "a4", "a4": "a3"}, t, g)
    table.entries["J1"] = Symmetry(j1, "solved")
    table.entries["J2"] = Symmetry(j2, "solved")
    table.entries["J3"] = Symmetry(j3, "solved")
    j4 = intlin.matmul(intlin.matmul(j2, j3), j2)
    table.entries["J4"] = Symmetry(j4, "solved")
    _check_pair_swaps(table, t)
    return table


def _boundary_involution(perm: Mapping[str, str], t: CurveTable, g: int) -> Matrix:
    """Involution permuting the four oriented boundary classes as ``perm``.

    Works in the basis (a1, a3, a4) of the boundary span, then completes.
    """
    basis_names = ["a1", "a3", "a4"]
    es = [t[n] for n in basis_names]

    def coords(name):
        # a2 = -(a1 + a3 + a4)
        if name == "a2":
            return (-1, -1, -1)
        return tuple(1 if n == name else 0 for n in basis_names)

    k = 3
    pm = [[0] * k for _ in range(k)]
    for col, n in enumerate(basis_names):
        for row, c in enumerate(coords(perm[n])):
            pm[row][col] = c
    return _complete(es, pm, g)


def _complete(es: Sequence[Vector], pm: Sequence[Sequence[int]], g: int) -> Matrix:
    """Symplectic involution acting on span(es) by the integer matrix pm."""
    k = len(es)
    pm = intlin.as_matrix(pm)
    if intlin.matmul(pm, pm) != intlin.identity(k):
        raise ConstructionError("prescribed action is not an involution")
    for i in range(k):
        for j in range(k):
            if intlin.form(es[i], es[j]):
                raise ConstructionError(f"constrained classes {i}, {j} pair nontrivially")
    n = 2 * g
    rows = [tuple(-x for x in intlin.matvec(intlin.j_std(g), e)) for e in es]
    try:
        fs = [list(intlin.solve_unimodular_rows(rows, [int(i == j) for i in range(k)])) for j in range(k)]
    except intlin.IntegralityError as exc:
        raise ConstructionError(f"constrained classes do not span a primitive sublattice: {exc}") from None
    for i in range(k):
        for j in range(i + 1, k):
            c = intlin.form(fs[i], fs[j])
            fs[j] = [x + c * y for x, y in zip(fs[j], es[i])]
    q = intlin.transpose(pm)  # P^-T, since P^-1 = P
    cols = []
    for x in intlin.identity(n):
        a = [intlin.form(x, f) for f in fs]
        b = [-intlin.form(x, e) for e in es]
        y = list(x)
        for i in range(k):
            for t in range(n):
                y[t] -= a[i] * es[i][t] + b[i] * fs[i][t]
        new_a = [sum(pm[r][c] * a[c] for c in range(k)) for r in range(k)]
        new_b = [sum(q[r][c] * b[c] for c in range(k)) for r in range(k)]
        for i in range(k):
            for t in range(n):
                y[t] += new_a[i] * es[i][t] + new_b[i] * fs[i][t]
        cols.append(y)
    m = intlin.from_columns(cols)
    if not intlin.is_symplectic(m) or intlin.matmul(m, m) != intlin.identity(n):
        raise ConstructionError("completed map is not a symplectic involution")
    return m


def _check_pair_swaps(table: SymmetryTable, t: CurveTable) -> None:
    def maps(mat_name, src, dst):
        img = intlin.matvec(table[mat_name], t[src])
        if not _sign_match(img, t[dst]):
            raise ConstructionError(f"{mat_name} does not take {src} to +-{dst}")

    maps("I1", "x1", "a1")
    maps("J1", "a1", "a2")
    maps("J1", "x1", "x2")
    maps("J2", "a1", "a3")
    maps("J2", "x1", "x3")
    maps("J3", "a3", "a4")
    maps("J3", "x3", "x3")
    maps("J3", "x1", "x1")
    maps("J4", "x1", "x1")
    maps("J4", "a1", "a4")


@dataclass
class FullModel:
    """Circular model plus good lantern and all named symmetries (g >= 3)."""

    base: CircularModel
    curves: CurveTable
    symmetries: SymmetryTable

    @property
    def genus(self) -> int:
        return self.base.genus


@lru_cache(maxsize=None)
def full_model(g: int) -> FullModel:
    base = circular_model(g)
    lantern = good_lantern(base)
    syms = pair_swaps(base, lantern)
    return FullModel(base, lantern, syms)


@lru_cache(maxsize=None)
def cached_circular_model(g: int) -> CircularModel:
    return circular_model(g)
