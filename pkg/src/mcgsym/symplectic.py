"""Words evaluated in Sp(2g, Z): transvections, orders, identity checks.

Conventions: <x, y> = x^T J y with J = J_std, and the twist about a curve
with class v acts on homology by the transvection x -> x + <x, v> v. The
representation is a left action: the word ``a b`` evaluates to the matrix
product A B, so ``h T_c h^-1`` evaluates to the transvection about h(v).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import intlin
from .intlin import Matrix, Vector
from .words import Identity, Letter, MCGWord, UnknownGeneratorError, k_definition


class NotSymplecticError(ValueError):
    pass


class TrivialClassError(ValueError):
    """Twist about a curve whose homology class is zero."""


class SympMatrix:
    """Integer 2g x 2g matrix preserving J_std, checked on construction."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]], check: bool = True):
        m = intlin.as_matrix(rows)
        if check:
            if len(m) % 2 or any(len(r) != len(m) for r in m):
                raise NotSymplecticError("matrix must be square of even size")
            if not intlin.is_symplectic(m):
                raise NotSymplecticError("matrix does not preserve the standard form")
        self.rows = m
        self._hash = None

    @property
    def genus(self) -> int:
        return len(self.rows) // 2

    @classmethod
    def identity(cls, g: int) -> "SympMatrix":
        return cls(intlin.identity(2 * g), check=False)

    def __matmul__(self, other: "SympMatrix") -> "SympMatrix":
        return SympMatrix(intlin.matmul(self.rows, other.rows), check=False)

    def __call__(self, v: Sequence[int]) -> Vector:
        return intlin.matvec(self.rows, v)

    def inverse(self) -> "SympMatrix":
        return SympMatrix(intlin.symplectic_inverse(self.rows), check=False)

    def __pow__(self, k: int) -> "SympMatrix":
        return SympMatrix(intlin.matpow(self.rows, k), check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, SympMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return f"SympMatrix({[list(r) for r in self.rows]})"

    def is_identity(self) -> bool:
        return self.rows == intlin.identity(len(self.rows))

    def determinant(self) -> int:
        return intlin.det(self.rows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def to_dict(self) -> dict:
        return {"genus": self.genus, "basis": "symplectic-standard", "matrix": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "SympMatrix":
        m = cls(d["matrix"])
        if m.genus != int(d["genus"]):
            raise NotSymplecticError("genus field does not match matrix size")
        return m


def transvection(v: Sequence[int], allow_trivial: bool = False) -> SympMatrix:
    """x -> x + <x, v> v."""
    v = tuple(v)
    n = len(v)
    if not any(v):
        if allow_trivial:
            return SympMatrix.identity(n // 2)
        raise TrivialClassError("zero class: the curve is separating or inessential, twist acts trivially on homology")
    jv = intlin.matvec(intlin.j_std(n // 2), v)  # <x, v> = x . (J v)
    rows = [[(1 if i == j else 0) + v[i] * jv[j] for j in range(n)] for i in range(n)]
    return SympMatrix(rows, check=False)


# -- generator tables -------------------------------------------------------


@dataclass
class GeneratorTable:
    genus: int
    matrices: dict[str, SympMatrix] = field(default_factory=dict)

    def __getitem__(self, letter: Letter | str) -> SympMatrix:
        key = str(letter)
        try:
            return self.matrices[key]
        except KeyError:
            raise UnknownGeneratorError(key) from None

    def __contains__(self, letter) -> bool:
        return str(letter) in self.matrices

    def with_entry(self, name: str, m: SympMatrix) -> "GeneratorTable":
        return GeneratorTable(self.genus, {**self.matrices, name: m})

    def with_left_handed(self, curve: str) -> "GeneratorTable":
        """Negative control: replace one twist by its inverse."""
        key = f"T_{curve}"
        return self.with_entry(key, self[key].inverse())

    def without(self, name: str) -> "GeneratorTable":
        return GeneratorTable(self.genus, {k: v for k, v in self.matrices.items() if k != name})


def build_table(curves: Mapping[str, Sequence[int]], symmetries: Mapping[str, Matrix], genus: int) -> GeneratorTable:
    """Twist letters from curve classes, symmetry letters from matrices.

    If x1 and rho1 are both present, the composite involution
    K = X1 rho1 X1^-1 is added as a letter of its own.
    """
    table = GeneratorTable(genus)
    for name, v in curves.items():
        table.matrices[f"T_{name}"] = transvection(v)
    for name, m in symmetries.items():
        table.matrices[name] = SympMatrix(m)
    if "T_x1" in table and "rho1" in table:
        table.matrices["K"] = evaluate(k_definition("rho1"), table)
    return table


def model_table(model) -> GeneratorTable:
    """Generator table for a circular model or a full model."""
    return build_table(model.curves.classes, {k: s.matrix for k, s in model.symmetries.entries.items()}, model.genus)


def evaluate(w: MCGWord, table: GeneratorTable) -> SympMatrix:
    result = intlin.identity(2 * table.genus)
    for letter, e in w:
        m = table[letter]
        mat = m.rows if e > 0 else m.inverse().rows
        for _ in range(abs(e)):
            result = intlin.matmul(result, mat)
    return SympMatrix(result, check=False)


# -- identities -------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    column: int | None = None
    lhs_column: Vector | None = None
    rhs_column: Vector | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "holds": self.holds}
        if not self.holds:
            d.update(column=self.column, lhs_column=list(self.lhs_column), rhs_column=list(self.rhs_column))
        return d


def verify_identity(lhs: MCGWord, rhs: MCGWord, table: GeneratorTable, name: str = "") -> Verdict:
    a = evaluate(lhs, table)
    b = evaluate(rhs, table)
    if a == b:
        return Verdict(name, True)
    for j in range(2 * table.genus):
        if a.column(j) != b.column(j):
            return Verdict(name, False, j, a.column(j), b.column(j))
    raise AssertionError("unequal matrices with equal columns")


def verify(identity: Identity, table: GeneratorTable) -> Verdict:
    return verify_identity(identity.lhs, identity.rhs, table, identity.name)


# -- orders -----------------------------------------------------------------


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial; coefficients high to low."""
    num = list(num)
    q = []
    while len(num) >= len(den):
        c = num[0]
        q.append(c)
        for i in range(len(den)):
            num[i] -= c * den[i]
        num.pop(0)
    return q, num


_CYCLO: dict[int, list[int]] = {}


def cyclotomic(n: int) -> list[int]:
    if n not in _CYCLO:
        p = [1] + [0] * (n - 1) + [-1]
        for d in range(1, n):
            if n % d == 0:
                p, r = _poly_divmod(p, cyclotomic(d))
                assert not any(r)
        _CYCLO[n] = p
    return _CYCLO[n]


def cyclotomic_factorization(poly: Sequence[int]) -> list[int] | None:
    """Indices n (with multiplicity) with poly = prod Phi_n, or None."""
    poly = list(poly)
    deg = len(poly) - 1
    out = []
    n = 1
    # phi(n) >= sqrt(n/2), so no cyclotomic factor of degree <= deg has n > 2 deg^2
    while len(poly) > 1 and n <= max(2, 2 * deg * deg):
        c = cyclotomic(n)
        if len(c) <= len(poly):
            q, r = _poly_divmod(poly, c)
            if not any(r):
                out.append(n)
                poly = q
                continue
        n += 1
    if poly != [1]:
        return None
    return out


@dataclass(frozen=True)
class OrderReport:
    status: str  # "finite", "exceeds-cap", "infinite"
    order: int | None
    cyclotomic: bool
    charpoly: tuple[int, ...]
    cyclotomic_indices: tuple[int, ...] = ()
    exact_order: int | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "exact_order": self.exact_order,
            "cyclotomic": self.cyclotomic,
            "charpoly": list(self.charpoly),
            "cyclotomic_indices": list(self.cyclotomic_indices),
        }


def _lcm(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def auto_order_cap(g: int) -> int:
    """Largest torsion order the toolkit expects to meet: 4g + 2."""
    return 4 * g + 2


def matrix_order(m: SympMatrix, cap: int | None = None) -> OrderReport:
    """Multiplicative order, decided exactly.

    If the characteristic polynomial is not a product of cyclotomic
    polynomials the order is infinite. Otherwise with N the lcm of the
    cyclotomic indices, a finite order must divide N, and M^N != I
    certifies infinite order (M is not semisimple).
    """
    cap = auto_order_cap(m.genus) if cap is None else cap
    cp = tuple(intlin.charpoly(m.rows))
    idx = cyclotomic_factorization(cp)
    if idx is None:
        return OrderReport("infinite", None, False, cp)
    n = _lcm(idx)
    if not (m ** n).is_identity():
        return OrderReport("infinite", None, True, cp, tuple(idx))
    order = min(k for k in range(1, n + 1) if n % k == 0 and (m ** k).is_identity())
    if order > cap:
        return OrderReport("exceeds-cap", None, True, cp, tuple(idx), exact_order=order)
    return OrderReport("finite", order, True, cp, tuple(idx), exact_order=order)


# -- Coxeter exponents ------------------------------------------------------


@dataclass(frozen=True)
class CoxeterReport:
    names: tuple[str, ...]
    table: tuple[tuple[object, ...], ...]  # int or "infinite"

    def entry(self, a: str, b: str):
        return self.table[self.names.index(a)][self.names.index(b)]

    def to_dict(self) -> dict:
        return {"names": list(self.names), "orders": [list(r) for r in self.table]}


def coxeter_probe(involutions: Mapping[str, SympMatrix]) -> CoxeterReport:
    """Orders of pairwise products: lower bounds for the Coxeter exponents
    of a Coxeter group mapping onto the group they generate."""
    names = tuple(involutions)
    rows = []
    for a in names:
        row = []
        for b in names:
            rep = matrix_order(involutions[a] @ involutions[b])
            row.append(rep.exact_order if rep.exact_order is not None else "infinite")
        rows.append(tuple(row))
    return CoxeterReport(names, tuple(rows))
