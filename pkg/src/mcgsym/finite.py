"""Subgroups of Sp(2g, p) via a base and strong generating set.

The group acts on row vectors of F_p^{2g} on the right, v -> v M. The base
is the standard basis e_0, ..., e_{2g-1} in order; its pointwise stabilizer
is trivial, so the chain always ends at the identity. Transversals are built
breadth first. Inside one BFS layer, new points are taken in order of
(generator index, position of the parent in the layer).

Chain construction has two phases. A seeded random phase sifts product
replacement elements and only ever adds genuine group elements, so the
product of basic orbit lengths is a lower bound for the group order; when
that bound reaches a known target (the full group order) the answer is
certified. Otherwise a deterministic phase sifts every Schreier generator,
after which the chain is complete and the order is exact.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import isprime

from . import intlin


class NotPrimeError(ValueError):
    pass


class ResourceError(RuntimeError):
    """A configured budget would be exceeded."""


class NotInGroupError(ValueError):
    pass


def sp_group_order(g: int, p: int) -> int:
    """|Sp(2g, p)| = p^(g^2) prod_{i=1..g} (p^(2i) - 1)."""
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if g < 1:
        raise ValueError("g must be at least 1")
    return p ** (g * g) * prod(p ** (2 * i) - 1 for i in range(1, g + 1))


def _j(n: int) -> np.ndarray:
    return np.array(intlin.j_std(n // 2), dtype=np.int64)


class ModMatrix:
    """A 2g x 2g matrix over F_p preserving J_std mod p."""

    __slots__ = ("a", "p")

    def __init__(self, entries, p: int, check: bool = True):
        a = np.asarray(entries, dtype=np.int64) % p
        if check:
            if not isprime(p):
                raise NotPrimeError(f"{p} is not prime")
            n = a.shape[0]
            if a.ndim != 2 or a.shape != (n, n) or n % 2:
                raise NotInGroupError("matrix must be square of even size")
            j = _j(n)
            if not np.array_equal((a.T @ j @ a) % p, j % p):
                raise NotInGroupError("matrix does not preserve the standard form mod p")
        self.a = a
        self.p = p

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        return ModMatrix((self.a @ other.a) % self.p, self.p, check=False)

    def inverse(self) -> "ModMatrix":
        return ModMatrix(_sym_inv(self.a, self.p), self.p, check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModMatrix) and self.p == other.p and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        return hash((self.p, self.a.tobytes()))

    def is_identity(self) -> bool:
        return np.array_equal(self.a, np.eye(self.n, dtype=np.int64))

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    @classmethod
    def identity(cls, n: int, p: int) -> "ModMatrix":
        return cls(np.eye(n, dtype=np.int64), p, check=False)


def _sym_inv(a: np.ndarray, p: int) -> np.ndarray:
    """-J A^T J, batched over leading axes."""
    n = a.shape[-1]
    j = _j(n)
    return (-(j @ np.swapaxes(a, -1, -2) @ j)) % p


class _Level:
    """Basic orbit of one base point, with its BFS transversal."""

    def __init__(self, point: int, n: int, p: int):
        self.point = point
        self.n = n
        self.p = p
        self.weights = p ** np.arange(n, dtype=np.int64)
        self.gens: list[int] = []  # indices into the chain's strong generators

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return vecs @ self.weights

    def build(self, strong: Sequence[np.ndarray]) -> None:
        n, p = self.n, self.p
        start = np.zeros(n, dtype=np.int64)
        start[self.point] = 1
        points = [start]
        trans = [np.eye(n, dtype=np.int64)]
        parent = [-1]
        via = [-1]
        seen = {int(self.encode(start))}
        frontier = [0]
        gens = [strong[k] for k in self.gens]
        while frontier:
            f_pts = np.array([points[i] for i in frontier])
            f_tr = np.array([trans[i] for i in frontier])
            new = []
            for gi, s in enumerate(gens):
                imgs = (f_pts @ s) % p
                codes = self.encode(imgs)
                for pos, c in enumerate(codes.tolist()):
                    if c not in seen:
                        seen.add(c)
                        new.append((frontier[pos], gi, imgs[pos], (f_tr[pos] @ s) % p))
            frontier = []
            for par, gi, pt, tr in new:
                frontier.append(len(points))
                points.append(pt)
                trans.append(tr)
                parent.append(par)
                via.append(gi)
        self.points = np.array(points)
        self.trans = np.array(trans)
        self.trans_inv = _sym_inv(self.trans, p)
        self.parent = parent
        self.via = via
        codes = self.encode(self.points)
        self.order = np.argsort(codes, kind="stable")
        self.sorted_codes = codes[self.order]

    def __len__(self) -> int:
        return len(self.points)

    def lookup(self, vecs: np.ndarray) -> np.ndarray:
        """Orbit indices of the given points, -1 where absent."""
        codes = self.encode(vecs)
        pos = np.searchsorted(self.sorted_codes, codes)
        pos = np.minimum(pos, len(self.sorted_codes) - 1)
        hit = self.sorted_codes[pos] == codes
        return np.where(hit, self.order[pos], -1)

    def word(self, idx: int) -> list[int]:
        """Local generator indices whose product is the transversal element."""
        out = []
        while self.parent[idx] >= 0:
            out.append(self.via[idx])
            idx = self.parent[idx]
        return out[::-1]


@dataclass(frozen=True)
class Membership:
    member: bool
    word: tuple[str, ...] | None = None  # strong generator names, product left to right


class BSGSChain:
    """Stabilizer chain for a subgroup of Sp(2g, p)."""

    def __init__(self, generators: Sequence[ModMatrix], p: int, n: int, names: Sequence[str] | None = None):
        self.p = p
        self.n = n
        self.strong: list[np.ndarray] = []
        self.names: list[str] = []
        self.levels = [_Level(i, n, p) for i in range(n)]
        self.complete = False
        names = list(names) if names is not None else [f"g{i}" for i in range(len(generators))]
        self.input_names = tuple(names)
        for m, name in zip(generators, names):
            if m.p != p or m.n != n:
                raise ValueError("generator does not match the chain's field or size")
            if not m.is_identity():
                self._add_strong(m.a, name, rebuild=False)
        for lev in self.levels:
            lev.build(self.strong)

    # -- structure ---------------------------------------------------------

    def _depth(self, a: np.ndarray) -> int:
        """Number of leading base points fixed by a."""
        for i in range(self.n):
            if not (a[i, i] == 1 and np.count_nonzero(a[i]) == 1):
                return i
        return self.n

    def _add_strong(self, a: np.ndarray, name: str, rebuild: bool = True) -> int:
        d = self._depth(a)
        if d == self.n:
            raise AssertionError("identity added as strong generator")
        k = len(self.strong)
        self.strong.append(a)
        self.names.append(name)
        for i in range(d + 1):
            self.levels[i].gens.append(k)
            if rebuild:
                self.levels[i].build(self.strong)
        return d

    def order(self) -> int:
        return prod(len(lev) for lev in self.levels)

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lev.point for lev in self.levels)

    def orbit_lengths(self) -> tuple[int, ...]:
        return tuple(len(lev) for lev in self.levels)

    # -- sifting -----------------------------------------------------------

    def sift_batch(self, hs: np.ndarray, start: int = 0) -> tuple[np.ndarray, np.ndarray]:
        """Sift a stack of matrices from level ``start``.

        Returns the residues and the level where each stopped (n if it
        passed every level).
        """
        hs = hs.copy() % self.p
        stop = np.full(len(hs), self.n, dtype=np.int64)
        active = np.arange(len(hs))
        for i in range(start, self.n):
            if not len(active):
                break
            lev = self.levels[i]
            idx = lev.lookup(hs[active, lev.point, :])
            miss = idx < 0
            stop[active[miss]] = i
            active = active[~miss]
            idx = idx[~miss]
            hs[active] = (hs[active] @ lev.trans_inv[idx]) % self.p
        return hs, stop

    def sift(self, a: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        r, s = self.sift_batch(a[None], start)
        return r[0], int(s[0])

    def _is_identity(self, a: np.ndarray) -> bool:
        return bool(np.array_equal(a, np.eye(self.n, dtype=np.int64)))

    # -- construction ------------------------------------------------------

    def random_phase(self, rng: random.Random, target: int | None = None, patience: int = 40) -> None:
        if not self.strong:
            return
        pool = [s.copy() for s in self.strong]
        while len(pool) < 10:
            pool.append(pool[len(pool) % len(self.strong)].copy())
        acc = np.eye(self.n, dtype=np.int64)

        def step():
            nonlocal acc
            i, j = rng.sample(range(len(pool)), 2)
            m = pool[j] if rng.random() < 0.5 else _sym_inv(pool[j], self.p)
            pool[i] = (pool[i] @ m) % self.p if rng.random() < 0.5 else (m @ pool[i]) % self.p
            acc = (acc @ pool[i]) % self.p
            return acc

        for _ in range(50):
            step()
        quiet = 0
        while quiet < patience:
            if target is not None and self.order() == target:
                return
            r, lvl = self.sift(step())
            if lvl < self.n and not self._is_identity(r):
                self._add_strong(r, f"s{len(self.strong)}")
                quiet = 0
            else:
                quiet += 1

    def schreier_phase(self) -> None:
        """Sift every Schreier generator until none leaves a residue."""
        i = self.n - 1
        while i >= 0:
            lev = self.levels[i]
            found = None
            for k in lev.gens:
                s = self.strong[k]
                imgs = (lev.points @ s) % self.p
                tgt = lev.lookup(imgs)
                sg = (lev.trans @ s @ lev.trans_inv[tgt]) % self.p
                res, stop = self.sift_batch(sg, i + 1)
                bad = np.nonzero(stop < self.n)[0]
                if len(bad):
                    found = res[bad[0]]
                    break
            if found is None:
                i -= 1
                continue
            d = self._add_strong(found, f"s{len(self.strong)}")
            i = d
        self.complete = True

    # -- queries -----------------------------------------------------------

    def contains(self, m: ModMatrix) -> Membership:
        """Sift m; on success give it as a word in the strong generators."""
        r, lvl = self.sift(m.a)
        if lvl < self.n:
            return Membership(False)
        # m = u_{n-1} ... u_1 u_0, each u a word over its level's generators
        h = m.a.copy() % self.p
        parts = []
        for lev in self.levels:
            idx = int(lev.lookup(h[lev.point][None])[0])
            parts.append([self.names[lev.gens[k]] for k in lev.word(idx)])
            h = (h @ lev.trans_inv[idx]) % self.p
        word = [x for part in reversed(parts) for x in part]
        return Membership(True, tuple(word))

    def evaluate_word(self, word: Iterable[str]) -> ModMatrix:
        lookup = dict(zip(self.names, self.strong))
        acc = np.eye(self.n, dtype=np.int64)
        for w in word:
            acc = (acc @ lookup[w]) % self.p
        return ModMatrix(acc, self.p, check=False)


def bsgs(
    generators: Sequence[ModMatrix],
    p: int | None = None,
    n: int | None = None,
    names: Sequence[str] | None = None,
    target: int | None = None,
    seed: int = 0,
) -> BSGSChain:
    """Chain for the group generated by ``generators``.

    With ``target`` set and reached in the random phase the deterministic
    phase is skipped: the lower bound then equals a known upper bound.
    """
    if generators:
        p = generators[0].p if p is None else p
        n = generators[0].n if n is None else n
    if p is None or n is None:
        raise ValueError("p and n are needed for an empty generating set")
    chain = BSGSChain(generators, p, n, names)
    chain.random_phase(random.Random(seed), target)
    if target is None or chain.order() != target:
        chain.schreier_phase()
    return chain


def reduce_mod(m: Sequence[Sequence[int]], p: int) -> ModMatrix:
    return ModMatrix(m, p)


# -- brute force oracle -----------------------------------------------------


def enumerate_sp(g: int, p: int) -> list[ModMatrix]:
    """All of Sp(2g, p) by exhaustion; only sensible for p^(4g^2) tiny."""
    n = 2 * g
    j = _j(n)
    out = []
    for flat in np.ndindex(*([p] * (n * n))):
        a = np.array(flat, dtype=np.int64).reshape(n, n)
        if np.array_equal((a.T @ j @ a) % p, j % p):
            out.append(ModMatrix(a, p, check=False))
    return out


def closure(generators: Sequence[ModMatrix]) -> set[ModMatrix]:
    """Generated subgroup by breadth-first closure; small groups only."""
    if not generators:
        return set()
    n, p = generators[0].n, generators[0].p
    e = ModMatrix.identity(n, p)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = x @ s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- verdicts -----------------------------------------------------------------


SCOPE_NOTE = (
    "generation of Sp(2g,p) is a necessary condition for generating Sp(2g,Z) "
    "and the mapping class group; it does not prove either"
)


@dataclass(frozen=True)
class GenerationVerdict:
    set_name: str
    g: int
    p: int
    subgroup_order: int
    full_order: int
    ms: int
    chain_complete: bool = field(default=True, compare=False)

    @property
    def generates(self) -> bool:
        return self.subgroup_order == self.full_order

    def to_dict(self) -> dict:
        return {
            "set": self.set_name,
            "g": self.g,
            "p": self.p,
            "subgroup_order": str(self.subgroup_order),
            "full_order": str(self.full_order),
            "generates": self.generates,
            "ms": self.ms,
        }


def check_budget(g: int, p: int, orbit_budget: int) -> None:
    if orbit_budget <= 0:
        raise ValueError("orbit budget must be positive")
    if p ** (2 * g) > orbit_budget:
        raise ResourceError(f"p^(2g) = {p ** (2 * g)} exceeds orbit budget {orbit_budget} at g={g}, p={p}")


def verdict_for_matrices(
    set_name: str,
    matrices: Mapping[str, Sequence[Sequence[int]]],
    g: int,
    p: int,
    orbit_budget: int = 10**7,
    seed: int = 0,
) -> GenerationVerdict:
    check_budget(g, p, orbit_budget)
    full = sp_group_order(g, p)
    t0 = time.perf_counter()
    mods = [ModMatrix(m, p) for m in matrices.values()]
    chain = bsgs(mods, p, 2 * g, list(matrices), target=full, seed=seed)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return GenerationVerdict(set_name, g, p, chain.order(), full, ms, chain.complete)
