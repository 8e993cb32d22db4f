"""Words over named mapping-class generators, and the specific words and
generating sets built from them.

Words live in the free group on their letters: reduction only merges and
cancels adjacent powers of the same letter. No relation of the mapping class
group is ever used to rewrite a word; relations are checked by evaluating
both sides (see :mod:`mcgsym.symplectic`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import intlin


class UnknownGeneratorError(KeyError):
    pass


class UnsupportedGenusError(ValueError):
    pass


class InvalidChainError(ValueError):
    pass


class NotApplicableError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Letter:
    kind: str  # "twist" or "symmetry"
    name: str

    def __str__(self) -> str:
        return f"T_{self.name}" if self.kind == "twist" else self.name

    @classmethod
    def parse(cls, text: str) -> "Letter":
        if text.startswith("T_"):
            return cls("twist", text[2:])
        return cls("symmetry", text)


def twist(curve: str) -> Letter:
    return Letter("twist", curve)


def sym(name: str) -> Letter:
    return Letter("symmetry", name)


@dataclass(frozen=True)
class MCGWord:
    syllables: tuple[tuple[Letter, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce(self.syllables))

    @classmethod
    def of(cls, *items) -> "MCGWord":
        """Build from letters, (letter, exp) pairs, or other words."""
        out: list[tuple[Letter, int]] = []
        for it in items:
            if isinstance(it, MCGWord):
                out.extend(it.syllables)
            elif isinstance(it, Letter):
                out.append((it, 1))
            else:
                out.append((it[0], int(it[1])))
        return cls(tuple(out))

    def __mul__(self, other: "MCGWord") -> "MCGWord":
        return MCGWord(self.syllables + other.syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(str(a) if e == 1 else f"{a}^{e}" for a, e in self.syllables)

    def letter_count(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def letters(self) -> set[Letter]:
        return {a for a, _ in self.syllables}

    def to_list(self) -> list[dict]:
        return [{"letter": str(a), "exp": e} for a, e in self.syllables]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), separators=(",", ":"))

    @classmethod
    def from_list(cls, items: Iterable[Mapping]) -> "MCGWord":
        return cls(tuple((Letter.parse(d["letter"]), int(d["exp"])) for d in items))

    @classmethod
    def from_json(cls, text: str) -> "MCGWord":
        return cls.from_list(json.loads(text))


def _reduce(syllables: Sequence[tuple[Letter, int]]) -> tuple[tuple[Letter, int], ...]:
    stack: list[tuple[Letter, int]] = []
    for a, e in syllables:
        if e == 0:
            continue
        if stack and stack[-1][0] == a:
            merged = stack[-1][1] + e
            stack.pop()
            if merged:
                stack.append((a, merged))
        else:
            stack.append((a, e))
    return tuple(stack)


IDENTITY = MCGWord()


def reduce(w: MCGWord) -> MCGWord:
    # MCGWord is reduced on construction; kept as a function for symmetry
    return MCGWord(w.syllables)


def inverse(w: MCGWord) -> MCGWord:
    return MCGWord(tuple((a, -e) for a, e in reversed(w.syllables)))


def conjugate(w: MCGWord, h: MCGWord) -> MCGWord:
    """h w h^-1."""
    return h * w * inverse(h)


def power(w: MCGWord, k: int) -> MCGWord:
    if k < 0:
        return power(inverse(w), -k)
    return MCGWord(w.syllables * k)


def check_alphabet(w: MCGWord, alphabet: Iterable[str]) -> None:
    known = set(alphabet)
    for a, _ in w:
        if str(a) not in known:
            raise UnknownGeneratorError(str(a))


# -- torsion words -------------------------------------------------------


def _need(g: int, low: int, what: str) -> None:
    if g < low:
        raise UnsupportedGenusError(f"{what} needs g >= {low}")


def word_Q(g: int) -> MCGWord:
    """T_alpha_g T_beta_g (T_gamma_{g-1} T_beta_{g-1}) ... (T_gamma_1 T_beta_1) T_alpha_1."""
    if g < 2:
        raise UnsupportedGenusError(
            "Q and S are defined for g >= 2; Mod(1,0) = SL(2,Z) is generated by elements of orders 4 and 6"
        )
    letters = [twist(f"alpha{g}"), twist(f"beta{g}")]
    for i in range(g - 1, 0, -1):
        letters += [twist(f"gamma{i}"), twist(f"beta{i}")]
    letters.append(twist("alpha1"))
    return MCGWord.of(*letters)


def word_S(g: int) -> MCGWord:
    """Q T_alpha_1^-1, written without the final cancellation."""
    return word_Q(g) * MCGWord.of((twist("alpha1"), -1))


def word_U(g: int) -> MCGWord:
    _need(g, 2, "U")
    return MCGWord.of(twist("alpha1"), (twist("alpha2"), -1))


@dataclass(frozen=True)
class Identity:
    """A claimed equality of two words, checked later by evaluation."""

    name: str
    lhs: MCGWord
    rhs: MCGWord
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs.to_list(), "rhs": self.rhs.to_list(), "note": self.note}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Identity":
        return cls(d["name"], MCGWord.from_list(d["lhs"]), MCGWord.from_list(d["rhs"]), d.get("note", ""))


@dataclass(frozen=True)
class BirmanFactorization:
    first: MCGWord
    second: MCGWord
    h: MCGWord
    target: str | None

    @property
    def product(self) -> MCGWord:
        return self.first * self.second

    def identities(self) -> list[Identity]:
        h = str(self.h) if len(self.h) else "id"
        out = [Identity(f"birman[h={h}]: product = h T_alpha1 h^-1", self.product, conjugate(MCGWord.of(twist("alpha1")), self.h))]
        if self.target is not None:
            out.append(Identity(f"birman[h={h}]: product = T_{self.target}", self.product, MCGWord.of(twist(self.target))))
        return out


def birman_factorization(g: int, h: MCGWord = IDENTITY, target: str | None = None) -> BirmanFactorization:
    """T_x = (h S^-1 h^-1)(h Q h^-1) for any h taking alpha_1 to x.

    h is supplied by the caller; whether h really moves alpha_1 to ``target``
    is checked when the identities are evaluated.
    """
    q, s = word_Q(g), word_S(g)
    return BirmanFactorization(conjugate(inverse(s), h), conjugate(q, h), h, target)


@dataclass(frozen=True)
class GeneratingSet:
    name: str
    genus: int
    elements: dict[str, MCGWord]
    witnesses: tuple[Identity, ...] = ()
    notes: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "genus": self.genus,
            "elements": {k: w.to_list() for k, w in self.elements.items()},
            "witnesses": [w.to_dict() for w in self.witnesses],
            "notes": list(self.notes),
        }


def _u_witness(g: int, h: MCGWord) -> Identity:
    q, s = word_Q(g), word_S(g)
    rhs = (inverse(s) * q) * conjugate(inverse(q) * s, h)
    return Identity(f"U = [S^-1 Q][{h} (Q^-1 S) {h}^-1]", word_U(g), rhs)


def three_torsion_generators(g: int, variant: str = "rho1", rotation_moves_alpha1_to_alpha2: bool | None = None) -> GeneratingSet:
    """{Q, S, rho_1}, or {Q, S, R_g} when R_g(alpha_1) = alpha_2 in the model."""
    _need(g, 2, "the three-torsion set")
    if variant == "rho1":
        h = MCGWord.of(sym("rho1"))
    elif variant == "R_g":
        if not rotation_moves_alpha1_to_alpha2:
            raise NotApplicableError("R_g variant needs a model where R_g(alpha_1) = alpha_2")
        h = MCGWord.of(sym("R_g"))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    elements = {"Q": word_Q(g), "S": word_S(g), str(h): h}
    witnesses = [
        _u_witness(g, h),
        Identity("S T_alpha1 = Q", word_S(g) * MCGWord.of(twist("alpha1")), word_Q(g)),
    ]
    return GeneratingSet(f"three_torsion[{variant}]", g, elements, tuple(witnesses))


def two_involutions_one_torsion(g: int) -> GeneratingSet:
    _need(g, 2, "the two-involution set")
    rho = MCGWord.of(sym("rho1"))
    ta = MCGWord.of(twist("alpha1"))
    conj = conjugate(rho, ta)
    elements = {"rho1": rho, "T_alpha1 rho1 T_alpha1^-1": conj, "S": word_S(g)}
    witnesses = [Identity("U = (T_alpha1 rho1 T_alpha1^-1) rho1", word_U(g), conj * rho)]
    return GeneratingSet("two_inv_one_torsion", g, elements, tuple(witnesses))


def wajnryb_pair(g: int) -> GeneratingSet:
    _need(g, 2, "the Wajnryb pair")
    return GeneratingSet("wajnryb_pair", g, {"U": word_U(g), "S": word_S(g)})


def humphries_twists(g: int) -> GeneratingSet:
    names = ["alpha1", "alpha2"] + [f"beta{i}" for i in range(1, g + 1)] + [f"gamma{i}" for i in range(1, g)]
    return GeneratingSet("humphries_twists", g, {f"T_{n}": MCGWord.of(twist(n)) for n in names})


def lickorish_twists(g: int) -> GeneratingSet:
    names = [f"{k}{i}" for k in ("alpha", "beta") for i in range(1, g + 1)] + [f"gamma{i}" for i in range(1, g)]
    return GeneratingSet("lickorish_twists", g, {f"T_{n}": MCGWord.of(twist(n)) for n in names})


# -- chains ---------------------------------------------------------------


@dataclass(frozen=True)
class ChainSpec:
    curves: tuple[str, ...]
    closed: bool = True
    boundary: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.boundary:
            names = ("d",) if len(self.curves) % 2 == 0 else ("d1", "d2")
            object.__setattr__(self, "boundary", names)


def check_chain(spec: ChainSpec, classes: Mapping[str, Sequence[int]]) -> None:
    """Algebraic intersection is +-1 for neighbours and 0 otherwise.

    Only a necessary condition: geometric intersection is not computed.
    """
    cs = spec.curves
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            val = intlin.form(classes[cs[i]], classes[cs[j]])
            want_one = j == i + 1
            if (abs(val) != 1) if want_one else (val != 0):
                raise InvalidChainError(f"<{cs[i]}, {cs[j]}> = {val}")


def chain_relation_words(spec: ChainSpec, classes: Mapping[str, Sequence[int]] | None = None) -> tuple[MCGWord, MCGWord]:
    """(T_c1 ... T_cn)^(n+1) = T_d1 T_d2 for odd n, ^(2n+2) = T_d for even n.

    On a closed surface where the boundary curves bound disks the right
    side is the empty word.
    """
    if classes is not None:
        check_chain(spec, classes)
    n = len(spec.curves)
    if n == 0:
        raise InvalidChainError("empty chain")
    base = MCGWord.of(*(twist(c) for c in spec.curves))
    exp = n + 1 if n % 2 else 2 * n + 2
    rhs = IDENTITY if spec.closed else MCGWord.of(*(twist(d) for d in spec.boundary))
    return power(base, exp), rhs


def q_chain(g: int) -> ChainSpec:
    return ChainSpec(tuple(str(a)[2:] for a, _ in word_Q(g)))


def s_chain(g: int) -> ChainSpec:
    return ChainSpec(tuple(str(a)[2:] for a, _ in word_S(g)))


# -- lantern and involution words ---------------------------------------


def _t(name: str, e: int = 1) -> MCGWord:
    return MCGWord.of((twist(name), e))


def _s(*names: str) -> MCGWord:
    return MCGWord.of(*(sym(n) for n in names))


def lantern_words() -> dict[str, Identity]:
    x1, x2, x3 = _t("x1"), _t("x2"), _t("x3")
    a = {i: _t(f"a{i}") for i in range(1, 5)}
    a_inv = {i: _t(f"a{i}", -1) for i in range(1, 5)}
    return {
        "lantern": Identity("X1 X2 X3 = A1 A2 A3 A4", x1 * x2 * x3, a[1] * a[2] * a[3] * a[4]),
        "lantern_rearranged": Identity(
            "A4 = (X1 A1^-1)(X2 A2^-1)(X3 A3^-1)",
            a[4],
            x1 * a_inv[1] * x2 * a_inv[2] * x3 * a_inv[3],
        ),
    }


K_DEFINITION = "T_x1 rho1 T_x1^-1"


def k_definition(involution: str = "rho1") -> MCGWord:
    """Word the composite letter K stands for: X1 I X1^-1."""
    return conjugate(_s(involution), _t("x1"))


def sandwich(w: MCGWord, *outer: str) -> MCGWord:
    """h1..hk w hk..h1 for involution letters, written without inverses."""
    h = _s(*outer)
    return h * w * _s(*reversed(outer))


def _xa(k: str = "K", i: str = "I1") -> MCGWord:
    """X1 A1^-1 as the product of two involutions K I."""
    return _s(k, i)


def four_involution_twist(i1: str = "I1") -> Identity:
    """A4 = [K I1][J1 K I1 J1][J2 K I1 J2]."""
    xa = _xa("K", i1)
    rhs = xa * sandwich(xa, "J1") * sandwich(xa, "J2")
    return Identity("A4 = [K I1][J1 (K I1) J1][J2 (K I1) J2]", _t("a4"), rhs)


SIX_INVOLUTIONS = ("rho1", "rho2", "K", "J1", "J2", "J3")
SEVEN_INVOLUTIONS = ("rho1", "rho2", "K", "J1", "J2", "J3", "J4")


def six_involution_generators(g: int, expand_j4: bool = True) -> GeneratingSet:
    """Six involutions and the words producing R_g, T_gamma, T_beta, T_alpha.

    beta here is beta_3 = R_g^2(beta_1); replacing T_beta_1 by its
    R_g-conjugate keeps {R_g, T_alpha, T_beta, T_gamma} generating.
    """
    if g < 3:
        raise UnsupportedGenusError("six involutions generate only for g >= 3")
    xa = _xa("K", "rho1")
    j4 = ("J2", "J3", "J2") if expand_j4 else ("J4",)
    witnesses = (
        Identity("R_g = rho1 rho2", _s("R_g"), _s("rho1", "rho2")),
        Identity(
            "T_gamma = [K rho1][J1 (K rho1) J1][J2 (K rho1) J2]",
            _t("gamma1"),
            xa * sandwich(xa, "J1") * sandwich(xa, "J2"),
        ),
        Identity(
            "T_beta = [K rho1][J1 (K rho1) J1][(J3 J2)(K rho1)(J2 J3)]",
            _t("beta3"),
            xa * sandwich(xa, "J1") * sandwich(xa, "J3", "J2"),
        ),
        Identity(
            "T_alpha = [J4 (K rho1) J4][J1 (K rho1) J1][J2 (K rho1) J2]" + ("" if expand_j4 else " (J4 letter)"),
            _t("alpha1"),
            sandwich(xa, *j4) * sandwich(xa, "J1") * sandwich(xa, "J2"),
            note="J4 = J2 J3 J2" if expand_j4 else "J4 as its own letter",
        ),
        Identity("K = X1 rho1 X1^-1", _s("K"), k_definition("rho1")),
    )
    elements = {n: _s(n) for n in SIX_INVOLUTIONS}
    notes = (
        "beta denotes R_g^2(beta_1) = beta_3",
        f"pre-reduction involution count {len(SEVEN_INVOLUTIONS)} (2 + 3 + 1 + 1); J4 = J2 J3 J2 removes one",
    )
    return GeneratingSet("six_involutions", g, elements, witnesses, notes)


def seven_involution_count() -> int:
    return len(SEVEN_INVOLUTIONS)
