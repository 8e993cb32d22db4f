"""Named generating sets evaluated in the model, and their mod-p verdicts."""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from . import words as W
from .finite import GenerationVerdict, verdict_for_matrices
from .models import cached_circular_model, full_model
from .symplectic import GeneratorTable, evaluate, model_table
from .words import GeneratingSet, MCGWord, UnsupportedGenusError

PRIMARY_SETS = (
    "six_involutions",
    "three_torsion",
    "wajnryb_pair",
    "two_inv_one_torsion",
    "humphries_twists",
    "lickorish_twists",
)


@lru_cache(maxsize=None)
def table_for(g: int) -> GeneratorTable:
    """Full table (lantern curves and pair swaps) for g >= 3, circular one for g = 2."""
    if g >= 3:
        return model_table(full_model(g))
    if g == 2:
        return model_table(cached_circular_model(2))
    raise UnsupportedGenusError("models are built for g >= 2")


def rotation_moves_alpha1_to_alpha2(g: int) -> bool:
    t = table_for(g)
    r = t["R_g"]
    a1 = t["T_alpha1"]
    # R T_a1 R^-1 is the twist about R(alpha1)
    return (r @ a1 @ r.inverse()) == t["T_alpha2"]


def _minus(gs: GeneratingSet, drop: str) -> GeneratingSet:
    return GeneratingSet(f"{gs.name}-{drop}", gs.genus, {k: v for k, v in gs.elements.items() if k != drop})


def _single(name: str, word: MCGWord, g: int) -> GeneratingSet:
    return GeneratingSet(name, g, {name: word})


SETS: dict[str, Callable[[int], GeneratingSet]] = {
    "six_involutions": W.six_involution_generators,
    "three_torsion": W.three_torsion_generators,
    "three_torsion_rotation": lambda g: W.three_torsion_generators(
        g, "R_g", rotation_moves_alpha1_to_alpha2(g)
    ),
    "wajnryb_pair": W.wajnryb_pair,
    "two_inv_one_torsion": W.two_involutions_one_torsion,
    "humphries_twists": W.humphries_twists,
    "lickorish_twists": W.lickorish_twists,
    # negative controls
    "six_involutions_minus_J3": lambda g: _minus(W.six_involution_generators(g), "J3"),
    "rho1_only": lambda g: _single("rho1", MCGWord.of(W.sym("rho1")), g),
    "Q_only": lambda g: _single("Q", W.word_Q(g), g),
}


def generating_set(name: str, g: int) -> GeneratingSet:
    try:
        factory = SETS[name]
    except KeyError:
        raise KeyError(f"unknown generating set {name!r}; known: {', '.join(SETS)}") from None
    return factory(g)


def set_matrices(name: str, g: int) -> dict[str, tuple[tuple[int, ...], ...]]:
    gs = generating_set(name, g)
    t = table_for(g)
    return {k: evaluate(w, t).rows for k, w in gs.elements.items()}


def generation_verdict(name: str, g: int, p: int, orbit_budget: int = 10**7, seed: int = 0) -> GenerationVerdict:
    return verdict_for_matrices(name, set_matrices(name, g), g, p, orbit_budget, seed)


def _torsion_witnesses(g: int) -> list[W.Identity]:
    rho = MCGWord.of(W.sym("rho1"))
    ta = MCGWord.of(W.twist("alpha1"))
    out = list(W.birman_factorization(g).identities())
    out += W.birman_factorization(g, rho, "alpha2").identities()
    out += W.three_torsion_generators(g).witnesses
    out.append(W.Identity("U = T_alpha1 (rho1 T_alpha1^-1 rho1)", W.word_U(g), ta * rho * W.inverse(ta) * rho))
    out += W.two_involutions_one_torsion(g).witnesses
    if rotation_moves_alpha1_to_alpha2(g):
        out += W.three_torsion_generators(g, "R_g", True).witnesses[:1]
    for name, spec in (("Q", W.q_chain(g)), ("S", W.s_chain(g))):
        lhs, rhs = W.chain_relation_words(spec, table_curve_classes(g))
        exp = lhs.letter_count() // len(spec.curves)
        out.append(W.Identity(f"chain: {name}^{exp} = 1", lhs, rhs))
    return out


def _involution_witnesses(g: int) -> list[W.Identity]:
    out = list(W.lantern_words().values())
    out.append(W.four_involution_twist())
    out += W.six_involution_generators(g).witnesses
    out += W.six_involution_generators(g, expand_j4=False).witnesses[3:4]
    return out


def table_curve_classes(g: int) -> dict[str, tuple[int, ...]]:
    model = full_model(g) if g >= 3 else cached_circular_model(g)
    return dict(model.curves.classes)


SUITES = ("all", "torsion", "involutions")


def witness_identities(g: int, suite: str = "all") -> list[W.Identity]:
    """Every identity the toolkit checks at genus g.

    The involution part needs g >= 3; asking for it explicitly at g = 2
    raises, while suite "all" at g = 2 covers the torsion part only.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if suite == "involutions" and g < 3:
        raise UnsupportedGenusError("the involution identities need g >= 3")
    out = []
    if suite in ("all", "torsion"):
        out += _torsion_witnesses(g)
    if suite in ("all", "involutions") and g >= 3:
        out += _involution_witnesses(g)
    return out
