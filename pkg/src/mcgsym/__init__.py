"""Torsion and involution generating sets for mapping class groups, checked
on homology: exact identities in Sp(2g, Z) and generation of Sp(2g, p)."""

from .certify import PRIMARY_SETS, generating_set, generation_verdict, table_for, witness_identities
from .finite import BSGSChain, ModMatrix, ResourceError, bsgs, sp_group_order
from .models import circular_model, full_model
from .symplectic import SympMatrix, evaluate, matrix_order, transvection, verify, verify_identity
from .words import MCGWord, word_Q, word_S, word_U

__all__ = [
    "PRIMARY_SETS",
    "generating_set",
    "generation_verdict",
    "table_for",
    "witness_identities",
    "BSGSChain",
    "ModMatrix",
    "ResourceError",
    "bsgs",
    "sp_group_order",
    "circular_model",
    "full_model",
    "SympMatrix",
    "evaluate",
    "matrix_order",
    "transvection",
    "verify",
    "verify_identity",
    "MCGWord",
    "word_Q",
    "word_S",
    "word_U",
]
__version__ = "0.1.0"
