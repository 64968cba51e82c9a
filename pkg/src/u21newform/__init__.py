"""Exact computations for newforms of unramified U(2,1)."""

from .classify import cross_check, invariants
from .cyclotomic import CycScalar, parse_scalar
from .group import GroupElt, classify_coset, iwasawa_k0, reduce_bk
from .induced import CharacterMu2, InducedParams, eigen_pair, evaluate, newform
from .padic import Context, ExtElem, LocalElem, context_new
from .symbolic import ZetaRational, render, parse

__all__ = [
    "Context",
    "context_new",
    "LocalElem",
    "ExtElem",
    "CycScalar",
    "parse_scalar",
    "GroupElt",
    "classify_coset",
    "reduce_bk",
    "iwasawa_k0",
    "CharacterMu2",
    "InducedParams",
    "newform",
    "evaluate",
    "eigen_pair",
    "ZetaRational",
    "render",
    "parse",
    "invariants",
    "cross_check",
]
