"""Exact difference Galois theory at desk scale.

Thin convenience layer over the compiled core: functions that serialize to
JSON internally are decoded to plain dicts here.
"""

import json as _json

from ._pvkit import (
    DomainError,
    Field,
    Module,
    PVExtension,
    Ring,
    RingElement,
    UsageError,
    automorphism_count_check,
    constants_of,
    descend,
    extend_constants,
    fixed_subring_check,
    fixed_vectors,
    galois_commutation_check,
    pv_isomorphism,
    relation_lattice,
    run_program,
    simplicity_certificate,
    solve,
    tau_coboundary,
    total_fractions_check,
    verify_pv,
)
from . import _pvkit as _core

__all__ = [
    "DomainError",
    "Field",
    "Module",
    "PVExtension",
    "Ring",
    "RingElement",
    "UsageError",
    "automorphism_count_check",
    "constants_of",
    "construct_pv",
    "descend",
    "extend_constants",
    "fibre_functor",
    "fixed_subring_check",
    "fixed_vectors",
    "galois_commutation_check",
    "galois_group",
    "pv_isomorphism",
    "pv_to_dict",
    "relation_lattice",
    "run_program",
    "simplicity_certificate",
    "solve",
    "split",
    "tau_coboundary",
    "total_fractions_check",
    "universal_pv",
    "verify_pv",
]


def construct_pv(module):
    """Picard-Vessiot extension of a diagonal module over a field base."""
    return _core.construct_pv(module)


def universal_pv(modules):
    """One PV extension trivializing the direct sum of the given modules."""
    return _core.universal_pv(list(modules))


def pv_to_dict(pv):
    """Canonical serialization of a PV presentation."""
    return _json.loads(pv.to_json())


def galois_group(arg):
    """Galois group as a dict with invariant_factors and torus_rank.

    Accepts a PVExtension or a diagonal Module.
    """
    if isinstance(arg, Module):
        return _json.loads(_core.galois_group_of_module(arg))
    return _json.loads(_core.galois_group(arg))


def fibre_functor(module, pv):
    """Fibre functor data (dimension, characters) of a module the given
    PV extension trivializes."""
    return _json.loads(_core.fibre_functor(module, pv))


def split(module):
    """Diagonalize a constant system matrix over a splitting field."""
    return _core.split(module)
