"""Enveloping algebras of DG Poisson algebras on finite length windows."""

from .lie_envelope import EnvelopeWindow
from .modules import UEModuleRep, module_triple, module_to_ue_rep, ue_rep_to_module, verify_ue_rep
from .oracle import ideal_quotient_oracle
from .relations import Relation, RelationSet, build_relations
from .rewriting import RewritingError, RewritingSystem, normal_form, reduce_h_generators
from .truncation import OutOfWindow, SizeGuardError, UETruncation, ue_truncated
from .universal import (InducedMap, PTripleData, WindowReport, canonical_triple, evaluate,
                        induced_map, verify_ptriple, verify_window)

__all__ = [
    "EnvelopeWindow", "UEModuleRep", "module_triple", "module_to_ue_rep", "ue_rep_to_module",
    "verify_ue_rep", "ideal_quotient_oracle", "Relation", "RelationSet", "build_relations",
    "RewritingError", "RewritingSystem", "normal_form", "reduce_h_generators", "OutOfWindow",
    "SizeGuardError", "UETruncation", "ue_truncated", "InducedMap", "PTripleData",
    "WindowReport", "canonical_triple", "evaluate", "induced_map", "verify_ptriple",
    "verify_window",
]
