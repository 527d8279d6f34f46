"""Explicit module construction over map algebras g' (x) B."""

from .builders import (
    act,
    action_axiom_holds,
    build_M,
    build_W,
    classical_irreducible,
    evaluation_module,
    integrability_audit,
    is_cyclic,
    lowering_element,
    map_algebra,
    power_relations,
    tensor_module,
    verify_lemma_l1,
    weyl_relation_audit,
)
from .lie import ChevalleyBasis, chevalley_basis, verify_chevalley
from .mapalg import MapAlgebra
from .modules import (
    Closure,
    EvaluationModule,
    ModuleState,
    TensorModule,
    VermaModule,
    compositions,
    singular_vectors,
)

__all__ = [
    "act", "action_axiom_holds", "build_M", "build_W", "classical_irreducible", "evaluation_module",
    "integrability_audit", "is_cyclic", "lowering_element", "map_algebra",
    "power_relations", "tensor_module", "verify_lemma_l1", "weyl_relation_audit",
    "ChevalleyBasis", "chevalley_basis", "verify_chevalley", "MapAlgebra",
    "Closure", "EvaluationModule", "ModuleState", "TensorModule", "VermaModule",
    "compositions", "singular_vectors",
]
