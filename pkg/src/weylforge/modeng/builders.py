"""Constructions of M(psi), M(psi, {I_alpha}), W(psi, I), evaluation modules
and tensor products on top of the PBW engine."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import commalg
from ..commalg import CofiniteIdeal, QuotientAlgebra
from ..errors import (
    AlgebraMismatch,
    DuplicatePoint,
    IncompatibleCoefficients,
    IntegrabilityAuditFailed,
    OrderViolation,
    WeightOverflow,
)
from ..hwdata import IdealSequence, Psi, evaluation_psi, n_lambda_alpha, psi_consistency, standard_sequence
from ..rootsys import RootVector, root_leq
from .lie import ChevalleyBasis, chevalley_basis
from .mapalg import MapAlgebra
from .modules import Closure, EvaluationModule, ModuleState, TensorModule, VermaModule

# hard ceiling on heights explored while waiting for a finite module to vanish
FINITE_SEARCH_LIMIT = 64


def map_algebra(table_or_gcm, B: QuotientAlgebra) -> MapAlgebra:
    gcm = getattr(table_or_gcm, "gcm", table_or_gcm)
    return MapAlgebra(chevalley_basis(gcm), B)


def _coerce_malg(malg_or_gcm, B):
    if isinstance(malg_or_gcm, MapAlgebra):
        return malg_or_gcm
    return map_algebra(malg_or_gcm, B)


def act(g, w: dict, state) -> dict:
    """Straightened action of a generator (or a combination) on a vector."""
    return state.apply(g, w)


def lowering_element(malg: MapAlgebra, root, b) -> dict:
    """X_{-root} (x) b as a generator combination."""
    coords = root.coords if isinstance(root, RootVector) else tuple(root)
    return malg.element(malg.chevalley.f_index[coords], b)


def _b_element(B: QuotientAlgebra, a) -> dict:
    if isinstance(a, dict):
        return {k: Fraction(v) for k, v in a.items() if v}
    if isinstance(a, int):
        return {a: Fraction(1)}
    return B.image(a)


def _relations_for_sequence(verma: VermaModule, seq: IdealSequence, H: int | None,
                            absorb: bool = False) -> list[dict]:
    malg = verma.malg
    B = malg.coeff
    rels = []
    for r in seq.table.roots:
        if r.coords not in malg.chevalley.f_index:
            continue
        Ib = seq[r]
        if absorb:
            # B is a quotient on purpose: only the image of I_beta + ker matters
            Ib = commalg.ideal_sum(Ib, B.ideal)
        for k in B.ideal_image(Ib):
            rels.append(verma.apply(lowering_element(malg, r, k), verma.vacuum()))
    return rels


def _check_psi(psi: Psi, B: QuotientAlgebra):
    if psi.evaluation_data and not psi_consistency(psi):
        raise IncompatibleCoefficients("psi does not vanish on h' (x) I")
    for p in psi.points:
        B.evaluate({}, p)  # raises when p is outside the support of B


def build_M(psi: Psi, seq: IdealSequence | None, B: QuotientAlgebra, H: int,
            chevalley: ChevalleyBasis | None = None, order: str = "height") -> ModuleState:
    gcm = seq.table.gcm if seq is not None else None
    if chevalley is None:
        if gcm is None:
            raise ValueError("a Chevalley basis or an ideal sequence is needed")
        chevalley = chevalley_basis(gcm)
    _check_psi(psi, B)
    malg = MapAlgebra(chevalley, B)
    verma = VermaModule(malg, psi, order)
    rels = _relations_for_sequence(verma, seq, H) if seq is not None else []
    state = ModuleState(verma, rels, H, psi, label="M", detect_vanishing=seq is not None)
    state.sequence = seq
    return state


def power_relations(verma: VermaModule, lam) -> list[dict]:
    malg = verma.malg
    cb = malg.chevalley
    one = malg.coeff.one
    rels = []
    for i in range(cb.rank):
        fi = malg.element(cb.f(i), one)
        v = verma.vacuum()
        for _ in range(lam.coroot_values[i] + 1):
            v = verma.apply(fi, v)
        rels.append(v)
    return rels


def build_W(psi: Psi, I: CofiniteIdeal, B: QuotientAlgebra, H: int | None,
            chevalley: ChevalleyBasis | None = None, order: str = "height",
            audit: bool = True, gcm=None, absorb: bool = False) -> ModuleState:
    """Presentation of W(psi, I); ``H=None`` computes until the module vanishes.

    With ``absorb`` the relations are taken modulo the kernel of B instead of
    requiring B to refine every I^N; the result is then the largest quotient
    of W(psi, I) on which g' (x) ker acts trivially.
    """
    if chevalley is None:
        if gcm is None:
            raise ValueError("pass chevalley= or gcm=")
        chevalley = chevalley_basis(gcm)
    table = chevalley.table
    seq = standard_sequence(psi.weight, I, table)
    _check_psi(psi, B)
    malg = MapAlgebra(chevalley, B)
    verma = VermaModule(malg, psi, order)
    rels = _relations_for_sequence(verma, seq, H, absorb) + power_relations(verma, psi.weight)
    state = ModuleState(verma, rels, 0 if H is None else H, psi, label="W")
    if H is None:
        h = 0
        while not state.finite and h < FINITE_SEARCH_LIMIT:
            h += 1
            state.extend(h)
    state.sequence = seq
    if audit:
        state.audit = integrability_audit(state)
    return state


def integrability_audit(state: ModuleState) -> dict:
    """(f_i (x) 1)^M w = 0 for every retained basis vector w of height <= H,
    with M = lambda_i + 2 ht(w) + 1, extending the computed range as needed."""
    malg = state.malg
    cb = malg.chevalley
    lam = state.psi.weight
    H = state.H
    checked = 0
    reached = H
    for h in range(H + 1):
        for eta, _ in _weights_at(state, h):
            for key in state.keys(eta):
                for i in range(cb.rank):
                    fi = malg.element(cb.f(i), malg.coeff.one)
                    M = lam.coroot_values[i] + 2 * h + 1
                    v = {key: Fraction(1)}
                    for step in range(M):
                        need = h + step + 1
                        if need > state.H and not state.finite:
                            state.extend(min(need, H + M))
                            reached = max(reached, state.H)
                        if need > state.H and not state.finite:
                            raise IntegrabilityAuditFailed(f"audit needs height {need} beyond {state.H}")
                        v = state.apply(fi, v)
                        if not v:
                            break
                    if v:
                        raise IntegrabilityAuditFailed(
                            f"(f_{i + 1} (x) 1)^{M} does not kill basis vector {key} at {eta}")
                    checked += 1
    return {
        "status": "pass",
        "vectors_checked": checked,
        "height_bound": H,
        "height_reached": reached,
        "finite": state.finite,
        "vanishes_from": state.closure.vanish_from,
    }


def _weights_at(state, h):
    from .modules import compositions
    for eta in compositions(h, state.rank):
        d = state.dim(eta)
        if d:
            yield eta, d


def tensor_module(M1, M2, cyclicity_audit: bool = False, H: int | None = None):
    if not M1.malg.same_as(M2.malg):
        raise AlgebraMismatch("factors are modules over different map algebras")
    T = TensorModule(M1, M2)
    if cyclicity_audit:
        T.cyclic = is_cyclic(T, H if H is not None else T.H)
    return T


def is_cyclic(module, H: int) -> bool:
    """Whether U(g~) applied to the highest vector spans every weight space up to H."""
    cl = Closure(module, [module.vacuum()], H, detect_vanishing=False)
    return cl.is_everything(H)


def evaluation_module(psi: Psi, B: QuotientAlgebra | None = None, chevalley: ChevalleyBasis | None = None,
                      gcm=None) -> EvaluationModule:
    """Tensor product of the irreducibles V(lambda_i) at the evaluation points."""
    pts = psi.points
    if len(set(pts)) != len(pts):
        raise DuplicatePoint("evaluation points must be distinct")
    if chevalley is None:
        if gcm is None:
            raise ValueError("pass chevalley= or gcm=")
        chevalley = chevalley_basis(gcm)
    A = psi.annihilating_ideal.algebra
    if B is None:
        I = commalg.point_ideal(A, {p: 1 for p in pts})
        N = max(n_lambda_alpha(psi.weight, r) for r in chevalley.table.roots)
        B = commalg.quotient_algebra(commalg.power(I, max(N, 1)))
    factors = []
    for p, lam in psi.evaluation_data:
        B0 = commalg.quotient_algebra(commalg.maximal_ideal(A, p))
        psi0 = evaluation_psi(A, [(p, lam)])
        factors.append(classical_irreducible(psi0, B0, chevalley))
    return EvaluationModule(MapAlgebra(chevalley, B), pts, factors)


def classical_irreducible(psi0: Psi, B0: QuotientAlgebra, chevalley: ChevalleyBasis) -> ModuleState:
    """V(lambda) as W over a one-point, one-dimensional coefficient algebra."""
    I = commalg.maximal_ideal(B0.ideal.algebra, psi0.points[0])
    return build_W(psi0, I, B0, None, chevalley, audit=False, absorb=True)


@dataclass
class RelationAudit:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"status": "pass" if self.ok else "fail", "failures": self.failures}


def weyl_relation_audit(module, psi: Psi, I: CofiniteIdeal) -> RelationAudit:
    """Check the defining relations of W(psi, I) on the highest vector of ``module``."""
    malg = module.malg
    cb = malg.chevalley
    B = malg.coeff
    v = module.vacuum()
    fails = []
    for g in malg.raising_simple():
        if module.apply(g, v):
            fails.append(("raising", g))
    for i in range(cb.rank):
        for k in range(malg.d):
            g = malg.gen(cb.h(i), k)
            got = module.apply(g, v)
            want = psi.value(i, B, {k: Fraction(1)})
            exp = {module.highest: want} if want else {}
            if got != exp:
                fails.append(("cartan", i, k))
    seq = standard_sequence(psi.weight, I, cb.table)
    for r in cb.table.roots:
        for k in B.ideal_image(seq[r]):
            if module.apply(lowering_element(malg, r, k), v):
                fails.append(("ideal", r.coords, k))
    for i in range(cb.rank):
        fi = malg.element(cb.f(i), B.one)
        w = v
        for _ in range(psi.weight.coroot_values[i] + 1):
            w = module.apply(fi, w)
        if w:
            fails.append(("power", i))
    return RelationAudit(not fails, fails)


def verify_lemma_l1(state: ModuleState, beta, gammas, elements) -> bool:
    """Whether X_{-beta} I_beta^{n+1} X_{-gamma_1} a_1 ... X_{-gamma_n} a_n v vanishes."""
    malg = state.malg
    B = malg.coeff
    bcoords = beta.coords if isinstance(beta, RootVector) else tuple(beta)
    gcoords = [g.coords if isinstance(g, RootVector) else tuple(g) for g in gammas]
    for g in gcoords:
        if not root_leq(g, bcoords):
            raise OrderViolation(f"{g} is not below {bcoords}")
    if len(gcoords) != len(elements):
        raise ValueError("one coefficient per root is needed")
    seq = state.sequence
    Ib = commalg.power(seq[bcoords], len(gcoords) + 1)
    try:
        idx = B.ideal_image(Ib)
    except IncompatibleCoefficients:
        # I_beta^{n+1} is smaller than the ideal B was built from: its image
        # is the image of I_beta^{n+1} + I_0, which we take directly
        Ib = commalg.ideal_sum(Ib, B.ideal)
        idx = B.ideal_image(Ib)
    v = state.vacuum()
    for g, a in zip(reversed(gcoords), reversed(list(elements))):
        v = state_apply_extending(state, lowering_element(malg, g, _b_element(B, a)), v)
        if not v:
            return True
    for k in idx:
        w = state_apply_extending(state, lowering_element(malg, bcoords, k), v)
        if w:
            return False
    return True


def state_apply_extending(state: ModuleState, g, v: dict) -> dict:
    try:
        return state.apply(g, v)
    except WeightOverflow:
        h = sum(state.weight_of_vector(v)) + max(r.height for r in state.malg.chevalley.table.roots)
        state.extend(h)
        return state.apply(g, v)


def action_axiom_holds(module, g1: int, g2: int, w: dict) -> bool:
    """[g1, g2] w == g1 (g2 w) - g2 (g1 w), exactly."""
    left = module.apply(module.malg.bracket(g1, g2), w) if module.malg.bracket(g1, g2) else {}
    right = dict(module.apply(g1, module.apply(g2, w)))
    for k, c in module.apply(g2, module.apply(g1, w)).items():
        v = right.get(k, 0) - c
        if v:
            right[k] = v
        else:
            right.pop(k, None)
    return left == right
