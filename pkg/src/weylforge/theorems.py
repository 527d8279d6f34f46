"""Machine checks of the tensor decompositions on concrete instances.

Each check returns a :class:`VerificationReport`.  Isomorphisms are
verified as equality of graded dimensions together with the relations on
the highest weight vector; no intertwiner is built.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import commalg
from .charcalc import character_of_M, verify_T1_dimensions
from .commalg import CofiniteIdeal, QuotientAlgebra
from .errors import InputError, NotCoprime, ResourceCapError, UnsupportedType
from .hwdata import (
    IdealSequence,
    Psi,
    Weight,
    evaluation_psi,
    k_sequence,
    n_lambda_alpha,
    psi_add,
    standard_sequence,
)
from .modeng import (
    Closure,
    build_M,
    build_W,
    chevalley_basis,
    evaluation_module,
    lowering_element,
    tensor_module,
    verify_lemma_l1,
    weyl_relation_audit,
)
from .rootsys import RootSystemTable, root_leq, validate_gcm

# brute-force caps; tw at (2, 2) needs dim B = 8 and max with three points needs 9
MAX_BRUTE_RANK = 2
MAX_BRUTE_B = 9
MAX_BRUTE_H = 6


@dataclass
class VerificationReport:
    instance: dict
    checks: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def __bool__(self):
        return self.ok

    def add(self, name, ok, tables=None, discrepancy=None, **extra):
        entry = {"name": name, "status": "pass" if ok else "fail",
                 "tables": tables or {}, "discrepancy": None if ok else discrepancy}
        entry.update(extra)
        self.checks.append(entry)
        return ok

    def first_discrepancy(self):
        for c in self.checks:
            if c["status"] != "pass":
                return {"check": c["name"], "detail": c["discrepancy"]}
        return None

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "instance": self.instance,
            "status": "pass" if self.ok else "fail",
            "checks": self.checks,
            "first_discrepancy": self.first_discrepancy(),
        }
        if timing:
            out["timing_seconds"] = round(self.timing, 3)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True, default=str) + "\n"


def dim_rows(dims: dict) -> list[dict]:
    return [
        {"eta": list(eta), "height": sum(eta), "value": v}
        for eta, v in sorted(dims.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    ]


def _compare(left: dict, right: dict):
    for eta in sorted(set(left) | set(right), key=lambda e: (sum(e), e)):
        a, b = left.get(eta, 0), right.get(eta, 0)
        if a != b:
            return {"eta": list(eta), "height": sum(eta), "left": a, "right": b}
    return None


def _ideal_json(I: CofiniteIdeal):
    return I.to_json()


def _single_point_psi(algebra, I: CofiniteIdeal, lam: Weight, psi: Psi | None) -> Psi:
    """psi supported at the first support point of I unless given."""
    if psi is not None:
        return psi
    if not I.support:
        raise InputError("the ideal has no support point to carry psi")
    p = I.points[0]
    return evaluation_psi(algebra, [(p, lam)], commalg.point_ideal(algebra, {q: 1 for q in I.points}))


def _N(lam: Weight, table: RootSystemTable) -> int:
    return max(n_lambda_alpha(lam, r) for r in table.roots)


def coefficient_algebra(parts, verify: bool = False) -> QuotientAlgebra:
    """B = A / intersection of I^k over ``[(I, k), ...]`` (k >= 1)."""
    ideals = [commalg.power(I, max(k, 1)) for I, k in parts]
    return commalg.quotient_algebra(commalg.intersect_all(ideals), verify=verify)


def _brute_caps(table, B, H, what):
    if table.rank > MAX_BRUTE_RANK:
        raise ResourceCapError(f"{what}: brute force is capped at rank {MAX_BRUTE_RANK}")
    if B.dim > MAX_BRUTE_B:
        raise ResourceCapError(f"{what}: dim B = {B.dim} exceeds {MAX_BRUTE_B}")
    if H > MAX_BRUTE_H:
        raise ResourceCapError(f"{what}: H = {H} exceeds {MAX_BRUTE_H}")


def check_T1(lam: Weight, I: CofiniteIdeal, mu: Weight, J: CofiniteIdeal, table: RootSystemTable,
             B: QuotientAlgebra | None = None, H: int = 4, brute_force: bool | None = None,
             seq_override: IdealSequence | None = None) -> VerificationReport:
    """M(psi1 + psi2, {K_alpha}) against M(psi1, I) (x) M(psi2, J).

    ``brute_force=None`` builds the modules whenever the instance is within
    the caps.  ``seq_override`` replaces {K_alpha} (negative controls).
    """
    t0 = time.perf_counter()
    rep = VerificationReport({
        "check": "T1", "cartan_matrix": [list(r) for r in table.gcm.entries],
        "lambda": lam.to_json(), "I": _ideal_json(I), "mu": mu.to_json(), "J": _ideal_json(J),
        "height": H, "perturbed": seq_override is not None,
    })
    if not commalg.coprime(I, J):
        raise NotCoprime(f"{I!r} and {J!r} are not coprime")
    dim_report = verify_T1_dimensions(lam, I, mu, J, table, H, seq_override)
    rep.add("formula", dim_report.ok, dim_report.to_json()["tables"], dim_report.discrepancy,
            codims=dim_report.codims)
    if brute_force is None:
        brute_force = table.gcm.is_finite and table.rank <= MAX_BRUTE_RANK and H <= MAX_BRUTE_H
    if brute_force:
        _t1_brute(rep, lam, I, mu, J, table, B, H, seq_override)
    rep.timing = time.perf_counter() - t0
    return rep


def _t1_brute(rep, lam, I, mu, J, table, B, H, seq_override):
    if not table.gcm.is_finite:
        raise UnsupportedType("brute force needs finite type")
    cb = chevalley_basis(table.gcm)
    table = cb.table
    A = I.algebra
    kseq = seq_override or k_sequence(lam, I, mu, J, table)
    if B is None:
        parts = [(I, _N(lam, table)), (J, _N(mu, table))]
        if seq_override is not None:
            parts.append((commalg.intersect_all(list(seq_override.entries.values())), 1))
        B = coefficient_algebra(parts)
    _brute_caps(table, B, H, "T1")
    psi1 = _single_point_psi(A, I, lam, None)
    psi2 = _single_point_psi(A, J, mu, None)
    psi = psi_add(psi1, psi2)
    M = build_M(psi, kseq, B, H, cb)
    M1 = build_M(psi1, standard_sequence(lam, I, table), B, H, cb)
    M2 = build_M(psi2, standard_sequence(mu, J, table), B, H, cb)
    T = tensor_module(M1, M2)
    left, right = M.dims(H), T.dims(H)
    disc = _compare(left, right)
    rep.add("brute_force", disc is None,
            {"M": dim_rows(left), "M1xM2": dim_rows(right)}, disc, coefficient_dim=B.dim)
    # v1 (x) v2 satisfies the defining relations of M(psi1 + psi2, {K_alpha})
    fails = []
    top = max(H, table.highest.height)
    M1.extend(top)
    M2.extend(top)
    v = T.vacuum()
    malg = T.malg
    for g in malg.raising_simple():
        if T.apply(g, v):
            fails.append({"relation": "raising", "generator": g})
    for i in range(table.rank):
        for k in range(B.dim):
            got = T.apply(malg.gen(cb.h(i), k), v)
            want = psi.value(i, B, {k: Fraction(1)})
            if got != ({T.highest: want} if want else {}):
                fails.append({"relation": "cartan", "i": i + 1, "b": k})
    for r in table.roots:
        for k in B.ideal_image(kseq[r]):
            if T.apply(lowering_element(malg, r, k), v):
                fails.append({"relation": "ideal", "root": list(r.coords), "b": k})
    rep.add("highest_vector_relations", not fails, {}, fails[:5])


def perturbed_sequence(seq: IdealSequence, rng: random.Random) -> tuple[IdealSequence, tuple]:
    """Shrink one K_alpha by a maximal ideal, i.e. drop one of its relations."""
    roots = [r for r in seq.table.roots if seq[r].support is not None]
    # prefer simple roots: relations at higher roots can be regenerated by
    # raising from the others, and then only the formula side would notice
    simple = [r for r in roots if r.height == 1 and seq[r].support]
    r = rng.choice(simple or roots)
    Ia = seq[r]
    A = Ia.algebra
    pts = Ia.points or seq.envelope.points
    p = rng.choice(list(pts))
    smaller = commalg.product(Ia, commalg.maximal_ideal(A, p))
    entries = dict(seq.entries)
    entries[r.coords] = smaller
    return IdealSequence(seq.table, entries, seq.envelope, seq.exempt), (r.coords, p)


def negative_control_T1(lam, I, mu, J, table, H, seed: int = 0, brute_force=None) -> VerificationReport:
    rng = random.Random(seed)
    kseq = k_sequence(lam, I, mu, J, table)
    bad, where = perturbed_sequence(kseq, rng)
    rep = check_T1(lam, I, mu, J, table, None, H, brute_force, seq_override=bad)
    rep.instance["perturbation"] = {"root": list(where[0]), "point": [str(x) for x in where[1]]}
    return rep


def random_T1_instance(rng: random.Random, types=("A1", "A2", "B2"), max_weight=2, max_exp=2):
    gcms = {"A1": [[2]], "A2": [[2, -1], [-1, 2]], "B2": [[2, -2], [-1, 2]], "C2": [[2, -1], [-2, 2]]}
    name = rng.choice(list(types))
    gcm = validate_gcm(gcms[name])
    l = gcm.rank
    lam = Weight(tuple(rng.randint(0, max_weight) for _ in range(l)))
    mu = Weight(tuple(rng.randint(0, max_weight) for _ in range(l)))
    A = commalg.PolyAlgebra(1)
    pts = rng.sample(range(-4, 5), 3)
    split = rng.randint(1, 2)
    I = commalg.point_ideal(A, {p: rng.randint(1, max_exp) for p in pts[:split]})
    J = commalg.point_ideal(A, {p: rng.randint(1, max_exp) for p in pts[split:]})
    return name, gcm, lam, I, mu, J


def check_tw(lam: Weight, I: CofiniteIdeal, mu: Weight, J: CofiniteIdeal, B: QuotientAlgebra | None = None,
             H: int = 4, gcm=None, ladder: bool = True, psi1: Psi | None = None,
             psi2: Psi | None = None) -> VerificationReport:
    """W(psi1 + psi2, I cap J) against W(psi1, I) (x) W(psi2, J)."""
    t0 = time.perf_counter()
    gcm = gcm or validate_gcm([[2]])
    cb = chevalley_basis(gcm)
    table = cb.table
    A = I.algebra
    if not commalg.coprime(I, J):
        raise NotCoprime(f"{I!r} and {J!r} are not coprime")
    if not (I.is_radical and J.is_radical):
        raise InputError("check_tw needs radical ideals")
    rep = VerificationReport({
        "check": "tw", "cartan_matrix": [list(r) for r in gcm.entries], "lambda": lam.to_json(),
        "I": _ideal_json(I), "mu": mu.to_json(), "J": _ideal_json(J), "height": H,
    })
    psi1 = _single_point_psi(A, I, lam, psi1)
    psi2 = _single_point_psi(A, J, mu, psi2)
    psi = psi_add(psi1, psi2)
    IJ = commalg.intersect(I, J)
    if B is None:
        n = _N(lam + mu, table)
        B = coefficient_algebra([(IJ, n)])
    _brute_caps(table, B, H, "tw")
    W = build_W(psi, IJ, B, H, cb)
    W1 = build_W(psi1, I, B, H, cb)
    W2 = build_W(psi2, J, B, H, cb)
    T = tensor_module(W1, W2)
    left, right = W.dims(H), T.dims(H)
    disc = _compare(left, right)
    rep.add("graded_dimensions", disc is None, {"W": dim_rows(left), "W1xW2": dim_rows(right)}, disc,
            coefficient_dim=B.dim,
            totals={"W": sum(left.values()), "W1xW2": sum(right.values())},
            audit={"W": W.audit, "W1": W1.audit, "W2": W2.audit})
    cyc = Closure(T, [T.vacuum()], H, detect_vanishing=False).is_everything(H)
    rep.add("cyclicity", cyc, {}, {"detail": "v1 (x) v2 does not generate the tensor product"})
    audit = weyl_relation_audit(T, psi, IJ)
    rep.add("highest_vector_relations", audit.ok, {}, audit.failures[:5])
    if ladder:
        rep.checks.extend(claim_ladder(lam, I, mu, J, psi1, psi2, B, cb))
    rep.timing = time.perf_counter() - t0
    return rep


def claim_ladder(lam, I, mu, J, psi1, psi2, B, cb) -> list[dict]:
    """Replay the descent inside M(psi1, I) (x) M(psi2, J).

    K is generated by (f_i (x) f)^N (v1 (x) v2) and (f_i (x) g)^N (v1 (x) v2)
    with f + g = 1, f in I^N, g in J^N.  Then v1 (x) f_i^n v2 lies in K
    exactly for n >= mu_i + 1, and symmetrically on the left.
    """
    table = cb.table
    lm = lam + mu
    N = max(lm.coroot_values[i] + 1 for i in range(table.rank))
    depth = max(N, _N(lam, table), _N(mu, table),
                max(k for _, k in B.ideal.support))
    f, g = commalg.bezout_witness(I, J, depth)
    fB, gB = B.image(f), B.image(g)
    Hl = N + 1
    M1 = build_M(psi1, standard_sequence(lam, I, table), B, Hl, cb)
    M2 = build_M(psi2, standard_sequence(mu, J, table), B, Hl, cb)
    T = tensor_module(M1, M2)
    malg = T.malg
    gens = []
    for i in range(table.rank):
        for c in (fB, gB):
            x = malg.element(cb.f(i), c)
            v = T.vacuum()
            for _ in range(N):
                v = T.apply(x, v)
            gens.append(v)
    K = Closure(T, gens, Hl, detect_vanishing=False)
    out = []
    for i in range(table.rank):
        fi = malg.element(cb.f(i), B.one)
        for side, factor, gamma in (("right", 2, mu.coroot_values[i]), ("left", 1, lam.coroot_values[i])):
            found = None
            detail = []
            for n in range(1, N + 1):
                M = M2 if factor == 2 else M1
                w = M.vacuum()
                for _ in range(n):
                    w = M.apply(fi, w)
                vec = T.pure(M1.vacuum(), w) if factor == 2 else T.pure(w, M2.vacuum())
                inside = bool(vec) and K.contains(vec)
                detail.append({"n": n, "in_K": inside, "nonzero": bool(vec)})
                if inside and found is None:
                    found = n
            ok = found == gamma + 1
            out.append({
                "name": f"claim_ladder_{side}_{i + 1}",
                "status": "pass" if ok else "fail",
                "tables": {"ladder": detail},
                "discrepancy": None if ok else {"n0": found, "expected": gamma + 1},
                "n0": found,
            })
    return out


def check_max(psi_list, gcm=None, H: int | None = None, B: QuotientAlgebra | None = None) -> VerificationReport:
    """W(psi, cap m_i) against the tensor product of the one-point Weyl modules."""
    t0 = time.perf_counter()
    gcm = gcm or validate_gcm([[2]])
    cb = chevalley_basis(gcm)
    table = cb.table
    A = commalg.PolyAlgebra(1)
    data = []
    for p, lam in psi_list:
        lam = lam if isinstance(lam, Weight) else Weight(tuple(lam))
        data.append((commalg._point(p, 1), lam))
    if not 1 <= len(data) <= 3:
        raise InputError("check_max handles one to three points")
    psi = evaluation_psi(A, data)
    I = commalg.point_ideal(A, {p: 1 for p, _ in data})
    rep = VerificationReport({
        "check": "max", "cartan_matrix": [list(r) for r in gcm.entries],
        "points": [{"point": [str(x) for x in p], "lambda": lam.to_json()} for p, lam in data],
    })
    if B is None:
        B = coefficient_algebra([(I, _N(psi.weight, table))])
    if H is None:
        H = 2 * sum(psi.weight.coroot_values) * max(r.height for r in table.roots)
    _brute_caps(table, B, min(H, MAX_BRUTE_H), "max")
    W = build_W(psi, I, B, None, cb)
    singles = [
        build_W(evaluation_psi(A, [(p, lam)]), commalg.maximal_ideal(A, p), B, None, cb)
        for p, lam in data
    ]
    T = singles[0]
    for S in singles[1:]:
        T = tensor_module(T, S)
    top = max(W.H, sum(s.H for s in singles))
    left = W.dims(top)
    right = T.dims(top)
    disc = _compare(left, right)
    rep.add("graded_dimensions", disc is None, {"W": dim_rows(left), "tensor": dim_rows(right)}, disc,
            totals={"W": sum(left.values()), "tensor": sum(right.values())}, audit=W.audit)
    E = evaluation_module(psi, B, cb)
    Edims = E.dims(top)
    rep.add("evaluation_module_dimensions", True, {"evaluation": dim_rows(Edims)}, None,
            totals={"W": sum(left.values()), "evaluation": sum(Edims.values())},
            equal=_compare(left, Edims) is None)
    audit = weyl_relation_audit(E, psi, I)
    rep.add("evaluation_relations", audit.ok, {}, audit.failures[:5])
    rep.timing = time.perf_counter() - t0
    return rep


def check_remark_nilpotency(state, i: int, f) -> bool:
    """(f_i (x) f)^{lambda_i + 1} v = 0 in a W presentation."""
    malg = state.malg
    B = malg.coeff
    fb = f if isinstance(f, dict) else B.image(f)
    x = malg.element(malg.chevalley.f(i), fb)
    v = state.vacuum()
    for _ in range(state.psi.weight.coroot_values[i] + 1):
        v = state.apply(x, v)
        if not v:
            return True
    return not v


def random_l1_instances(state, count: int, rng: random.Random, max_len: int = 2):
    """Random (beta, gammas, elements) with every gamma below beta."""
    table = state.malg.chevalley.table
    B = state.malg.coeff
    roots = list(table.roots)
    out = []
    while len(out) < count:
        beta = rng.choice(roots)
        below = [r for r in roots if root_leq(r, beta)]
        n = rng.randint(0, max_len)
        gammas = [rng.choice(below).coords for _ in range(n)]
        if sum(sum(g) for g in gammas) + beta.height > state.H:
            continue
        elems = [{rng.randrange(B.dim): Fraction(rng.randint(1, 3))} for _ in range(n)]
        out.append((beta.coords, gammas, elems))
    return out


def check_l1(state, instances) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport({"check": "l1", "count": len(instances)})
    for beta, gammas, elems in instances:
        ok = verify_lemma_l1(state, beta, gammas, elems)
        rep.add("lemma_l1", ok, {}, {"beta": list(beta), "gammas": [list(g) for g in gammas]},
                beta=list(beta), gammas=[list(g) for g in gammas],
                elements=[{str(k): str(v) for k, v in e.items()} for e in elems])
    rep.timing = time.perf_counter() - t0
    return rep


def check_M_character(psi: Psi, seq: IdealSequence, B: QuotientAlgebra, H: int) -> VerificationReport:
    """build_M dimensions against the product formula."""
    t0 = time.perf_counter()
    cb = chevalley_basis(seq.table.gcm)
    rep = VerificationReport({"check": "character", "lambda": psi.weight.to_json(), "height": H,
                              "coefficient_dim": B.dim})
    M = build_M(psi, seq, B, H, cb)
    left = M.dims(H)
    ch = character_of_M(psi.weight, seq, H)
    right = {k: v for k, v in ch.coeffs.items() if v}
    disc = _compare(left, right)
    rep.add("module_vs_formula", disc is None, {"module": dim_rows(left), "formula": dim_rows(right)}, disc)
    rep.timing = time.perf_counter() - t0
    return rep
