"""Seeded randomized property suites shared by the CLI and the test-suite.

Every suite returns ``{"name", "cases", "failures", "examples"}`` with
no timing, so two runs with the same seed print identical summaries.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import commalg
from .charcalc import character_of_M
from .errors import WeightOverflow
from .hwdata import Weight, evaluation_psi, standard_sequence
from .modeng import action_axiom_holds, build_M, build_W, chevalley_basis, compositions
from .rootsys import positive_roots, validate_gcm
from .theorems import check_T1, random_T1_instance

GCMS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
}


def random_coprime_pair(rng: random.Random, max_exp: int = 3, max_points: int = 2):
    A = commalg.PolyAlgebra(1)
    k = rng.randint(2, 2 * max_points)
    pts = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3 * k)]
    pts = list(dict.fromkeys(pts))[:k]
    split = rng.randint(1, len(pts) - 1)
    I = commalg.point_ideal(A, {p: rng.randint(1, max_exp) for p in pts[:split]})
    J = commalg.point_ideal(A, {p: rng.randint(1, max_exp) for p in pts[split:]})
    return I, J


def suite_bezout(rng, count):
    fails, examples = 0, []
    for _ in range(count):
        I, J = random_coprime_pair(rng)
        N = rng.randint(1, 4)
        f, g = commalg.bezout_witness(I, J, N)
        ok = (
            f + g == commalg.Poly.const(1, 1)
            and commalg.member(f, commalg.power(I, N))
            and commalg.member(g, commalg.power(J, N))
            and commalg.codim(commalg.intersect(I, J)) == commalg.codim(I) + commalg.codim(J)
        )
        if not ok:
            fails += 1
            examples.append({"I": I.to_json(), "J": J.to_json(), "N": N})
    return {"name": "bezout", "cases": count, "failures": fails, "examples": examples[:3]}


def suite_T1_formula(rng, count, H=5):
    fails, examples = 0, []
    for _ in range(count):
        name, gcm, lam, I, mu, J = random_T1_instance(rng)
        rep = check_T1(lam, I, mu, J, positive_roots(gcm, H), None, H, brute_force=False)
        if not rep.ok:
            fails += 1
            examples.append(rep.instance)
    return {"name": "T1_formula", "cases": count, "failures": fails, "examples": examples[:3]}


def random_state(rng: random.Random, H: int = 3, kinds=("A1", "A2")):
    """A small M or W presentation with random data."""
    name = rng.choice(list(kinds))
    gcm = validate_gcm(GCMS[name])
    cb = chevalley_basis(gcm)
    A = commalg.PolyAlgebra(1)
    lam = Weight(tuple(rng.randint(0, 2) for _ in range(gcm.rank)))
    a = rng.randint(1, 2)
    I = commalg.point_ideal(A, {0: a})
    N = max(1, max(sum(c * l for c, l in zip(r.coords, lam.coroot_values)) for r in cb.table.roots))
    B = commalg.quotient_algebra(commalg.power(I, N), verify=False)
    if B.dim > 4:
        B = commalg.quotient_algebra(commalg.point_ideal(A, {0: 4}), verify=False)
        I = commalg.maximal_ideal(A, 0)
    psi = evaluation_psi(A, [(0, lam)], commalg.maximal_ideal(A, 0))
    if rng.random() < 0.5:
        state = build_M(psi, standard_sequence(lam, I, cb.table), B, H, cb)
    else:
        state = build_W(psi, commalg.maximal_ideal(A, 0), B, H, cb, audit=False)
    return name, state


def random_vector(rng, state, max_height):
    weights = [eta for h in range(max_height + 1) for eta in compositions(h, state.rank) if state.dim(eta)]
    eta = rng.choice(weights)
    keys = state.keys(eta)
    picks = rng.sample(keys, min(len(keys), rng.randint(1, 3)))
    return {k: Fraction(rng.randint(-3, 3) or 1) for k in picks}


def suite_action_axiom(rng, count, states=4):
    fails, examples, done, nontrivial = 0, [], 0, 0
    per = -(-count // states)
    for _ in range(states):
        name, state = random_state(rng)
        gens = list(range(state.malg.ngens))
        n = 0
        while n < per and done < count:
            g1, g2 = rng.choice(gens), rng.choice(gens)
            w = random_vector(rng, state, state.H)
            try:
                ok = action_axiom_holds(state, g1, g2, w)
                moved = bool(state.apply(g1, state.apply(g2, w)) or state.apply(g2, state.apply(g1, w)))
            except WeightOverflow:
                continue
            n += 1
            done += 1
            nontrivial += moved
            if not ok:
                fails += 1
                examples.append({"type": name, "g1": g1, "g2": g2})
    return {"name": "action_axiom", "cases": done, "failures": fails, "examples": examples[:3],
            "nontrivial": nontrivial}


def _small_instance(rng):
    """Type, Chevalley basis, weight and B = Q[t]/(t^N) with N = N_{lambda, theta} <= 3."""
    name = rng.choice(["A1", "A2", "B2"])
    gcm = validate_gcm(GCMS[name])
    cb = chevalley_basis(gcm)
    lam = Weight(tuple(rng.randint(0, 1 if name != "A1" else 3) for _ in range(gcm.rank)))
    N = max(1, max(sum(c * l for c, l in zip(r.coords, lam.coroot_values)) for r in cb.table.roots))
    A = commalg.PolyAlgebra(1)
    B = commalg.quotient_algebra(commalg.point_ideal(A, {0: N}), verify=False)
    return name, cb, lam, B


def suite_pbw_order(rng, count, H=3):
    fails, examples = 0, []
    A = commalg.PolyAlgebra(1)
    I = commalg.maximal_ideal(A, 0)
    for _ in range(count):
        name, cb, lam, B = _small_instance(rng)
        psi = evaluation_psi(A, [(0, lam)])
        use_w = rng.random() < 0.5
        dims = []
        for order in ("height", "reverse"):
            if use_w:
                st = build_W(psi, I, B, H, cb, order=order, audit=False)
            else:
                st = build_M(psi, standard_sequence(lam, I, cb.table), B, H, cb, order=order)
            dims.append(st.dims(H))
        if dims[0] != dims[1]:
            fails += 1
            examples.append({"type": name, "lambda": lam.to_json(), "module": "W" if use_w else "M"})
    return {"name": "pbw_order", "cases": count, "failures": fails, "examples": examples[:3]}


def suite_character_oracle(rng, count, H=4):
    fails, examples = 0, []
    A = commalg.PolyAlgebra(1)
    I = commalg.maximal_ideal(A, 0)
    for _ in range(count):
        name, cb, lam, B = _small_instance(rng)
        seq = standard_sequence(lam, I, cb.table)
        M = build_M(evaluation_psi(A, [(0, lam)]), seq, B, H, cb)
        ch = character_of_M(lam, seq, H)
        if M.dims(H) != {k: v for k, v in ch.coeffs.items() if v}:
            fails += 1
            examples.append({"type": name, "lambda": lam.to_json()})
    return {"name": "character_oracle", "cases": count, "failures": fails, "examples": examples[:3]}


SUITES = {
    "bezout": suite_bezout,
    "T1_formula": suite_T1_formula,
    "action_axiom": suite_action_axiom,
    "pbw_order": suite_pbw_order,
    "character_oracle": suite_character_oracle,
}


def run(seed: int = 0, count: int = 20, names=None) -> dict:
    out = []
    for name in names or SUITES:
        rng = random.Random(f"{seed}:{name}")
        out.append(SUITES[name](rng, count))
    return {"seed": seed, "count": count, "suites": out}
