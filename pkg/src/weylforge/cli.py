"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 invalid input,
3 a resource cap was hit.  Data goes to stdout (or ``--out``), diagnostics
to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import commalg, theorems
from .charcalc import character_of_M, table_csv
from .errors import InputError, ResourceCapError, WeylForgeError
from .hwdata import Psi, Weight, evaluation_psi, standard_sequence, zero_psi
from .modeng import build_M, build_W, chevalley_basis
from .poly import parse_poly
from .rootsys import gcm_from_json, positive_roots

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class UsageError(InputError):
    pass


def _load(path):
    if path is None:
        raise UsageError("--instance is required")
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _require(payload, *keys):
    for k in keys:
        if k not in payload:
            raise UsageError(f"instance is missing key {k!r}")


def _weight(raw) -> Weight:
    if not isinstance(raw, list) or not all(isinstance(x, int) for x in raw):
        raise UsageError(f"weight must be a list of integers, got {raw!r}")
    return Weight(tuple(raw))


def _ideal(raw, nvars=1):
    try:
        return commalg.ideal_from_json(raw, nvars)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad ideal: {exc}") from exc


def _psi(payload, algebra, rank) -> Psi:
    ideal = _ideal(payload["ideal"], algebra.num_vars) if "ideal" in payload else None
    if "psi" in payload:
        data = [(e["point"], _weight(e["weight"])) for e in payload["psi"]]
        psi = evaluation_psi(algebra, data, ideal)
        if "lambda" in payload and list(psi.weight.coroot_values) != payload["lambda"]:
            raise UsageError("lambda disagrees with the sum of the psi weights")
        return psi
    if "lambda" in payload:
        lam = _weight(payload["lambda"])
        if ideal is None or not ideal.support:
            raise UsageError("lambda without psi needs a point-supported ideal")
        return evaluation_psi(algebra, [(ideal.points[0], lam)], ideal)
    return zero_psi(algebra, rank)


def _rows_from_dims(dims):
    return [(eta, sum(eta), v) for eta, v in sorted(dims.items(), key=lambda kv: (sum(kv[0]), kv[0]))]


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def cmd_roots(args):
    payload = _load(args.instance)
    gcm = gcm_from_json(payload)
    H = args.height if args.height is not None else int(payload.get("height", 6))
    table = positive_roots(gcm, H)
    if args.format == "csv":
        return table_csv([(r.coords, r.height, r.multiplicity) for r in table.roots]), EXIT_OK
    out = {"cartan_matrix": gcm.to_json()["cartan_matrix"], "type": gcm.declared_type,
           "height_bound": H, "roots": table.to_json()}
    if table.delta is not None:
        out["delta"] = list(table.delta)
    return _dump(out), EXIT_OK


def cmd_ideal(args):
    payload = _load(args.instance)
    _require(payload, "ideal")
    n = int(payload.get("nvars", 1))
    I = _ideal(payload["ideal"], n)
    out = {"ideal": I.to_json(), "codim": commalg.codim(I)}
    if I.point_supported:
        out["radical"] = I.is_radical
    Q = commalg.quotient_algebra(I)
    out["quotient_basis"] = [repr(b) for b in Q.basis]
    if "with" in payload:
        J = _ideal(payload["with"], n)
        out["with"] = J.to_json()
        out["coprime"] = commalg.coprime(I, J)
        if out["coprime"] and I.point_supported and J.point_supported:
            N = int(payload.get("N", 1))
            f, g = commalg.bezout_witness(I, J, N)
            out["bezout"] = {"N": N, "f": f.to_json(), "g": g.to_json()}
            out["codim_intersection"] = commalg.codim(commalg.intersect(I, J))
    if args.format == "csv":
        raise UsageError("the ideal command only writes JSON")
    return _dump(out), EXIT_OK


def cmd_char(args):
    payload = _load(args.instance)
    _require(payload, "cartan_matrix", "lambda", "ideal")
    gcm = gcm_from_json(payload)
    H = args.height if args.height is not None else int(payload.get("height", 5))
    table = positive_roots(gcm, H)
    lam = _weight(payload["lambda"])
    I = _ideal(payload["ideal"], int(payload.get("nvars", 1)))
    ch = character_of_M(lam, standard_sequence(lam, I, table), H)
    if args.format == "csv":
        return ch.to_csv(), EXIT_OK
    return _dump(ch.to_json()), EXIT_OK


def cmd_module(args):
    payload = _load(args.instance)
    _require(payload, "cartan_matrix", "B")
    gcm = gcm_from_json(payload)
    cb = chevalley_basis(gcm)
    n = int(payload.get("nvars", 1))
    algebra = commalg.PolyAlgebra(n)
    H = args.height if args.height is not None else int(payload.get("height", payload.get("H", 4)))
    B = commalg.quotient_algebra(_ideal(payload["B"], n))
    if B.dim > theorems.MAX_BRUTE_B:
        raise ResourceCapError(f"dim B = {B.dim} exceeds {theorems.MAX_BRUTE_B}")
    psi = _psi(payload, algebra, gcm.rank)
    tasks = payload.get("tasks", ["M"])
    results = {}
    for task in tasks:
        if task == "Verma":
            state = build_M(psi, None, B, H, cb)
        elif task == "M":
            _require(payload, "ideal")
            I = _ideal(payload["ideal"], n)
            state = build_M(psi, standard_sequence(psi.weight, I, cb.table), B, H, cb)
        elif task == "W":
            _require(payload, "ideal")
            state = build_W(psi, _ideal(payload["ideal"], n), B, H, cb)
        else:
            raise UsageError(f"unknown task {task!r}; expected Verma, M or W")
        dims = state.dims(H)
        results[task] = {
            "dims": [{"eta": list(e), "height": h, "value": v} for e, h, v in _rows_from_dims(dims)],
            "relations": len(state.relations),
            "audit": state.audit,
            "letter_order": "height, root lex, B index",
        }
    if args.format == "csv":
        if len(tasks) != 1:
            raise UsageError("CSV output needs exactly one task")
        rows = [(tuple(r["eta"]), r["height"], r["value"]) for r in results[tasks[0]]["dims"]]
        return table_csv(rows), EXIT_OK
    return _dump({"height_bound": H, "coefficient_dim": B.dim, "tasks": results}), EXIT_OK


def _verify_T1(payload, H):
    _require(payload, "cartan_matrix", "lambda", "I", "mu", "J")
    gcm = gcm_from_json(payload)
    n = int(payload.get("nvars", 1))
    table = positive_roots(gcm, H)
    lam, mu = _weight(payload["lambda"]), _weight(payload["mu"])
    I, J = _ideal(payload["I"], n), _ideal(payload["J"], n)
    brute = payload.get("brute_force")
    return theorems.check_T1(lam, I, mu, J, table, None, H, brute)


def _verify_tw(payload, H):
    _require(payload, "lambda", "I", "mu", "J")
    gcm = gcm_from_json(payload) if "cartan_matrix" in payload else None
    n = int(payload.get("nvars", 1))
    return theorems.check_tw(_weight(payload["lambda"]), _ideal(payload["I"], n),
                             _weight(payload["mu"]), _ideal(payload["J"], n), None, H, gcm)


def _verify_max(payload, H):
    _require(payload, "psi")
    gcm = gcm_from_json(payload) if "cartan_matrix" in payload else None
    data = [(e["point"], _weight(e["weight"])) for e in payload["psi"]]
    return theorems.check_max(data, gcm, H)


def _state_for(payload, H, kind):
    _require(payload, "cartan_matrix", "ideal")
    gcm = gcm_from_json(payload)
    cb = chevalley_basis(gcm)
    n = int(payload.get("nvars", 1))
    algebra = commalg.PolyAlgebra(n)
    psi = _psi(payload, algebra, gcm.rank)
    I = _ideal(payload["ideal"], n)
    if "B" in payload:
        B = commalg.quotient_algebra(_ideal(payload["B"], n))
    else:
        N = max(sum(c * l for c, l in zip(r.coords, psi.weight.coroot_values)) for r in cb.table.roots)
        B = commalg.quotient_algebra(commalg.power(I, max(N, 1)))
    if kind == "W":
        return build_W(psi, I, B, H, cb)
    return build_M(psi, standard_sequence(psi.weight, I, cb.table), B, H, cb)


def _verify_l1(payload, H, seed):
    state = _state_for(payload, H, "M")
    if "instances" in payload:
        inst = [(tuple(e["beta"]), [tuple(g) for g in e.get("gammas", [])],
                 [{int(k): Fraction(v) for k, v in a.items()} for a in e.get("elements", [])])
                for e in payload["instances"]]
    else:
        inst = theorems.random_l1_instances(state, int(payload.get("count", 20)), random.Random(seed))
    return theorems.check_l1(state, inst)


def _verify_remark(payload, H):
    state = _state_for(payload, H, "W")
    B = state.malg.coeff
    rep = theorems.VerificationReport({"check": "remark", "lambda": state.psi.weight.to_json()})
    for e in payload.get("elements", [{"i": i + 1, "f": "t"} for i in range(state.rank)]):
        i = int(e["i"]) - 1
        f = parse_poly(e["f"], B.ideal.nvars)
        ok = theorems.check_remark_nilpotency(state, i, f)
        rep.add("remark_nilpotency", ok, {}, {"i": i + 1, "f": e["f"]}, i=i + 1, f=e["f"])
    return rep


def cmd_verify(args):
    if args.format == "csv":
        raise UsageError("verification reports are JSON only")
    payload = _load(args.instance)
    H = args.height if args.height is not None else int(payload.get("height", payload.get("H", 4)))
    check = args.check or payload.get("check")
    if check == "T1":
        rep = _verify_T1(payload, H)
    elif check == "tw":
        rep = _verify_tw(payload, H)
    elif check == "max":
        rep = _verify_max(payload, payload.get("height"))
    elif check == "l1":
        rep = _verify_l1(payload, H, args.seed)
    elif check == "remark":
        rep = _verify_remark(payload, H)
    else:
        raise UsageError("--check must be one of T1, tw, max, l1, remark")
    return rep.dumps(), (EXIT_OK if rep.ok else EXIT_FAIL)


def cmd_proptest(args):
    from . import proptest
    summary = proptest.run(args.seed, int(args.count))
    code = EXIT_OK if all(s["failures"] == 0 for s in summary["suites"]) else EXIT_FAIL
    return _dump(summary), code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
        ("roots", cmd_roots, "positive roots up to a height"),
        ("ideal", cmd_ideal, "codimension, quotient basis, Bezout witnesses"),
        ("char", cmd_char, "truncated character of M(psi, {I^N})"),
        ("module", cmd_module, "weight-space dimensions of constructed modules"),
        ("verify", cmd_verify, "run a theorem check on an instance"),
        ("proptest", cmd_proptest, "randomized property checks"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--instance", metavar="PATH")
        sp.add_argument("--height", type=int)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--seed", type=int, default=0)
        if name == "verify":
            sp.add_argument("--check", choices=("T1", "tw", "max", "l1", "remark"))
        if name == "proptest":
            sp.add_argument("--count", type=int, default=20)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        text, code = args.func(args)
    except ResourceCapError as exc:
        print(f"weylforge: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"weylforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WeylForgeError as exc:
        print(f"weylforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError, TypeError) as exc:
        # malformed payloads surface as these from the JSON readers
        print(f"weylforge: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
