"""Command-line front end: construct the models and run their exact checks.

Subcommands: verify, gsd, spin, separator, qca3f, derive, labeling.
Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from stabqca import qca3f as qca3f_mod
from stabqca.automorphism import (FROZEN_LABELING, build_circuit,
                                  circuit_maps_constraints, derive_h1_operator,
                                  h1_boundary_relations, separator_axioms)
from stabqca.lattice import Lattice, slab, torus
from stabqca.laurent import random_sympvec
from stabqca.models import (ModelId, OperatorKind, catalog_summary,
                            make_operator, verify_relation_catalog)
from stabqca.pauli import ModelParams, pair_predicts_commutation
from stabqca.spin import boundary_spin, spin_label
from stabqca.stabilizer import StabGroup, gsd_report, separator_independence

SCHEMA_VERSION = 1


def _lattice_args(p: argparse.ArgumentParser, default=None):
    g = p.add_mutually_exclusive_group(required=default is None)
    g.add_argument("--torus", nargs=3, type=int, metavar=("LX", "LY", "LZ"))
    g.add_argument("--slab", nargs=3, type=int, metavar=("LX", "LY", "M"))


def _get_lattice(args, default=None) -> Lattice:
    if getattr(args, "torus", None):
        return torus(*args.torus)
    if getattr(args, "slab", None):
        return slab(*args.slab)
    if default is not None:
        return default
    raise SystemExit(2)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _check_rows(results) -> list[dict]:
    rows = []
    for r in results:
        row = {"check_id": r.relation, "location": r.location,
               "status": "pass" if r.ok else "fail"}
        if r.residual and not r.ok:
            row["residual"] = r.residual
        rows.append(row)
    return rows


def cmd_verify(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args)
    relations = set(args.relations.split(",")) if args.relations else None
    results = verify_relation_catalog(lattice, params, relations)
    failures = [r for r in results if not r.ok]
    lines = []
    for rel, (good, total) in catalog_summary(results).items():
        lines.append(f"{rel}: {good}/{total} pass")
    for r in failures[:20]:
        lines.append(str(r))
    status = "pass"
    if args.random_rounds:
        rng = np.random.default_rng(args.seed)
        bad = 0
        for _ in range(args.random_rounds):
            u = random_sympvec(params.D, rng)
            v = random_sympvec(params.D, rng)
            off = tuple(int(rng.integers(0, d)) for d in lattice.dims)
            if not pair_predicts_commutation(u, v, lattice, params, off):
                bad += 1
        lines.append(f"pairing consistency: {args.random_rounds - bad}/"
                     f"{args.random_rounds} pass (seed {args.seed})")
        if bad:
            failures.append(bad)
    if failures:
        status = "fail"
    payload = {"schema_version": SCHEMA_VERSION, "command": "verify",
               "model": args.model, "n": args.n,
               "lattice": lattice.describe(), "status": status,
               "checks": _check_rows(results)}
    _emit(args, payload, lines + [f"overall: {status}"])
    return 0 if status == "pass" else 1


def cmd_gsd(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args)
    model = ModelId(args.model)
    info = gsd_report(model, lattice, params)
    lines = [
        f"model {info['model']} on {info['lattice']}: "
        f"{info['qudits']} qudits of dimension {params.D}",
        f"Hilbert dimension: {info['hilbert_dim']}",
        f"stabilizer generators: {info['generators']}",
        f"group order: {info['group_order']}",
        f"invariant factors below {params.D}: "
        f"{info['nontrivial_invariant_factors'] or 'none'}",
        f"ground state degeneracy: {info['gsd']}",
    ]
    payload = {"schema_version": SCHEMA_VERSION, "command": "gsd", **info}
    _emit(args, payload, lines)
    return 0


def cmd_spin(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args, default=slab(4, 4, 1))
    flavor = "pauli" if args.model == "cond" else "hat"
    exponent = boundary_spin(lattice, params, args.boundary, flavor)
    label = spin_label(exponent, params)
    payload = {"schema_version": SCHEMA_VERSION, "command": "spin",
               "model": args.model, "n": args.n, "boundary": args.boundary,
               "lattice": lattice.describe(),
               "exponent": exponent, "phase_units": f"pi/{2 * params.N}",
               "theta": label}
    _emit(args, payload,
          [f"topological spin on {args.boundary} (viewed from above): {label}"])
    return 0


def cmd_separator(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args, default=torus(3, 3, 3))
    checks = separator_axioms(lattice, params)
    failures = [c for c, ok in checks if not ok]
    seps = [make_operator(OperatorKind.Btilde_p, p, lattice, params)
            for p in lattice.plaquettes()]
    cons = [make_operator(OperatorKind.C_e, e, lattice, params)
            for e in lattice.edges()]
    dim = params.N ** lattice.n_edges
    prop3 = separator_independence(seps, dim, cons, params, lattice)
    lines = [f"axiom checks: {len(checks) - len(failures)}/{len(checks)} pass",
             f"joint eigenspaces one-dimensional (group order {params.N}^E): "
             f"{'pass' if prop3 else 'fail'}"]
    status = "pass" if prop3 and not failures else "fail"
    payload = {"schema_version": SCHEMA_VERSION, "command": "separator",
               "n": args.n, "lattice": lattice.describe(), "status": status,
               "axiom_checks": len(checks), "axiom_failures": len(failures),
               "property3": prop3}
    _emit(args, payload, lines + [f"overall: {status}"])
    return 0 if status == "pass" else 1


def cmd_qca3f(args) -> int:
    q = qca3f_mod.load_matrices()
    if args.apply:
        with open(args.apply) as fh:
            data = json.load(fh)
        from stabqca.laurent import SympVec, parse_poly
        v = SympVec(2, [parse_poly(s, 2) for s in data["entries"]])
        img = qca3f_mod.apply(q, v)
        payload = {"schema_version": SCHEMA_VERSION, "command": "qca3f",
                   "entries": [str(e) for e in img.entries]}
        _emit(args, payload, [str(e) for e in img.entries])
        return 0
    square = qca3f_mod.verify_square_identity(q)
    sympl = qca3f_mod.verify_symplectic(q)
    radius = qca3f_mod.locality_radius(q)
    status = "pass" if square and sympl else "fail"
    payload = {"schema_version": SCHEMA_VERSION, "command": "qca3f",
               "square_identity": square, "symplectic": sympl,
               "locality_radius": radius, "status": status}
    _emit(args, payload, [
        f"square identity (alpha^2 = 1): {'pass' if square else 'fail'}",
        f"symplectic certificate: {'pass' if sympl else 'fail'}",
        f"locality radius: {radius}",
    ])
    return 0 if status == "pass" else 1


def cmd_derive(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args)
    kind = {"bhat": OperatorKind.Btilde_p, "fhat": OperatorKind.F_p,
            "xhat": OperatorKind.ScriptX_e, "ahat": OperatorKind.Ahat_v}[args.op]
    i, j, k, d = args.loc
    loc = (i, j, k) if args.op == "ahat" else ((i, j, k), d)
    if args.op == "xhat":
        from stabqca.automorphism import hat_hopper
        op = hat_hopper(lattice.edge(*loc), lattice, params)
    else:
        op = derive_h1_operator(kind, loc, lattice, params)
    print(json.dumps(op.to_json(), indent=2, sort_keys=True))
    return 0


def cmd_labeling(args) -> int:
    params = ModelParams(args.n)
    lattice = _get_lattice(args, default=torus(3, 3, 3))
    names = {(0, 1): "+x", (1, 1): "+y", (2, 1): "+z",
             (0, -1): "-x", (1, -1): "-y", (2, -1): "-z"}
    lines = [f"edge label {i + 1}: {names[slot]}"
             for i, slot in enumerate(FROZEN_LABELING)]
    circuit = build_circuit(lattice, params)
    ok, fails = circuit_maps_constraints(lattice, params, circuit)
    lines.append(f"recertified on {lattice.describe()}: "
                 f"{'pass' if ok else f'FAIL ({len(fails)} edges)'}")
    payload = {"schema_version": SCHEMA_VERSION, "command": "labeling",
               "labeling": {i + 1: names[s] for i, s in enumerate(FROZEN_LABELING)},
               "certified": ok, "lattice": lattice.describe()}
    _emit(args, payload, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stabqca",
        description="exact verification of qudit stabilizer models and QCA certificates")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the exact relation catalog")
    p.add_argument("--model", choices=["hww", "htww", "cond"], default="cond")
    p.add_argument("--n", type=int, default=1)
    _lattice_args(p)
    p.add_argument("--relations", help="comma-separated subset, e.g. R1,R4")
    p.add_argument("--random-rounds", type=int, default=0,
                   help="seeded pairing-consistency spot checks (torus only)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gsd", help="ground state degeneracy via Smith normal form")
    p.add_argument("--model", choices=["hww", "htww", "cond"], required=True)
    p.add_argument("--n", type=int, default=1)
    _lattice_args(p)
    p.set_defaults(func=cmd_gsd)

    p = sub.add_parser("spin", help="boundary anyon topological spin")
    p.add_argument("--model", choices=["cond", "h1"], required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--boundary", choices=["U", "L"], default="U")
    _lattice_args(p, default="slab441")
    p.set_defaults(func=cmd_spin)

    p = sub.add_parser("separator", help="locally flippable separator axioms")
    p.add_argument("--n", type=int, default=1)
    _lattice_args(p, default="torus333")
    p.set_defaults(func=cmd_separator)

    p = sub.add_parser("qca3f", help="three-fermion QCA certificates")
    p.add_argument("--check", action="store_true", default=True)
    p.add_argument("--apply", metavar="FILE",
                   help="JSON file with 12 polynomial strings under 'entries'")
    p.set_defaults(func=cmd_qca3f)

    p = sub.add_parser("derive", help="export a derived register operator")
    p.add_argument("--op", choices=["bhat", "fhat", "xhat", "ahat"], required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--loc", nargs=4, type=int, metavar=("I", "J", "K", "D"),
                   required=True)
    _lattice_args(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("labeling", help="print and recertify the frozen edge labeling")
    p.add_argument("--n", type=int, default=1)
    _lattice_args(p, default="torus333")
    p.set_defaults(func=cmd_labeling)

    for name, sp in sub.choices.items():
        sp.add_argument("--format", choices=["text", "json"], default="text")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
