"""Operator families of the Z_2N qudit models and their relation catalog.

The hopping, plaquette and flipper operators are instantiated from their
translation-invariant symplectic vectors (module laurent); the vertex
operator is the divergence-type Z product recovered as the square root of
the oriented cube product of modified plaquette operators.  The catalog
re-derives every exact operator identity the models satisfy, per lattice
element, and reports failures with the residual operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from stabqca.laurent import LaurentPoly, SympVec
from stabqca.lattice import Cell, EdgeId, Lattice, PlaqId, torus
from stabqca.pauli import ModelParams, PauliOp, instantiate, make_m, truncate

__all__ = [
    "OperatorKind", "ModelId", "CheckResult", "base_vectors", "make_m",
    "make_operator", "build_hamiltonian", "verify_relation_catalog",
    "hopping_cycle", "mutually_commuting", "catalog_summary", "hop_phase",
]


class OperatorKind(Enum):
    A_v = "A_v"
    B_p = "B_p"
    Btilde_p = "Btilde_p"
    C_e = "C_e"
    ScriptX_e = "ScriptX_e"
    F_p = "F_p"
    Ahat_v = "Ahat_v"
    BtildePrime_p = "BtildePrime_p"


class ModelId(Enum):
    HWW = "hww"
    HtildeWW = "htww"
    Hcond = "cond"
    H1family = "h1"


def base_vectors(params: ModelParams) -> dict[str, SympVec]:
    """The direction-x operator vectors over Z_2N; other directions follow
    by SympVec.cycle.  Rows 0-2 are X exponents on (x,y,z) edges, 3-5 Z."""
    D, m = params.D, params.m
    P = lambda terms: LaurentPoly(D, terms)
    zero = LaurentPoly.zero(D)

    hop = SympVec(D, [
        P({(0, 0, 0): 1}),
        zero,
        zero,
        P({(0, 0, 0): m, (-1, 0, 0): -m}),
        P({(1, 0, 0): -m, (0, -1, 0): -2 * m}),
        P({(1, 0, 0): m, (1, 0, -1): m, (0, 0, 0): m}),
    ])
    plaq = SympVec(D, [
        zero,
        P({(0, 0, 0): 1, (0, 0, 1): -1}),
        P({(0, 1, 0): 1, (0, 0, 0): -1}),
        P({(0, 1, 1): m - 1, (0, 1, 0): m, (0, 0, 0): m,
           (-1, 1, 1): -m, (-1, 1, 0): -m, (-1, 0, 0): -m - 1}),
        P({(0, 1, 1): m, (0, 1, 0): m, (0, -1, 0): -m, (0, 0, 1): -m}),
        P({(0, 1, 1): m, (0, 0, 0): m, (0, 1, -1): -m, (0, 0, -1): -m}),
    ])
    flip = SympVec(D, [
        P({(0, 1, 1): 1}),
        zero,
        zero,
        P({(0, 1, 1): m, (1, 1, 1): -m}),
        P({(1, 0, 1): m, (0, 1, 1): m, (0, 0, 1): m}),
        P({(1, 1, 1): -2 * m, (0, 1, 0): -m}),
    ])
    vert = SympVec(D, [
        zero, zero, zero,
        P({(-1, 0, 0): 1, (0, 0, 0): -1}),
        P({(0, -1, 0): 1, (0, 0, 0): -1}),
        P({(0, 0, -1): 1, (0, 0, 0): -1}),
    ])
    return {"hop": hop, "plaq": plaq, "flip": flip, "vert": vert}


def hop_phase(params: ModelParams) -> int:
    """Overall phase exponent of the hopping operator: exp(-i pi m(N-1)/2N)."""
    return (-params.m * (params.N - 1)) % params.phase_mod


def _virtual_torus(lattice: Lattice) -> Lattice:
    """A torus tall enough that slab operator supports never wrap in z."""
    lx, ly, m = lattice.dims
    return torus(lx, ly, m + 3)


def _build(lattice: Lattice, builder):
    """Build a bulk operator and truncate it to the slab when needed."""
    if lattice.kind == "torus":
        return builder(lattice)
    return truncate(builder(_virtual_torus(lattice)), lattice)


def make_operator(kind: OperatorKind, loc, lattice: Lattice,
                  params: ModelParams) -> PauliOp:
    """Construct one operator at a lattice location.

    Locations: edges for ScriptX_e/C_e, plaquettes for the plaquette
    family, vertices for A_v.  On the slab every operator is the
    truncation of its bulk form.
    """
    vecs = base_vectors(params)

    if kind is OperatorKind.ScriptX_e:
        cell, d = loc
        return _build(lattice, lambda lat: instantiate(
            vecs["hop"].cycle(d), cell, lat, params, hop_phase(params)))
    if kind is OperatorKind.C_e:
        return _build(lattice, lambda lat: instantiate(
            vecs["hop"].cycle(loc[1]), loc[0], lat, params,
            hop_phase(params)) ** params.N)
    if kind is OperatorKind.Btilde_p:
        cell, d = loc
        return _build(lattice, lambda lat: instantiate(
            vecs["plaq"].cycle(d), cell, lat, params))
    if kind is OperatorKind.F_p:
        cell, d = loc
        return _build(lattice, lambda lat: instantiate(
            vecs["flip"].cycle(d), cell, lat, params))
    if kind is OperatorKind.A_v:
        return _build(lattice, lambda lat: instantiate(
            vecs["vert"], loc, lat, params))
    if kind is OperatorKind.B_p:
        def bulk_b(lat: Lattice) -> PauliOp:
            cell, d = loc
            bt = instantiate(vecs["plaq"].cycle(d), cell, lat, params)
            prod = PauliOp.identity(params)
            for label in (1, 3, 4):
                v = lat.plaquette_vertex((cell, d), label)
                prod = prod * instantiate(vecs["vert"], v, lat, params)
            return bt * prod ** params.m
        return _build(lattice, bulk_b)
    if kind is OperatorKind.BtildePrime_p:
        bt = make_operator(OperatorKind.Btilde_p, loc, lattice, params)
        v1 = lattice.plaquette_vertex(loc, 1)
        a1 = make_operator(OperatorKind.A_v, v1, lattice, params)
        return bt * a1 * a1
    if kind is OperatorKind.Ahat_v:
        raise ValueError("Ahat_v lives on the split register; "
                         "use automorphism.derive_h1_operator")
    raise ValueError(f"unknown operator kind {kind}")


def hopping_cycle(p: PlaqId, lattice: Lattice, params: ModelParams) -> PauliOp:
    """The plaquette hopping product around the corner cycle of p.

    Hops are applied in the temporal order 2->3, 3->4, 4->1, 1->2; a hop
    along a positively traversed edge contributes the edge's hopping
    operator, a negatively traversed edge its dagger.  This is the unique
    cyclic rotation for which B~_p = W_p Z_O^-2 holds with no scalar; the
    path products starting at the other three corners pick up e^(2 pi i/N).
    """
    b, d = p
    du, dw = (d + 1) % 3, (d + 2) % 3
    u = tuple(1 if i == du else 0 for i in range(3))
    w = tuple(1 if i == dw else 0 for i in range(3))
    # hops around the counterclockwise corner cycle, path order from corner 2
    hops = [
        (lattice.edge(b, dw), -1),                                        # 2->3
        (lattice.edge(b, du), 1),                                         # 3->4
        (lattice.edge((b[0] + u[0], b[1] + u[1], b[2] + u[2]), dw), 1),   # 4->1
        (lattice.edge((b[0] + w[0], b[1] + w[1], b[2] + w[2]), du), -1),  # 1->2
    ]
    prod = PauliOp.identity(params)
    for e, sign in hops:
        if e is None:
            continue
        x = make_operator(OperatorKind.ScriptX_e, e, lattice, params)
        prod = (x if sign > 0 else x.dagger()) * prod
    return prod


def build_hamiltonian(model: ModelId, lattice: Lattice,
                      params: ModelParams) -> list[tuple[tuple, PauliOp]]:
    """Indexed term list (hermitian conjugates are tracked implicitly)."""
    terms: list[tuple[tuple, PauliOp]] = []
    if model in (ModelId.HWW, ModelId.HtildeWW):
        for v in lattice.vertices():
            terms.append((("A", v), make_operator(OperatorKind.A_v, v, lattice, params)))
        kind = OperatorKind.B_p if model is ModelId.HWW else OperatorKind.Btilde_p
        tag = "B" if model is ModelId.HWW else "Bt"
        for p in lattice.plaquettes():
            terms.append(((tag, p), make_operator(kind, p, lattice, params)))
        return terms
    if model is ModelId.Hcond:
        if lattice.kind == "slab":
            for v in lattice.boundary_vertices("L"):
                a = make_operator(OperatorKind.A_v, v, lattice, params)
                terms.append((("A2", v), a * a))
        for p in lattice.plaquettes():
            terms.append((("Bt", p), make_operator(OperatorKind.Btilde_p, p, lattice, params)))
        for e in lattice.edges():
            terms.append((("C", e), make_operator(OperatorKind.C_e, e, lattice, params)))
        return terms
    raise ValueError(f"no Pauli term list for model {model}")


def mutually_commuting(terms: list[tuple[tuple, PauliOp]]):
    """First non-commuting pair of terms, or None if all commute."""
    ops = [(tid, op) for tid, op in terms]
    for i, (tid1, op1) in enumerate(ops):
        sup1 = op1.support()
        for tid2, op2 in ops[i + 1:]:
            if sup1.isdisjoint(op2.support()):
                continue
            c = op1.comm_exponent(op2)
            if c:
                return tid1, tid2, c
    return None


@dataclass
class CheckResult:
    relation: str
    location: str
    ok: bool
    residual: str = ""

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        tail = f"  [{self.residual}]" if self.residual and not self.ok else ""
        return f"{self.relation:4s} {self.location:30s} {status}{tail}"


def _result(relation: str, location, lhs: PauliOp, rhs: PauliOp) -> CheckResult:
    ok = lhs == rhs
    residual = "" if ok else f"residual {lhs * rhs.dagger()!r}"
    return CheckResult(relation, str(location), ok, residual)


def _comm_result(relation: str, location, a: PauliOp, b: PauliOp,
                 expected: int) -> CheckResult:
    c = a.comm_exponent(b)
    ok = c == expected % a.params.D
    return CheckResult(relation, str(location), ok,
                       "" if ok else f"comm exponent {c}, expected {expected}")


def verify_relation_catalog(lattice: Lattice, params: ModelParams,
                            relations: set[str] | None = None) -> list[CheckResult]:
    """Run every exact operator identity applicable to this lattice.

    Torus: R1-R7.  Slab: R4, R5, R6, R8, R9, R10 on truncated operators.
    """
    res: list[CheckResult] = []
    want = lambda r: relations is None or r in relations
    mk = lambda kind, loc: make_operator(kind, loc, lattice, params)

    a_of = {v: mk(OperatorKind.A_v, v) for v in lattice.vertices()}
    bt_of = {p: mk(OperatorKind.Btilde_p, p) for p in lattice.plaquettes()}
    c_of = {e: mk(OperatorKind.C_e, e) for e in lattice.edges()}
    f_of = {p: mk(OperatorKind.F_p, p) for p in lattice.plaquettes()}

    ident = PauliOp.identity(params)

    if lattice.kind == "torus":
        b_of = {p: mk(OperatorKind.B_p, p) for p in lattice.plaquettes()}
        for c in lattice.cubes():
            faces = lattice.cube_faces(c)
            if want("R1"):
                prod = ident
                for p, sign in faces:
                    prod = prod * (b_of[p] if sign > 0 else b_of[p].dagger())
                rhs = a_of[lattice.cube_vertex1(c)] * a_of[lattice.cube_vertex8(c)]
                res.append(_result("R1", ("cube", c), prod, rhs))
            if want("R2") or want("R3"):
                prod = ident
                for p, sign in faces:
                    prod = prod * (bt_of[p] if sign > 0 else bt_of[p].dagger())
                a1 = a_of[lattice.cube_vertex1(c)]
                if want("R2"):
                    res.append(_result("R2", ("cube", c), prod, a1 * a1))
                if want("R3"):
                    res.append(_result("R3", ("cube", c), prod ** params.N, ident))
        if want("R7"):
            prod = ident
            for v in lattice.vertices():
                prod = prod * a_of[v]
            res.append(_result("R7", "all vertices", prod, ident))

    if want("R4"):
        for p in lattice.plaquettes():
            prod = ident
            for e, _sign in lattice.plaquette_edges(p):
                if e is not None:
                    prod = prod * c_of[e]
            res.append(_result("R4", ("plaquette", p), bt_of[p] ** params.N, prod))
        for e in lattice.edges():
            ce = c_of[e]
            res.append(_result("R4", ("edge order", e), ce * ce, ident))
            res.append(_result("R4", ("edge hermitian", e), ce.dagger(), ce))

    if want("R5"):
        for e in lattice.edges():
            ce = c_of[e]
            everts = set(lattice.edge_vertices(e))
            for v, av in a_of.items():
                expected = params.N if v in everts else 0
                res.append(_comm_result("R5", ("C,A", e, v), ce, av, expected))
            for p, bt in bt_of.items():
                res.append(_comm_result("R5", ("C,Bt", e, p), ce, bt, 0))
        edges = list(c_of)
        for i, e1 in enumerate(edges):
            for e2 in edges[i + 1:]:
                if c_of[e1].support() & c_of[e2].support():
                    res.append(_comm_result("R5", ("C,C", e1, e2), c_of[e1], c_of[e2], 0))

    if want("R6"):
        # the flipper relations are statements about complete flippers, so on
        # the slab they are scoped to plaquettes whose O edge (the flipper's
        # X leg) survives truncation
        for p, fp in f_of.items():
            if lattice.kind == "slab" and lattice.plaquette_o_edge(p) is None:
                continue
            for p2, bt in bt_of.items():
                expected = 2 if p2 == p else 0
                res.append(_comm_result("R6", ("F,Bt", p, p2), fp, bt, expected))
            for e, ce in c_of.items():
                res.append(_comm_result("R6", ("F,C", p, e), fp, ce, 0))

    if lattice.kind == "slab":
        u_plaqs = set(lattice.boundary_plaquettes("U"))
        l_plaqs = set(lattice.boundary_plaquettes("L"))
        if want("R8"):
            for p in lattice.plaquettes():
                w = hopping_cycle(p, lattice, params)
                if p in u_plaqs:
                    res.append(_result("R8", ("U plaquette", p), bt_of[p], w))
                else:
                    o = lattice.plaquette_o_edge(p)
                    zo = PauliOp.single(params, o, 0, -2)
                    res.append(_result("R8", ("plaquette", p), bt_of[p], w * zo))
                if p in l_plaqs:
                    btp = mk(OperatorKind.BtildePrime_p, p)
                    v1 = lattice.plaquette_vertex(p, 1)
                    a1p = _plane_vertex_z(v1, lattice, params)
                    rhs = w * a1p * a1p
                    o = lattice.plaquette_o_edge(p)
                    if params.n > 1 and o is not None:
                        # the in-plane 4-edge form of A'_1 drops Z^-2 from
                        # both A_1 and the O edge; the discarded Z_O^-4 only
                        # vanishes for N = 2
                        rhs = rhs * PauliOp.single(params, o, 0, -4)
                    res.append(_result("R8", ("L plaquette", p), btp, rhs))
        if want("R9"):
            prod = ident
            for p in sorted(u_plaqs):
                prod = prod * bt_of[p]
            res.append(_result("R9", "U plane product", prod, ident))
            prod = ident
            for v in lattice.boundary_vertices("L"):
                prod = prod * a_of[v] * a_of[v]
            for p in sorted(l_plaqs):
                prod = prod * bt_of[p].dagger()
            res.append(_result("R9", "L plane product", prod, ident))
        if want("R10"):
            for p in lattice.plaquettes():
                o = lattice.plaquette_o_edge(p)
                if o is None:
                    continue
                fp = f_of[p]
                for e in lattice.edges():
                    z2 = PauliOp.single(params, e, 0, 2)
                    expected = -2 if e == o else 0
                    res.append(_comm_result("R10", ("F,Z2", p, e), fp, z2, expected))
                for e in lattice.edges():
                    hop = mk(OperatorKind.ScriptX_e, e)
                    res.append(_comm_result("R10", ("F,X", p, e), fp, hop, 0))
    return res


def _plane_vertex_z(v: Cell, lattice: Lattice, params: ModelParams) -> PauliOp:
    """A'_v: the vertex operator truncated to the four in-plane edges of v."""
    av = make_operator(OperatorKind.A_v, v, lattice, params)
    kept = {e: xz for e, xz in av.factors.items() if e[1] != 2}
    return PauliOp(params, av.phase, kept)


def catalog_summary(results: list[CheckResult]) -> dict[str, tuple[int, int]]:
    """Per-relation (passed, total) counts."""
    out: dict[str, list[int]] = {}
    for r in results:
        cnt = out.setdefault(r.relation, [0, 0])
        cnt[0] += r.ok
        cnt[1] += 1
    return {k: (v[0], v[1]) for k, v in sorted(out.items())}
