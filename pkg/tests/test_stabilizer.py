"""Smith normal form, group orders, degeneracies, phase consistency."""

import numpy as np
import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from stabqca.lattice import slab, torus
from stabqca.models import ModelId, OperatorKind, build_hamiltonian, make_operator
from stabqca.pauli import ModelParams, PauliOp
from stabqca.stabilizer import (FrustrationError, StabGroup, gsd, gsd_report,
                                invariant_factors, separator_independence,
                                smith_diagonal_mod)


def test_snf_against_sympy_oracle():
    rng = np.random.default_rng(17)
    for _ in range(25):
        mod = int(rng.choice([2, 4, 8, 16]))
        r, c = int(rng.integers(1, 8)), int(rng.integers(1, 8))
        a = rng.integers(0, mod, size=(r, c))
        mine = invariant_factors(a, mod)
        stacked = Matrix(np.vstack([a, mod * np.eye(c, dtype=int)]).tolist())
        ref = smith_normal_form(stacked)
        theirs = sorted(abs(ref[i, i]) for i in range(c))
        assert sorted(mine) == theirs


def test_snf_left_transform_consistency():
    rng = np.random.default_rng(23)
    for _ in range(20):
        mod = int(rng.choice([4, 8]))
        a = rng.integers(0, mod, size=(6, 5))
        diag, u = smith_diagonal_mod(a, mod, track_left=True)
        # rows of u beyond the diagonal rank combine the input to zero mod m
        prod = (u @ a) % mod
        for i in range(len(diag), 6):
            assert not prod[i].any()


def test_trivial_group_orders():
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    c = make_operator(OperatorKind.C_e, ((0, 0, 0), 0), lat, params)
    g = StabGroup(params, [(("C", 0), c)], lat)
    assert g.group_order() == 2
    empty = StabGroup(params, [], lat)
    assert empty.group_order() == 1


def test_htww_group_order_2x2x2():
    # 4^24 / 8: one order-4 relation per cube (8, one dependent), the A_v
    # product relation, and three order-2 relations from the 2-cycles
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    terms = build_hamiltonian(ModelId.HtildeWW, lat, params)
    g = StabGroup(params, terms, lat)
    assert g.group_order() == 4 ** 24 // 8


@pytest.mark.parametrize("model,expected", [
    (ModelId.HWW, 8), (ModelId.HtildeWW, 8), (ModelId.Hcond, 1)])
def test_torus_gsd(model, expected):
    for n in (1, 2):
        params = ModelParams(n)
        for L in (2, 3):
            if n == 2 and L == 3 and model is not ModelId.Hcond:
                continue
            assert gsd(model, torus(L, L, L), params) == expected


def test_gsd_same_group_for_both_plaquette_choices():
    params = ModelParams(1)
    lat = torus(3, 3, 3)
    a = gsd_report(ModelId.HWW, lat, params)
    b = gsd_report(ModelId.HtildeWW, lat, params)
    assert a["group_order"] == b["group_order"]
    assert a["gsd"] == b["gsd"]


@pytest.mark.parametrize("n,expected", [(1, 4), (2, 16)])
def test_slab_gsd(n, expected):
    params = ModelParams(n)
    for m in (0, 1):
        assert gsd(ModelId.Hcond, slab(4, 4, m), params) == expected


def test_gsd_invariant_under_row_operations():
    rng = np.random.default_rng(41)
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    terms = build_hamiltonian(ModelId.Hcond, lat, params)
    base = StabGroup(params, terms, lat).group_order()
    ops = [op for _tid, op in terms]
    for _ in range(5):
        mixed = list(ops)
        i, j = rng.integers(0, len(ops), size=2)
        if i != j:
            k = int(rng.integers(1, params.D))
            mixed[int(i)] = mixed[int(i)] * mixed[int(j)] ** k
        g = StabGroup(params, [(("g", t), op) for t, op in enumerate(mixed)], lat)
        assert g.group_order() == base


def test_phase_consistency_and_planted_defect():
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    terms = build_hamiltonian(ModelId.HtildeWW, lat, params)
    g = StabGroup(params, terms, lat)
    assert g.phase_consistency()
    # flip the sign of one plaquette term: a null combination now carries -1
    bad = []
    for tid, op in terms:
        if tid[0] == "Bt" and not bad:
            bad.append((tid, op.with_phase(2 * params.N)))
        else:
            bad.append((tid, op))
    gb = StabGroup(params, bad, lat)
    assert not gb.phase_consistency()
    with pytest.raises(FrustrationError):
        gb.assert_phase_consistent()


def test_noncommuting_generators_rejected():
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    e = ((0, 0, 0), 0)
    x = PauliOp.single(params, e, 1, 0)
    z = PauliOp.single(params, e, 0, 1)
    g = StabGroup(params, [(("x",), x), (("z",), z)], lat)
    with pytest.raises(ValueError):
        g.group_order()


@pytest.mark.parametrize("n", [1, 2])
def test_separator_independence(n):
    params = ModelParams(n)
    lat = torus(2, 2, 2)
    seps = [make_operator(OperatorKind.Btilde_p, p, lat, params)
            for p in lat.plaquettes()]
    cons = [make_operator(OperatorKind.C_e, e, lat, params) for e in lat.edges()]
    dim = params.N ** 24
    assert separator_independence(seps, dim, cons, params, lat)
    assert not separator_independence(seps[1:], dim, cons, params, lat)
