"""Generalized Pauli algebra: products, powers, commutation, instantiation."""

import numpy as np
import pytest

from stabqca import dense
from stabqca.lattice import OutOfLatticeError, slab, torus
from stabqca.laurent import random_sympvec
from stabqca.models import OperatorKind, base_vectors, make_operator
from stabqca.pauli import (ModelParams, PauliOp, instantiate, make_m,
                           pair_predicts_commutation, params_for)

E0 = ((0, 0, 0), 0)


def test_zx_reorder_phase():
    # Z X = i X Z on one Z_4 qudit: phase exponent 2 in pi/4 units
    params = ModelParams(1)
    z = PauliOp.single(params, E0, 0, 1)
    x = PauliOp.single(params, E0, 1, 0)
    prod = z * x
    assert prod.phase == 2
    assert prod.factors[E0] == (1, 1)


def test_mul_dagger_identity():
    rng = np.random.default_rng(4)
    params = ModelParams(2)
    for _ in range(30):
        factors = {((int(rng.integers(0, 2)), 0, 0), int(rng.integers(0, 3))):
                   (int(rng.integers(0, 8)), int(rng.integers(0, 8)))
                   for _ in range(3)}
        p = PauliOp(params, int(rng.integers(0, 16)), factors)
        assert p * p.dagger() == PauliOp.identity(params)
        assert p.dagger().dagger() == p


def test_power_and_orders():
    params = ModelParams(1)
    x = PauliOp.single(params, E0, 1, 0)
    assert x ** 0 == PauliOp.identity(params)
    assert x ** params.D == PauliOp.identity(params)
    # a mixed X Z single-site operator has order 4N, not 2N
    xz = PauliOp.single(params, E0, 1, 1)
    assert (xz ** params.D) == PauliOp.scalar(params, 2 * params.N)
    assert (xz ** (2 * params.D)) == PauliOp.identity(params)


def test_hopper_self_square_is_boson(n=1):
    for n in (1, 2):
        params = ModelParams(n)
        lat = torus(3, 3, 3)
        hop = make_operator(OperatorKind.ScriptX_e, E0, lat, params)
        boson = make_operator(OperatorKind.C_e, E0, lat, params)
        assert hop ** params.N == boson


def test_comm_exponent_values():
    params = ModelParams(2)
    lat = torus(3, 3, 3)
    c = make_operator(OperatorKind.C_e, E0, lat, params)
    a_in = make_operator(OperatorKind.A_v, (0, 0, 0), lat, params)
    a_out = make_operator(OperatorKind.A_v, (2, 2, 2), lat, params)
    assert c.comm_exponent(a_in) == params.N
    assert c.comm_exponent(a_out) == 0
    f = make_operator(OperatorKind.F_p, ((0, 0, 0), 0), lat, params)
    bt = make_operator(OperatorKind.Btilde_p, ((0, 0, 0), 0), lat, params)
    assert f.comm_exponent(bt) == 2


def test_comm_antisymmetry_and_bilinearity():
    rng = np.random.default_rng(8)
    params = ModelParams(2)
    lat = torus(2, 2, 2)
    def rand_op():
        vec = random_sympvec(params.D, rng)
        cell = tuple(int(rng.integers(0, 2)) for _ in range(3))
        return instantiate(vec, cell, lat, params, int(rng.integers(0, 16)))
    for _ in range(25):
        a, b, c = rand_op(), rand_op(), rand_op()
        assert (a.comm_exponent(b) + b.comm_exponent(a)) % params.D == 0
        assert (a * c).comm_exponent(b) == (a.comm_exponent(b) + c.comm_exponent(b)) % params.D


def test_pair_predicts_commutation_exhaustive():
    rng = np.random.default_rng(12)
    lat = torus(3, 3, 3)
    for n in (1, 2):
        params = ModelParams(n)
        for _ in range(40):
            u = random_sympvec(params.D, rng)
            v = random_sympvec(params.D, rng)
            off = tuple(int(rng.integers(0, 3)) for _ in range(3))
            assert pair_predicts_commutation(u, v, lat, params, off)


def test_instantiate_hopper_factors():
    # single X on its own edge, Z rows m(1-1/x), -m(x+2/y), m(x+x/z+1)
    params = ModelParams(1)
    lat = torus(4, 4, 4)
    hop = make_operator(OperatorKind.ScriptX_e, E0, lat, params)
    assert hop.factors[E0] == (1, 1)
    assert hop.factors[((3, 0, 0), 0)] == (0, 3)
    assert hop.factors[((1, 0, 0), 1)] == (0, 3)
    assert hop.factors[((0, 3, 0), 1)] == (0, 2)
    assert hop.factors[((1, 0, 0), 2)] == (0, 1)
    assert hop.factors[((1, 0, 3), 2)] == (0, 1)
    assert hop.factors[((0, 0, 0), 2)] == (0, 1)
    assert hop.phase == (-params.m * (params.N - 1)) % params.phase_mod


def test_instantiate_zero_vector():
    params = ModelParams(1)
    lat = torus(2, 2, 2)
    from stabqca.laurent import SympVec
    assert instantiate(SympVec.zero(4, 3), (0, 0, 0), lat, params) == PauliOp.identity(params)


def test_cyclic_permutation_matches_y_edge():
    params = ModelParams(2)
    lat = torus(3, 3, 3)
    vecs = base_vectors(params)
    rotated = instantiate(vecs["hop"].cycle(1), (0, 0, 0), lat, params,
                          (-params.m * (params.N - 1)))
    direct = make_operator(OperatorKind.ScriptX_e, ((0, 0, 0), 1), lat, params)
    assert rotated == direct


def test_slab_truncation_behavior():
    params = ModelParams(1)
    lat = slab(4, 4, 1)
    vecs = base_vectors(params)
    with pytest.raises(OutOfLatticeError):
        instantiate(vecs["hop"], (0, 0, 1), lat, params)
    trunc = instantiate(vecs["hop"], (0, 0, 1), lat, params, truncate=True)
    assert all(lat.has_edge(e) for e in trunc.support())


def test_make_m_values():
    assert make_m(1) == 1
    assert make_m(2) == 5
    assert make_m(3) == 5
    assert make_m(4) == 21
    for n in range(1, 8):
        assert (3 * make_m(n)) % (2 ** (n + 1)) == 2 ** (n + 1) - 1


def test_single_site_dense_oracle():
    # the represented matrix of X, Z and a phase matches clock and shift
    for n in (1, 2):
        params = ModelParams(n)
        x = PauliOp.single(params, E0, 1, 0)
        z = PauliOp.single(params, E0, 0, 1)
        assert dense.pauli_to_dense(x, [E0]) == dense.shift_x(params)
        assert dense.pauli_to_dense(z, [E0]) == dense.clock_z(params)
        s = PauliOp.scalar(params, 3)
        assert dense.pauli_to_dense(s, [E0]) == \
            dense.PermPhaseMatrix.identity(params.phase_mod, params.D).scale(3)
        # Z X = w^2 X Z as dense matrices
        zx = dense.pauli_to_dense(z * x, [E0])
        assert zx == (dense.clock_z(params) @ dense.shift_x(params))


def test_two_site_dense_product_oracle():
    rng = np.random.default_rng(21)
    params = ModelParams(2)
    edges = [E0, ((1, 0, 0), 1)]
    for _ in range(10):
        def rand():
            return PauliOp(params, int(rng.integers(0, 16)),
                           {e: (int(rng.integers(0, 8)), int(rng.integers(0, 8)))
                            for e in edges})
        a, b = rand(), rand()
        da = dense.pauli_to_dense(a, edges)
        db = dense.pauli_to_dense(b, edges)
        assert dense.pauli_to_dense(a * b, edges) == da @ db


def test_serialization_round_trip():
    rng = np.random.default_rng(31)
    import json
    for n in (1, 3):
        params = ModelParams(n)
        for _ in range(10):
            factors = {((int(rng.integers(0, 3)),) * 3, int(rng.integers(0, 3))):
                       (int(rng.integers(0, params.D)), int(rng.integers(0, params.D)))}
            p = PauliOp(params, int(rng.integers(0, params.phase_mod)), factors)
            blob = json.dumps(p.to_json())
            assert PauliOp.from_json(json.loads(blob)) == p


def test_params_bounds():
    with pytest.raises(ValueError):
        ModelParams(0)
    with pytest.raises(ValueError):
        ModelParams(17)
    assert params_for(2) is params_for(2)
