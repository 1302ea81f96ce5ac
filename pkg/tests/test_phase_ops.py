"""Shift-diagonal operators: gates, composition, conjugation, restriction."""

import json

import numpy as np
import pytest

from stabqca import dense
from stabqca.pauli import ModelParams
from stabqca.phase_ops import (ConstraintViolationError, CxCircuit,
                               PhaseTableOp, compose, conjugate_by_cx, gate,
                               h_conjugate_qubit, restrict, scalar_of,
                               truncate_to_sites)

Q1 = ("B", ((0, 0, 0), 0))
Q2 = ("B", ((0, 0, 0), 1))
Q3 = ("B", ((0, 0, 0), 2))
A1 = ("A", ((0, 0, 0), 0))
A2 = ("A", ((0, 0, 0), 1))


def test_gate_tables():
    params = ModelParams(2)
    N = params.N
    s = gate("S", Q1, params)
    assert s.diag_value({Q1: 0}) == 0 and s.diag_value({Q1: 1}) == N
    cz = gate("CZ", (Q1, Q2), params)
    for b1 in (0, 1):
        for b2 in (0, 1):
            expected = 2 * N if b1 == b2 == 1 else 0
            assert cz.diag_value({Q1: b1, Q2: b2}) == expected
    czh = gate("CZhat", (A1, Q1), params)
    for a in range(N):
        for b in (0, 1):
            expected = 2 * N if (a == N - 1 and b == 1) else 0
            assert czh.diag_value({A1: a, Q1: b}) == expected
    sh = gate("Shat", A1, params)
    assert [sh.diag_value({A1: a}) for a in range(N)] == [2 * a for a in range(N)]


def test_gate_modulus_guard():
    params = ModelParams(2)
    with pytest.raises(ValueError):
        gate("S", A1, params)  # S needs a qubit
    with pytest.raises(ValueError):
        gate("Zhat", Q1, params)


def test_appendix_reordering_identities():
    # S X = i X S Z  and  CZ_12 X_1 = X_1 Z_2 CZ_12
    params = ModelParams(1)
    s, x1, z1 = gate("S", Q1, params), gate("X", Q1, params), gate("Z", Q1, params)
    cz = gate("CZ", (Q1, Q2), params)
    x2, z2 = gate("X", Q2, params), gate("Z", Q2, params)
    i_unit = params.N  # exponent of the scalar i
    assert compose(s, x1) == compose(compose(x1, s), z1).with_phase(i_unit)
    assert compose(cz, x1) == compose(x1, compose(z2, cz))


def test_compose_dagger_and_associativity():
    rng = np.random.default_rng(6)
    params = ModelParams(2)
    pool = [gate("S", Q1, params), gate("X", Q1, params), gate("Z", Q2, params),
            gate("CZ", (Q1, Q2), params), gate("Xhat", A1, params),
            gate("Shat", A1, params), gate("CZhat", (A1, Q2), params),
            gate("Zhat", A2, params), gate("X", Q3, params)]
    ident = PhaseTableOp.identity(params)
    for _ in range(40):
        a, b, c = (pool[int(i)] for i in rng.integers(0, len(pool), 3))
        assert compose(a, compose(b, c)) == compose(compose(a, b), c)
        assert compose(a, a.dagger()) == ident
        assert compose(a, b).dagger() == compose(b.dagger(), a.dagger())


def test_powers_and_orders():
    params = ModelParams(2)
    N = params.N
    xh = gate("Xhat", A1, params)
    assert xh ** N == PhaseTableOp.identity(params)
    sh = gate("Shat", A1, params)
    assert sh ** 2 == gate("Zhat", A1, params)
    czh = gate("CZhat", (A1, Q1), params)
    assert czh ** 2 == PhaseTableOp.identity(params)


def test_cx_conjugation_rules():
    # X_i -> X_i X_j, Z_j -> Z_i Z_j, CZ_ij -> Z_i CZ_ij, CZ_jk -> CZ_ik CZ_jk
    params = ModelParams(1)
    cx = gate("CX", (Q1, Q2), params)
    x1 = gate("X", Q1, params)
    assert conjugate_by_cx(x1, cx) == compose(x1, gate("X", Q2, params))
    z2 = gate("Z", Q2, params)
    assert conjugate_by_cx(z2, cx) == compose(gate("Z", Q1, params), z2)
    cz12 = gate("CZ", (Q1, Q2), params)
    assert conjugate_by_cx(cz12, cx) == compose(gate("Z", Q1, params), cz12)
    cz23 = gate("CZ", (Q2, Q3), params)
    assert conjugate_by_cx(cz23, cx) == compose(gate("CZ", (Q1, Q3), params), cz23)
    ident = PhaseTableOp.identity(params)
    assert conjugate_by_cx(ident, cx) == ident


def test_cxhat_conjugation_rules():
    # Z -> Zhat^(N/2) Z, Xhat -> Xhat X, Zhat and X invariant
    params = ModelParams(2)
    cxh = gate("CXhat", (A1, Q1), params)
    z = gate("Z", Q1, params)
    zh_half = gate("Zhat", A1, params) ** (params.N // 2)
    assert conjugate_by_cx(z, cxh) == compose(zh_half, z)
    xh = gate("Xhat", A1, params)
    assert conjugate_by_cx(xh, cxh) == compose(xh, gate("X", Q1, params))
    assert conjugate_by_cx(gate("Zhat", A1, params), cxh) == gate("Zhat", A1, params)
    assert conjugate_by_cx(gate("X", Q1, params), cxh) == gate("X", Q1, params)


def test_conjugation_is_homomorphism():
    rng = np.random.default_rng(14)
    params = ModelParams(2)
    circuit = CxCircuit(params, [(A1, Q1), (A2, Q1), (A1, Q2)],
                        {A1: 4, A2: 4, Q1: 2, Q2: 2})
    pool = [gate("Z", Q1, params), gate("CZhat", (A1, Q1), params),
            gate("Xhat", A1, params), gate("Shat", A2, params),
            gate("X", Q2, params), gate("CZhat", (A2, Q2), params)]
    for _ in range(30):
        a, b = (pool[int(i)] for i in rng.integers(0, len(pool), 2))
        lhs = circuit.conjugate(compose(a, b))
        rhs = compose(circuit.conjugate(a), circuit.conjugate(b))
        assert lhs == rhs


def test_dense_oracle_small_supports():
    # PhaseTableOp matrices match products of dense gate matrices exactly
    rng = np.random.default_rng(25)
    params = ModelParams(2)
    sites = [A1, Q1, Q2]
    pool = [gate("Shat", A1, params), gate("CZhat", (A1, Q1), params),
            gate("X", Q1, params), gate("CZ", (Q1, Q2), params),
            gate("Xhat", A1, params), gate("S", Q2, params)]
    for _ in range(25):
        idx = rng.integers(0, len(pool), 3)
        ops = [pool[int(i)] for i in idx]
        prod = compose(ops[0], compose(ops[1], ops[2]))
        da = dense.phase_table_to_dense(ops[0], sites)
        db = dense.phase_table_to_dense(ops[1], sites)
        dc = dense.phase_table_to_dense(ops[2], sites)
        assert dense.phase_table_to_dense(prod, sites) == da @ (db @ dc)


def test_restrict_behavior():
    params = ModelParams(2)
    z = gate("Z", Q1, params)
    assert restrict(z, [Q1]) == PhaseTableOp.identity(params)
    czh = gate("CZhat", (A1, Q1), params)
    assert restrict(czh, [Q1]) == PhaseTableOp.identity(params)
    x = gate("X", Q1, params)
    with pytest.raises(ConstraintViolationError):
        restrict(x, [Q1])


def test_scalar_of():
    params = ModelParams(1)
    ident = PhaseTableOp.identity(params)
    assert scalar_of(ident) == 0
    assert scalar_of(ident.with_phase(2)) == 2  # the scalar i on a 2N=4 register
    with pytest.raises(ValueError):
        scalar_of(gate("Z", Q1, params))


def test_truncate_to_sites():
    params = ModelParams(1)
    op = compose(gate("CZ", (Q1, Q2), params), gate("X", Q3, params))
    tr = truncate_to_sites(op, {Q1, Q2})
    assert tr == gate("CZ", (Q1, Q2), params)


def test_hadamard_conjugation():
    params = ModelParams(1)
    x, z = gate("X", Q1, params), gate("Z", Q1, params)
    assert h_conjugate_qubit(x, Q1) == z
    assert h_conjugate_qubit(z, Q1) == x
    y_ish = compose(x, z)
    assert h_conjugate_qubit(y_ish, Q1) == compose(z, x)
    with pytest.raises(ValueError):
        h_conjugate_qubit(gate("S", Q1, params), Q1)


def test_serialization_round_trip():
    params = ModelParams(2)
    op = compose(gate("CZhat", (A1, Q1), params),
                 compose(gate("Xhat", A1, params), gate("Shat", A2, params)))
    blob = json.dumps(op.to_json(), sort_keys=True)
    back = PhaseTableOp.from_json(json.loads(blob))
    assert back == op
    assert json.dumps(back.to_json(), sort_keys=True) == blob
