"""Ring axioms, antipode, pairing identities and the text grammar."""

import numpy as np
import pytest

from stabqca.laurent import (LaurentPoly, SympMatrix, SympVec, parse_poly,
                             random_poly, random_sympvec, symp_pair,
                             symplectic_form)


def P(text, mod=4):
    return parse_poly(text, mod)


def test_additive_cancellation():
    assert P("1 - z") + P("z") == P("1")


def test_ring_identity():
    assert P("y - 1") * P("y + 1") == P("y^2 - 1")


def test_characteristic_annihilation():
    two = LaurentPoly.const(4, 2)
    p = P("y z + y")
    assert two * p == P("2 y z + 2 y")
    assert two * (two * p) == LaurentPoly.zero(4)


def test_canonical_form_drops_zeros():
    p = LaurentPoly(4, {(0, 0, 0): 4, (1, 0, 0): 2})
    assert p.terms == {(1, 0, 0): 2}


def test_modulus_mismatch_raises():
    with pytest.raises(ValueError):
        P("x", 4) + P("x", 8)


@pytest.mark.parametrize("mod", [2, 4, 8])
def test_ring_axioms_random(mod):
    rng = np.random.default_rng(11)
    for _ in range(40):
        a = random_poly(mod, rng, 2, 4)
        b = random_poly(mod, rng, 2, 4)
        c = random_poly(mod, rng, 2, 4)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_antipode_involution_and_exponents():
    assert P("1 - x^-1").antipode() == P("1 - x")
    rng = np.random.default_rng(3)
    for _ in range(20):
        v = random_sympvec(4, rng)
        assert v.antipode().antipode() == v
    z = SympVec.zero(4, 3)
    assert z.antipode() == z


def test_pair_antisymmetry():
    # pair(u,v) = -antipode(pair(v,u)) over Z_m
    rng = np.random.default_rng(5)
    for mod in (2, 4, 8):
        for _ in range(25):
            u = random_sympvec(mod, rng)
            v = random_sympvec(mod, rng)
            assert symp_pair(u, v) == -symp_pair(v, u).antipode()


def test_pair_with_zero():
    z = SympVec.zero(4, 3)
    rng = np.random.default_rng(9)
    v = random_sympvec(4, rng)
    assert symp_pair(z, v).is_zero()


def test_symplectic_form_dagger():
    for mod in (4, 8):
        omega = symplectic_form(3, mod)
        minus = SympMatrix(mod, [[-e for e in row] for row in omega.entries])
        assert omega.dagger() == minus
    omega2 = symplectic_form(6, 2)
    assert omega2.dagger() == omega2


def test_matrix_identity_and_zero():
    rng = np.random.default_rng(2)
    ident = SympMatrix.identity(4, 4)
    m = SympMatrix(4, [[random_poly(4, rng) for _ in range(4)] for _ in range(4)])
    assert ident @ m == m
    assert m @ ident == m
    zero = SympMatrix.zeros(4, 4, 4)
    assert (m @ zero).is_zero()


def test_grammar_round_trip():
    rng = np.random.default_rng(7)
    for mod in (2, 4, 16):
        for _ in range(30):
            p = random_poly(mod, rng, 2, 5)
            assert parse_poly(str(p), mod) == p


def test_grammar_compact_products():
    assert parse_poly("xyz + x", 2) == parse_poly("x y z + x", 2)
    assert parse_poly("2 x y^-1 + z^2", 4).terms == {(1, -1, 0): 2, (0, 0, 2): 1}
    assert parse_poly("0", 4).is_zero()


def test_grammar_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly("x + q", 4)
    with pytest.raises(ValueError):
        parse_poly("x^", 4)
    with pytest.raises(ValueError):
        parse_poly("x x + + y", 4)


def test_cycle_substitution():
    p = P("x y^2 + z^-1")
    assert p.cycle() == P("y z^2 + x^-1")
    assert p.cycle(3) == p
