"""Three-fermion QCA: data integrity and the two matrix certificates."""

import numpy as np
import pytest

from stabqca import qca3f
from stabqca.laurent import LaurentPoly, SympMatrix, parse_poly, random_poly


@pytest.fixture(scope="module")
def loaded():
    return qca3f.load_matrices()


def test_checksum_enforced(monkeypatch):
    import stabqca.qca3f as mod
    monkeypatch.setattr(mod, "DATA_SHA256", "0" * 64)
    with pytest.raises(mod.IntegrityError):
        mod.load_matrices()


def test_published_entries(loaded):
    b1 = loaded.block("B1")
    assert b1[0, 0] == parse_poly("1", 2)
    assert b1[0, 1] == parse_poly("0", 2)
    assert b1[3, 0] == parse_poly("x y z + x", 2)
    f1 = loaded.block("F1")
    assert f1[3, 0] == parse_poly("x y z + x + y z + 1", 2)
    f2 = loaded.block("F2")
    assert f2[8, 2] == parse_poly("x^-1 y^-1 + 1", 2)


def test_entries_are_f2_canonical(loaded):
    for row in loaded.matrix.entries:
        for e in row:
            assert e.modulus == 2
            assert all(c == 1 for c in e.terms.values())


def test_square_identity(loaded):
    assert qca3f.verify_square_identity(loaded)
    ident = qca3f.Qca3f({
        name: SympMatrix(2, [[LaurentPoly.const(2, 1) if (i == j + {"B1": 0, "B2": 3, "F1": 6, "F2": 9}[name]) else LaurentPoly.zero(2)
                              for j in range(3)] for i in range(12)])
        for name in qca3f.BLOCK_NAMES})
    assert qca3f.verify_square_identity(ident)
    assert qca3f.verify_symplectic(ident)


def test_planted_defects_fail(loaded):
    # perturb one entry of B1
    rows = [list(r) for r in loaded.block("B1").entries]
    rows[4][1] = rows[4][1] + LaurentPoly.const(2, 1)
    broken = qca3f.Qca3f({**loaded.blocks, "B1": SympMatrix(2, rows)})
    assert not qca3f.verify_square_identity(broken)
    # swap two flipper columns
    f1 = loaded.block("F1")
    swapped = SympMatrix(2, [[row[1], row[0], row[2]] for row in f1.entries])
    broken2 = qca3f.Qca3f({**loaded.blocks, "F1": swapped})
    assert not qca3f.verify_symplectic(broken2)


def test_apply(loaded):
    rng = np.random.default_rng(19)
    for j, name in ((0, "B1"), (3, "B2"), (6, "F1"), (9, "F2")):
        v = qca3f.unit_vector(j)
        assert qca3f.apply(loaded, v) == loaded.block(name).column(0)
    from stabqca.laurent import SympVec
    for _ in range(10):
        v = SympVec(2, [random_poly(2, rng, 2, 3) for _ in range(12)])
        assert qca3f.apply(loaded, qca3f.apply(loaded, v)) == v
    zero = SympVec.zero(2, 6)
    assert qca3f.apply(loaded, zero) == zero


def test_apply_shape_guard(loaded):
    from stabqca.laurent import SympVec
    with pytest.raises(ValueError):
        qca3f.apply(loaded, SympVec.zero(2, 3))
    with pytest.raises(ValueError):
        qca3f.apply(loaded, SympVec.zero(4, 6))


def test_locality_radius(loaded):
    # finite propagation: the published data reaches Chebyshev radius 2
    assert qca3f.locality_radius(loaded) == 2
