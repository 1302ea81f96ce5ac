"""Stabilizer-group machinery over Z_2N: orders, degeneracy, phase checks.

The exponent matrix of a generating set (rows = generators, columns = the
2E per-edge X and Z exponents) is reduced to Smith normal form over the
integers together with the implicit rows 2N*I.  Because those rows are
always available, every intermediate entry can be reduced mod 2N, which
keeps the arithmetic in machine integers; the resulting invariant factors
all divide 2N.  Group order, ground-state degeneracy and the relation
lattice (for phase consistency) all come from one reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from stabqca.lattice import EdgeId, Lattice
from stabqca.models import ModelId, build_hamiltonian, mutually_commuting
from stabqca.pauli import ModelParams, PauliOp


class FrustrationError(ValueError):
    """The generating set contains a nontrivial scalar: a product of
    generators with trivial exponents but nonzero phase."""


def smith_diagonal_mod(matrix: np.ndarray, modulus: int,
                       track_left: bool = False):
    """Diagonalize `matrix` by unimodular row/column operations, reducing
    freely mod `modulus` (valid for the stacked matrix [A; modulus*I]).

    Returns (diag, U) where diag holds the nonzero diagonal entries in
    [1, modulus) and U (when tracked) satisfies: row i of U gives the
    combination of input rows producing diagonal row i; rows beyond
    len(diag) combine to zero mod modulus.
    """
    a = np.array(matrix, dtype=np.int64) % modulus
    rows, cols = a.shape
    u = np.eye(rows, dtype=np.int64) if track_left else None

    def rowop(i, j, q):
        a[i] -= q * a[j]
        a[i] %= modulus
        if u is not None:
            u[i] -= q * u[j]
            u[i] %= modulus

    def rowswap(i, j):
        a[[i, j]] = a[[j, i]]
        if u is not None:
            u[[i, j]] = u[[j, i]]

    diag = []
    k = 0
    while k < min(rows, cols):
        sub = a[k:, k:]
        nz = np.nonzero(sub)
        if nz[0].size == 0:
            break
        vals = sub[nz]
        best = np.argmin(vals)
        i, j = nz[0][best] + k, nz[1][best] + k
        if i != k:
            rowswap(k, i)
        if j != k:
            a[:, [k, j]] = a[:, [j, k]]
        while True:
            pivot = int(a[k, k])
            col = a[k + 1:, k]
            if col.any():
                q = col // pivot
                a[k + 1:] -= q[:, None] * a[k]
                a[k + 1:] %= modulus
                if u is not None:
                    u[k + 1:] -= q[:, None] * u[k]
                    u[k + 1:] %= modulus
                rem = np.nonzero(a[k + 1:, k])[0]
                if rem.size:
                    i2 = rem[np.argmin(a[k + 1 + rem, k])] + k + 1
                    rowswap(k, i2)
                    continue
            rowv = a[k, k + 1:]
            if rowv.any():
                q = rowv // pivot
                a[:, k + 1:] -= q[None, :] * a[:, [k]]
                a[:, k + 1:] %= modulus
                rem = np.nonzero(a[k, k + 1:])[0]
                if rem.size:
                    j2 = rem[np.argmin(a[k, k + 1 + rem])] + k + 1
                    a[:, [k, j2]] = a[:, [j2, k]]
                    continue
            if not a[k + 1:, k].any() and not a[k, k + 1:].any():
                break
        diag.append(int(a[k, k]))
        k += 1
    return diag, u


def invariant_factors(matrix: np.ndarray, modulus: int) -> list[int]:
    """Invariant factors of the stacked integer matrix [matrix; modulus*I],
    in divisibility order; there are exactly `cols` of them and each
    divides `modulus`."""
    diag, _ = smith_diagonal_mod(matrix, modulus)
    cols = matrix.shape[1] if matrix.size else 0
    facs = [gcd(d, modulus) for d in diag] + [modulus] * (cols - len(diag))
    # enforce the divisibility chain (gcd/lcm sweeps on values)
    changed = True
    while changed:
        changed = False
        for i in range(len(facs) - 1):
            g = gcd(facs[i], facs[i + 1])
            l = facs[i] * facs[i + 1] // g if g else 0
            if (g, l) != (facs[i], facs[i + 1]):
                facs[i], facs[i + 1] = g, l
                changed = True
    return facs


@dataclass
class StabGroup:
    """A generated stabilizer group with its SNF certificate data."""

    params: ModelParams
    generators: list[tuple[tuple, PauliOp]]
    lattice: Lattice
    _edges: list[EdgeId] = field(init=False)
    _matrix: np.ndarray = field(init=False)

    def __post_init__(self):
        self._edges = sorted(self.lattice.edges())
        index = {e: i for i, e in enumerate(self._edges)}
        n_e = len(self._edges)
        mat = np.zeros((max(len(self.generators), 1), 2 * n_e), dtype=np.int64)
        for r, (_tid, op) in enumerate(self.generators):
            for e, (x, z) in op.factors.items():
                if e not in index:
                    raise ValueError(f"generator touches edge {e} outside the lattice")
                mat[r, index[e]] = x
                mat[r, n_e + index[e]] = z
        self._matrix = mat[: len(self.generators)]

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    def check_commuting(self) -> None:
        bad = mutually_commuting(self.generators)
        if bad is not None:
            raise ValueError(f"generators {bad[0]} and {bad[1]} do not commute "
                             f"(exponent {bad[2]})")

    def exponent_matrix(self) -> np.ndarray:
        return self._matrix.copy()

    def invariant_factors(self) -> list[int]:
        return invariant_factors(self._matrix, self.params.D)

    def group_order(self) -> int:
        """Order of the exponent-image subgroup of Z_2N^(2E); equals the
        operator group order when phase_consistent() holds."""
        self.check_commuting()
        D = self.params.D
        diag, _ = smith_diagonal_mod(self._matrix, D)
        return prod(D // gcd(d, D) for d in diag)

    def relation_basis(self) -> list[np.ndarray]:
        """Generators (over Z) of the lattice of exponent-trivial
        combinations, modulo D*Z^g and generator orders."""
        D = self.params.D
        diag, u = smith_diagonal_mod(self._matrix, D, track_left=True)
        basis = []
        for i, d in enumerate(diag):
            t = D // gcd(d, D)
            if t < D:
                basis.append((t * u[i]) % D)
        for i in range(len(diag), u.shape[0]):
            row = u[i] % D
            if row.any():
                basis.append(row)
        return basis

    def _product(self, combo: np.ndarray) -> PauliOp:
        out = PauliOp.identity(self.params)
        for (_tid, op), k in zip(self.generators, combo):
            if k:
                out = out * op ** int(k)
        return out

    def phase_consistency(self) -> bool:
        try:
            self.assert_phase_consistent()
            return True
        except FrustrationError:
            return False

    def assert_phase_consistent(self) -> None:
        """Every exponent-trivial product of generators must be exactly +1.

        Checks g^D = 1 for each generator (covering the implicit D*e_i
        relations) and the products over a basis of the relation lattice.
        """
        ident = PauliOp.identity(self.params)
        for tid, op in self.generators:
            p = op ** self.params.D
            if p != ident:
                raise FrustrationError(
                    f"generator {tid} has {self.params.D}-th power {p!r}")
        for combo in self.relation_basis():
            p = self._product(combo)
            if not p.is_scalar():
                raise AssertionError("relation-basis product is not scalar")
            if p.phase:
                raise FrustrationError(
                    f"null combination {combo.tolist()} evaluates to w^{p.phase}")


def group_order(group: StabGroup) -> int:
    return group.group_order()


def phase_consistency(group: StabGroup) -> bool:
    return group.phase_consistency()


def gsd(model: ModelId, lattice: Lattice, params: ModelParams,
        verbose: bool = False) -> int:
    """Ground-state degeneracy: Hilbert dimension (2N)^E over the
    stabilizer group order, after an exact unfrustratedness check."""
    info = gsd_report(model, lattice, params)
    return info["gsd"]


def gsd_report(model: ModelId, lattice: Lattice, params: ModelParams) -> dict:
    terms = build_hamiltonian(model, lattice, params)
    group = StabGroup(params, terms, lattice)
    group.check_commuting()
    group.assert_phase_consistent()
    order = group.group_order()
    hilbert = params.D ** group.n_edges
    if hilbert % order:
        raise AssertionError("group order does not divide the Hilbert dimension")
    facs = group.invariant_factors()
    histogram: dict[int, int] = {}
    for d in facs:
        if d != params.D:
            histogram[d] = histogram.get(d, 0) + 1
    return {
        "model": model.value,
        "lattice": lattice.describe(),
        "qudits": group.n_edges,
        "hilbert_dim": hilbert,
        "generators": len(terms),
        "group_order": order,
        "gsd": hilbert // order,
        "nontrivial_invariant_factors": histogram,
    }


def separator_independence(separators: list[PauliOp], constrained_dim: int,
                           constraints: list[PauliOp] = (),
                           params: ModelParams | None = None,
                           lattice: Lattice | None = None) -> bool:
    """Do the separators' joint eigenvalues single out one-dimensional
    spaces within the constrained algebra?

    For Pauli input the group is counted modulo the constraint group
    (SNF both ways); true iff the quotient order equals constrained_dim
    and no null combination carries a phase.
    """
    if params is None:
        params = separators[0].params
    ops = [(("sep", i), s) for i, s in enumerate(separators)]
    cons = [(("con", i), c) for i, c in enumerate(constraints)]
    big = StabGroup(params, ops + cons, lattice)
    big.check_commuting()
    orders = [s ** params.D == PauliOp.identity(params) for s in separators]
    if not all(orders):
        raise ValueError("separator of order exceeding 2N")
    big.assert_phase_consistent()
    quotient = big.group_order()
    if cons:
        small = StabGroup(params, cons, lattice)
        quotient //= small.group_order()
    return quotient == constrained_dim
