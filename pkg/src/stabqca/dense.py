"""Exact dense matrices for small registers: the verification oracle.

Every operator this package produces is a permutation times a diagonal of
roots of unity, so a dim x dim matrix is stored exactly as one root
exponent and one target index per basis column:  M|j> = w^ph[j] |perm[j]>
with w = exp(i*pi/(2N)).  Matrices here are built directly from the
defining state actions of the gates, independently of the phase-table and
Pauli machinery they are used to check.
"""

from __future__ import annotations

from math import prod

import numpy as np

from stabqca.pauli import ModelParams, PauliOp


class PermPhaseMatrix:
    """M|j> = w^ph[j] |perm[j]>, exponents mod phase_mod."""

    __slots__ = ("phase_mod", "perm", "ph")

    def __init__(self, phase_mod: int, perm, ph):
        self.phase_mod = phase_mod
        self.perm = np.asarray(perm, dtype=np.int64)
        self.ph = np.asarray(ph, dtype=np.int64) % phase_mod
        if self.perm.shape != self.ph.shape:
            raise ValueError("perm/phase shape mismatch")
        if sorted(self.perm.tolist()) != list(range(self.dim)):
            raise ValueError("not a permutation")

    @property
    def dim(self) -> int:
        return self.perm.shape[0]

    @classmethod
    def identity(cls, phase_mod: int, dim: int) -> "PermPhaseMatrix":
        return cls(phase_mod, np.arange(dim), np.zeros(dim, dtype=np.int64))

    def __matmul__(self, other: "PermPhaseMatrix") -> "PermPhaseMatrix":
        if (self.phase_mod, self.dim) != (other.phase_mod, other.dim):
            raise ValueError("incompatible matrices")
        perm = self.perm[other.perm]
        ph = other.ph + self.ph[other.perm]
        return PermPhaseMatrix(self.phase_mod, perm, ph)

    def dagger(self) -> "PermPhaseMatrix":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.dim)
        ph = np.empty_like(self.ph)
        ph[self.perm] = -self.ph
        return PermPhaseMatrix(self.phase_mod, inv, ph)

    def scale(self, exponent: int) -> "PermPhaseMatrix":
        return PermPhaseMatrix(self.phase_mod, self.perm, self.ph + exponent)

    def __pow__(self, k: int) -> "PermPhaseMatrix":
        out = PermPhaseMatrix.identity(self.phase_mod, self.dim)
        m = self
        if k < 0:
            m, k = self.dagger(), -k
        for _ in range(k):
            out = m @ out
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermPhaseMatrix):
            return NotImplemented
        return (self.phase_mod == other.phase_mod
                and np.array_equal(self.perm, other.perm)
                and np.array_equal(self.ph, other.ph))

    def to_numpy(self) -> np.ndarray:
        """Numeric complex matrix (for spot checks against sympy/numpy)."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        w = np.exp(2j * np.pi / self.phase_mod)
        for j in range(self.dim):
            out[self.perm[j], j] = w ** int(self.ph[j])
        return out

    def __repr__(self) -> str:
        return f"PermPhaseMatrix(mod={self.phase_mod}, perm={self.perm.tolist()}, ph={self.ph.tolist()})"


class Register:
    """An ordered list of site dimensions with mixed-radix indexing."""

    def __init__(self, dims: list[int]):
        self.dims = list(dims)
        self.dim = prod(self.dims) if self.dims else 1
        self.strides = []
        acc = 1
        for d in reversed(self.dims):
            self.strides.append(acc)
            acc *= d
        self.strides.reverse()

    def index(self, config) -> int:
        return sum(int(c) * s for c, s in zip(config, self.strides))

    def configs(self):
        from itertools import product as iproduct
        yield from iproduct(*(range(d) for d in self.dims))


def diagonal(phase_mod: int, reg: Register, f) -> PermPhaseMatrix:
    ph = np.zeros(reg.dim, dtype=np.int64)
    for c in reg.configs():
        ph[reg.index(c)] = f(c)
    return PermPhaseMatrix(phase_mod, np.arange(reg.dim), ph)


def permutation(phase_mod: int, reg: Register, g) -> PermPhaseMatrix:
    perm = np.zeros(reg.dim, dtype=np.int64)
    for c in reg.configs():
        perm[reg.index(c)] = reg.index(g(c))
    return PermPhaseMatrix(phase_mod, perm, np.zeros(reg.dim, dtype=np.int64))


# -- single-qudit clock and shift (dimension D = 2N) --------------------------


def clock_z(params: ModelParams, power: int = 1) -> PermPhaseMatrix:
    D = params.D
    reg = Register([D])
    return diagonal(params.phase_mod, reg, lambda c: 2 * power * c[0])


def shift_x(params: ModelParams, power: int = 1) -> PermPhaseMatrix:
    D = params.D
    reg = Register([D])
    return permutation(params.phase_mod, reg, lambda c: ((c[0] + power) % D,))


def pauli_site_matrix(params: ModelParams, x: int, z: int) -> PermPhaseMatrix:
    """X^x Z^z on one 2N-dimensional qudit: |j> -> w^(2 z j) |j + x>."""
    D = params.D
    reg = Register([D])
    perm = np.array([reg.index((((j + x) % D),)) for j in range(D)])
    ph = np.array([2 * z * j for j in range(D)])
    return PermPhaseMatrix(params.phase_mod, perm, ph)


def pauli_to_dense(op: PauliOp, edges: list) -> PermPhaseMatrix:
    """The represented matrix of a PauliOp on an explicit edge ordering:
    |c> -> w^(phase + sum 2 z_e c_e) |c + x>."""
    params = op.params
    D = params.D
    reg = Register([D] * len(edges))
    xs = [op.factors.get(e, (0, 0))[0] for e in edges]
    zs = [op.factors.get(e, (0, 0))[1] for e in edges]
    perm = np.zeros(reg.dim, dtype=np.int64)
    ph = np.zeros(reg.dim, dtype=np.int64)
    for c in reg.configs():
        perm[reg.index(c)] = reg.index(tuple((v + x) % D for v, x in zip(c, xs)))
        ph[reg.index(c)] = op.phase + 2 * sum(z * v for z, v in zip(zs, c))
    return PermPhaseMatrix(params.phase_mod, perm, ph)


def kron(a: PermPhaseMatrix, b: PermPhaseMatrix) -> PermPhaseMatrix:
    if a.phase_mod != b.phase_mod:
        raise ValueError("phase moduli differ")
    db = b.dim
    ja, jb = np.divmod(np.arange(a.dim * db), db)
    perm = a.perm[ja] * db + b.perm[jb]
    ph = a.ph[ja] + b.ph[jb]
    return PermPhaseMatrix(a.phase_mod, perm, ph)


def phase_table_to_dense(op, sites: list) -> PermPhaseMatrix:
    """The represented matrix of a PhaseTableOp on an explicit site order,
    which must cover its support (identity on extra sites)."""
    params = op.params
    missing = op.support() - set(sites)
    if missing:
        raise ValueError(f"site order misses {missing}")

    def default_modulus(s):
        return params.N if s[0] == "A" else 2

    dims = [op.moduli.get(s, default_modulus(s)) for s in sites]
    reg = Register(dims)
    perm = np.zeros(reg.dim, dtype=np.int64)
    ph = np.zeros(reg.dim, dtype=np.int64)
    for c in reg.configs():
        conf = dict(zip(sites, c))
        out = tuple((v + op.shift.get(s, 0)) % m
                    for v, s, m in zip(c, sites, dims))
        perm[reg.index(c)] = reg.index(out)
        ph[reg.index(c)] = op.diag_value(conf)
    return PermPhaseMatrix(params.phase_mod, perm, ph)
