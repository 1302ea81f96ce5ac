"""Certificates for the three-fermion QCA over F2 Laurent polynomials.

The automaton is a 12x12 matrix of F2[x,y,z,1/x,1/y,1/z] entries assembled
from four published 12x3 blocks (two separator families, two flipper
families).  Its two exactly checkable contracts are that it squares to the
identity and that it preserves the symplectic form (so separators commute,
flippers commute, and flipper i anticommutes with separator i only).
"""

from __future__ import annotations

import hashlib
from importlib import resources

from stabqca.laurent import LaurentPoly, SympMatrix, SympVec, parse_poly, symplectic_form

DATA_SHA256 = "ef2c4d33a0b0bd680b38662dd6a2183b5d0e59a06b9f240284320c1a38c68ecd"

BLOCK_NAMES = ("B1", "B2", "F1", "F2")


class IntegrityError(RuntimeError):
    """The transcribed matrix data does not match its recorded checksum."""


class Qca3f:
    """The 12x12 involution (B1 B2 F1 F2) and its four blocks."""

    def __init__(self, blocks: dict[str, SympMatrix]):
        self.blocks = blocks
        cols = []
        for name in BLOCK_NAMES:
            b = blocks[name]
            if (b.rows, b.cols, b.modulus) != (12, 3, 2):
                raise ValueError(f"block {name} must be 12x3 over F2")
            cols.append(b)
        grid = [[cols[j // 3][i, j % 3] for j in range(12)] for i in range(12)]
        self.matrix = SympMatrix(2, grid)

    def block(self, name: str) -> SympMatrix:
        return self.blocks[name]


def _read_data() -> str:
    return resources.files("stabqca").joinpath(
        "data/three_fermion_qca.txt").read_text()


def load_matrices(text: str | None = None, check: bool = True) -> Qca3f:
    """Load the transcribed blocks; with check=True the file hash must
    match the recorded value (the data is primary, transcription errors
    must fail loudly)."""
    if text is None:
        text = _read_data()
        if check:
            digest = hashlib.sha256(text.encode()).hexdigest()
            if digest != DATA_SHA256:
                raise IntegrityError(
                    f"matrix data checksum {digest} != recorded {DATA_SHA256}")
    blocks: dict[str, list[list[LaurentPoly]]] = {}
    current: str | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            blocks[current] = []
            continue
        if current is None:
            raise ValueError(f"entry before any block header: {line!r}")
        row = [parse_poly(cell, 2) for cell in line.split("|")]
        if len(row) != 3:
            raise ValueError(f"block {current} row has {len(row)} entries")
        blocks[current].append(row)
    for name in BLOCK_NAMES:
        if len(blocks.get(name, ())) != 12:
            raise ValueError(f"block {name} must have 12 rows")
    return Qca3f({name: SympMatrix(2, rows) for name, rows in blocks.items()})


def verify_square_identity(qca: Qca3f) -> bool:
    """alpha^2 = 1 as a 12x12 polynomial matrix identity."""
    return qca.matrix @ qca.matrix == SympMatrix.identity(2, 12)


def verify_symplectic(qca: Qca3f) -> bool:
    """alpha' Omega alpha = Omega with ' = transpose + spatial inversion."""
    omega = symplectic_form(6, 2)
    return qca.matrix.dagger() @ omega @ qca.matrix == omega


def apply(qca: Qca3f, v: SympVec) -> SympVec:
    """Image of a symplectic vector (12 F2 polynomial entries)."""
    if v.modulus != 2 or len(v.entries) != 12:
        raise ValueError("vector must have 12 entries over F2")
    return qca.matrix @ v


def locality_radius(qca: Qca3f) -> int:
    """Largest Chebyshev radius of any monomial in the matrix: the
    propagation bound of the automaton (2 for the published data)."""
    r = 0
    for row in qca.matrix.entries:
        for e in row:
            for (i, j, k) in e.terms:
                r = max(r, abs(i), abs(j), abs(k))
    return r


def unit_vector(index: int) -> SympVec:
    """Basis vector in the 12-component ordering
    (Z1x Z1y Z1z Z2x Z2y Z2z X1x X1y X1z X2x X2y X2z)."""
    one = LaurentPoly.const(2, 1)
    zero = LaurentPoly.zero(2)
    return SympVec(2, [one if i == index else zero for i in range(12)])
