"""Laurent polynomial ring Z_m[x,y,z,1/x,1/y,1/z] and its symplectic vector algebra.

Everything here is exact arithmetic over Z_m in three variables.  A polynomial
is a finite map from exponent triples (i,j,k) to nonzero coefficients mod m.
Vectors of length 2q carry the symplectic pairing u'Ωv with
Ω = [[0, I_q], [-I_q, 0]] and ' = transposition combined with spatial
inversion (x -> 1/x, y -> 1/y, z -> 1/z).
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

Monomial = tuple[int, int, int]

_VARS = ("x", "y", "z")

_TERM_RE = re.compile(r"([xyz])(?:\^(-?\d+))?")


class LaurentPoly:
    """An element of Z_m[x^±1, y^±1, z^±1], stored in canonical form.

    Canonical form: no zero coefficients, coefficients in range(m), term
    order lexicographic on the exponent triple.  Instances are immutable
    and hashable.
    """

    __slots__ = ("modulus", "_terms", "_hash")

    def __init__(self, modulus: int, terms: Mapping[Monomial, int] | Iterable = ()):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus
        clean: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            c = coeff % modulus
            if c:
                i, j, k = mono
                key = (int(i), int(j), int(k))
                c = (clean.get(key, 0) + c) % modulus
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def zero(cls, modulus: int) -> "LaurentPoly":
        return cls(modulus)

    @classmethod
    def const(cls, modulus: int, c: int) -> "LaurentPoly":
        return cls(modulus, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, modulus: int, i: int, j: int, k: int, coeff: int = 1) -> "LaurentPoly":
        return cls(modulus, {(i, j, k): coeff})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, mono: Monomial) -> int:
        return self._terms.get(tuple(mono), 0)

    def constant_term(self) -> int:
        return self._terms.get((0, 0, 0), 0)

    def _check(self, other: "LaurentPoly") -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return LaurentPoly(self.modulus, terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) - c
        return LaurentPoly(self.modulus, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.modulus, {m: -c for m, c in self._terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly(self.modulus, {m: c * other for m, c in self._terms.items()})
        self._check(other)
        acc: dict[Monomial, int] = {}
        for (i1, j1, k1), c1 in self._terms.items():
            for (i2, j2, k2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return LaurentPoly(self.modulus, acc)

    def __rmul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def antipode(self) -> "LaurentPoly":
        """Spatial inversion: x^i y^j z^k -> x^-i y^-j z^-k."""
        return LaurentPoly(self.modulus, {(-i, -j, -k): c for (i, j, k), c in self._terms.items()})

    def translate(self, mono: Monomial) -> "LaurentPoly":
        """Multiply by the monomial x^i y^j z^k."""
        di, dj, dk = mono
        return LaurentPoly(self.modulus, {(i + di, j + dj, k + dk): c
                                          for (i, j, k), c in self._terms.items()})

    def cycle(self, steps: int = 1) -> "LaurentPoly":
        """Variable substitution x -> y -> z -> x, applied `steps` times."""
        s = steps % 3
        return LaurentPoly(self.modulus, {(m[(0 - s) % 3], m[(1 - s) % 3], m[(2 - s) % 3]): c
                                          for m, c in self._terms.items()})

    def change_modulus(self, modulus: int) -> "LaurentPoly":
        return LaurentPoly(modulus, self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.modulus == other.modulus and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.modulus, tuple(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j, k), c in self._terms.items():
            factors = []
            if c != 1 or (i, j, k) == (0, 0, 0):
                factors.append(str(c))
            for name, e in zip(_VARS, (i, j, k)):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            parts.append(" ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.modulus}, {self._terms!r})"


def parse_poly(text: str, modulus: int) -> LaurentPoly:
    """Parse the textual polynomial grammar.

    Terms are joined by "+" or "-"; a term is an optional integer
    coefficient followed by variable factors "x", "y^-1", ... either
    space-separated or run together ("xyz", "x y^-1").  "0" is the zero
    polynomial.
    """
    text = text.strip()
    if text in ("", "0"):
        return LaurentPoly.zero(modulus)
    # split into signed terms
    terms: dict[Monomial, int] = {}
    chunks = re.split(r"(?<!\^)([+-])", "+" + text.replace(" + ", "+").replace(" - ", "-"))
    # chunks like ['', '+', 'term', '+', 'term', ...]
    it = iter(chunks)
    first = next(it)
    if first.strip():
        raise ValueError(f"cannot parse polynomial: {text!r}")
    for sign_tok, body in zip(it, it):
        sign = 1 if sign_tok == "+" else -1
        body = body.strip()
        if not body:
            raise ValueError(f"empty term in {text!r}")
        m = re.match(r"^(\d+)?\s*(.*)$", body)
        coeff = int(m.group(1)) if m.group(1) else 1
        rest = m.group(2).replace(" ", "").replace("*", "")
        expo = [0, 0, 0]
        pos = 0
        for vm in _TERM_RE.finditer(rest):
            if vm.start() != pos:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            pos = vm.end()
            idx = _VARS.index(vm.group(1))
            expo[idx] += int(vm.group(2)) if vm.group(2) else 1
        if pos != len(rest):
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        key = (expo[0], expo[1], expo[2])
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentPoly(modulus, terms)


class SympVec:
    """A length-2q vector of Laurent polynomials with the symplectic split.

    Entries 0..q-1 are the X block, entries q..2q-1 the Z block.
    """

    __slots__ = ("modulus", "entries")

    def __init__(self, modulus: int, entries: Iterable[LaurentPoly]):
        ents = tuple(entries)
        if len(ents) % 2:
            raise ValueError("SympVec length must be even")
        for e in ents:
            if e.modulus != modulus:
                raise ValueError("entry modulus differs from vector modulus")
        self.modulus = modulus
        self.entries = ents

    @classmethod
    def zero(cls, modulus: int, q: int) -> "SympVec":
        z = LaurentPoly.zero(modulus)
        return cls(modulus, (z,) * (2 * q))

    @property
    def q(self) -> int:
        return len(self.entries) // 2

    def x_block(self) -> tuple[LaurentPoly, ...]:
        return self.entries[: self.q]

    def z_block(self) -> tuple[LaurentPoly, ...]:
        return self.entries[self.q:]

    def antipode(self) -> "SympVec":
        return SympVec(self.modulus, (e.antipode() for e in self.entries))

    def translate(self, mono: Monomial) -> "SympVec":
        return SympVec(self.modulus, (e.translate(mono) for e in self.entries))

    def cycle(self, steps: int = 1) -> "SympVec":
        """Cyclic lattice rotation: substitute x->y->z->x and rotate row
        indices 1->2->3->1 within each block."""
        s = steps % 3
        q = self.q
        if q != 3:
            raise ValueError("cycle is defined for q = 3 vectors")
        new = [None] * 6
        for blk in (0, 3):
            for i in range(3):
                new[blk + (i + s) % 3] = self.entries[blk + i].cycle(s)
        return SympVec(self.modulus, new)

    def __add__(self, other: "SympVec") -> "SympVec":
        self._check(other)
        return SympVec(self.modulus, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "SympVec") -> "SympVec":
        self._check(other)
        return SympVec(self.modulus, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "SympVec":
        return SympVec(self.modulus, (-a for a in self.entries))

    def scale(self, p: LaurentPoly | int) -> "SympVec":
        return SympVec(self.modulus, (e * p for e in self.entries))

    def _check(self, other: "SympVec") -> None:
        if self.modulus != other.modulus or len(self.entries) != len(other.entries):
            raise ValueError("incompatible vectors")

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SympVec):
            return NotImplemented
        return self.modulus == other.modulus and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.modulus, self.entries))

    def __repr__(self) -> str:
        return f"SympVec({self.modulus}, [{', '.join(str(e) for e in self.entries)}])"


def symp_pair(u: SympVec, v: SympVec) -> LaurentPoly:
    """The symplectic pairing u'Ωv as a full Laurent polynomial.

    With u = (a; b), v = (a'; b') this is sum_i (a_i)' b'_i - (b_i)' a'_i.
    The constant term is the same-cell commutation phase; the coefficient
    of a monomial t gives the phase between u at the origin and v offset
    by -t (see pauli.comm_exponent for the lattice-side convention).
    """
    u._check(v)
    q = u.q
    acc = LaurentPoly.zero(u.modulus)
    for i in range(q):
        acc = acc + u.entries[i].antipode() * v.entries[q + i]
        acc = acc - u.entries[q + i].antipode() * v.entries[i]
    return acc


class SympMatrix:
    """A dense matrix of Laurent polynomials over a common modulus."""

    __slots__ = ("modulus", "rows", "cols", "entries")

    def __init__(self, modulus: int, entries: Iterable[Iterable[LaurentPoly]]):
        grid = tuple(tuple(row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix must be nonempty")
        cols = len(grid[0])
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for e in row:
                if e.modulus != modulus:
                    raise ValueError("entry modulus differs from matrix modulus")
        self.modulus = modulus
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    @classmethod
    def identity(cls, modulus: int, n: int) -> "SympMatrix":
        one = LaurentPoly.const(modulus, 1)
        zero = LaurentPoly.zero(modulus)
        return cls(modulus, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, modulus: int, rows: int, cols: int) -> "SympMatrix":
        zero = LaurentPoly.zero(modulus)
        return cls(modulus, [[zero] * cols for _ in range(rows)])

    def __getitem__(self, rc: tuple[int, int]) -> LaurentPoly:
        return self.entries[rc[0]][rc[1]]

    def __add__(self, other: "SympMatrix") -> "SympMatrix":
        if (self.modulus, self.rows, self.cols) != (other.modulus, other.rows, other.cols):
            raise ValueError("dimension or modulus mismatch in matrix add")
        return SympMatrix(self.modulus,
                          [[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __matmul__(self, other) -> "SympMatrix | SympVec":
        if isinstance(other, SympVec):
            if len(other.entries) != self.cols or other.modulus != self.modulus:
                raise ValueError("dimension or modulus mismatch in matrix-vector product")
            out = []
            for i in range(self.rows):
                acc = LaurentPoly.zero(self.modulus)
                for j in range(self.cols):
                    acc = acc + self.entries[i][j] * other.entries[j]
                out.append(acc)
            return SympVec(self.modulus, out)
        if self.cols != other.rows or self.modulus != other.modulus:
            raise ValueError("dimension or modulus mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero(self.modulus)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return SympMatrix(self.modulus, out)

    def __mul__(self, other: "SympMatrix") -> "SympMatrix":
        return self.__matmul__(other)

    def dagger(self) -> "SympMatrix":
        """Transposition combined with spatial inversion."""
        return SympMatrix(self.modulus,
                          [[self.entries[j][i].antipode() for j in range(self.rows)]
                           for i in range(self.cols)])

    def column(self, j: int) -> SympVec:
        return SympVec(self.modulus, (self.entries[i][j] for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SympMatrix):
            return NotImplemented
        return (self.modulus == other.modulus and self.entries == other.entries)

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"SympMatrix({self.modulus}, {self.rows}x{self.cols},\n{body})"


def random_poly(modulus: int, rng, radius: int = 1, n_terms: int = 4) -> LaurentPoly:
    """Random polynomial with exponents in a Chebyshev window (tests and
    seeded CLI property rounds)."""
    terms = {}
    for _ in range(int(rng.integers(0, n_terms + 1))):
        mono = tuple(int(rng.integers(-radius, radius + 1)) for _ in range(3))
        terms[mono] = terms.get(mono, 0) + int(rng.integers(1, modulus))
    return LaurentPoly(modulus, terms)


def random_sympvec(modulus: int, rng, q: int = 3, radius: int = 1,
                   n_terms: int = 3) -> SympVec:
    return SympVec(modulus, [random_poly(modulus, rng, radius, n_terms)
                             for _ in range(2 * q)])


def symplectic_form(q: int, modulus: int) -> SympMatrix:
    """The form Ω = [[0, I_q], [-I_q, 0]] over Z_modulus."""
    one = LaurentPoly.const(modulus, 1)
    neg = LaurentPoly.const(modulus, -1)
    zero = LaurentPoly.zero(modulus)
    grid = [[zero] * (2 * q) for _ in range(2 * q)]
    for i in range(q):
        grid[i][q + i] = one
        grid[q + i][i] = neg
    return SympMatrix(modulus, grid)
