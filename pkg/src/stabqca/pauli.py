"""Generalized Pauli operators over Z_2N qudits on lattice edges.

A PauliOp is stored in per-site normal form  w^phase * prod_e X_e^a Z_e^b
where w = exp(i*pi/(2N)) and the phase exponent lives mod 4N.  The clock
and shift algebra is Z X = w^2 X Z, i.e. Z X = exp(i*pi/N) X Z.

Diagonal (Z-type and phase) factors are applied first, so an operator
written as "X then Z on the same site" in product notation is exactly
the stored normal form with no conversion phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from stabqca.laurent import SympVec
from stabqca.lattice import EdgeId, Lattice, OutOfLatticeError


def make_m(n: int) -> int:
    """The integer m with 3m = -1 mod 2N, N = 2^n.

    Closed form m = ((3 + (-1)^n)/2 * 2^(n+1) - 1) / 3.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    num = (3 + (-1) ** n) // 2 * 2 ** (n + 1) - 1
    assert num % 3 == 0
    m = num // 3
    assert (3 * m) % (2 ** (n + 1)) == 2 ** (n + 1) - 1
    return m


@dataclass(frozen=True)
class ModelParams:
    """Derived constants for the Z_2N qudit family: N = 2^n, D = 2N."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if 2 * self.N > 2 ** 16:
            raise ValueError("moduli above 2^16 are out of scope")

    @property
    def N(self) -> int:
        return 2 ** self.n

    @property
    def D(self) -> int:
        """Qudit dimension 2N."""
        return 2 * self.N

    @property
    def m(self) -> int:
        return make_m(self.n)

    @property
    def phase_mod(self) -> int:
        """Global phases are exponents of exp(i*pi/(2N)), mod 4N."""
        return 4 * self.N


@lru_cache(maxsize=8)
def params_for(n: int) -> ModelParams:
    return ModelParams(n)


class PauliOp:
    """w^phase * prod_e X_e^a Z_e^b with exponents mod 2N, phase mod 4N."""

    __slots__ = ("params", "phase", "factors", "_hash")

    def __init__(self, params: ModelParams, phase: int = 0,
                 factors: dict[EdgeId, tuple[int, int]] | None = None):
        D = params.D
        clean = {}
        for e, (a, b) in (factors or {}).items():
            a %= D
            b %= D
            if a or b:
                clean[e] = (a, b)
        self.params = params
        self.phase = phase % params.phase_mod
        self.factors = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, params: ModelParams) -> "PauliOp":
        return cls(params)

    @classmethod
    def scalar(cls, params: ModelParams, phase: int) -> "PauliOp":
        return cls(params, phase)

    @classmethod
    def single(cls, params: ModelParams, edge: EdgeId, x: int, z: int,
               phase: int = 0) -> "PauliOp":
        return cls(params, phase, {edge: (x, z)})

    # -- queries ------------------------------------------------------------

    def is_identity(self) -> bool:
        return not self.factors and self.phase == 0

    def is_scalar(self) -> bool:
        return not self.factors

    def support(self) -> set[EdgeId]:
        return set(self.factors)

    def x_exp(self, e: EdgeId) -> int:
        return self.factors.get(e, (0, 0))[0]

    def z_exp(self, e: EdgeId) -> int:
        return self.factors.get(e, (0, 0))[1]

    # -- algebra -------------------------------------------------------------

    def _check(self, other: "PauliOp") -> None:
        if self.params != other.params:
            raise ValueError("operators built for different qudit parameters")

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        """Normal-ordered product; reordering Z^b past X^a costs w^(2ab)."""
        self._check(other)
        D = self.params.D
        phase = self.phase + other.phase
        factors = dict(self.factors)
        for e, (a2, b2) in other.factors.items():
            a1, b1 = factors.get(e, (0, 0))
            phase += 2 * ((b1 * a2) % D)
            factors[e] = (a1 + a2, b1 + b2)
        return PauliOp(self.params, phase, factors)

    def dagger(self) -> "PauliOp":
        phase = -self.phase
        factors = {}
        for e, (a, b) in self.factors.items():
            phase += 2 * ((a * b) % self.params.D)
            factors[e] = (-a, -b)
        return PauliOp(self.params, phase, factors)

    def __pow__(self, k: int) -> "PauliOp":
        if k < 0:
            return (self ** (-k)).dagger()
        result = PauliOp.identity(self.params)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def with_phase(self, extra: int) -> "PauliOp":
        return PauliOp(self.params, self.phase + extra, self.factors)

    def comm_exponent(self, other: "PauliOp") -> int:
        """c with self*other = w^(2c) other*self; c = 0 commuting,
        c = N anticommuting, all mod 2N."""
        self._check(other)
        D = self.params.D
        c = 0
        for e, (a1, b1) in self.factors.items():
            a2, b2 = other.factors.get(e, (0, 0))
            c += b1 * a2 - a1 * b2
        return c % D

    def commutes_with(self, other: "PauliOp") -> bool:
        return self.comm_exponent(other) == 0

    # -- plumbing ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOp):
            return NotImplemented
        return (self.params == other.params and self.phase == other.phase
                and self.factors == other.factors)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, self.phase,
                               tuple(sorted(self.factors.items()))))
        return self._hash

    def __repr__(self) -> str:
        parts = [f"w^{self.phase}"] if self.phase else []
        for e, (a, b) in sorted(self.factors.items()):
            site = f"{e[0]},{'xyz'[e[1]]}"
            if a:
                parts.append(f"X[{site}]^{a}" if a != 1 else f"X[{site}]")
            if b:
                parts.append(f"Z[{site}]^{b}" if b != 1 else f"Z[{site}]")
        return "PauliOp(" + (" ".join(parts) or "I") + ")"

    def to_json(self) -> dict:
        return {
            "D": self.params.D,
            "phase_exp": self.phase,
            "factors": [
                {"cell": list(e[0]), "dir": e[1], "x": a, "z": b}
                for e, (a, b) in sorted(self.factors.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PauliOp":
        D = data["D"]
        n = D.bit_length() - 2
        params = params_for(n)
        if params.D != D:
            raise ValueError(f"D = {D} is not twice a power of two")
        factors = {}
        for f in data["factors"]:
            factors[(tuple(f["cell"]), f["dir"])] = (f["x"], f["z"])
        return cls(params, data["phase_exp"], factors)


def comm_exponent(a: PauliOp, b: PauliOp) -> int:
    return a.comm_exponent(b)


def pauli_mul(a: PauliOp, b: PauliOp) -> PauliOp:
    return a * b


def pauli_pow(a: PauliOp, k: int) -> PauliOp:
    return a ** k


def instantiate(vec: SympVec, cell: tuple[int, int, int], lattice: Lattice,
                params: ModelParams, phase_exp: int = 0,
                truncate: bool = False) -> PauliOp:
    """Place a translation-invariant symplectic vector at a lattice cell.

    Rows 0..2 are X-type exponents on the x,y,z edges, rows 3..5 Z-type.
    A monomial x^i y^j z^k acts at cell + (i,j,k); on the torus the offset
    wraps, on the slab out-of-lattice factors either raise or are dropped
    when truncate=True.
    """
    if vec.modulus != params.D:
        raise ValueError(f"vector modulus {vec.modulus} != qudit order {params.D}")
    if vec.q != 3:
        raise ValueError("lattice instantiation needs q = 3 vectors")
    exps: dict[EdgeId, list[int]] = {}
    for row in range(6):
        direction = row % 3
        is_z = row >= 3
        for (i, j, k), c in vec.entries[row].terms.items():
            target = (cell[0] + i, cell[1] + j, cell[2] + k)
            e = lattice.edge(target, direction)
            if e is None:
                if truncate:
                    continue
                raise OutOfLatticeError(
                    f"factor at cell {target} direction {direction} is outside {lattice.describe()}")
            pair = exps.setdefault(e, [0, 0])
            pair[1 if is_z else 0] += c
    return PauliOp(params, phase_exp, {e: (p[0], p[1]) for e, p in exps.items()})


def truncate(op: PauliOp, lattice: Lattice) -> PauliOp:
    """Drop factors on edges absent from `lattice`; the phase is kept."""
    kept = {e: xz for e, xz in op.factors.items() if lattice.has_edge(e)}
    return PauliOp(op.params, op.phase, kept)


def pair_predicts_commutation(u: SympVec, v: SympVec, lattice: Lattice,
                              params: ModelParams, offset) -> bool:
    """Polynomial/lattice consistency: the symplectic pairing predicts the
    commutation exponent of the instantiated operators.

    With P = u'Ωv, the operators u at the origin and v at cell offset t
    satisfy comm_exponent = -sum of P's coefficients over the monomials
    that wrap onto -t."""
    if lattice.kind != "torus":
        raise ValueError("consistency check runs on tori")
    from stabqca.laurent import symp_pair
    pair = symp_pair(u, v)
    lx, ly, lz = lattice.dims
    predicted = 0
    for (i, j, k), c in pair.terms.items():
        if ((i + offset[0]) % lx, (j + offset[1]) % ly, (k + offset[2]) % lz) == (0, 0, 0):
            predicted -= c
    a = instantiate(u, (0, 0, 0), lattice, params)
    b = instantiate(v, offset, lattice, params)
    return a.comm_exponent(b) == predicted % params.D
