"""Exact shift-times-diagonal operators on mixed qudit/qubit registers.

A PhaseTableOp acts as |c> -> w^f(c) |c + shift> where w = exp(i*pi/(2N)),
c ranges over configurations of a finite set of sites (each with its own
modulus) and f is an exact integer-valued phase function mod 4N.

f is stored in its unique interaction decomposition
    f(c) = const + sum_S w_S(c_S)
over nonempty site subsets S, where each component w_S vanishes whenever
any of its arguments is zero.  Composition, conjugation by controlled-X
circuits and restriction to pinned qubits all act component-wise, so an
operator's cost scales with the number of local factors rather than with
the full table over its support.
"""

from __future__ import annotations

from itertools import product as iproduct

from stabqca.lattice import EdgeId
from stabqca.pauli import ModelParams

Site = tuple  # ("A"|"B", edge) in the lattice models; any hashable id works


class ConstraintViolationError(ValueError):
    """An operator was restricted at a site whose occupation it shifts."""


class MixedRegister:
    """Site moduli for a register of Z_N qudits ("A" sites) and qubits
    ("B" sites)."""

    def __init__(self, params: ModelParams):
        self.params = params

    def modulus(self, site: Site) -> int:
        kind = site[0]
        if kind == "A":
            return self.params.N
        if kind == "B":
            return 2
        raise ValueError(f"unknown site kind in {site!r}")

    def site_moduli(self, sites) -> dict:
        return {s: self.modulus(s) for s in sites}


def a_site(edge: EdgeId) -> Site:
    return ("A", edge)


def b_site(edge: EdgeId) -> Site:
    return ("B", edge)


def _decompose(sites: tuple, moduli: dict, raw: dict, phase_mod: int):
    """Interaction decomposition of a raw table over the full config space
    of `sites`.  Returns (const, {subset sites tuple: {config: value}})."""
    if not sites:
        return (raw.get((), 0) % phase_mod), {}
    ranges = [range(moduli[s]) for s in sites]
    configs = sorted(iproduct(*ranges), key=lambda c: sum(v != 0 for v in c))
    const = 0
    comps: dict[tuple, dict] = {}
    for c in configs:
        supp = tuple(i for i, v in enumerate(c) if v)
        if not supp:
            const = raw.get(c, 0) % phase_mod
            continue
        val = raw.get(c, 0) - const
        for r in range(1, 1 << len(supp)):
            idxs = tuple(supp[i] for i in range(len(supp)) if r >> i & 1)
            if len(idxs) == len(supp):
                continue
            sub = comps.get(tuple(sites[i] for i in idxs))
            if sub:
                val -= sub.get(tuple(c[i] for i in idxs), 0)
        val %= phase_mod
        if val:
            comps.setdefault(tuple(sites[i] for i in supp), {})[
                tuple(c[i] for i in supp)] = val
    return const, comps


def _translate_component(sites: tuple, table: dict, moduli: dict,
                         shift: dict, phase_mod: int, negate: bool = False):
    """Raw table of c -> (+/-) w_sites(c + shift), over the full config
    space (ready for re-decomposition)."""
    ranges = [range(moduli[s]) for s in sites]
    svec = [shift.get(s, 0) for s in sites]
    raw = {}
    sign = -1 if negate else 1
    for c in iproduct(*ranges):
        shifted = tuple((v + s) % moduli[site]
                        for v, s, site in zip(c, svec, sites))
        if all(shifted):
            v = table.get(shifted, 0)
            if v:
                raw[c] = sign * v % phase_mod
    return raw


class PhaseTableOp:
    """|c> -> w^(phase + sum of diag components at c) |c + shift>."""

    __slots__ = ("params", "moduli", "shift", "phase", "diag", "_hash")

    def __init__(self, params: ModelParams, moduli: dict | None = None,
                 shift: dict | None = None, phase: int = 0,
                 diag: dict | None = None):
        self.params = params
        self.phase = phase % params.phase_mod
        shift = {s: v % moduli[s] for s, v in (shift or {}).items() if v % moduli[s]} \
            if shift else {}
        diag = {sites: dict(tab) for sites, tab in (diag or {}).items() if tab}
        used = set(shift)
        for sites in diag:
            used.update(sites)
        self.moduli = {s: (moduli or {})[s] for s in used}
        self.shift = shift
        self.diag = diag
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, params: ModelParams) -> "PhaseTableOp":
        return cls(params)

    @classmethod
    def scalar(cls, params: ModelParams, phase: int) -> "PhaseTableOp":
        return cls(params, phase=phase)

    @classmethod
    def from_factors(cls, params: ModelParams, moduli: dict,
                     shift: dict | None = None, phase: int = 0,
                     factors: list | None = None) -> "PhaseTableOp":
        """Build from raw local factors [(sites tuple, full table dict)]."""
        total_phase = phase
        diag: dict[tuple, dict] = {}
        for sites, raw in factors or []:
            sites = tuple(sites)
            order = tuple(sorted(range(len(sites)), key=lambda i: sites[i]))
            ssites = tuple(sites[i] for i in order)
            sraw = {tuple(c[i] for i in order): v for c, v in raw.items()}
            const, comps = _decompose(ssites, moduli, sraw, params.phase_mod)
            total_phase += const
            _merge(diag, comps, params.phase_mod)
        return cls(params, moduli, shift, total_phase, diag)

    # -- structure ---------------------------------------------------------

    def support(self) -> set:
        return set(self.moduli)

    def is_scalar(self) -> bool:
        return not self.shift and not self.diag

    def is_identity(self) -> bool:
        return self.is_scalar() and self.phase == 0

    def scalar_exponent(self) -> int:
        if not self.is_scalar():
            raise ValueError("operator is not a scalar: "
                             f"shift on {sorted(self.shift)}, "
                             f"diagonal on {sorted(self.diag)}")
        return self.phase

    def with_phase(self, extra: int) -> "PhaseTableOp":
        return PhaseTableOp(self.params, self.moduli, self.shift,
                            self.phase + extra, self.diag)

    def diag_value(self, config: dict) -> int:
        """Evaluate the phase function at a configuration (default 0)."""
        val = self.phase
        for sites, tab in self.diag.items():
            key = tuple(config.get(s, 0) for s in sites)
            if all(key):
                val += tab.get(key, 0)
        return val % self.params.phase_mod

    # -- algebra -------------------------------------------------------------

    def __mul__(self, other: "PhaseTableOp") -> "PhaseTableOp":
        return compose(self, other)

    def dagger(self) -> "PhaseTableOp":
        params = self.params
        moduli = dict(self.moduli)
        neg_shift = {s: -v for s, v in self.shift.items()}
        phase = -self.phase
        diag: dict[tuple, dict] = {}
        for sites, tab in self.diag.items():
            if any(neg_shift.get(s) for s in sites):
                raw = _translate_component(sites, tab, moduli, neg_shift,
                                           params.phase_mod, negate=True)
                const, comps = _decompose(sites, moduli, raw, params.phase_mod)
                phase += const
                _merge(diag, comps, params.phase_mod)
            else:
                _merge(diag, {sites: {c: -v for c, v in tab.items()}},
                       params.phase_mod)
        return PhaseTableOp(params, moduli, neg_shift, phase, diag)

    def __pow__(self, k: int) -> "PhaseTableOp":
        if k < 0:
            return (self ** (-k)).dagger()
        out = PhaseTableOp.identity(self.params)
        for _ in range(k):
            out = compose(self, out)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseTableOp):
            return NotImplemented
        return (self.params == other.params and self.phase == other.phase
                and self.shift == other.shift and self.diag == other.diag)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((
                self.params, self.phase,
                tuple(sorted(self.shift.items())),
                tuple(sorted((s, tuple(sorted(t.items())))
                             for s, t in self.diag.items())),
            ))
        return self._hash

    def __repr__(self) -> str:
        bits = []
        if self.phase:
            bits.append(f"w^{self.phase}")
        for s, v in sorted(self.shift.items()):
            bits.append(f"shift[{_site_str(s)}]+{v}")
        for sites, tab in sorted(self.diag.items()):
            name = ",".join(_site_str(s) for s in sites)
            bits.append(f"diag({name}):{sorted(tab.items())}")
        return "PhaseTableOp(" + ("; ".join(bits) or "I") + ")"

    def to_json(self) -> dict:
        """Factored serialization: register, shift, and the diagonal's local
        factors; bit-exact round trip via from_json."""
        def site_json(s):
            return [s[0], [list(s[1][0]), s[1][1]]]
        return {
            "N": self.params.N,
            "phase_exp": self.phase,
            "register": [[site_json(s), m] for s, m in sorted(self.moduli.items())],
            "shift": [[site_json(s), v] for s, v in sorted(self.shift.items())],
            "diag": [
                {"sites": [site_json(s) for s in sites],
                 "table": [[list(c), v] for c, v in sorted(tab.items())]}
                for sites, tab in sorted(self.diag.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PhaseTableOp":
        from stabqca.pauli import params_for
        n = data["N"].bit_length() - 1
        params = params_for(n)
        if params.N != data["N"]:
            raise ValueError("N must be a power of two")

        def site(js):
            return (js[0], (tuple(js[1][0]), js[1][1]))

        moduli = {site(s): m for s, m in data["register"]}
        shift = {site(s): v for s, v in data["shift"]}
        diag = {}
        for comp in data["diag"]:
            sites = tuple(site(s) for s in comp["sites"])
            diag[sites] = {tuple(c): v for c, v in comp["table"]}
        return cls(params, moduli, shift, data["phase_exp"], diag)


def _site_str(site) -> str:
    try:
        kind, (cell, d) = site
        return f"{kind}{cell}{'xyz'[d]}"
    except Exception:
        return repr(site)


def _merge(diag: dict, comps: dict, phase_mod: int) -> None:
    for sites, tab in comps.items():
        dst = diag.setdefault(sites, {})
        for c, v in tab.items():
            nv = (dst.get(c, 0) + v) % phase_mod
            if nv:
                dst[c] = nv
            else:
                dst.pop(c, None)
        if not dst:
            diag.pop(sites)


def compose(a: PhaseTableOp, b: PhaseTableOp) -> PhaseTableOp:
    """Operator product a b (b acts first): shifts add, a's phase function
    is evaluated on the configuration already shifted by b."""
    if a.params != b.params:
        raise ValueError("operators built for different parameters")
    params = a.params
    moduli = dict(b.moduli)
    for s, m in a.moduli.items():
        if moduli.setdefault(s, m) != m:
            raise ValueError(f"conflicting moduli at site {s}")
    shift = dict(b.shift)
    for s, v in a.shift.items():
        nv = (shift.get(s, 0) + v) % moduli[s]
        if nv:
            shift[s] = nv
        else:
            shift.pop(s, None)
    phase = a.phase + b.phase
    diag = {sites: dict(tab) for sites, tab in b.diag.items()}
    for sites, tab in a.diag.items():
        if any(b.shift.get(s) for s in sites):
            raw = _translate_component(sites, tab, moduli, b.shift,
                                       params.phase_mod)
            const, comps = _decompose(sites, moduli, raw, params.phase_mod)
            phase += const
            _merge(diag, comps, params.phase_mod)
        else:
            _merge(diag, {sites: tab}, params.phase_mod)
    return PhaseTableOp(params, moduli, shift, phase, diag)


def restrict(op: PhaseTableOp, pinned) -> PhaseTableOp:
    """Project onto the subspace where each pinned qubit reads 0
    (Z = +1 with the convention Z|0> = +|0>).

    The operator must preserve the constraint: a nonzero shift on a pinned
    site raises ConstraintViolationError.
    """
    pinned = set(pinned)
    for s in pinned:
        if op.shift.get(s):
            raise ConstraintViolationError(
                f"operator shifts pinned site {_site_str(s)}")
    moduli = {s: m for s, m in op.moduli.items() if s not in pinned}
    diag = {sites: tab for sites, tab in op.diag.items()
            if not pinned.intersection(sites)}
    return PhaseTableOp(op.params, moduli, dict(op.shift), op.phase, diag)


def truncate_to_sites(op: PhaseTableOp, keep) -> PhaseTableOp:
    """Drop every shift component and diagonal factor not fully supported
    on `keep` (boundary truncation of a gate product)."""
    keep = set(keep)
    moduli = {s: m for s, m in op.moduli.items() if s in keep}
    shift = {s: v for s, v in op.shift.items() if s in keep}
    diag = {sites: tab for sites, tab in op.diag.items()
            if keep.issuperset(sites)}
    return PhaseTableOp(op.params, moduli, shift, op.phase, diag)


def scalar_of(op: PhaseTableOp) -> int:
    return op.scalar_exponent()


class CxCircuit:
    """A product of mutually commuting controlled-X gates whose targets are
    qubits and whose controls are other sites (the control acts through its
    parity).  Self-inverse; conjugation maps shift-diagonal operators to
    shift-diagonal operators exactly.
    """

    def __init__(self, params: ModelParams, gates, moduli: dict):
        self.params = params
        self.moduli = moduli
        targets: dict[Site, set] = {}
        for control, target in gates:
            if moduli[target] != 2:
                raise ValueError("controlled-X targets must be qubits")
            if control == target:
                raise ValueError("control and target coincide")
            s = targets.setdefault(target, set())
            s.symmetric_difference_update({control})
        self.targets = {t: tuple(sorted(cs)) for t, cs in targets.items() if cs}
        for t in self.targets:
            if t in {c for cs in self.targets.values() for c in cs}:
                raise ValueError("a target site also appears as a control; "
                                 "gates would not commute")

    def controls_of(self, target: Site) -> tuple:
        return self.targets.get(target, ())

    def conjugate(self, op: PhaseTableOp) -> PhaseTableOp:
        """U op U^dagger, exactly."""
        params = op.params
        phase_mod = params.phase_mod
        moduli = dict(self.moduli)
        moduli.update(op.moduli)
        # shift: s -> U s (targets gain the parity of their controls' shifts)
        shift = dict(op.shift)
        for t, controls in self.targets.items():
            add = sum(op.shift.get(c, 0) for c in controls)
            nv = (shift.get(t, 0) + add) % 2
            if nv:
                shift[t] = nv
            else:
                shift.pop(t, None)
        # diagonal: substitute b_t -> b_t - sum of control parities
        diag: dict[tuple, dict] = {}
        pending = [(sites, dict(tab)) for sites, tab in op.diag.items()]
        while pending:
            sites, tab = pending.pop()
            tsite = next((s for s in sites if self.targets.get(s)), None)
            if tsite is None:
                _merge(diag, {sites: tab}, phase_mod)
                continue
            ti = sites.index(tsite)
            rest = sites[:ti] + sites[ti + 1:]
            # canonical components are supported on b_t = 1 only
            g = {c[:ti] + c[ti + 1:]: v for c, v in tab.items()}
            if any(2 * v % phase_mod for v in g.values()):
                raise NotImplementedError(
                    "conjugation of a non-(2N)-valued qubit factor; "
                    "not produced by the shipped models")
            _merge(diag, {sites: tab}, phase_mod)
            for c in self.targets[tsite]:
                pending.append(_parity_times(rest, g, c, moduli, phase_mod))
        return PhaseTableOp(params, moduli, shift, op.phase, diag)


def _parity_times(rest: tuple, g: dict, control: Site, moduli: dict,
                  phase_mod: int):
    """The factor (parity of `control`) * g(rest) as (sites, table); the
    g values are multiples of 2N so the parity can be taken mod 4N."""
    if control in rest:
        ci = rest.index(control)
        tab = {}
        for c, v in g.items():
            if c[ci] % 2:
                tab[c] = v
        return rest, tab
    sites = rest + (control,)
    order = tuple(sorted(range(len(sites)), key=lambda i: sites[i]))
    ssites = tuple(sites[i] for i in order)
    tab = {}
    for c, v in g.items():
        for a in range(1, moduli[control], 2):
            full = c + (a,)
            tab[tuple(full[i] for i in order)] = v
    return ssites, tab


def conjugate_by_cx(op: PhaseTableOp, circuit: CxCircuit) -> PhaseTableOp:
    return circuit.conjugate(op)


# -- gate library ------------------------------------------------------------


def gate(kind: str, sites, params: ModelParams, moduli: dict | None = None):
    """Primitive gates.  Diagonal and shift gates return PhaseTableOp;
    "CX" and "CXhat" return a CxCircuit (conjugators).  Site moduli default
    to N for "A" sites and 2 for "B" sites.
    """
    if isinstance(sites, tuple) and sites and not isinstance(sites[0], tuple):
        sites = (sites,)
    sites = tuple(sites)
    reg = MixedRegister(params)
    if moduli is None:
        moduli = {s: reg.modulus(s) for s in sites}
    N = params.N
    twoN = 2 * N

    def op(shift=None, factors=None, phase=0):
        return PhaseTableOp.from_factors(params, moduli, shift or {}, phase,
                                         factors or [])

    s0 = sites[0]
    if kind == "X":
        _need(moduli, s0, 2, kind)
        return op(shift={s0: 1})
    if kind == "Z":
        _need(moduli, s0, 2, kind)
        return op(factors=[((s0,), {(1,): twoN})])
    if kind == "S":
        _need(moduli, s0, 2, kind)
        return op(factors=[((s0,), {(1,): N})])
    if kind == "Sdg":
        _need(moduli, s0, 2, kind)
        return op(factors=[((s0,), {(1,): -N})])
    if kind == "CZ":
        s1 = sites[1]
        _need(moduli, s0, 2, kind)
        _need(moduli, s1, 2, kind)
        return op(factors=[((s0, s1), {(1, 1): twoN})])
    if kind == "Xhat":
        _need(moduli, s0, N, kind)
        return op(shift={s0: 1})
    if kind == "Zhat":
        _need(moduli, s0, N, kind)
        return op(factors=[((s0,), {(a,): 4 * a for a in range(N)})])
    if kind == "Shat":
        _need(moduli, s0, N, kind)
        return op(factors=[((s0,), {(a,): 2 * a for a in range(N)})])
    if kind == "CZhat":
        squdit, squbit = sites
        _need(moduli, squdit, N, kind)
        _need(moduli, squbit, 2, kind)
        return op(factors=[((squdit, squbit), {(N - 1, 1): twoN})])
    if kind in ("CX", "CXhat"):
        control, target = sites
        return CxCircuit(params, [(control, target)], moduli)
    if kind == "Hconj":
        raise ValueError("Hadamard is not a shift-diagonal operator; "
                         "use h_conjugate_qubit to transform an operator")
    raise ValueError(f"unknown gate kind {kind!r}")


def _need(moduli: dict, site, expected: int, kind: str) -> None:
    if moduli[site] != expected:
        raise ValueError(f"gate {kind} needs modulus {expected} at {site}, "
                         f"got {moduli[site]}")


def h_conjugate_qubit(op: PhaseTableOp, site) -> PhaseTableOp:
    """Conjugate by a Hadamard on a qubit site whose role in op is a pure
    Pauli factor X^s Z^t: swaps the shift and the Z component, with the
    phase (-1)^(s t)."""
    params = op.params
    twoN = 2 * params.N
    if op.moduli.get(site, 2) != 2:
        raise ValueError("Hadamard conjugation needs a qubit site")
    s = op.shift.get(site, 0)
    t = 0
    diag = {}
    for sites, tab in op.diag.items():
        if site not in sites:
            diag[sites] = dict(tab)
            continue
        if len(sites) != 1:
            raise ValueError("site is entangled by a multi-site factor; "
                             "not a Pauli role")
        val = tab.get((1,), 0)
        if val % twoN:
            raise ValueError("site carries a non-Pauli diagonal")
        t = (val // twoN) % 2
    shift = {k: v for k, v in op.shift.items() if k != site}
    if t:
        shift[site] = t
    if s:
        diag[(site,)] = {(1,): twoN}
    phase = op.phase + twoN * (s * t)
    moduli = dict(op.moduli)
    moduli.setdefault(site, 2)
    return PhaseTableOp(params, moduli, shift, phase, diag)
