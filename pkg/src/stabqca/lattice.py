"""Cubic lattice geometry: torus and slab, indexing and incidence.

Cells are integer triples.  An edge is (base cell, direction) with
direction 0,1,2 for x,y,z; the edge runs from its base cell to the next
cell in that direction.  A plaquette is (base cell, normal direction).
A cube is its base cell.

Orientation conventions (validated globally by the relation catalog in
stabqca.models):

* plaquette (b, d) with transverse directions u = d+1, w = d+2 (cyclic)
  has corners, counterclockwise as seen from +d:  b, b+u, b+u+w, b+w.
  Its numbered vertices are v1 = b+u+w (far corner), v2 = b+w, v3 = b,
  v4 = b+u, and its O edge is the d-edge based at the far corner.
* cube c has vertex 1 at c+(1,1,1) and vertex 8 at c; the outward-oriented
  face product is (far faces) * (base faces)^dagger.

The slab has periodic x and y, M+1 vertex layers z = 0..M, upper boundary
plane U at z = M and lower plane L at z = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Cell = tuple[int, int, int]
EdgeId = tuple[Cell, int]
PlaqId = tuple[Cell, int]

_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class OutOfLatticeError(ValueError):
    """An operator factor landed on an edge that the lattice does not contain."""


def _add(c: Cell, d: Cell) -> Cell:
    return (c[0] + d[0], c[1] + d[1], c[2] + d[2])


@dataclass(frozen=True)
class Lattice:
    kind: str                 # "torus" or "slab"
    dims: tuple[int, int, int]  # (Lx, Ly, Lz) or (Lx, Ly, M)

    def __post_init__(self):
        lx, ly, lz = self.dims
        if self.kind == "torus":
            if min(lx, ly, lz) < 2:
                raise ValueError("torus needs all dimensions >= 2 "
                                 "(minimal legal size 2x2x2)")
        elif self.kind == "slab":
            if lx < 2 or ly < 2 or lx * ly < 4:
                raise ValueError("slab needs at least 4 vertices per layer "
                                 "(minimal legal size 2x2)")
            if lz < 0:
                raise ValueError("slab needs M >= 0 layers of cubes")
        else:
            raise ValueError(f"unknown lattice kind {self.kind!r}")

    # -- counts ---------------------------------------------------------

    @property
    def n_xy(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def n_vertices(self) -> int:
        if self.kind == "torus":
            return self.n_xy * self.dims[2]
        return self.n_xy * (self.dims[2] + 1)

    @property
    def n_edges(self) -> int:
        if self.kind == "torus":
            return 3 * self.n_vertices
        return (3 * self.dims[2] + 2) * self.n_xy

    @property
    def n_plaquettes(self) -> int:
        if self.kind == "torus":
            return 3 * self.n_vertices
        return (3 * self.dims[2] + 1) * self.n_xy

    @property
    def n_cubes(self) -> int:
        if self.kind == "torus":
            return self.n_vertices
        return self.dims[2] * self.n_xy

    # -- canonicalization ----------------------------------------------

    def vertex(self, cell: Cell) -> Cell | None:
        """Canonical vertex id, or None if off the lattice."""
        lx, ly, lz = self.dims
        x, y, z = cell[0] % lx, cell[1] % ly, cell[2]
        if self.kind == "torus":
            return (x, y, z % lz)
        if 0 <= z <= lz:
            return (x, y, z)
        return None

    def edge(self, cell: Cell, direction: int) -> EdgeId | None:
        """Canonical edge id, or None if the edge is absent (slab only)."""
        lx, ly, lz = self.dims
        x, y, z = cell[0] % lx, cell[1] % ly, cell[2]
        if self.kind == "torus":
            return ((x, y, z % lz), direction)
        zmax = lz - 1 if direction == 2 else lz
        if 0 <= z <= zmax:
            return ((x, y, z), direction)
        return None

    def has_edge(self, e: EdgeId) -> bool:
        return self.edge(e[0], e[1]) == e

    def plaquette(self, cell: Cell, normal: int) -> PlaqId | None:
        lx, ly, lz = self.dims
        x, y, z = cell[0] % lx, cell[1] % ly, cell[2]
        if self.kind == "torus":
            return ((x, y, z % lz), normal)
        zmax = lz if normal == 2 else lz - 1
        if 0 <= z <= zmax:
            return ((x, y, z), normal)
        return None

    # -- enumeration ----------------------------------------------------

    def _cells(self, zmin: int, zmax: int):
        lx, ly, _ = self.dims
        for z in range(zmin, zmax + 1):
            for y in range(ly):
                for x in range(lx):
                    yield (x, y, z)

    def vertices(self):
        top = self.dims[2] - 1 if self.kind == "torus" else self.dims[2]
        yield from self._cells(0, top)

    def edges(self):
        for d in range(3):
            if self.kind == "torus":
                top = self.dims[2] - 1
            else:
                top = self.dims[2] - 1 if d == 2 else self.dims[2]
            for c in self._cells(0, top):
                yield (c, d)

    def plaquettes(self):
        for d in range(3):
            if self.kind == "torus":
                top = self.dims[2] - 1
            else:
                top = self.dims[2] if d == 2 else self.dims[2] - 1
            for c in self._cells(0, top):
                yield (c, d)

    def cubes(self):
        top = self.dims[2] - 1
        yield from self._cells(0, top)

    def boundary_plaquettes(self, plane: str):
        """z-normal plaquettes in plane 'U' (z = M) or 'L' (z = 0)."""
        if self.kind != "slab":
            raise ValueError("boundary planes exist only on the slab")
        z = self.dims[2] if plane == "U" else 0
        for c in self._cells(z, z):
            yield (c, 2)

    def boundary_vertices(self, plane: str):
        if self.kind != "slab":
            raise ValueError("boundary planes exist only on the slab")
        z = self.dims[2] if plane == "U" else 0
        yield from self._cells(z, z)

    # -- incidence ------------------------------------------------------

    def edge_vertices(self, e: EdgeId) -> tuple[Cell, Cell]:
        cell, d = e
        return self.vertex(cell), self.vertex(_add(cell, _UNIT[d]))

    def incident_edges(self, v: Cell) -> list[EdgeId]:
        """Edges containing vertex v (6 in the bulk, 5 or 4 on slab planes)."""
        out = []
        for d in range(3):
            for base in (v, _add(v, tuple(-u for u in _UNIT[d]))):
                e = self.edge(base, d)
                if e is not None:
                    out.append(e)
        return out

    def plaquette_corners(self, p: PlaqId) -> list[Cell]:
        """Corners in counterclockwise cycle order starting from the base."""
        b, d = p
        u, w = _UNIT[(d + 1) % 3], _UNIT[(d + 2) % 3]
        return [self.vertex(b), self.vertex(_add(b, u)),
                self.vertex(_add(_add(b, u), w)), self.vertex(_add(b, w))]

    def plaquette_vertex(self, p: PlaqId, label: int) -> Cell:
        """Numbered vertex of p: 1 = far corner, then 2,3,4 counterclockwise."""
        corners = self.plaquette_corners(p)
        # cycle order (base, +u, far, +w) re-read starting at the far corner
        order = {1: 2, 2: 3, 3: 0, 4: 1}
        return corners[order[label]]

    def plaquette_edges(self, p: PlaqId) -> list[tuple[EdgeId | None, int]]:
        """The four boundary edges with circulation signs (counterclockwise
        from +normal); absent slab edges appear as None."""
        b, d = p
        du, dw = (d + 1) % 3, (d + 2) % 3
        u, w = _UNIT[du], _UNIT[dw]
        return [(self.edge(b, du), 1),
                (self.edge(_add(b, u), dw), 1),
                (self.edge(_add(b, w), du), -1),
                (self.edge(b, dw), -1)]

    def plaquette_o_edge(self, p: PlaqId) -> EdgeId | None:
        """The O edge: the normal-direction edge at the far corner of p."""
        b, d = p
        u, w = _UNIT[(d + 1) % 3], _UNIT[(d + 2) % 3]
        return self.edge(_add(_add(b, u), w), d)

    def cube_faces(self, c: Cell) -> list[tuple[PlaqId, int]]:
        """Six faces of cube c with outward orientation: +1 for the far
        faces (adjacent to vertex 1), -1 (dagger) for the base faces."""
        out = []
        for d in range(3):
            out.append((self.plaquette(_add(c, _UNIT[d]), d), 1))
        for d in range(3):
            out.append((self.plaquette(c, d), -1))
        return out

    def cube_vertex1(self, c: Cell) -> Cell:
        return self.vertex(_add(c, (1, 1, 1)))

    def cube_vertex8(self, c: Cell) -> Cell:
        return self.vertex(c)

    def plaquettes_of_edge(self, e: EdgeId) -> list[PlaqId]:
        """Plaquettes containing edge e (4 on a torus, fewer near boundary)."""
        cell, d = e
        out = []
        for dn in range(3):
            if dn == d:
                continue
            # e lies on the boundary of plaquettes whose transverse pair
            # includes direction d
            dother = 3 - d - dn
            for base in (cell, _add(cell, tuple(-u for u in _UNIT[dother]))):
                p = self.plaquette(base, dn)
                if p is not None and any(ed == e for ed, _ in self.plaquette_edges(p)):
                    out.append(p)
        return out

    def describe(self) -> str:
        lx, ly, lz = self.dims
        if self.kind == "torus":
            return f"torus {lx}x{ly}x{lz}"
        return f"slab {lx}x{ly} M={lz}"


def build_lattice(kind: str, dims: tuple[int, int, int]) -> Lattice:
    return Lattice(kind, tuple(dims))


def torus(lx: int, ly: int, lz: int) -> Lattice:
    return Lattice("torus", (lx, ly, lz))


def slab(lx: int, ly: int, m: int) -> Lattice:
    return Lattice("slab", (lx, ly, m))
