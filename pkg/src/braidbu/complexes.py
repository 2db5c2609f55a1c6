"""Discrete configuration complexes of a graph and their cyclic quotients.

A cell of the m-particle complex is an m-tuple of graph cells (vertices or
edges) whose closures are pairwise disjoint; the dimension is the number of
edge coordinates.  Facets of a cell replace one edge coordinate by one of
its endpoints.  The symmetric group acts by permuting coordinates; the
cyclic subgroup generated by the full rotation acts freely on cells, and the
quotient complex keeps one canonical representative per orbit.
"""
from __future__ import annotations

from typing import Iterator, Union

from .errors import InvalidParameterError, PreconditionError, StructuralError
from .graphs import Coord, Graph, is_sufficiently_subdivided
from .perms import Perm

Cell = tuple[Coord, ...]


def cell_dim(cell: Cell) -> int:
    return sum(1 for c in cell if isinstance(c, str))


def act(sigma: Perm, cell: Cell) -> Cell:
    """Coordinate action: position i of the result holds coordinate sigma(i)."""
    return tuple(cell[v - 1] for v in sigma.images)


class CubeComplex:
    """The m-particle configuration complex of a graph."""

    def __init__(self, graph: Graph, m: int, cells_by_dim: dict[int, tuple[Cell, ...]]):
        self.graph = graph
        self.m = m
        self.cells_by_dim = cells_by_dim
        self._cell_set = frozenset(c for cells in cells_by_dim.values() for c in cells)
        self.base: Cell = cells_by_dim[0][0]

    # -- generic cell API --------------------------------------------------

    def sort_key(self, cell: Cell):
        return tuple(self.graph.coord_key(c) for c in cell)

    def has(self, cell: Cell) -> bool:
        return cell in self._cell_set

    def dim(self, cell: Cell) -> int:
        return cell_dim(cell)

    def all_cells(self) -> Iterator[Cell]:
        for d in sorted(self.cells_by_dim):
            yield from self.cells_by_dim[d]

    def num_cells(self, dim: int) -> int:
        return len(self.cells_by_dim.get(dim, ()))

    @property
    def top_dim(self) -> int:
        return max(self.cells_by_dim)

    def facets(self, cell: Cell) -> tuple[Cell, ...]:
        """The 2d codimension-one faces, pairing each edge coordinate with its ends."""
        out = []
        for r, coord in enumerate(cell):
            if isinstance(coord, str):
                e = self.graph.edge_by_name[coord]
                out.append(cell[:r] + (e.lo,) + cell[r + 1:])
                out.append(cell[:r] + (e.hi,) + cell[r + 1:])
        return tuple(out)

    def edge_endpoints(self, cell: Cell) -> tuple[Cell, Cell]:
        """(source, target) of a 1-cell, following the graph edge orientation."""
        if cell_dim(cell) != 1:
            raise InvalidParameterError(f"not a 1-cell: {cell!r}")
        r = next(i for i, c in enumerate(cell) if isinstance(c, str))
        e = self.graph.edge_by_name[cell[r]]
        return (cell[:r] + (e.lo,) + cell[r + 1:], cell[:r] + (e.hi,) + cell[r + 1:])


def build_dconf(graph: Graph, m: int) -> CubeComplex:
    """Enumerate all m-tuples of graph cells with pairwise disjoint closures."""
    if m < 1:
        raise InvalidParameterError(f"need m >= 1, got {m}")
    if not is_sufficiently_subdivided(graph, m):
        raise PreconditionError(f"graph is not sufficiently subdivided for m={m}")
    coords: list[Coord] = list(range(graph.num_vertices)) + [
        e.name for e in sorted(graph.edges, key=lambda e: e.ordinal)
    ]
    closures = {c: graph.closure(c) for c in coords}
    found: list[Cell] = []

    def extend(prefix: list[Coord], used: frozenset[int]) -> None:
        if len(prefix) == m:
            found.append(tuple(prefix))
            return
        for c in coords:
            cl = closures[c]
            if used & cl:
                continue
            prefix.append(c)
            extend(prefix, used | cl)
            prefix.pop()

    extend([], frozenset())
    by_dim: dict[int, list[Cell]] = {}
    for cell in found:
        by_dim.setdefault(cell_dim(cell), []).append(cell)
    cells_by_dim = {
        d: tuple(sorted(cells, key=lambda c: tuple(graph.coord_key(x) for x in c)))
        for d, cells in sorted(by_dim.items())
    }
    if 0 not in cells_by_dim:
        raise PreconditionError(f"no room for {m} particles on this graph")
    return CubeComplex(graph, m, cells_by_dim)


class QuotientComplex:
    """Quotient of a configuration complex by the cyclic rotation action.

    Cells are orbits, identified by the orbit member whose first coordinate
    is smallest in the cell ordering.
    """

    def __init__(self, fm: CubeComplex, m: int):
        if fm.m != m:
            raise InvalidParameterError("particle count mismatch")
        self.fm = fm
        self.graph = fm.graph
        self.m = m
        c1 = Perm.cycle(1, m)
        rep_of: dict[Cell, Cell] = {}
        members_of: dict[Cell, tuple[Cell, ...]] = {}
        for cell in fm.all_cells():
            if cell in rep_of:
                continue
            orbit = [cell]
            cur = act(c1, cell)
            while cur != cell:
                orbit.append(cur)
                cur = act(c1, cur)
            if len(orbit) != m:
                raise StructuralError(f"rotation orbit of {cell!r} has size {len(orbit)}")
            rep = min(orbit, key=fm.sort_key)
            t0 = orbit.index(rep)
            members = tuple(orbit[(t0 + t) % m] for t in range(m))
            for member in orbit:
                rep_of[member] = rep
            members_of[rep] = members
        self.rep_of_cell = rep_of
        self.members_of = members_of
        self.cells_by_dim = {
            d: tuple(sorted({rep_of[c] for c in cells}, key=fm.sort_key))
            for d, cells in fm.cells_by_dim.items()
        }
        self._cell_set = frozenset(members_of)
        self.base: Cell = rep_of[fm.base]

    def project(self, cell: Cell) -> Cell:
        return self.rep_of_cell[cell]

    # -- generic cell API --------------------------------------------------

    def sort_key(self, cell: Cell):
        return self.fm.sort_key(cell)

    def has(self, cell: Cell) -> bool:
        return cell in self._cell_set

    def dim(self, cell: Cell) -> int:
        return cell_dim(cell)

    def all_cells(self) -> Iterator[Cell]:
        for d in sorted(self.cells_by_dim):
            yield from self.cells_by_dim[d]

    def num_cells(self, dim: int) -> int:
        return len(self.cells_by_dim.get(dim, ()))

    @property
    def top_dim(self) -> int:
        return max(self.cells_by_dim)

    def facets(self, cell: Cell) -> tuple[Cell, ...]:
        return tuple(self.project(f) for f in self.fm.facets(cell))

    def edge_endpoints(self, cell: Cell) -> tuple[Cell, Cell]:
        src, tgt = self.fm.edge_endpoints(cell)
        return (self.project(src), self.project(tgt))


def build_quotient(fm: CubeComplex, m: int) -> QuotientComplex:
    return QuotientComplex(fm, m)


Complex = Union[CubeComplex, QuotientComplex]


def _component_roots(cx: Complex) -> dict[Cell, Cell]:
    parent: dict[Cell, Cell] = {v: v for v in cx.cells_by_dim[0]}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in cx.cells_by_dim.get(1, ()):
        src, tgt = cx.edge_endpoints(e)
        ru, rv = find(src), find(tgt)
        if ru != rv:
            parent[ru] = rv
    return {v: find(v) for v in parent}


def components(cx: Complex) -> int:
    """Number of connected components of the 1-skeleton."""
    roots = _component_roots(cx)
    return len(set(roots.values()))


def chi_by_component(cx: Complex) -> dict[Cell, int]:
    """Euler characteristic of each component, keyed by a root 0-cell."""
    roots = _component_roots(cx)
    out: dict[Cell, int] = {}
    for d, cells in cx.cells_by_dim.items():
        sign = 1 if d % 2 == 0 else -1
        for cell in cells:
            corner = tuple(
                c if isinstance(c, int) else cx.graph.edge_by_name[c].lo for c in cell
            )
            if isinstance(cx, QuotientComplex):
                corner = cx.project(corner)
            out[roots[corner]] = out.get(roots[corner], 0) + sign
    return out
