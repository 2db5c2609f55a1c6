"""Edge paths, spanning trees, loop expression, projection and lifting.

These utilities treat a complex purely through its 1-skeleton: vertices are
0-cells, edges are 1-cells with a (source, target) orientation.  They work
uniformly for configuration complexes and their cyclic quotients, which is
what makes the homomorphism oracles possible: a loop downstairs lifts edge
by edge through the m-to-1 projection, and a loop upstairs pushes forward
cell-wise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .complexes import Cell, QuotientComplex
from .errors import InvalidParameterError, StructuralError
from .words import FreeWord

Step = tuple[Cell, int]  # (1-cell, +1 along orientation / -1 against)


@dataclass(frozen=True)
class EdgePath:
    start: Cell
    steps: tuple[Step, ...]
    end: Cell

    def __len__(self) -> int:
        return len(self.steps)

    def is_closed(self) -> bool:
        return self.start == self.end


def empty_path(vertex: Cell) -> EdgePath:
    return EdgePath(vertex, (), vertex)


def _step_endpoints(cx, step: Step) -> tuple[Cell, Cell]:
    edge, sign = step
    src, tgt = cx.edge_endpoints(edge)
    return (src, tgt) if sign == 1 else (tgt, src)


def make_path(cx, start: Cell, steps: Iterable[Step]) -> EdgePath:
    """Assemble and validate a path: consecutive steps must chain up."""
    cur = start
    steps = tuple(steps)
    for step in steps:
        frm, to = _step_endpoints(cx, step)
        if frm != cur:
            raise InvalidParameterError(f"step {step!r} does not start at {cur!r}")
        cur = to
    return EdgePath(start, steps, cur)


def concat(cx, *paths: EdgePath) -> EdgePath:
    out = paths[0]
    for p in paths[1:]:
        if p.start != out.end:
            raise InvalidParameterError("paths do not concatenate")
        out = EdgePath(out.start, out.steps + p.steps, p.end)
    return out


def reverse_path(path: EdgePath) -> EdgePath:
    return EdgePath(path.end, tuple((e, -s) for e, s in reversed(path.steps)), path.start)


def repeat_path(cx, path: EdgePath, k: int) -> EdgePath:
    if k < 0:
        return repeat_path(cx, reverse_path(path), -k)
    out = empty_path(path.start)
    for _ in range(k):
        out = concat(cx, out, path)
    return out


# -- spanning trees ----------------------------------------------------------

Parents = Mapping[Cell, Optional[tuple[Cell, int, Cell]]]


def tree_parents(cx, tree_edges: frozenset[Cell], base: Cell) -> dict[Cell, Optional[tuple[Cell, int, Cell]]]:
    """Breadth-first parent pointers within a spanning set of 1-cells.

    parents[v] is (edge, sign, parent) where traversing edge with sign leads
    from parent to v; the base maps to None.  Raises if the tree does not
    reach every 0-cell.
    """
    adjacency: dict[Cell, list[tuple[Cell, int, Cell]]] = {v: [] for v in cx.cells_by_dim[0]}
    for e in sorted(tree_edges, key=cx.sort_key):
        src, tgt = cx.edge_endpoints(e)
        adjacency[src].append((e, 1, tgt))
        adjacency[tgt].append((e, -1, src))
    parents: dict[Cell, Optional[tuple[Cell, int, Cell]]] = {base: None}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for edge, sign, v in adjacency[u]:
            if v not in parents:
                parents[v] = (edge, sign, u)
                queue.append(v)
    if len(parents) != len(cx.cells_by_dim[0]):
        raise StructuralError("tree does not span the 0-skeleton")
    return parents


def bfs_spanning_tree(cx, base: Cell) -> frozenset[Cell]:
    """A deterministic spanning tree of the full 1-skeleton."""
    adjacency: dict[Cell, list[tuple[Cell, int, Cell]]] = {v: [] for v in cx.cells_by_dim[0]}
    for e in cx.cells_by_dim.get(1, ()):
        src, tgt = cx.edge_endpoints(e)
        adjacency[src].append((e, 1, tgt))
        adjacency[tgt].append((e, -1, src))
    for v in adjacency:
        adjacency[v].sort(key=lambda item: (cx.sort_key(item[0]), item[1]))
    seen = {base}
    tree: set[Cell] = set()
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for edge, _sign, v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                tree.add(edge)
                queue.append(v)
    return frozenset(tree)


def tree_path_to(cx, parents: Parents, v: Cell) -> EdgePath:
    """The unique tree path from the base to v."""
    steps: list[Step] = []
    cur = v
    while parents[cur] is not None:
        edge, sign, parent = parents[cur]
        steps.append((edge, sign))
        cur = parent
    steps.reverse()
    return make_path(cx, cur, steps)


def generator_loop(cx, parents: Parents, base: Cell, edge: Cell) -> EdgePath:
    """The based loop of a non-tree edge: tree to its source, edge, tree back."""
    src, tgt = cx.edge_endpoints(edge)
    to_src = tree_path_to(cx, parents, src)
    to_tgt = tree_path_to(cx, parents, tgt)
    if to_src.start != base or to_tgt.start != base:
        raise StructuralError("tree paths do not start at the base")
    return concat(cx, to_src, make_path(cx, src, [(edge, 1)]), reverse_path(to_tgt))


# -- loop expression ---------------------------------------------------------


def express_loop(path: EdgePath, tree_edges: frozenset[Cell], letter_of: Callable[[Cell], object]) -> FreeWord:
    """Read off, in order, the non-tree edges a closed path traverses.

    letter_of maps a non-tree 1-cell to the letter naming its based loop; it
    should raise KeyError on unknown edges.
    """
    if not path.is_closed():
        raise InvalidParameterError("path is not closed")
    pieces = []
    for edge, sign in path.steps:
        if edge in tree_edges:
            continue
        try:
            letter = letter_of(edge)
        except KeyError:
            raise StructuralError(f"path traverses an inexpressible edge {edge!r}") from None
        pieces.append((letter, sign))
    return FreeWord.of(pieces)


# -- projection and lifting ---------------------------------------------------


def project_path(q: QuotientComplex, path: EdgePath) -> EdgePath:
    """Push a path in the configuration complex down to the quotient."""
    return EdgePath(
        q.project(path.start),
        tuple((q.project(e), s) for e, s in path.steps),
        q.project(path.end),
    )


def lift_path(q: QuotientComplex, qpath: EdgePath, start: Cell) -> EdgePath:
    """Lift a quotient path through the m-to-1 projection, given a start cell."""
    if q.project(start) != qpath.start:
        raise InvalidParameterError("start cell does not lie over the path start")
    cur = start
    steps: list[Step] = []
    for orbit_edge, sign in qpath.steps:
        hits = []
        for member in q.members_of[orbit_edge]:
            src, tgt = q.fm.edge_endpoints(member)
            if (sign == 1 and src == cur) or (sign == -1 and tgt == cur):
                hits.append(member)
        if len(hits) != 1:
            raise StructuralError(f"lift of {orbit_edge!r} at {cur!r} is not unique")
        member = hits[0]
        src, tgt = q.fm.edge_endpoints(member)
        steps.append((member, sign))
        cur = tgt if sign == 1 else src
    return EdgePath(start, tuple(steps), cur)


def boundary_loop(cx, cell2: Cell) -> EdgePath:
    """The 4-step boundary loop of a 2-cell, based at its all-low corner."""
    positions = [r for r, c in enumerate(cell2) if isinstance(c, str)]
    if len(positions) != 2:
        raise InvalidParameterError(f"not a 2-cell: {cell2!r}")
    r1, r2 = positions
    g = cx.graph
    e1, e2 = g.edge_by_name[cell2[r1]], g.edge_by_name[cell2[r2]]

    def put(r, value, base):
        return base[:r] + (value,) + base[r + 1:]

    corner_ll = put(r1, e1.lo, put(r2, e2.lo, cell2))
    along_e1_low = put(r2, e2.lo, cell2)   # e1 free, e2 at lo
    along_e1_high = put(r2, e2.hi, cell2)  # e1 free, e2 at hi
    along_e2_low = put(r1, e1.lo, cell2)   # e2 free, e1 at lo
    along_e2_high = put(r1, e1.hi, cell2)  # e2 free, e1 at hi
    return make_path(
        cx,
        corner_ll,
        [(along_e1_low, 1), (along_e2_high, 1), (along_e1_high, -1), (along_e2_low, -1)],
    )
