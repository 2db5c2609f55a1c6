"""Free bases for the fundamental groups of the lollipop configuration
complex and its cyclic quotient, and the three structural homomorphisms.

For m particles on the lollipop, both fundamental groups are free: critical
1-cells that are not selected into the maximal tree give the basis.  Three
homomorphisms are computed twice, from closed formulas and from independent
geometric oracles:

* ``iota`` -- the injection of the upstairs group into the quotient group,
  induced by the m-to-1 projection.  Oracle: push the basis loop down
  cell-wise and read it off against the quotient maximal tree.
* ``p1`` -- evaluation of the first particle in the underlying graph's
  fundamental group (infinite cyclic on the loop edge ``a``).  Oracle: trace
  the first coordinate of the basis loop and count signed ``a`` crossings.
* ``theta`` -- the classifying map of the covering onto the deck group Z_m.
  Oracle: lift the loop upstairs and measure the deck rotation reached.

``rs_rewrite`` inverts ``iota`` on its image by Schreier-transversal
rewriting with coset state tracked along the word.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .complexes import Cell, CubeComplex, QuotientComplex, act, build_dconf, build_quotient
from .covering import (
    EdgePath,
    concat,
    empty_path,
    express_loop,
    generator_loop,
    lift_path,
    project_path,
    repeat_path,
    reverse_path,
    tree_parents,
)
from .errors import InvalidParameterError, StructuralError
from .graphs import make_lollipop
from .morse import GradientField, build_field, edge_data, type_tuple
from .perms import Perm, cyclic_canonical
from .words import FreeWord

SPACE_FM = "fm"
SPACE_QUOTIENT = "quotient"


@dataclass(frozen=True)
class GeneratorId:
    """A basis element: the critical edge act(sigma, O_b) of its space.

    ``sigma`` is the sorting permutation of the edge's source vertex; for the
    quotient it is the canonical coset representative (sigma(1) == 1).
    """

    space: str
    sigma: Perm
    type_b: int

    @property
    def m(self) -> int:
        return self.sigma.n

    def cell(self) -> Cell:
        return act(self.sigma, type_tuple(self.type_b, self.m))

    def name(self) -> str:
        core = f"O{self.type_b}"
        if not self.sigma.is_identity():
            core = f"s{self.sigma.oneline()}*{core}"
        return core if self.space == SPACE_FM else f"[{core}]"


def _is_selected_tuple(cell: Cell, b: int) -> bool:
    """Selection rule on a critical edge: the first b-1 coordinates are the
    minimal vertices 0..b-2 but the b-th coordinate is not the loop edge."""
    return all(cell[i] == i for i in range(b - 1)) and cell[b - 1] != "a"


def _selected_sigma(sigma: Perm, b: int) -> bool:
    return all(sigma(i) == i for i in range(1, b)) and sigma(b) != b


class BraidSystem:
    """Everything attached to one particle count m on the lollipop."""

    def __init__(self, m: int):
        if m < 2:
            raise InvalidParameterError(f"need m >= 2, got {m}")
        self.m = m
        self.graph = make_lollipop(m)
        self.loop_name = self.graph.loop_edge.name
        self.fm: CubeComplex = build_dconf(self.graph, m)
        self.quotient: QuotientComplex = build_quotient(self.fm, m)
        self.field_fm: GradientField = build_field(self.fm)
        self.field_q: GradientField = build_field(self.quotient)
        self.c1 = Perm.cycle(1, m)

        self.selected_fm = self._selected_fm()
        self.selected_q = self._selected_q()
        self.tree_fm = maximal_tree(self.field_fm, self.selected_fm)
        self.tree_q = maximal_tree(self.field_q, self.selected_q)
        self.parents_fm = tree_parents(self.fm, self.tree_fm, self.fm.base)
        self.parents_q = tree_parents(self.quotient, self.tree_q, self.quotient.base)

        self.basis_fm: list[GeneratorId] = []
        self._gen_of_cell: dict[Cell, GeneratorId] = {}
        for cell in self.field_fm.critical(1):
            if cell in self.selected_fm:
                continue
            sigma, b = edge_data(cell, self.graph, m)
            gen = GeneratorId(SPACE_FM, sigma, b)
            self.basis_fm.append(gen)
            self._gen_of_cell[cell] = gen
        self.basis_fm.sort(key=lambda g: (g.type_b, g.sigma.images))

        self.basis_q: list[GeneratorId] = []
        self._gen_of_orbit: dict[Cell, GeneratorId] = {}
        self._orbit_of_gen: dict[GeneratorId, Cell] = {}
        for rep in self.field_q.critical(1):
            if rep in self.selected_q:
                continue
            sigma, b = edge_data(rep, self.graph, m)
            canonical, _ = cyclic_canonical(sigma)
            gen = GeneratorId(SPACE_QUOTIENT, canonical, b)
            self.basis_q.append(gen)
            self._gen_of_orbit[rep] = gen
            self._orbit_of_gen[gen] = rep
        self.basis_q.sort(key=lambda g: (g.type_b, g.sigma.images))

        self._loop_cache: dict[tuple[str, GeneratorId], EdgePath] = {}
        self._iota_oracle_cache: dict[GeneratorId, FreeWord] = {}
        self._rs_table: dict[tuple[int, GeneratorId], FreeWord] = {}

    # -- selection -----------------------------------------------------------

    def _selected_fm(self) -> frozenset[Cell]:
        out = set()
        for cell in self.field_fm.critical(1):
            _, b = edge_data(cell, self.graph, self.m)
            if b <= self.m - 1 and _is_selected_tuple(cell, b):
                out.add(cell)
        return frozenset(out)

    def _selected_q(self) -> frozenset[Cell]:
        out = set()
        for rep in self.field_q.critical(1):
            sigma, b = edge_data(rep, self.graph, self.m)
            if b < 2 or b > self.m - 1:
                continue
            canonical, _ = cyclic_canonical(sigma)
            if _is_selected_tuple(act(canonical, type_tuple(b, self.m)), b):
                out.add(rep)
        return frozenset(out)

    # -- bases and loops ------------------------------------------------------

    def basis(self, space: str) -> list[GeneratorId]:
        return list(self.basis_fm if space == SPACE_FM else self.basis_q)

    def selected(self, space: str) -> frozenset[Cell]:
        return self.selected_fm if space == SPACE_FM else self.selected_q

    def orbit_of_gen(self, gen: GeneratorId) -> Cell:
        return self.quotient.project(gen.cell())

    def gen_of_fm_cell(self, cell: Cell) -> GeneratorId:
        return self._gen_of_cell[cell]

    def gen_of_orbit(self, orbit: Cell) -> GeneratorId:
        return self._gen_of_orbit[orbit]

    def loop(self, gen: GeneratorId) -> EdgePath:
        key = (gen.space, gen)
        if key not in self._loop_cache:
            if gen.space == SPACE_FM:
                path = generator_loop(self.fm, self.parents_fm, self.fm.base, gen.cell())
            else:
                path = generator_loop(
                    self.quotient, self.parents_q, self.quotient.base, self.orbit_of_gen(gen)
                )
            self._loop_cache[key] = path
        return self._loop_cache[key]

    def express_fm(self, path: EdgePath) -> FreeWord:
        return express_loop(path, self.tree_fm, lambda e: self._gen_of_cell[e])

    def express_q(self, path: EdgePath) -> FreeWord:
        return express_loop(path, self.tree_q, lambda e: self._gen_of_orbit[e])

    def realize_q(self, word: FreeWord) -> EdgePath:
        """A based quotient loop reading the given word of basis letters."""
        path = empty_path(self.quotient.base)
        for gen, sign in word:
            piece = self.loop(gen)
            if sign < 0:
                piece = reverse_path(piece)
            path = concat(self.quotient, path, piece)
        return path

    # -- iota -------------------------------------------------------------

    def _type1_letter(self, sigma: Perm) -> tuple[GeneratorId, int]:
        canonical, _ = cyclic_canonical(sigma)
        return GeneratorId(SPACE_QUOTIENT, canonical, 1), 1

    def _bracket(self, sigma: Perm, b: int) -> Optional[GeneratorId]:
        """Quotient letter for the orbit of act(sigma, O_b); None when the
        orbit is selected (its loop lies in the maximal tree)."""
        canonical, _ = cyclic_canonical(sigma)
        if b >= 2 and _selected_sigma(canonical, b) and b <= self.m - 1:
            return None
        return GeneratorId(SPACE_QUOTIENT, canonical, b)

    def iota_closed_form(self, gen: GeneratorId) -> FreeWord:
        """Image of an upstairs basis element in the quotient basis."""
        if gen.space != SPACE_FM:
            raise InvalidParameterError("iota takes generators of the m-particle space")
        sigma, b, m = gen.sigma, gen.type_b, self.m
        c1 = self.c1

        def type1_run(tau_of_i, count) -> FreeWord:
            out = FreeWord()
            for i in range(1, count + 1):
                letter = self._bracket(tau_of_i(i), 1)
                if letter is None:
                    raise StructuralError("type-1 orbit can never be selected")
                out = out * FreeWord.gen(letter)
            return out

        if b == 1:
            return type1_run(lambda i: sigma * c1 ** (-(i - 1)), m)

        s = sigma(1)
        if s == 1:
            letter = self._bracket(sigma, b)
            if letter is None:
                raise StructuralError("a canonical basis edge cannot be selected")
            return FreeWord.gen(letter)

        prefix = type1_run(lambda i: sigma * c1 ** (-(i - 1)), s - 1)
        mid_letter = self._bracket(sigma, b)
        middle = FreeWord() if mid_letter is None else FreeWord.gen(mid_letter)
        cb_inv = Perm.cycle(b, m).inverse()
        count = (s - 1) if s < b else (m - 1) if s == b else (s - 2)
        suffix = type1_run(lambda i: sigma * cb_inv * c1 ** (-(i - 1)), count)
        return prefix.inverse() * middle * suffix

    def iota_oracle(self, gen: GeneratorId) -> FreeWord:
        """Project the basis loop cell-wise and read it off downstairs."""
        if gen not in self._iota_oracle_cache:
            projected = project_path(self.quotient, self.loop(gen))
            self._iota_oracle_cache[gen] = self.express_q(projected)
        return self._iota_oracle_cache[gen]

    def iota_word(self, word: FreeWord) -> FreeWord:
        out = FreeWord()
        for gen, sign in word:
            image = self.iota_closed_form(gen)
            out = out * (image if sign == 1 else image.inverse())
        return out

    # -- p1 ---------------------------------------------------------------

    def p1_closed_form(self, gen: GeneratorId) -> int:
        if gen.space != SPACE_FM:
            raise InvalidParameterError("p1 takes generators of the m-particle space")
        return 1 if gen.cell()[0] == self.loop_name else 0

    def p1_oracle(self, gen: GeneratorId) -> int:
        """Trace the first coordinate along the basis loop; count signed
        crossings of the loop edge."""
        path = self.loop(gen)
        cur = path.start[0]
        count = 0
        for edge_cell, sign in path.steps:
            r = next(i for i, c in enumerate(edge_cell) if isinstance(c, str))
            if r != 0:
                continue
            e = self.graph.edge_by_name[edge_cell[0]]
            expected = e.lo if sign == 1 else e.hi
            if cur != expected:
                raise StructuralError("first-coordinate trace lost the walk")
            cur = e.hi if sign == 1 else e.lo
            if edge_cell[0] == self.loop_name:
                count += sign
        if cur != path.start[0]:
            raise StructuralError("first-coordinate trace did not close up")
        return count

    def p1_word(self, word: FreeWord) -> int:
        return word.evaluate_additive(self.p1_closed_form)

    # -- theta --------------------------------------------------------------

    def theta_closed_form(self, gen: GeneratorId) -> int:
        """theta on a quotient basis element, normalized so the canonical
        type-1 generator maps to 1."""
        if gen.space != SPACE_QUOTIENT:
            raise InvalidParameterError("theta takes quotient generators")
        if gen.type_b >= 2:
            return 0
        return (gen.sigma.inverse()(2) - 1) % self.m

    def theta_word(self, word: FreeWord) -> int:
        return word.evaluate_additive(self.theta_closed_form) % self.m

    def deck_exponent(self, vertex: Cell) -> int:
        """t in Z_m with vertex == act(c1^-t, base).

        The deck group is identified with Z_m through the inverse rotation:
        that is the identification under which the canonical type-1
        generator measures +1, matching the closed form's normalization.
        """
        for t in range(self.m):
            if act(self.c1 ** (-t % self.m), self.fm.base) == vertex:
                return t
        raise StructuralError(f"{vertex!r} is not in the base orbit")

    def theta_oracle(self, word: FreeWord) -> int:
        """Lift the word's loop upstairs; return the deck rotation reached."""
        lifted = lift_path(self.quotient, self.realize_q(word), self.fm.base)
        return self.deck_exponent(lifted.end)

    # -- Schreier rewriting ---------------------------------------------------

    @property
    def z(self) -> GeneratorId:
        """The canonical type-1 quotient generator, transversal ingredient."""
        return GeneratorId(SPACE_QUOTIENT, Perm.identity(self.m), 1)

    def _transversal_piece(self, t: int, gen: GeneratorId) -> FreeWord:
        """Upstairs expression of z^t * gen * z^-t' with t' = t + theta(gen)."""
        key = (t, gen)
        if key not in self._rs_table:
            t2 = (t + self.theta_closed_form(gen)) % self.m
            zloop = self.loop(self.z)
            qpath = concat(
                self.quotient,
                repeat_path(self.quotient, zloop, t),
                self.loop(gen),
                repeat_path(self.quotient, reverse_path(zloop), t2),
            )
            lifted = lift_path(self.quotient, qpath, self.fm.base)
            if lifted.end != self.fm.base:
                raise StructuralError("transversal-conjugated generator did not lift closed")
            self._rs_table[key] = self.express_fm(lifted)
        return self._rs_table[key]

    def rs_rewrite(self, word: FreeWord) -> Optional[FreeWord]:
        """Rewrite a quotient word as an upstairs word, or None when the
        word lies outside the index-m subgroup (nonzero theta)."""
        if self.theta_word(word) % self.m != 0:
            return None
        out = FreeWord()
        t = 0
        for gen, sign in word:
            if sign == 1:
                out = out * self._transversal_piece(t, gen)
                t = (t + self.theta_closed_form(gen)) % self.m
            else:
                t = (t - self.theta_closed_form(gen)) % self.m
                out = out * self._transversal_piece(t, gen).inverse()
        if t != 0:
            raise StructuralError("coset state did not return to the identity")
        return out


def maximal_tree(field: GradientField, selected: frozenset[Cell]) -> frozenset[Cell]:
    """Forest edges plus the selected critical edges; checked to span."""
    cx = field.complex
    edges = list(field.forest_edges) + sorted(selected, key=cx.sort_key)
    vertices = cx.cells_by_dim[0]
    if len(edges) != len(vertices) - 1:
        raise StructuralError(
            f"candidate tree has {len(edges)} edges on {len(vertices)} vertices"
        )
    parent: dict[Cell, Cell] = {v: v for v in vertices}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        src, tgt = cx.edge_endpoints(e)
        ru, rv = find(src), find(tgt)
        if ru == rv:
            raise StructuralError(f"candidate tree has a cycle through {e!r}")
        parent[ru] = rv
    return frozenset(edges)


@lru_cache(maxsize=None)
def get_system(m: int) -> BraidSystem:
    return BraidSystem(m)


# -- module-level operation wrappers ---------------------------------------


def selected_edges(space: str, m: int) -> frozenset[Cell]:
    return get_system(m).selected(space)


def pi1_basis(space: str, m: int) -> list[GeneratorId]:
    return get_system(m).basis(space)


def iota_closed_form(gen: GeneratorId) -> FreeWord:
    return get_system(gen.m).iota_closed_form(gen)


def iota_oracle(gen: GeneratorId) -> FreeWord:
    return get_system(gen.m).iota_oracle(gen)


def p1_closed_form(gen: GeneratorId) -> int:
    return get_system(gen.m).p1_closed_form(gen)


def p1_oracle(gen: GeneratorId) -> int:
    return get_system(gen.m).p1_oracle(gen)


def theta_closed_form(gen: GeneratorId) -> int:
    return get_system(gen.m).theta_closed_form(gen)


def theta_oracle(word: FreeWord, m: int) -> int:
    return get_system(m).theta_oracle(word)


def rs_rewrite(word: FreeWord, m: int) -> Optional[FreeWord]:
    return get_system(m).rs_rewrite(word)
