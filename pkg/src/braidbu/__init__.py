"""Graph braid groups of the subdivided circle-with-whisker graph and
Borsuk-Ulam decisions for free cyclic actions."""

from .complexes import (
    CubeComplex,
    QuotientComplex,
    act,
    build_dconf,
    build_quotient,
    chi_by_component,
    components,
)
from .covering import EdgePath, express_loop
from .decide import (
    ActionData,
    BUVerdict,
    GroupHom,
    Witness,
    adapt_basis,
    circle_solver,
    decide_circle,
    decide_interval,
    decide_tree,
    decide_wedge,
    kernel_basis,
    verify_diagram,
)
from .errors import InvalidParameterError, PreconditionError, StructuralError
from .fundgroup import (
    BraidSystem,
    GeneratorId,
    get_system,
    iota_closed_form,
    iota_oracle,
    maximal_tree,
    p1_closed_form,
    p1_oracle,
    pi1_basis,
    rs_rewrite,
    selected_edges,
    theta_closed_form,
    theta_oracle,
)
from .graphs import (
    Edge,
    Graph,
    check_free_action_divisibility,
    emit_graph_text,
    is_sufficiently_subdivided,
    make_cycle,
    make_lollipop,
    make_path,
    make_star,
    parse_graph_text,
)
from .morse import (
    CellClass,
    GradientField,
    associated_permutation,
    build_field,
    classify_cell,
    edge_type,
    forest,
    type_tuple,
)
from .oracle import Report, chi_oracle, morse_rank_check, run_suite
from .perms import Perm, all_perms, cyclic_canonical, sorting_permutation
from .words import FreeWord

__all__ = [name for name in dir() if not name.startswith("_")]
