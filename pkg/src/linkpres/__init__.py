"""Embedding presentations of links and virtual links."""
from .core import (
    CLASSICAL,
    MINUS,
    PLUS,
    VIRTUAL,
    Crossing,
    EndRef,
    Face,
    LinkPresentation,
    PresentationError,
    Strand,
    ValidationReport,
    canonical_code,
    components,
    is_alternating,
    is_isomorphic,
    is_unlink,
    normalize,
    predecessor,
    relabel,
    successor,
    swap_poles,
    trace_faces,
    trace_strands,
    validate,
    vef,
)
from .io import ParseError, format_trace, parse, parse_trace, serialize
from .moves import (
    Omega0Site,
    Omega1Site,
    Omega2Site,
    TriangleSite,
    apply_omega0,
    apply_omega1,
    apply_omega2,
    apply_omega3,
    enumerate_sites,
)
from .passes import (
    Pass,
    Route,
    apply_pass_replacement,
    classify_replacement,
    find_maximal_passes,
    replace_edge_surrounding,
)
from .reduction import (
    AdjacentGraph,
    MoveRecord,
    ReduceConfig,
    ReductionReport,
    build_adjacent_graph,
    reduce,
    replay,
    shortest_route,
)
from .render import render_svg
from .virtual import apply_u_move, apply_virtual_pass_replacement

__version__ = "0.1.0"
