"""knotsum: exact knot and link invariants from planar diagram codes."""

__version__ = "0.1.0"

from .alexander import alexander_matrix, alexander_poly, knot_determinant
from .bracket import bracket, curl_check, f_poly, jones, switching_check
from .coloring import fox_colorings, region_colorings, region_to_fox
from .diagram import (
    LinkDiagram,
    checkerboard,
    checkerboard_graph,
    component_count,
    faces,
    parse_pd,
    spanning_tree_count,
    writhe,
)
from .khovanov import build_complex, graded_euler, homology, verify_d2
from .laurent import LaurentPoly, dot_equal
from .moves import apply_reidemeister, mirror, move_sites, switch_crossing
from .states import (
    alexander_state_sum,
    black_hole_count,
    clock_move,
    conway_state_sum,
    derive_conway_weights,
    enumerate_states,
    initial_state,
    skein_check,
    state_permutation_sign,
)
from .tangle import (
    BracketVector,
    closure,
    conservation_check,
    hopf_pairing,
    omega_surgery,
    parse_pattern,
    parse_tangle,
    tangle_bracket,
    tangle_sum,
)
