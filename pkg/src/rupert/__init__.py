"""Tools for Rupert passages of convex polyhedra.

A convex polyhedron has a passage when one orthogonal projection of it fits
strictly inside another after an in-plane rotation and translation.  This
package searches for such placements, verifies and optimizes them, measures
how likely random projections are to admit one, and emits the equivalent
integer polynomial systems for external decision procedures.
"""

from .catalog import CatalogEntry, get, load, save
from .containment import (
    FitResult,
    fit_rotation,
    fit_rotation_translation,
    fit_translation,
    margin,
    strictly_inside,
)
from .emitter import (
    PolySystem,
    Silhouette,
    count_cycles,
    discover_silhouettes,
    emit_system,
    enumerate_cycles,
    silhouette_of,
    to_polysys,
)
from .errors import (
    AmbiguousSilhouette,
    DegenerateInput,
    DomainError,
    InvalidSolution,
    NonIntegerCoordinates,
    NotConvexPosition,
    NotFound,
    NotPointSymmetric,
    ParseError,
    RupertError,
    TooLarge,
    UnknownSolid,
)
from .geometry import (
    ConvexPolygon,
    Polyhedron,
    ProjectionAngles,
    apply_isometry,
    area,
    convex_hull,
    diameter,
    direction,
    perimeter,
    project,
    projection_matrix,
)
from .nieuwland import ImproveConfig, NieuwlandResult, improve, inclusion_holds, mu_of
from .records import SolutionRecord
from .render import RenderSpec, render_solution
from .rupertness import (
    RupertnessEstimate,
    clopper_pearson,
    estimate_rupertness,
    rupertness_trial,
)
from .solver import (
    SearchConfig,
    SolutionSeptuple,
    draw_projection,
    solve,
    solve_naive,
    verify,
)

__version__ = "0.1.0"
