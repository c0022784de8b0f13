"""Stationary configurations and dynamics of N point vortices in bounded
planar domains: domain models with boundary frames, Green's and Robin
functions, the Kirchhoff-Routh energy with analytic gradients, vorticity
admissibility predicates, collision-monitored gradient-flow search for
critical points, linking seed families, and a reproducible CLI.
"""

from .admissibility import (
    AdmissibilityReport,
    admissibility_report,
    is_delta_admissible,
    is_l_admissible,
    is_partial_admissible,
)
from .errors import (
    AmbiguousProjectionError,
    CapacityError,
    ChartError,
    CollarError,
    ConfigError,
    ConfigurationError,
    ConvergenceError,
    DomainError,
    FlowTerminatedError,
    SamplingError,
    SingularityError,
    UnsupportedDomainError,
    VortexError,
)
from .flow import (
    CauchyDiagnosis,
    CriticalPointReport,
    FlowParams,
    FlowTrace,
    MDeltaScanResult,
    Trajectory,
    find_critical_point,
    flow_limit_monitor,
    gradient_flow,
    integrate_dynamics,
    m_delta_scan,
    sweep,
)
from .geometry import (
    Annulus,
    BoundaryFrame,
    Configuration,
    ConformalImage,
    LineChart,
    UnitDisk,
    boundary_frame,
    contains,
    domain_from_config,
    line_configuration,
    min_separation,
    permute,
    reflect,
)
from .greens import (
    GreensEval,
    HypothesisAuditReport,
    RegularEval,
    RobinEval,
    green,
    hydrodynamic_correction,
    hypothesis_audit,
    regular_part,
    robin,
)
from .hamiltonian import (
    ClusterPartition,
    boundary_interaction,
    boundary_pairing,
    boundary_weight_constant,
    cluster_log_energy,
    collision_weight_constant,
    energy,
    energy_gradient,
    hessian,
)
from .linking import (
    TorusSeedSpec,
    annular_seed,
    annular_seed_grid,
    concentric_seed,
    concentric_seed_grid,
    jacobian_determinant_h0,
    line_intersection_residual,
    line_membership,
    spoke_membership,
)

__version__ = "0.1.0"
