from .halting import (
    OmegaAccumulator,
    OutputClass,
    ProbabilityTable,
    complexity,
    complexity_from_p_star,
    omega,
    output_classes,
    p_star,
    probabilities,
    runs,
    upsilon,
    upsilon_set,
    weight,
)
from .information import (
    InequalityReport,
    Slack,
    conditional_complexity,
    inequality_report,
    joint_complexity,
    single_complexity,
)
from .machine import (
    MachineModel,
    MachineOutput,
    Program,
    enumerate_programs,
    is_prefix_free,
    run,
)
