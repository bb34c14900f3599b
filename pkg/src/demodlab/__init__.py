"""demodlab: a simulation laboratory for random-demodulator compressive sampling."""

__version__ = "0.1.0"

from .signals import (  # noqa: F401
    attenuate,
    best_k_approx,
    draw_compressible,
    draw_model_a,
    eval_multitone,
    freq_to_column,
    prewhiten,
)
from .system import (  # noqa: F401
    DemodulatorSystem,
    build_accumulator,
    build_system,
    draw_chipping,
    sample_continuous,
)
from .solvers import (  # noqa: F401
    RecoveryResult,
    SolverConfig,
    cosamp,
    irls_l1,
    l0_oracle,
    l1_denoise,
)
from .seeding import derive_rng  # noqa: F401
