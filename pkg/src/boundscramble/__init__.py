"""Scrambling of two-qutrit bound entangled states under a DM interaction.

Builds the Bennett, Jurkowski and Horodecki bound entangled states, runs the
OTOC butterfly circuit and tracks negativity and the CCNR witness.
"""
__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import (
    BoundScrambleError,
    ConvergenceError,
    DimensionMismatchError,
    EmptySweepError,
    InvalidParameterError,
    NonPhysicalResultError,
    NotHermitianError,
)
from .linalg import (
    BipartiteDims,
    Subsystem,
    eig_hermitian,
    expm_unitary,
    kron,
    partial_trace,
    partial_transpose,
    realign,
    singular_values,
    trace_norm,
)
from .measures import Classification, MeasureRecord, ccnr, classify, measure, negativity, realignment
from .scrambler import (
    OtocSample,
    Placement,
    ScrambleConfig,
    UpdateMode,
    butterfly,
    dm_hamiltonian,
    evolve_operator,
    lift_operator,
    otoc,
    scrambled_state,
    spin_matrices,
    swap02,
)
from .states import (
    BipartiteState,
    Family,
    StateSpec,
    bennett_state,
    build_state,
    horodecki_state1,
    horodecki_state2,
    jurkowski_state,
)
from .sweep import SweepRecord, TimeGrid, emit_csv, run_param_sweep, run_time_sweep
from .svg import render_svg
