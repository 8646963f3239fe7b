"""Information gain and disturbance of near-optimal BB84 eavesdropping probes."""

from .errors import (
    DegenerateAngle,
    DegenerateConditioning,
    InvalidDimension,
    InvalidParams,
    InvalidState,
    NoFeasiblePoint,
    NotHermitian,
    ResonanceError,
)
from .infodist import (
    DisturbanceReport,
    GainReport,
    conditional_errors,
    disturbance,
    disturbance_delta0,
    evaluate_one_qubit,
    evaluate_probe,
    gain_closed_form,
    gain_generic,
    optimal_bound,
    phi,
)
from .measurement import (
    Povm,
    closed_form_povm,
    eigenbasis_povm,
    helstrom_povm,
    meas_angle,
    probe_povm,
)
from .peaks import PeakReport, find_peaks
from .probes import (
    OneQubitProbeParams,
    ProbePair,
    TwoQubitProbeParams,
    bell_basis,
    build_one_qubit_probe,
    build_two_qubit_probe,
    conjugate_signals,
)
from .sweep import SweepRow, SweepSpec, Tie, attenuation, best_single_qubit_strategy, run_sweep

__version__ = "0.1.0"
