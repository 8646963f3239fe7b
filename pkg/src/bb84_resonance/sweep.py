"""One-parameter sweeps over Eve's strategy space, attenuation study and
grid search over single-qubit strategies."""

import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateConditioning, InvalidParams, NoFeasiblePoint
from .infodist import closed_form_terms, evaluate_one_qubit, evaluate_probe, optimal_bound
from .measurement import MEASUREMENT_KINDS
from .peaks import find_peaks
from .probes import PROBE_FORMS, OneQubitProbeParams, TwoQubitProbeParams, build_two_qubit_probe

FAMILY_PARAMS = {
    "one-qubit": ("a", "c", "delta"),
    "two-qubit": ("alpha2", "beta2", "s", "delta"),
}
# rounding slack allowed when a tie lands just outside [0, 1]
_RANGE_SLACK = 1e-12

_NUM = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?"
_TERM = re.compile(rf"([+-]?)\s*(?:({_NUM})\s*\*?\s*)?([A-Za-z_][A-Za-z_0-9]*)?")


@dataclass(frozen=True)
class Tie:
    """``target = offset + slope * source``."""

    target: str
    source: str
    offset: float = 0.0
    slope: float = 1.0

    def apply(self, value):
        return self.offset + self.slope * value

    @classmethod
    def parse(cls, text):
        """Parse expressions such as ``beta2=1.8-alpha2`` or ``beta2=0.5*alpha2+0.1``."""
        if "=" not in text:
            raise InvalidParams(f"tie {text!r} must look like target=expression")
        target, expr = (part.strip() for part in text.split("=", 1))
        expr = expr.replace(" ", "")
        offset, slope, source = 0.0, 0.0, None
        pos = 0
        while pos < len(expr):
            m = _TERM.match(expr, pos)
            if m is None or m.end() == pos:
                raise InvalidParams(f"cannot parse tie expression {expr!r}")
            sign = -1.0 if m.group(1) == "-" else 1.0
            number, name = m.group(2), m.group(3)
            if name is None:
                if number is None:
                    raise InvalidParams(f"cannot parse tie expression {expr!r}")
                offset += sign * float(number)
            else:
                if source not in (None, name):
                    raise InvalidParams("a tie may reference only one swept parameter")
                source = name
                slope += sign * (float(number) if number is not None else 1.0)
            pos = m.end()
        if source is None or not target:
            raise InvalidParams(f"tie {text!r} must name a target and a source parameter")
        return cls(target, source, offset, slope)

    def __str__(self):
        return f"{self.target}={self.offset:g}{self.slope:+g}*{self.source}"


@dataclass(frozen=True)
class SweepSpec:
    family: str
    param: str
    start: float
    stop: float
    steps: int = 2001
    fixed: dict = field(default_factory=dict)
    tie: Tie = None
    measurement: str = "eigenbasis"
    probe_form: str = "isometric"

    def __post_init__(self):
        if self.family not in FAMILY_PARAMS:
            raise InvalidParams(f"unknown family {self.family!r}")
        names = FAMILY_PARAMS[self.family]
        if self.param not in names:
            raise InvalidParams(f"{self.param!r} is not a {self.family} parameter; choose from {names}")
        if not self.start < self.stop:
            raise InvalidParams("sweep range must satisfy from < to")
        if int(self.steps) < 2:
            raise InvalidParams("a sweep needs at least two steps")
        if self.measurement not in MEASUREMENT_KINDS:
            raise InvalidParams(f"unknown measurement {self.measurement!r}")
        if self.probe_form not in PROBE_FORMS:
            raise InvalidParams(f"unknown probe form {self.probe_form!r}")
        if self.start < 0.0 or self.stop > 1.0:
            raise InvalidParams(f"{self.param} must stay within [0, 1]")
        if self.tie is not None:
            if self.tie.source != self.param:
                raise InvalidParams(f"tie must be driven by the swept parameter {self.param!r}")
            if self.tie.target not in names or self.tie.target == self.param:
                raise InvalidParams(f"tie target {self.tie.target!r} is not a free {self.family} parameter")
        bound = {self.param} | ({self.tie.target} if self.tie else set())
        missing = [n for n in names if n not in bound and n not in self.fixed]
        if missing:
            raise InvalidParams(f"missing fixed values for {', '.join(missing)}")
        unknown = [n for n in self.fixed if n not in names]
        if unknown:
            raise InvalidParams(f"unknown parameters {', '.join(unknown)} for {self.family}")
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "fixed", dict(self.fixed))

    def grid(self):
        return np.linspace(self.start, self.stop, self.steps)

    def point(self, index, value):
        """Full parameter mapping at one grid point, validated against [0, 1]."""
        values = dict(self.fixed)
        values[self.param] = float(value)
        if self.tie is not None:
            values[self.tie.target] = self.tie.apply(float(value))
        for name, v in values.items():
            if not (-_RANGE_SLACK <= v <= 1.0 + _RANGE_SLACK):
                raise InvalidParams(
                    f"grid point {index} ({self.param}={value:.12g}): {name}={v:.12g} is outside [0, 1]"
                )
            values[name] = min(max(v, 0.0), 1.0)
        return values


@dataclass(frozen=True)
class SweepRow:
    param: str
    value: float
    D: float
    Du: float
    Dv: float
    q0: float
    q1: float
    G: float
    IAE: float
    bound: float
    degenerate: bool


def _bound_for(D):
    if not math.isfinite(D):
        return math.nan
    return optimal_bound(min(max(D, 0.0), 0.5))


def evaluate_point(family, values, measurement="eigenbasis", probe_form="isometric"):
    """Reports at one strategy: ``(gain_report, disturbance_report)``.

    ``measurement`` and ``probe_form`` only affect the two-qubit family.
    """
    if family == "one-qubit":
        return evaluate_one_qubit(OneQubitProbeParams(**values))
    pp = build_two_qubit_probe(TwoQubitProbeParams(**values), probe_form)
    gr, dr, _ = evaluate_probe(pp, measurement)
    return gr, dr


def _row(spec, value, values):
    try:
        gr, dr = evaluate_point(spec.family, values, spec.measurement, spec.probe_form)
    except DegenerateConditioning:
        nan = math.nan
        return SweepRow(spec.param, float(value), nan, nan, nan, nan, nan, nan, nan, nan, True)
    q0, q1 = gr.guess_probabilities
    return SweepRow(
        spec.param, float(value), dr.D, dr.Du, dr.Dv, q0, q1, gr.G, gr.IAE, _bound_for(dr.D), gr.degenerate
    )


def _row_task(args):
    spec, value, values = args
    return _row(spec, value, values)


def run_sweep(spec, workers=1):
    """Evaluate every grid point of ``spec``.

    All grid points are validated before any evaluation.  With
    ``workers > 1`` points are evaluated in worker processes; rows come back
    in grid order either way.
    """
    grid = spec.grid()
    tasks = [(spec, value, spec.point(i, value)) for i, value in enumerate(grid)]
    if workers is None or workers <= 1:
        return [_row_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row_task, tasks, chunksize=chunk))


def attenuation(template, deltas, column="D", workers=1):
    """Largest peak prominence of ``column`` for each ``delta``.

    Returns a list of ``(delta, max_prominence)``; zero when the curve has no
    interior maximum.
    """
    if template.param == "delta" or (template.tie is not None and template.tie.target == "delta"):
        raise InvalidParams("attenuation needs delta held fixed in the template")
    table = []
    for delta in deltas:
        spec = replace(template, fixed={**template.fixed, "delta": float(delta)})
        rows = run_sweep(spec, workers)
        table.append((float(delta), find_peaks(rows, column, 0.0).max_prominence))
    return table


def _phi_array(z):
    z = np.clip(z, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        down = np.where(z < 1.0, (1.0 - z) * np.log1p(-z), 0.0)
    return ((1.0 + z) * np.log1p(z) + down) / math.log(2.0)


@dataclass(frozen=True)
class StrategyResult:
    params: OneQubitProbeParams
    D: float
    IAE: float
    gap: float
    gap_at_D: float


def best_single_qubit_strategy(target_d, grid_resolution=2000):
    """Grid search for the most informative untilted (``delta = 0``) single-qubit probe.

    Feasible points have ``|D - target_d| < 1 / grid_resolution``.  ``gap`` is
    measured against the optimal bound at ``target_d``; ``gap_at_D`` against
    the bound at the point's own disturbance.
    """
    if not (0.0 < target_d <= 0.5):
        raise InvalidParams(f"target disturbance must lie in (0, 1/2], got {target_d!r}")
    n = int(grid_resolution)
    if n < 1:
        raise InvalidParams("grid resolution must be positive")
    tol = 1.0 / n
    axis = np.linspace(0.0, 1.0, n + 1)
    c = axis
    d = np.sqrt(1.0 - c * c)
    best = None
    for a in axis:
        b = math.sqrt(1.0 - a * a)
        D = 0.5 * (1.0 - a * c - b * d)
        ok = np.abs(D - target_d) < tol
        if not ok.any():
            continue
        cc, dd = c[ok], d[ok]
        alpha = a * a - cc * cc
        cos_phi = np.where(alpha >= 0, 1.0, -1.0)
        q0, q1, g0, g1 = closed_form_terms(a, b, cc, dd, 0.0, cos_phi, 0.0)
        iae = 0.5 * (q0 * _phi_array(g0) + q1 * _phi_array(g1))
        iae = np.where(np.abs(alpha) <= 1e-14, 0.0, iae)
        k = int(np.argmax(iae))
        if best is None or iae[k] > best[0]:
            best = (float(iae[k]), float(a), float(cc[k]), float(D[ok][k]))
    if best is None:
        raise NoFeasiblePoint(f"no grid point within {tol:g} of D={target_d}")
    iae, a, cval, D = best
    return StrategyResult(
        OneQubitProbeParams(a, cval, 0.0),
        D,
        iae,
        optimal_bound(target_d) - iae,
        optimal_bound(min(max(D, 0.0), 0.5)) - iae,
    )

