"""Time and parameter sweeps, CSV output and placement calibration."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass
import math
import os
from pathlib import Path
import tempfile
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySweepError, InvalidParameterError
from .measures import Classification, WITNESS_TOL, classify, ccnr, negativity, realignment
from .scrambler import Placement, ScrambleConfig, scramble_point
from .states import DEFAULT_SPECS, BipartiteState, Family, StateSpec, build_state, spec_for_value

CSV_COLUMNS = ("x", "s_otoc", "m_re", "m_im", "negativity", "ccnr", "class")
DIAGNOSTIC_COLUMNS = ("ccnr_clipped", "realignment")

PLATEAU_TARGET = 0.1


@dataclass(frozen=True)
class TimeGrid:
    """``samples`` equally spaced times on ``[0, t_max]``."""

    t_max: float = 10.0
    samples: int = 512

    def __post_init__(self):
        if not (math.isfinite(self.t_max) and self.t_max > 0.0):
            raise InvalidParameterError(f"t_max must be a positive number, got {self.t_max}")
        if int(self.samples) != self.samples or self.samples < 2:
            raise InvalidParameterError(f"samples must be an integer >= 2, got {self.samples}")
        object.__setattr__(self, "samples", int(self.samples))

    def times(self) -> np.ndarray:
        k = np.arange(self.samples)
        return k * self.t_max / (self.samples - 1)


@dataclass(frozen=True)
class SweepRecord:
    x: float
    s_otoc: float
    m_re: float
    m_im: float
    negativity: float
    ccnr: float
    classification: Classification
    realignment: float = math.nan

    @property
    def ccnr_clipped(self) -> float:
        return max(self.ccnr, 0.0)


def _evaluate(state: BipartiteState, cfg: ScrambleConfig, t: float, x: float, diagnostics: bool) -> SweepRecord:
    if t == 0.0:
        m, evolved = 1.0 + 0.0j, state
    else:
        sample, evolved = scramble_point(state, cfg, t)
        m = sample.M
    n = negativity(evolved)
    c = ccnr(evolved)
    r = realignment(evolved) if diagnostics else math.nan
    return SweepRecord(float(x), 2.0 * (1.0 - m.real), m.real, m.imag, n, c, classify(n, c), r)


def _run(jobs: list[tuple], diagnostics: bool, workers: int | None) -> list[SweepRecord]:
    def one(job):
        return _evaluate(*job, diagnostics)

    if workers is None or workers <= 1 or len(jobs) < 2:
        return [one(j) for j in jobs]
    # map() yields in submission order, so output follows the grid index.
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, jobs))


def run_time_sweep(
    spec: StateSpec,
    cfg: ScrambleConfig,
    grid: TimeGrid = TimeGrid(),
    *,
    workers: int | None = None,
    diagnostics: bool = False,
) -> list[SweepRecord]:
    """Evolve one state over a time grid; ``x`` is ``t / t_max``."""
    state = build_state(spec)
    jobs = [(state, cfg, float(t), float(t) / grid.t_max) for t in grid.times()]
    return _run(jobs, diagnostics, workers)


def param_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to 12 decimals to avoid drift."""
    if step <= 0.0 or stop < start:
        raise InvalidParameterError(f"bad parameter grid start={start} stop={stop} step={step}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def run_param_sweep(
    family: Family | str,
    preset: str,
    values: Sequence[float],
    at_t: float = 0.0,
    cfg: ScrambleConfig = ScrambleConfig(),
    *,
    workers: int | None = None,
    diagnostics: bool = False,
) -> list[SweepRecord]:
    """Measures of a one-parameter family, optionally scrambled to time ``at_t``.

    Every grid value is validated before any evaluation starts.
    """
    if not values:
        raise EmptySweepError("parameter grid is empty")
    if not (math.isfinite(at_t) and at_t >= 0.0):
        raise InvalidParameterError(f"at_t must be >= 0, got {at_t}")
    specs = [spec_for_value(family, v, preset) for v in values]
    states = [build_state(s) for s in specs]
    jobs = [(st, cfg, float(at_t), float(v)) for st, v in zip(states, values)]
    return _run(jobs, diagnostics, workers)


def fmt_number(v: float) -> str:
    if v == 0.0:
        return "0"
    return f"{v:.12g}"


def csv_text(records: Sequence[SweepRecord], diagnostics: bool) -> str:
    header = CSV_COLUMNS + (DIAGNOSTIC_COLUMNS if diagnostics else ())
    lines = [",".join(header)]
    for r in records:
        nums = [r.x, r.s_otoc, r.m_re, r.m_im, r.negativity, r.ccnr]
        row = [fmt_number(v) for v in nums] + [r.classification.value]
        if diagnostics:
            row += [fmt_number(r.ccnr_clipped), fmt_number(r.realignment)]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def atomic_write_text(destination: str | os.PathLike, text: str) -> Path:
    """Write via a temp file plus rename so readers never see a partial file."""
    dest = Path(destination)
    try:
        fd, tmp = tempfile.mkstemp(dir=dest.parent if str(dest.parent) else ".", prefix=f".{dest.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except OSError as exc:
        raise OSError(f"cannot write {dest}: {exc.strerror or exc}") from exc
    return dest


def emit_csv(records: Sequence[SweepRecord], destination, *, diagnostics: bool = False) -> Path:
    if not records:
        raise EmptySweepError("no records to write")
    return atomic_write_text(destination, csv_text(records, diagnostics))


def read_csv(source) -> list[SweepRecord]:
    try:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read {source}: {exc.strerror or exc}") from exc
    out = []
    for row in rows:
        try:
            out.append(
                SweepRecord(
                    float(row["x"]),
                    float(row["s_otoc"]),
                    float(row["m_re"]),
                    float(row["m_im"]),
                    float(row["negativity"]),
                    float(row["ccnr"]),
                    Classification(row["class"]),
                    float(row.get("realignment") or math.nan),
                )
            )
        except (KeyError, ValueError) as exc:
            raise InvalidParameterError(f"{source}: malformed sweep CSV row {row!r}") from exc
    return out


def first_peak_index(values: Sequence[float], floor: float = WITNESS_TOL) -> int | None:
    """Index of the first strict local maximum above ``floor``, or None."""
    v = np.asarray(values, dtype=float)
    for k in range(1, len(v) - 1):
        if v[k] > floor and v[k] > v[k - 1] and v[k] >= v[k + 1]:
            return k
    return None


def max_negativity(records: Iterable[SweepRecord]) -> float:
    return max(r.negativity for r in records)


def calibrate_placement(
    specs: Sequence[StateSpec] = tuple(DEFAULT_SPECS.values()),
    D: float = 0.6,
    grid: TimeGrid = TimeGrid(),
    target: float = PLATEAU_TARGET,
    *,
    workers: int | None = None,
) -> tuple[Placement, dict[Placement, float]]:
    """Pick the swap placement whose peak negativity best matches ``target``.

    The score of a placement is the mean over ``specs`` of
    ``|max_t N(t) - target|``; lower is better.
    """
    scores = {}
    for placement in Placement:
        cfg = ScrambleConfig(D=D, placement=placement)
        peaks = [max_negativity(run_time_sweep(s, cfg, grid, workers=workers)) for s in specs]
        scores[placement] = float(np.mean([abs(p - target) for p in peaks]))
    best = min(scores, key=lambda p: (scores[p], list(Placement).index(p)))
    return best, scores
