"""Comb-tuned k-space beamforming: envelope synthesis, axis calibration,
peak finding, and the end-to-end estimation pipeline.

Each array element is tuned to one comb tone; summing the mixed element
outputs produces a time-domain envelope whose period is 1/Δf and whose peak
position encodes the source direction cosine u. Calibration maps envelope
time to u; peaks then land at u = sin(azimuth).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayGeometry, Scene, Source, Vec3, uv_to_direction
from .propagation import (
    NoiseSpec,
    PhaseSign,
    PhasorSet,
    complex_noise,
    scene_element_phasors,
)
from .waveform import CombSpec

__all__ = [
    "TuningPlan",
    "assign_tuning",
    "AxisCalibration",
    "wrap_unit",
    "time_to_u",
    "u_to_azimuth",
    "default_time_grid",
    "complex_field",
    "beamform_envelope",
    "beamform_rf",
    "apply_calibration",
    "calibrate_axis",
    "Peak",
    "find_peaks",
    "BeamformOutput",
    "SimConfig",
    "run_beamform",
    "estimate_azimuths",
]


@dataclass(frozen=True)
class TuningPlan:
    """Element→tone assignment. tone_indices[e] is the 1-based comb tone
    element e listens at; the assignment must be a bijection onto 1..N."""

    tone_indices: tuple[int, ...]
    order: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "tone_indices", tuple(self.tone_indices))
        n = len(self.tone_indices)
        if sorted(self.tone_indices) != list(range(1, n + 1)):
            raise ValueError(
                "tone_indices must be a permutation of 1..num_elements"
            )


def assign_tuning(geometry: ArrayGeometry, comb: CombSpec) -> TuningPlan:
    """One tone per element along a linear array.

    ascending: element m gets tone m+1; descending reverses the order.
    Requires a linear array with exactly num_tones elements.
    """
    if geometry.kind != "linear":
        raise ValueError("tone tuning is defined for linear arrays only")
    if geometry.m != comb.num_tones:
        raise ValueError(
            f"array has {geometry.m} elements but the comb has "
            f"{comb.num_tones} tones"
        )
    idx = tuple(range(1, comb.num_tones + 1))
    if geometry.tuning_order == "descending":
        idx = idx[::-1]
    return TuningPlan(tone_indices=idx, order=geometry.tuning_order)


def wrap_unit(x):
    """Wrap into the half-open interval (−1, 1]."""
    return 1.0 - np.mod(1.0 - np.asarray(x, dtype=float), 2.0)


@dataclass(frozen=True)
class AxisCalibration:
    """Mapping from envelope time to direction cosine:
    u(t) = wrap(slope_sign · 2·delta_f_hz · (t − t0_s)) into (−1, 1]."""

    slope_sign: int
    t0_s: float
    delta_f_hz: float

    def __post_init__(self) -> None:
        if self.slope_sign not in (-1, 1):
            raise ValueError(f"slope_sign must be ±1, got {self.slope_sign!r}")
        if not (math.isfinite(self.delta_f_hz) and self.delta_f_hz > 0):
            raise ValueError(f"delta_f_hz must be > 0, got {self.delta_f_hz!r}")
        period = 1.0 / self.delta_f_hz
        if not (0.0 <= self.t0_s < period):
            raise ValueError(
                f"t0_s must lie in [0, {period!r}), got {self.t0_s!r}"
            )


def time_to_u(calibration: AxisCalibration, t):
    """Direction cosine(s) for envelope time(s), wrapped into (−1, 1]."""
    t = np.asarray(t, dtype=float)
    x = calibration.slope_sign * 2.0 * calibration.delta_f_hz * (t - calibration.t0_s)
    out = wrap_unit(x)
    return float(out) if out.ndim == 0 else out


def u_to_azimuth(u: float) -> float:
    """Azimuth (degrees) for a direction cosine in [−1, 1]."""
    if not math.isfinite(u) or abs(u) > 1.0 + 1e-9:
        raise ValueError(f"direction cosine must be in [-1, 1], got {u!r}")
    return math.degrees(math.asin(min(1.0, max(-1.0, u))))


def default_time_grid(comb: CombSpec, grid_points: int = 4096) -> np.ndarray:
    """Uniform grid over [0, duration): duration·k/grid_points."""
    if not isinstance(grid_points, int) or grid_points < 2:
        raise ValueError(f"grid_points must be an int >= 2, got {grid_points!r}")
    return np.arange(grid_points) * (comb.duration_s / grid_points)


def complex_field(phasors: PhasorSet, time_s) -> np.ndarray:
    """Coherent element sum Σ_e a_e·exp(j·2π·ν_e·t) at each time sample."""
    t = np.asarray(time_s, dtype=float)
    if t.size == 0:
        raise ValueError("time grid is empty")
    amps = phasors.amplitude_vector()
    nu = phasors.baseband_vector()
    return (amps[None, :] * np.exp(2j * np.pi * nu[None, :] * t[:, None])).sum(axis=1)


@dataclass
class Peak:
    """One refined envelope peak and its direction estimate."""

    time_s: float
    u: float
    azimuth_deg: float
    magnitude: float


@dataclass
class BeamformOutput:
    """Sampled beamformer output plus optional derived axes and peaks."""

    time_s: np.ndarray
    envelope: np.ndarray
    rf: np.ndarray | None = None
    u: np.ndarray | None = None
    azimuth_deg: np.ndarray | None = None
    calibration: AxisCalibration | None = None
    peaks: list[Peak] | None = None
    phasors: PhasorSet | None = None


def beamform_envelope(phasors: PhasorSet, time_s,
                      noise: NoiseSpec | None = None,
                      trial: int = 0) -> BeamformOutput:
    """Envelope |Σ_e a_e·exp(j2πν_e t) (+ noise)| over a time grid.

    The result is independent of the common mixer LO (a pure time shift of
    nothing: only tone differences enter) and periodic with 1/Δf.
    """
    t = np.asarray(time_s, dtype=float)
    z = complex_field(phasors, t)
    if noise is not None and noise.sigma > 0:
        z = z + complex_noise(noise, len(phasors), t.size, trial).sum(axis=0)
    return BeamformOutput(time_s=t, envelope=np.abs(z), phasors=phasors)


def beamform_rf(phasors: PhasorSet, time_s) -> np.ndarray:
    """Real RF element sum Σ_e |a_e|·cos(2πf_e t + ∠a_e).

    Requires f_lo = 0 so the phasors still carry RF frequencies; its
    rectified local maxima trace out the envelope.
    """
    if phasors.f_lo_hz != 0.0:
        raise ValueError(
            "RF synthesis needs phasors mixed with f_lo = 0 (RF frequencies)"
        )
    t = np.asarray(time_s, dtype=float)
    if t.size == 0:
        raise ValueError("time grid is empty")
    amps = phasors.amplitude_vector()
    nu = phasors.baseband_vector()
    return (np.abs(amps)[None, :] * np.cos(
        2.0 * np.pi * nu[None, :] * t[:, None] + np.angle(amps)[None, :]
    )).sum(axis=1)


def apply_calibration(out: BeamformOutput,
                      calibration: AxisCalibration) -> BeamformOutput:
    """Attach u and azimuth axes to an envelope result."""
    u = time_to_u(calibration, out.time_s)
    az = np.degrees(np.arcsin(np.clip(u, -1.0, 1.0)))
    out.u = u
    out.azimuth_deg = az
    out.calibration = calibration
    return out


def _quadratic_peak(ym1: float, y0: float, yp1: float) -> tuple[float, float]:
    """3-point quadratic vertex: fractional offset in [−0.5, 0.5] and height."""
    denom = ym1 - 2.0 * y0 + yp1
    if denom == 0.0:
        return 0.0, y0
    p = 0.5 * (ym1 - yp1) / denom
    p = min(0.5, max(-0.5, p))
    return p, y0 - 0.25 * (ym1 - yp1) * p


def _circular_u_distance(a: float, b: float) -> float:
    d = abs(a - b) % 2.0
    return min(d, 2.0 - d)


def find_peaks(out: BeamformOutput, threshold_fraction: float = 0.5,
               min_separation_u: float = 0.0) -> list[Peak]:
    """Locate, refine, and sort envelope peaks.

    Grid samples are treated as circular (the envelope repeats). Local maxima
    at or above threshold_fraction·max are refined with a 3-point quadratic
    fit, mapped through the attached calibration, sorted by magnitude, and
    thinned so no two kept peaks sit closer than min_separation_u on the
    circular u axis. An all-zero envelope yields []; an envelope with no
    isolated local maximum (e.g. constant) is an error.
    """
    if not (0.0 < threshold_fraction < 1.0):
        raise ValueError(
            f"threshold_fraction must be in (0, 1), got {threshold_fraction!r}"
        )
    if min_separation_u < 0:
        raise ValueError("min_separation_u must be >= 0")
    if out.calibration is None:
        raise ValueError("output has no calibration; run apply_calibration first")
    env = np.asarray(out.envelope, dtype=float)
    n = env.size
    if n < 3:
        raise ValueError("need at least 3 envelope samples to find peaks")
    gmax = float(env.max())
    if gmax == 0.0:
        return []
    # a flat envelope carries no direction information; without this guard
    # float rounding would be promoted into arbitrary "peaks"
    if gmax - float(env.min()) <= 1e-9 * gmax:
        raise ValueError("envelope has no isolated local maximum")
    prev = np.roll(env, 1)
    nxt = np.roll(env, -1)
    is_max = (env > prev) & (env >= nxt)
    if not is_max.any():
        raise ValueError("envelope has no isolated local maximum")
    dt = float(out.time_s[1] - out.time_s[0])
    span = n * dt
    peaks: list[Peak] = []
    for i in np.flatnonzero(is_max):
        p, height = _quadratic_peak(env[(i - 1) % n], env[i], env[(i + 1) % n])
        if height < threshold_fraction * gmax:
            continue
        t_pk = (float(out.time_s[0]) + (float(i) + p) * dt) % span
        u_pk = float(time_to_u(out.calibration, t_pk))
        peaks.append(Peak(time_s=t_pk, u=u_pk,
                          azimuth_deg=u_to_azimuth(u_pk), magnitude=height))
    peaks.sort(key=lambda pk: pk.magnitude, reverse=True)
    kept: list[Peak] = []
    for pk in peaks:
        if all(_circular_u_distance(pk.u, q.u) >= min_separation_u for q in kept):
            kept.append(pk)
    return kept


def _grid_peak_time(out: BeamformOutput) -> float:
    env = out.envelope
    n = env.size
    i = int(np.argmax(env))
    p, _ = _quadratic_peak(env[(i - 1) % n], env[i], env[(i + 1) % n])
    dt = float(out.time_s[1] - out.time_s[0])
    return float((float(out.time_s[0]) + (i + p) * dt) % (n * dt))


def calibrate_axis(geometry: ArrayGeometry, comb: CombSpec, f_lo_hz: float,
                   sign: PhaseSign = PhaseSign.DELAY, grid_points: int = 4096,
                   reference_range_m: float | None = None) -> AxisCalibration:
    """Two-probe time→u calibration.

    Simulates probes at u = 0 and u = +0.5, reads off their envelope peak
    times, and solves for the offset t0 (boresight peak) and the slope sign
    (whichever sign maps the second probe to +0.5). Probes are plane waves
    unless ``reference_range_m`` is given, in which case they are point
    sources at that range — use this when targets sit close enough that the
    range-dependent part of the arrival time matters.
    """
    if comb.num_tones < 2:
        raise ValueError("axis calibration needs at least 2 comb tones")
    tuning = assign_tuning(geometry, comb)
    grid = default_time_grid(comb, grid_points)

    def probe_peak_time(u: float) -> float:
        if reference_range_m is None:
            scene = Scene(sources=(Source.farfield(u, 0.0),), model="far-field")
        else:
            r = reference_range_m
            if not (math.isfinite(r) and r > 0):
                raise ValueError(
                    f"reference_range_m must be > 0, got {reference_range_m!r}"
                )
            ux, uy, uz = uv_to_direction(u, 0.0)
            pos = Vec3(r * ux, r * uy, r * uz)
            scene = Scene(sources=(Source.point(pos),), model="exact-spherical")
        phasors = scene_element_phasors(scene, geometry, comb, tuning,
                                        f_lo_hz, sign)
        return _grid_peak_time(beamform_envelope(phasors, grid))

    period = comb.period_s
    t0 = probe_peak_time(0.0) % period
    t_half = probe_peak_time(0.5)
    best_sign, best_err = 1, float("inf")
    for s in (-1, 1):
        u_est = float(wrap_unit(s * 2.0 * comb.delta_f_hz * (t_half - t0)))
        err = abs(u_est - 0.5)
        if err < best_err:
            best_sign, best_err = s, err
    return AxisCalibration(slope_sign=best_sign, t0_s=t0,
                           delta_f_hz=comb.delta_f_hz)


@dataclass(frozen=True)
class SimConfig:
    """Pipeline knobs for run_beamform / estimate_azimuths."""

    grid_points: int = 4096
    lo_hz: float | None = None            # None → comb.f0_hz
    phase_sign: PhaseSign = PhaseSign.DELAY
    noise: NoiseSpec | None = None
    threshold_fraction: float = 0.5
    min_separation_u: float | None = None  # None → one resolution cell, 4/N
    calibration_range_m: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.grid_points, int) or self.grid_points < 2:
            raise ValueError(
                f"grid_points must be an int >= 2, got {self.grid_points!r}"
            )
        if not (0.0 < self.threshold_fraction < 1.0):
            raise ValueError("threshold_fraction must be in (0, 1)")
        if self.min_separation_u is not None and self.min_separation_u < 0:
            raise ValueError("min_separation_u must be >= 0")


def run_beamform(scene: Scene, geometry: ArrayGeometry, comb: CombSpec,
                 config: SimConfig = SimConfig()) -> BeamformOutput:
    """Full pipeline: tune, propagate, calibrate, beamform, find peaks."""
    f_lo = comb.f0_hz if config.lo_hz is None else config.lo_hz
    tuning = assign_tuning(geometry, comb)
    phasors = scene_element_phasors(scene, geometry, comb, tuning, f_lo,
                                    config.phase_sign)
    calibration = calibrate_axis(geometry, comb, f_lo, config.phase_sign,
                                 config.grid_points,
                                 config.calibration_range_m)
    out = beamform_envelope(phasors, default_time_grid(comb, config.grid_points),
                            config.noise)
    out = apply_calibration(out, calibration)
    min_sep = (4.0 / comb.num_tones if config.min_separation_u is None
               else config.min_separation_u)
    out.peaks = find_peaks(out, config.threshold_fraction, min_sep)
    return out


def estimate_azimuths(scene: Scene, geometry: ArrayGeometry, comb: CombSpec,
                      config: SimConfig = SimConfig()) -> list[tuple[float, float]]:
    """(azimuth_deg, magnitude) per detected peak, strongest first."""
    out = run_beamform(scene, geometry, comb, config)
    assert out.peaks is not None
    return [(pk.azimuth_deg, pk.magnitude) for pk in out.peaks]
