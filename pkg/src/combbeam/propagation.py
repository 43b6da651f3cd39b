"""Per-element received phases and phasors for comb-illuminated scenes.

Sign convention: with PhaseSign.DELAY the exact model applies the pure
propagation delay, phase = −2π·f·dist/c. Its large-range limit for a plane
wave from direction û (unit vector pointing toward the source) keeps the
element-dependent part +2π·f·(û·x)/c, which is what the far-field model uses;
the two models therefore agree element-to-element as range grows (this
consistency is what pins the far-field sign). PhaseSign.ADVANCE is the complex
conjugate of DELAY in both models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterator

import numpy as np

from .geometry import ArrayGeometry, Scene, Source, Vec3, distance, element_positions
from .waveform import SPEED_OF_LIGHT, CombSpec, tone_frequency

if TYPE_CHECKING:  # pragma: no cover
    from .kspace import TuningPlan

__all__ = [
    "PhaseSign",
    "wrap_phase",
    "received_phase_exact",
    "received_phase_farfield",
    "ElementPhasor",
    "PhasorSet",
    "NoiseSpec",
    "complex_noise",
    "scene_element_phasors",
]


class PhaseSign(Enum):
    """Whether propagation is modeled as a phase delay or its conjugate."""

    DELAY = "delay"
    ADVANCE = "advance"


def wrap_phase(phi: float) -> float:
    """Wrap a phase (rad) into (−π, π]."""
    out = -math.remainder(-phi, 2.0 * math.pi)
    return math.pi if out == -math.pi else out


def _freq_checked(freq_hz: float) -> float:
    if not (math.isfinite(freq_hz) and freq_hz > 0):
        raise ValueError(f"frequency must be > 0, got {freq_hz!r}")
    return freq_hz


def received_phase_exact(source: Source, element_pos: Vec3, freq_hz: float,
                         sign: PhaseSign = PhaseSign.DELAY) -> float:
    """Wrapped phase (rad) of a point source's field at one element.

    Exact spherical model: ±2π·f·distance/c plus the source phase, with −
    for DELAY. The cycle count is reduced with math.remainder before scaling
    to radians, so precision holds even at distances of many thousand
    wavelengths.
    """
    if source.is_farfield:
        raise ValueError(
            "far-field source has no range; use received_phase_farfield"
        )
    f = _freq_checked(freq_hz)
    assert source.position is not None
    cycles = distance(source.position, element_pos) * f / SPEED_OF_LIGHT
    if sign is PhaseSign.DELAY:
        cycles = -cycles
    return wrap_phase(2.0 * math.pi * math.remainder(cycles, 1.0)
                      + source.phase_rad)


def received_phase_farfield(source: Source, element_pos: Vec3, freq_hz: float,
                            sign: PhaseSign = PhaseSign.DELAY) -> float:
    """Wrapped phase (rad) of a plane wave at one element.

    The element-dependent remainder of the delay model: +2π·f·(û·x)/c for
    DELAY (û pointing toward the source), conjugated for ADVANCE. Accepts
    point sources only when explicitly reduced by the caller — pass a
    far-field Source here.
    """
    if not source.is_farfield:
        raise ValueError(
            "point source has a range; use received_phase_exact"
        )
    f = _freq_checked(freq_hz)
    u, v, w = source.direction_cosines()
    proj = u * element_pos.x + v * element_pos.y + w * element_pos.z
    cycles = proj * f / SPEED_OF_LIGHT
    if sign is PhaseSign.ADVANCE:
        cycles = -cycles
    return wrap_phase(2.0 * math.pi * math.remainder(cycles, 1.0)
                      + source.phase_rad)


@dataclass(frozen=True)
class ElementPhasor:
    """Complex amplitude received by one element at its assigned tone."""

    element: int
    tone: int              # 1-based comb tone index
    amplitude: complex
    baseband_hz: float     # tone frequency minus the mixer LO

    @property
    def magnitude(self) -> float:
        return abs(self.amplitude)

    @property
    def angle_rad(self) -> float:
        return float(np.angle(self.amplitude))


@dataclass(frozen=True)
class PhasorSet:
    """All element phasors for one scene, plus the mixing parameters."""

    phasors: tuple[ElementPhasor, ...]
    f_lo_hz: float
    delta_f_hz: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "phasors", tuple(self.phasors))
        if len(self.phasors) == 0:
            raise ValueError("PhasorSet needs at least one phasor")
        if not (math.isfinite(self.f_lo_hz) and self.f_lo_hz >= 0):
            raise ValueError(f"f_lo_hz must be >= 0, got {self.f_lo_hz!r}")
        if not (math.isfinite(self.delta_f_hz) and self.delta_f_hz > 0):
            raise ValueError(f"delta_f_hz must be > 0, got {self.delta_f_hz!r}")

    def __len__(self) -> int:
        return len(self.phasors)

    def __iter__(self) -> Iterator[ElementPhasor]:
        return iter(self.phasors)

    def __getitem__(self, i: int) -> ElementPhasor:
        return self.phasors[i]

    def amplitude_vector(self) -> np.ndarray:
        """Complex amplitudes, shape (num_elements,)."""
        return np.array([p.amplitude for p in self.phasors], dtype=complex)

    def baseband_vector(self) -> np.ndarray:
        """Post-mixer frequencies (Hz), shape (num_elements,)."""
        return np.array([p.baseband_hz for p in self.phasors], dtype=float)


@dataclass(frozen=True)
class NoiseSpec:
    """Circular complex white noise: per element per sample,
    w = sigma·(g1 + j·g2)/sqrt(2) with E|w|² = sigma²."""

    sigma: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma >= 0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative int, got {self.seed!r}")


def complex_noise(spec: NoiseSpec, num_elements: int, num_samples: int,
                  trial: int = 0) -> np.ndarray:
    """Deterministic noise draw, shape (num_elements, num_samples).

    Each (seed, trial) pair indexes an independent stream, so Monte-Carlo
    trials are reproducible without sharing state.
    """
    if num_elements < 1 or num_samples < 1:
        raise ValueError("noise array dimensions must be >= 1")
    if spec.sigma == 0.0:
        return np.zeros((num_elements, num_samples), dtype=complex)
    rng = np.random.default_rng((spec.seed, trial))
    g = rng.standard_normal((2, num_elements, num_samples))
    return spec.sigma / math.sqrt(2.0) * (g[0] + 1j * g[1])


def _source_phase(source: Source, model: str, element_pos: Vec3,
                  freq_hz: float, sign: PhaseSign) -> float:
    if model == "far-field":
        if source.is_farfield:
            plane = source
        else:
            u, v, _ = source.direction_cosines()
            plane = Source.farfield(u, v, amplitude=source.amplitude,
                                    phase_rad=source.phase_rad)
        return received_phase_farfield(plane, element_pos, freq_hz, sign)
    return received_phase_exact(source, element_pos, freq_hz, sign)


def scene_element_phasors(scene: Scene, geometry: ArrayGeometry,
                          comb: CombSpec, tuning: "TuningPlan",
                          f_lo_hz: float,
                          sign: PhaseSign = PhaseSign.DELAY) -> PhasorSet:
    """Superpose all scene sources into one phasor per element.

    Element e listens only at its assigned tone (tuning.tone_indices[e]).
    Each source contributes comb.amplitude·source.amplitude at the model's
    received phase; contributions add coherently. ``f_lo_hz`` sets the
    post-mixer baseband frequency of each phasor (0 keeps RF).
    """
    if len(tuning.tone_indices) != geometry.num_elements:
        raise ValueError(
            f"tuning covers {len(tuning.tone_indices)} elements, "
            f"array has {geometry.num_elements}"
        )
    if not (math.isfinite(f_lo_hz) and f_lo_hz >= 0):
        raise ValueError(f"f_lo_hz must be >= 0, got {f_lo_hz!r}")
    positions = element_positions(geometry)
    phasors = []
    for e, (tone, pos) in enumerate(zip(tuning.tone_indices, positions)):
        f = tone_frequency(comb, tone)
        amp = 0.0 + 0.0j
        for src in scene.sources:
            if src.amplitude == 0.0 or comb.amplitude == 0.0:
                continue
            phi = _source_phase(src, scene.model, pos, f, sign)
            amp += comb.amplitude * src.amplitude * complex(math.cos(phi),
                                                            math.sin(phi))
        phasors.append(ElementPhasor(element=e, tone=tone, amplitude=amp,
                                     baseband_hz=f - f_lo_hz))
    return PhasorSet(phasors=tuple(phasors), f_lo_hz=f_lo_hz,
                     delta_f_hz=comb.delta_f_hz)
