"""Conventional phased-array beamforming and phase-map analysis.

Independent cross-check path: steer a planar (or linear) array with
narrowband weights and scan direction space. Steering uses
a_mn(u, v) = exp(−j·(2π/λ)·(m·dx·u + n·dy·v)); scene snapshots carry the
conjugate (advance) propagation sign so that for a far-field source at
(u0, v0) the matched output a(u0,v0)^H··· reaches the full M·N coherent gain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .geometry import ArrayGeometry, Scene, Source, Vec3, element_positions_array
from .propagation import (
    PhaseSign,
    received_phase_exact,
    received_phase_farfield,
)

__all__ = [
    "ElementPattern",
    "ISOTROPIC",
    "SteeringVector",
    "steering_vector",
    "scene_snapshot",
    "beamform_conventional",
    "PhaseMap",
    "phase_map",
    "unwrap_map_deg",
    "mean_adjacent_steps",
    "fit_phase_plane",
    "curvature_profile",
]


@dataclass(frozen=True)
class ElementPattern:
    """Per-element amplitude taper over direction space.

    ``isotropic`` is unity everywhere; ``cosine`` applies w(u,v)^exponent
    where w = sqrt(1 − u² − v²) (zero outside the visible region).
    """

    kind: Literal["isotropic", "cosine"] = "isotropic"
    exponent: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in ("isotropic", "cosine"):
            raise ValueError(f"unknown pattern kind {self.kind!r}")
        if not (math.isfinite(self.exponent) and self.exponent >= 0):
            raise ValueError(f"exponent must be >= 0, got {self.exponent!r}")

    def gain(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if self.kind == "isotropic":
            return np.ones(np.broadcast(u, v).shape)
        w2 = np.clip(1.0 - u * u - v * v, 0.0, None)
        return np.sqrt(w2) ** self.exponent


ISOTROPIC = ElementPattern()


@dataclass(frozen=True)
class SteeringVector:
    """Unit-modulus steering weights for one look direction, shape (M, N)."""

    weights: np.ndarray
    u: float
    v: float
    wavelength_m: float


def _check_uv(u: float, v: float) -> None:
    if u * u + v * v > 1.0 + 1e-12:
        raise ValueError(f"(u, v) outside the unit disk: u={u}, v={v}")


def steering_vector(geometry: ArrayGeometry, u: float, v: float,
                    wavelength_m: float) -> SteeringVector:
    """a_mn = exp(−j·(2π/λ)·(m·dx·u + n·dy·v)), shape (M, N)."""
    _check_uv(u, v)
    if not (math.isfinite(wavelength_m) and wavelength_m > 0):
        raise ValueError(f"wavelength_m must be > 0, got {wavelength_m!r}")
    m = np.arange(geometry.m)[:, None] * geometry.dx_m
    n = np.arange(geometry.n)[None, :] * geometry.dy_m
    phase = (-2.0 * math.pi / wavelength_m) * (m * u + n * v)
    return SteeringVector(weights=np.exp(1j * phase), u=u, v=v,
                          wavelength_m=wavelength_m)


def _element_phase(source: Source, model: str, pos: Vec3, freq_hz: float,
                   sign: PhaseSign) -> float:
    if model == "far-field" or source.is_farfield:
        if source.is_farfield:
            plane = source
        else:
            du, dv, _ = source.direction_cosines()
            plane = Source.farfield(du, dv, amplitude=source.amplitude,
                                    phase_rad=source.phase_rad)
        return received_phase_farfield(plane, pos, freq_hz, sign)
    return received_phase_exact(source, pos, freq_hz, sign)


def scene_snapshot(scene: Scene, geometry: ArrayGeometry,
                   freq_hz: float) -> np.ndarray:
    """Single-frequency element snapshot, shape (M, N) complex.

    Uses the advance propagation sign so a far-field source at (u0, v0)
    yields exactly amplitude·conj-matched steering: the matched beamformer
    output is M·N·amplitude.
    """
    positions = element_positions_array(geometry)
    snap = np.zeros(geometry.num_elements, dtype=complex)
    for src in scene.sources:
        if src.amplitude == 0.0:
            continue
        for e in range(geometry.num_elements):
            pos = Vec3.from_array(positions[e])
            phi = _element_phase(src, scene.model, pos, freq_hz,
                                 PhaseSign.ADVANCE)
            snap[e] += src.amplitude * complex(math.cos(phi), math.sin(phi))
    return snap.reshape(geometry.m, geometry.n)


def beamform_conventional(snapshot: np.ndarray, geometry: ArrayGeometry,
                          wavelength_m: float, u_grid, v_grid,
                          pattern: ElementPattern = ISOTROPIC) -> np.ndarray:
    """|a(u,v)^H s| over a (u, v) scan grid, shape (len(u), len(v)).

    snapshot must be (M, N); grid values must lie in [−1, 1] per axis. The
    element pattern scales the magnitude after the coherent sum.
    """
    snapshot = np.asarray(snapshot, dtype=complex)
    if snapshot.shape != (geometry.m, geometry.n):
        raise ValueError(
            f"snapshot shape {snapshot.shape} does not match array "
            f"({geometry.m}, {geometry.n})"
        )
    if not (math.isfinite(wavelength_m) and wavelength_m > 0):
        raise ValueError(f"wavelength_m must be > 0, got {wavelength_m!r}")
    u_grid = np.asarray(u_grid, dtype=float)
    v_grid = np.asarray(v_grid, dtype=float)
    if u_grid.size == 0 or v_grid.size == 0:
        raise ValueError("scan grids must be non-empty")
    for name, g in (("u", u_grid), ("v", v_grid)):
        if np.any(np.abs(g) > 1.0 + 1e-12):
            raise ValueError(f"{name} grid values must lie in [-1, 1]")
    k = 2.0 * math.pi / wavelength_m
    # conj(a) factorizes over the two axes: exp(+jk·m·dx·u)·exp(+jk·n·dy·v)
    mx = np.arange(geometry.m)[:, None] * geometry.dx_m
    ny = np.arange(geometry.n)[:, None] * geometry.dy_m
    em = np.exp(1j * k * mx * u_grid[None, :])      # (M, U)
    en = np.exp(1j * k * ny * v_grid[None, :])      # (N, V)
    b = np.einsum("mu,mn,nv->uv", em, snapshot, en)
    gain = pattern.gain(u_grid[:, None], v_grid[None, :])
    return np.abs(b) * gain


@dataclass(frozen=True)
class PhaseMap:
    """Wrapped per-element phase samples (degrees in (−180, 180]) over the
    element grid, with the element coordinate axes attached."""

    phase_deg: np.ndarray   # (M, N)
    x_m: np.ndarray         # (M,)
    y_m: np.ndarray         # (N,)
    freq_hz: float


def phase_map(geometry: ArrayGeometry, source: Source,
              freq_hz: float) -> PhaseMap:
    """Exact-model received phase (delay sign) at every element, degrees.

    Far-field sources produce an exactly planar map; point sources add
    spherical curvature on top of the plane.
    """
    positions = element_positions_array(geometry)
    phases = np.empty(geometry.num_elements)
    for e in range(geometry.num_elements):
        pos = Vec3.from_array(positions[e])
        if source.is_farfield:
            phi = received_phase_farfield(source, pos, freq_hz, PhaseSign.DELAY)
        else:
            phi = received_phase_exact(source, pos, freq_hz, PhaseSign.DELAY)
        phases[e] = math.degrees(phi)
    x = geometry.origin.x + np.arange(geometry.m) * geometry.dx_m
    y = geometry.origin.y + np.arange(geometry.n) * geometry.dy_m
    return PhaseMap(phase_deg=phases.reshape(geometry.m, geometry.n),
                    x_m=x, y_m=y, freq_hz=freq_hz)


def unwrap_map_deg(pmap: PhaseMap) -> np.ndarray:
    """2-D unwrapped phases (degrees), rows (x axis) first, then columns.

    Raises when any adjacent wrapped step reaches half a cycle, since the
    unwrap direction is then ambiguous.
    """
    ph = pmap.phase_deg
    for axis in (0, 1):
        if ph.shape[axis] < 2:
            continue
        steps = np.diff(ph, axis=axis)
        wrapped = (steps + 180.0) % 360.0 - 180.0
        if np.any(np.abs(np.abs(wrapped) - 180.0) < 1e-9):
            raise ValueError(
                "adjacent phase step is half a cycle; unwrap is ambiguous"
            )
    out = np.unwrap(ph, axis=0, period=360.0)
    if out.shape[1] > 1:
        out = np.unwrap(out, axis=1, period=360.0)
    return out


def mean_adjacent_steps(pmap: PhaseMap) -> tuple[float, float]:
    """Mean |unwrapped step| along x and along y, degrees per element."""
    unwrapped = unwrap_map_deg(pmap)
    step_x = (float(np.mean(np.abs(np.diff(unwrapped, axis=0))))
              if unwrapped.shape[0] > 1 else 0.0)
    step_y = (float(np.mean(np.abs(np.diff(unwrapped, axis=1))))
              if unwrapped.shape[1] > 1 else 0.0)
    return step_x, step_y


def fit_phase_plane(pmap: PhaseMap) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares plane through the unwrapped map.

    Returns (coefficients [c0_deg, gx_deg_per_m, gy_deg_per_m],
    residual_deg (M, N)).
    """
    unwrapped = unwrap_map_deg(pmap)
    xx, yy = np.meshgrid(pmap.x_m, pmap.y_m, indexing="ij")
    a = np.column_stack([np.ones(xx.size), xx.ravel(), yy.ravel()])
    coef, *_ = np.linalg.lstsq(a, unwrapped.ravel(), rcond=None)
    residual = unwrapped - (a @ coef).reshape(unwrapped.shape)
    return coef, residual


def curvature_profile(geometry: ArrayGeometry, source: Source,
                      freq_hz: float) -> np.ndarray:
    """Wavefront curvature: plane-fit residual per element, in cycles.

    Exactly zero (to rounding) for far-field sources; for point sources the
    maximum residual shrinks as 1/range.
    """
    _, residual_deg = fit_phase_plane(phase_map(geometry, source, freq_hz))
    return residual_deg / 360.0
