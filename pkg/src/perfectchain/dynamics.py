"""Time evolution of the chain: exact normal-mode propagator plus an
independent velocity-Verlet integrator, with the mirror-transfer and
periodicity diagnostics.

All states are mass-weighted (q_i = sqrt(M_i) * physical displacement); the
dynamical matrix governs q'' = -D q.  For a design with mode frequencies
k * omega, any zero-velocity configuration reappears mirrored at t* = pi/omega
and exactly at 2 pi / omega, because cos(k pi) = (-1)^k combines with the
alternating persymmetry of the eigenvectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from perfectchain import _kernels
from perfectchain.chain import ChainDesign, dynamical_matrix
from perfectchain.eigensolve import EigenSystem, eigensystem

_EPS = float(np.finfo(np.float64).eps)


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChainState:
    """Mass-weighted displacements and velocities at one instant."""

    t: float
    q: np.ndarray
    qdot: np.ndarray

    def __post_init__(self):
        q = _readonly(np.atleast_1d(self.q))
        qdot = _readonly(np.atleast_1d(self.qdot))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "qdot", qdot)
        if q.shape != qdot.shape or q.ndim != 1:
            raise ValueError("q and qdot must be 1-d arrays of equal length")

    @property
    def n(self) -> int:
        return int(self.q.size)

    def physical_displacements(self, design: ChainDesign) -> np.ndarray:
        return self.q / np.sqrt(design.masses)

    def physical_velocities(self, design: ChainDesign) -> np.ndarray:
        return self.qdot / np.sqrt(design.masses)


def initial_pulse(design: ChainDesign, site: int = 1, amplitude: float = 1.0) -> ChainState:
    """Static start: unit mass-weighted displacement of one site (1-based)."""
    if not 1 <= site <= design.n:
        raise ValueError("site out of range")
    q = np.zeros(design.n)
    q[site - 1] = amplitude
    return ChainState(0.0, q, np.zeros(design.n))


@dataclass(frozen=True)
class Trajectory:
    """Ordered snapshots of one evolution."""

    design: ChainDesign
    states: tuple[ChainState, ...]
    interval: float

    def __post_init__(self):
        times = [s.t for s in self.states]
        if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.states)


class ModalPropagator:
    """Evolves states by eigen-decomposition of the dynamical matrix.

    Time access is random (no stepping): mode k rotates with cos(w_k t) and
    sin(w_k t)/w_k; the zero mode uses the exact limits 1 and t.
    """

    def __init__(self, design: ChainDesign, rel_tol: float = 1e-12,
                 modes: EigenSystem | None = None):
        self.design = design
        es = modes if modes is not None else eigensystem(dynamical_matrix(design), rel_tol)
        lam = np.clip(np.asarray(es.values), 0.0, None)
        zero_floor = 64 * design.n * _EPS * max(float(lam.max()), 1.0)
        self.is_zero_mode = np.asarray(es.values) <= zero_floor
        self.omegas = np.where(self.is_zero_mode, 0.0, np.sqrt(lam))
        self.vectors = es.vectors
        self.eigensystem = es

    def evolve(self, initial: ChainState, t: float) -> ChainState:
        if initial.n != self.design.n:
            raise ValueError("state length does not match the design")
        v = self.vectors
        alpha = v.T @ initial.q
        beta = v.T @ initial.qdot
        wt = self.omegas * t
        cos_wt = np.cos(wt)
        # sin(w t)/w with the w -> 0 limit t
        sin_over = np.where(self.is_zero_mode, t, np.sin(wt) / np.where(self.is_zero_mode, 1.0, self.omegas))
        cos_wt = np.where(self.is_zero_mode, 1.0, cos_wt)
        q = v @ (alpha * cos_wt + beta * sin_over)
        qdot = v @ (beta * cos_wt - alpha * self.omegas * np.sin(wt))
        return ChainState(initial.t + t, q, qdot)


def propagate_modes(design: ChainDesign, initial: ChainState, t: float,
                    rel_tol: float = 1e-12) -> ChainState:
    """Exact modal evolution of ``initial`` by time t."""
    return ModalPropagator(design, rel_tol).evolve(initial, t)


def energy(design: ChainDesign, state: ChainState) -> float:
    """Total energy 0.5 sum M u'^2 + 0.5 sum K (u_{i+1} - u_i)^2."""
    u = state.physical_displacements(design)
    udot = state.physical_velocities(design)
    kinetic = 0.5 * float(np.sum(design.masses * udot * udot))
    stretch = np.diff(u)
    potential = 0.5 * float(np.sum(design.springs * stretch * stretch))
    return kinetic + potential


def verlet_stability_bound(design: ChainDesign) -> float:
    """Half the linear-stability step limit 2/omega_max, via a Gershgorin
    bound on the dynamical matrix (independent of any eigensolve)."""
    dm = dynamical_matrix(design)
    lam_upper = max(
        float(np.max(dm.diag + np.concatenate([[0.0], dm.offdiag]) +
                     np.concatenate([dm.offdiag, [0.0]]))) if dm.n > 1 else float(dm.diag[0]),
        0.0,
    )
    omega_max = math.sqrt(lam_upper) if lam_upper > 0 else 0.0
    return math.inf if omega_max == 0.0 else 1.0 / omega_max


def integrate_verlet(
    design: ChainDesign,
    initial: ChainState,
    t_end: float,
    dt: float,
    snapshot_interval: float | None = None,
) -> Trajectory:
    """Velocity-Verlet trajectory in physical coordinates.

    Rejects dt above half the stability limit.  Snapshots at (approximately)
    ``snapshot_interval``, always including the initial and final states;
    states are returned mass-weighted.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    bound = verlet_stability_bound(design)
    if dt > bound:
        raise ValueError(
            f"dt={dt} exceeds the enforced stability bound {bound:.6g} "
            "(= 0.5 * 2/omega_max)"
        )
    if initial.n != design.n:
        raise ValueError("state length does not match the design")
    n_steps = round(t_end / dt)
    sqrt_m = np.sqrt(design.masses)
    u = (initial.q / sqrt_m).copy()
    v = (initial.qdot / sqrt_m).copy()
    if snapshot_interval is None:
        stride = n_steps if n_steps else 1
    else:
        if snapshot_interval <= 0:
            raise ValueError("snapshot_interval must be positive")
        stride = max(1, round(snapshot_interval / dt))
    states = [ChainState(initial.t, initial.q, initial.qdot)]
    done = 0
    while done < n_steps:
        chunk = min(stride, n_steps - done)
        _kernels.verlet_steps(design.masses, design.springs, u, v, dt, chunk)
        done += chunk
        states.append(ChainState(initial.t + done * dt, u * sqrt_m, v * sqrt_m))
    interval = stride * dt if n_steps else t_end
    return Trajectory(design, tuple(states), interval)


def mirror_fidelity(initial: ChainState, final: ChainState) -> tuple[float, float]:
    """Overlap of the evolved state with the mirrored initial one.

    Returns (fidelity in [0, 1], max |q_i(final) - q_{n+1-i}(initial)|).
    Defined for static starts only: with nonzero initial velocities the
    velocity field evolves with the opposite mirror parity and the zero mode
    drifts, so the number would be meaningless and the call refuses.
    """
    if initial.n != final.n:
        raise ValueError("states have different lengths")
    if np.any(initial.qdot != 0.0):
        raise ValueError("mirror fidelity requires zero initial velocities")
    q0 = initial.q
    qf = final.q
    norm0 = float(np.linalg.norm(q0))
    normf = float(np.linalg.norm(qf))
    if norm0 == 0.0 or normf == 0.0:
        raise ValueError("fidelity undefined for zero displacement")
    mirrored = q0[::-1]
    overlap = float(mirrored @ qf) / (norm0 * normf)
    fidelity = min(1.0, max(0.0, overlap))
    max_dev = float(np.max(np.abs(qf - mirrored)))
    return fidelity, max_dev


def snapshot_series(
    design: ChainDesign,
    initial: ChainState,
    t_end: float,
    interval: float,
    rel_tol: float = 1e-12,
) -> Trajectory:
    """Modal-propagator snapshots at 0, interval, ..., t_end."""
    if interval <= 0:
        raise ValueError("interval must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    if t_end == 0:
        return Trajectory(design, (initial,), interval)
    count = round(t_end / interval)
    if count < 1 or abs(count * interval - t_end) > 1e-9 * max(1.0, abs(t_end)):
        raise ValueError("interval must divide t_end (within rounding)")
    prop = ModalPropagator(design, rel_tol)
    states = [initial]
    for j in range(1, count + 1):
        states.append(prop.evolve(initial, j * interval))
    return Trajectory(design, tuple(states), interval)
