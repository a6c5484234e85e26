"""Angle-space evolution of the 2**M primitive trajectories.

A primitive initial state has every tape spin in an lx eigenstate |+> or
|->. Such a tape never entangles with the head: the controlled flip leaves
|+> invariant and acts on |-> like lz on the head. The head therefore stays
pure and moves on the circle x = 0, so a single angle phi (Bloch vector
(0, sin phi, -cos phi)) carries the whole state:

    odd step (rotation)        : phi -> phi + alpha
    even step, tape sign '+'   : phi unchanged
    even step, tape sign '-'   : phi -> -phi

Any product tape decomposes over the 2**M sign patterns, and the head Bloch
vector of the full machine is the weight-square sum of the primitive
trajectories. That is the quantum parallelism this module exploits: cost
O(2**M) scalars per step instead of O(2**(M+1)) amplitudes, and for a single
primitive O(1).

Pattern order is lexicographic with '+' < '-', pattern character 0 (tape
spin 1) most significant. decompose() and superpose() both use this order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .engine import MachineConfig, Trajectory
from .errors import ConfigurationError

PERIODIC = "periodic"
APERIODIC = "aperiodic"


def normalize_pattern(pattern: str) -> str:
    pattern = pattern.replace("−", "-").replace("–", "-")
    if not pattern or any(ch not in "+-" for ch in pattern):
        raise ConfigurationError(
            f"sign pattern {pattern!r} must be a nonempty string over + and -"
        )
    return pattern


def all_patterns(num_tape_spins: int) -> list[str]:
    """The 2**M sign patterns in canonical (lexicographic) order."""
    return ["".join(p) for p in itertools.product("+-", repeat=num_tape_spins)]


def primitive_step(phi: float, pattern: str, n: int, alpha: float) -> float:
    """Head angle after step n (1..2M) of a cycle."""
    num = len(pattern)
    if not 1 <= n <= 2 * num:
        raise ConfigurationError(f"cycle step {n} out of range 1..{2 * num}")
    if n % 2:
        return phi + alpha
    if pattern[n // 2 - 1] == "-":
        return -phi
    return phi


def evolve_angles(patterns, phi0: float, alpha: float, steps: int) -> np.ndarray:
    """Head angle at every step for a batch of patterns.

    Returns an array of shape (len(patterns), steps+1). All patterns must
    share one tape size; the per-step work is vectorized over the batch.
    """
    pats = [normalize_pattern(p) for p in patterns]
    if not pats:
        raise ConfigurationError("empty pattern batch")
    num = len(pats[0])
    if any(len(p) != num for p in pats):
        raise ConfigurationError("patterns in a batch must share one tape size")
    # sign[j, k] = -1 where pattern j has '-' at tape spin k+1
    signs = np.array([[-1.0 if ch == "-" else 1.0 for ch in p] for p in pats])
    phi = np.full(len(pats), float(phi0))
    out = np.empty((len(pats), steps + 1))
    out[:, 0] = phi
    cycle = 2 * num
    for m in range(1, steps + 1):
        n = (m - 1) % cycle + 1
        if n % 2:
            phi = phi + alpha
        else:
            phi = phi * signs[:, n // 2 - 1]
        out[:, m] = phi
    return out


def run_primitive(pattern: str, phi0: float, alpha: float, steps: int) -> Trajectory:
    """Trajectory of a single primitive; every point is pure with x = 0."""
    pattern = normalize_pattern(pattern)
    phis = evolve_angles([pattern], phi0, alpha, steps)[0]
    bloch = np.zeros((steps + 1, 3))
    bloch[:, 1] = np.sin(phis)
    bloch[:, 2] = -np.cos(phis)
    cfg = MachineConfig.uniform(len(pattern), alpha, phi0=phi0,
                                initial=pattern, steps=steps)
    return Trajectory(bloch, cfg)


@dataclass(frozen=True)
class PeriodicityClass:
    kind: str  # PERIODIC or APERIODIC
    q: int  # number of '-' signs
    gaps: tuple  # run lengths of '+' around the '-' signs, q+1 entries

    @property
    def periodic(self) -> bool:
        return self.kind == PERIODIC


def classify(pattern: str) -> PeriodicityClass:
    """Decide periodicity of a primitive orbit from the sign pattern alone.

    Write the pattern as plus-runs n_0 .. n_q separated by the q minus
    signs. Each '-' reflects the head angle, each cycle adds a fixed set of
    rotations, so one full cycle acts as phi -> (-1)**q phi + c with

        c = alpha * (sum of even-index gaps - sum of odd-index gaps).

    Odd q: two cycles restore phi exactly, for every alpha. Even q: the
    orbit closes for all alpha only when c vanishes, i.e. when the
    even-index gaps sum to (M - q)/2. Anything else drifts (aperiodic for
    generic alpha). The all-plus pattern (q = 0) is aperiodic for every
    M >= 1 since the single gap n_0 = M can never equal (M - 0)/2.
    """
    pattern = normalize_pattern(pattern)
    gaps = tuple(len(run) for run in pattern.split("-"))
    q = len(gaps) - 1
    if q % 2 == 1:
        return PeriodicityClass(PERIODIC, q, gaps)
    if 2 * sum(gaps[0::2]) == len(pattern) - q:
        return PeriodicityClass(PERIODIC, q, gaps)
    return PeriodicityClass(APERIODIC, q, gaps)


def detect_period_numeric(pattern: str, phi0: float, alpha: float,
                          max_cycles: int, tol: float = 1e-9):
    """Smallest period of the angle sequence, found by brute force.

    Looks for the smallest s <= 2M*max_cycles such that the trajectory
    repeats from s on: every point of the following full cycle must match
    the corresponding point from 0 (angles compared on the unit circle with
    tolerance tol). Matching a single point is not enough, reflections can
    revisit the starting angle without the orbit being closed. Returns the
    period in steps, or None.
    """
    pattern = normalize_pattern(pattern)
    if max_cycles < 2:
        raise ConfigurationError("need max_cycles >= 2")
    cycle = 2 * len(pattern)
    horizon = cycle * max_cycles
    phis = evolve_angles([pattern], phi0, alpha, horizon + cycle)[0]
    return _find_period(phis, cycle, horizon, tol)


def _find_period(phis, cycle, horizon, tol):
    pts = np.exp(1j * phis)
    candidates = np.nonzero(np.abs(pts[1:horizon + 1] - pts[0]) < tol)[0] + 1
    window = pts[: cycle + 1]
    for s in candidates:
        if np.all(np.abs(pts[s:s + cycle + 1] - window) < tol):
            return int(s)
    return None


def period_census(num_tape_spins: int, phi0: float, alpha: float,
                  max_cycles: int, tol: float = 1e-9,
                  chunk: int = 128, workers: int = 1) -> dict:
    """detect_period_numeric for every pattern of a tape size at once.

    Evolves the patterns in batches so the sweep stays vectorized without
    holding all 2**M angle histories in memory. Batches are independent, so
    workers > 1 spreads them over a thread pool (the heavy per-step work is
    numpy). Returns {pattern: period or None} in canonical order.
    """
    pats = all_patterns(num_tape_spins)
    cycle = 2 * num_tape_spins
    horizon = cycle * max_cycles

    def sweep(batch):
        phis = evolve_angles(batch, phi0, alpha, horizon + cycle)
        return [_find_period(phis[row], cycle, horizon, tol)
                for row in range(len(batch))]

    batches = [pats[lo:lo + chunk] for lo in range(0, len(pats), chunk)]
    if workers > 1 and len(batches) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(sweep, batches))
    else:
        results = [sweep(b) for b in batches]
    out = {}
    for batch, periods in zip(batches, results):
        out.update(zip(batch, periods))
    return out


def decompose(tape) -> np.ndarray:
    """Weights |a_j|² of a tape state over the 2**M sign patterns.

    For a spec string the expansion is per site: '0' and '1' spread as
    (1 +- 1)/sqrt(2) over (+, -), '+' and '-' are already basis states. An
    explicit tape amplitude array is projected onto each pattern instead
    (a sign-basis transform). Either way the weights come back in canonical
    pattern order and sum to 1.
    """
    if isinstance(tape, str):
        from .state import normalize_tape_spec

        tape = normalize_tape_spec(tape)
        per_site = {
            "0": np.array([0.5, 0.5]),
            "1": np.array([0.5, 0.5]),
            "+": np.array([1.0, 0.0]),
            "-": np.array([0.0, 1.0]),
        }
        w = np.ones(1)
        for ch in tape:
            w = np.kron(w, per_site[ch])
        return w
    amps = np.asarray(tape, dtype=complex)
    if amps.ndim != 1 or amps.size < 2 or amps.size & (amps.size - 1):
        raise ConfigurationError("tape amplitude list must have length 2**M, M >= 1")
    num = amps.size.bit_length() - 1
    coeffs = _sign_basis_transform(amps, num)
    return np.abs(coeffs) ** 2


def _sign_basis_transform(amps, num):
    """Coefficients of a tape amplitude array in the sign-pattern basis.

    Butterfly over each tape bit (same recursive halving as a Walsh
    transform), then a bit reversal because the canonical pattern order
    puts tape spin 1 in the most significant position while the amplitude
    index keeps it in bit 0.
    """
    v = amps.astype(complex).copy()
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for k in range(num):
        w = v.reshape(-1, 2, 1 << k)
        a = w[:, 0].copy()
        b = w[:, 1].copy()
        w[:, 0] = (a + b) * inv_sqrt2
        w[:, 1] = (a - b) * inv_sqrt2
    idx = np.arange(1 << num)
    rev = np.zeros_like(idx)
    for k in range(num):
        rev |= ((idx >> k) & 1) << (num - 1 - k)
    return v[rev]


def superpose(weights, phi0: float, alpha: float, steps: int) -> Trajectory:
    """Head trajectory of a product state from its primitive weights.

    Runs all 2**M primitives in one vectorized batch and sums their Bloch
    vectors with the given weights at every step. Exact for any product
    initial state because relative phases between primitives never reach
    the head observable.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or weights.size < 2 or weights.size & (weights.size - 1):
        raise ConfigurationError("weight vector must have length 2**M, M >= 1")
    if weights.min() < -1e-15 or abs(weights.sum() - 1.0) > 1e-12:
        raise ConfigurationError("weights must be nonnegative and sum to 1")
    num = weights.size.bit_length() - 1
    phis = evolve_angles(all_patterns(num), phi0, alpha, steps)
    bloch = np.zeros((steps + 1, 3))
    bloch[:, 1] = weights @ np.sin(phis)
    bloch[:, 2] = -(weights @ np.cos(phis))
    return Trajectory(bloch, None)
