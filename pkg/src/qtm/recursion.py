"""Closed-form head evolution for computational tapes and uniform alpha.

For a head starting at phi0 = 0 over any all-computational tape (every spin
|0> or |1>), the head Bloch vector (0, Y_m, Z_m) obeys a two-term recursion
in the step index m that never touches the exponentially large state. With
seeds Y_0 = 0, Y_1 = sin(alpha), Z_0 = -1, Z_1 = -cos(alpha), and writing
m = n + 2M(p-1) as in the engine schedule:

    odd n (rotation, angle addition on the circle):
        Y_m = -Y_1 Z_{m-1} - Z_1 Y_{m-1}
        Z_m = -Z_1 Z_{m-1} + Y_1 Y_{m-1}

    even n (controlled flip):
        Z_m = -Z_1 Z_{m-2} + Y_1 Y_{m-2}
        Y depends on where in the cycle the flip sits:
          n != 2M : Y_{m,M} = Y_{m-1,M} + Y_1 * Z_{m',M-2}
                    with the shifted index m' = m - 4p + 2 and the value
                    taken from the machine with two fewer tape spins
                    (Z_{m,0} := -1 for all m closes the chain)
          n == 2M : Y_{m,M} = Y_{m-1,M} - Y_1 * (-Z_1)**(M-1)   p odd
                    Y_{m,M} = Y_{m-1,M}                          p even

The cross reference to tape size M-2 makes a single flat table insufficient;
tables for M, M-2, M-4, ... are filled together, smallest first, so every
lookup lands on an already computed row. m' = (n-2) + (2M-4)(p-1) stays
nonnegative, so the seeds plus the size-0 base cover everything.

Cost is O(m * M) scalars for a trajectory of m steps, independent of 2**M.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import MachineConfig, Trajectory
from .errors import ConfigurationError
from .state import BlochVector

APERIODIC_M1 = "aperiodic"
PERIODIC_M1 = "periodic"


class HeadRecursion:
    """Memoized evaluator for the closed-form head components.

    One instance is bound to one uniform rotation angle; tables for all tape
    sizes queried so far are kept and extended on demand. Queries on a
    filled table are plain list lookups, so sharing an instance across
    readers is safe once the fill is done.
    """

    def __init__(self, alpha: float):
        self.alpha = float(alpha)
        self.y1 = math.sin(self.alpha)
        self.z1 = -math.cos(self.alpha)
        self._tables: dict[int, list] = {}

    def head_at(self, m: int, num_tape_spins: int) -> BlochVector:
        """Head Bloch vector at step m for the all-zeros tape; x is 0."""
        if m < 0:
            raise ConfigurationError("step index must be >= 0")
        if num_tape_spins < 1:
            raise ConfigurationError("need at least one tape spin")
        self._fill(num_tape_spins, m)
        y, z = self._tables[num_tape_spins][m]
        return BlochVector(0.0, y, z)

    def trajectory(self, steps: int, num_tape_spins: int) -> np.ndarray:
        """All points 0..steps as an array of shape (steps+1, 3)."""
        self._fill(num_tape_spins, steps)
        tab = self._tables[num_tape_spins][: steps + 1]
        bloch = np.zeros((steps + 1, 3))
        bloch[:, 1:] = np.asarray(tab)
        return bloch

    def _fill(self, num_tape_spins: int, m_max: int) -> None:
        sizes = list(range(num_tape_spins, 0, -2))  # M, M-2, ..., down to 1 or 2
        for size in reversed(sizes):
            tab = self._tables.setdefault(
                size, [(0.0, -1.0), (self.y1, self.z1)]
            )
            self._extend(tab, size, m_max)

    def _extend(self, tab, size, m_max):
        y1, z1 = self.y1, self.z1
        cycle = 2 * size
        below = self._tables.get(size - 2)  # None exactly when size <= 2
        for m in range(len(tab), m_max + 1):
            n = (m - 1) % cycle + 1
            p = (m - 1) // cycle + 1
            ym1, zm1 = tab[m - 1]
            if n % 2:
                y = -y1 * zm1 - z1 * ym1
                z = -z1 * zm1 + y1 * ym1
            else:
                ym2, zm2 = tab[m - 2]
                z = -z1 * zm2 + y1 * ym2
                if n != cycle:
                    z_ref = -1.0 if below is None else below[m - 4 * p + 2][1]
                    y = ym1 + y1 * z_ref
                elif p % 2:
                    y = ym1 - y1 * (-z1) ** (size - 1)
                else:
                    y = ym1
            tab.append((y, z))


def run(config: MachineConfig) -> Trajectory:
    """Closed-form trajectory for a MachineConfig, as a drop-in for the
    state-vector engine.

    Valid only for uniform alpha, the plain flip variant, an
    all-computational tape spec, and phi0 of exactly 0 or pi. The head
    pattern is the same for every computational tape of a given size (the
    sign-basis weights of any such tape are all equal); starting the head
    at pi negates the whole trajectory.
    """
    alpha = config.uniform_alpha()
    if config.variant != "x":
        raise ConfigurationError("closed form covers the plain flip variant only")
    initial = config.resolved_initial()
    if not isinstance(initial, str) or any(ch not in "01" for ch in initial):
        raise ConfigurationError(
            "closed form needs an all-computational tape spec (0/1 characters)"
        )
    if config.phi0 == 0.0:
        sign = 1.0
    elif config.phi0 == math.pi:
        sign = -1.0
    else:
        raise ConfigurationError(
            "closed form needs the head at angle 0 or pi exactly"
        )
    rec = HeadRecursion(alpha)
    bloch = sign * rec.trajectory(config.steps, config.num_tape_spins)
    return Trajectory(bloch, config)


def m1_closed_form(kind: str, m: int, phi0: float, alpha: float) -> BlochVector:
    """Closed-form single-tape-spin primitive at any head angle.

    kind "aperiodic" is the '+' tape: the flip is inert, the head just
    accumulates a rotation every other step, point m sits at angle
    phi0 + ceil(m/2)*alpha. kind "periodic" is the '-' tape: the flip
    reflects the angle, closing a 4-step orbit
    phi0, phi0+alpha, -(phi0+alpha), -phi0 for every alpha.
    """
    if m < 0:
        raise ConfigurationError("step index must be >= 0")
    if kind == APERIODIC_M1:
        phi = phi0 + ((m + 1) // 2) * alpha
    elif kind == PERIODIC_M1:
        phi = (phi0, phi0 + alpha, -(phi0 + alpha), -phi0)[m % 4]
    else:
        raise ConfigurationError(f"kind must be aperiodic or periodic, got {kind!r}")
    return BlochVector(0.0, math.sin(phi), -math.cos(phi))
