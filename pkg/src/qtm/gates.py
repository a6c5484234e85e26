"""The two machine gates, applied in place to a StateVector.

A head rotation by alpha mixes the head components of every tape
configuration:

    (a0, a1) -> (cos(alpha/2) a0 - i sin(alpha/2) a1,
                 -i sin(alpha/2) a0 + cos(alpha/2) a1)

On the Bloch sphere this is (x, y, z) -> (x, y cos a - z sin a,
y sin a + z cos a), i.e. a head at angle phi moves to phi + alpha.

The controlled gate acts on one tape spin, conditioned on the head's |0>
component: head |0> flips tape spin mu, head |1> leaves it alone. Two
variants of the flip are supported:

    "x"  : [[0, 1], [1, 0]]   plain swap (self-inverse)
    "iy" : [[0, -1], [1, 0]]  signed swap, (t0, t1) -> (-t1, t0)
"""

import math

from . import kernels
from .errors import ConfigurationError
from .state import StateVector, tape_bit

VARIANT_X = "x"
VARIANT_IY = "iy"
VARIANTS = (VARIANT_X, VARIANT_IY)


def apply_head_rotation(state: StateVector, alpha: float) -> None:
    half = 0.5 * float(alpha)
    kernels.rotate_head(state.amplitudes, math.cos(half), math.sin(half))


def apply_qcnot(state: StateVector, mu: int, variant: str = VARIANT_X) -> None:
    bit = tape_bit(mu, state.num_tape_spins)
    if variant == VARIANT_X:
        kernels.cnot_flip(state.amplitudes, bit)
    elif variant == VARIANT_IY:
        kernels.cnot_signed_flip(state.amplitudes, bit)
    else:
        raise ConfigurationError(f"unknown gate variant {variant!r}")


def qcnot_minus_defect(state: StateVector, mu: int) -> float:
    """Check the no-entanglement identity for a tape spin in the |-> state.

    If tape spin mu of `state` is |-> = (|0> - |1>)/sqrt(2), the controlled
    flip acts exactly like lz on the head: it only negates the head-|0>
    amplitudes. Returns the max absolute amplitude difference between the two
    ways of computing the result (0 up to rounding when the precondition
    holds). Test support, not part of the evolution.
    """
    flipped = state.copy()
    apply_qcnot(flipped, mu, VARIANT_X)
    headz = state.copy()
    headz.amplitudes[0::2] *= -1.0
    return float(abs(flipped.amplitudes - headz.amplitudes).max())
