"""Construction of the system-meter-environment states and the gates acting on them.

Conventions (fixed globally):
  * qubit basis |up> = (1, 0), |down> = (0, 1)
  * tensor order A (x) B (x) environments, basis {uu, ud, du, dd} on A(x)B
  * amplitude signs follow the source superposition sqrt(r)|up> - sqrt(1-r)|down>

The monitoring and decoherence couplings are one-shot isometries: the meter
coupling is a rotation of B controlled on A, and each environment coupling
appends a fresh qubit entangled with one branch.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import PureState, partial_trace


class Scenario(enum.Enum):
    FREE = "free"
    SYSTEM = "system"
    METER = "meter"
    COMBINED = "combined"


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class ScenarioParams:
    """Knobs of the four scenarios.

    r     path weight of the source superposition (free scenario only; the
          decoherence scenarios require the balanced value 1/2)
    d     distinguishability of the meter coupling
    r_s   robustness of the system qubit against its environment
    r_m   robustness of the meter qubit against its environment
    """

    r: float = 0.5
    d: float = 0.0
    r_s: float = 1.0
    r_m: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "r", _check_unit_interval("r", self.r))
        object.__setattr__(self, "d", _check_unit_interval("d", self.d))
        object.__setattr__(self, "r_s", _check_unit_interval("r_s", self.r_s))
        object.__setattr__(self, "r_m", _check_unit_interval("r_m", self.r_m))


def input_state(r: float) -> PureState:
    """Source qubit sqrt(r)|up> - sqrt(1-r)|down> on factor A."""
    r = _check_unit_interval("r", r)
    amps = np.array([math.sqrt(r), -math.sqrt(1.0 - r)], dtype=complex)
    return PureState(amps, ("A",))


def couple_meter(state: PureState, d: float) -> PureState:
    """Attach the meter qubit B in |down> and monitor the path with strength d.

    Acts as the controlled rotation  |up>_A: B unchanged,
    |down>_A: |down>_B -> sqrt(1-d^2)|down>_B + d|up>_B  (unitary completion
    on |up>_B keeps the map an isometry for arbitrary inputs).
    """
    d = _check_unit_interval("d", d)
    if "B" in state.labels:
        raise ValueError("state already carries a meter factor B")
    o = math.sqrt(1.0 - d * d)
    psi = state.amps.reshape(state.dims)
    a_axis = state.axis_of("A")
    psi = np.moveaxis(psi, a_axis, 0)
    # Append B (initially |down>), then rotate B on the A=down branch.
    new = np.zeros((2,) + psi.shape[1:] + (2,), dtype=complex)
    new[..., 1] = psi
    rot = np.array([[o, d], [-d, o]], dtype=complex)  # columns: image of |up>, |down>
    new[1] = np.moveaxis(np.tensordot(rot, new[1], axes=([1], [-1])), 0, -1)
    new = np.moveaxis(new, 0, a_axis)
    return PureState(new.reshape(-1), state.labels + ("B",))


def _decohere(state: PureState, control: str, robustness: float, env_label: str) -> PureState:
    """Append environment qubit entangled with the control=|down-branch-of-map|."""
    if env_label in state.labels:
        raise ValueError(f"state already carries environment {env_label}")
    r = robustness
    # weights[k, e]: amplitude for env level e given control level k
    # (env basis: index 0 = |up>, 1 = |down>; env starts in |down>)
    leak = math.sqrt(1.0 - r * r)
    if control == "A":
        weights = np.array([[0.0, 1.0], [leak, r]], dtype=complex)  # up-branch inert
    else:
        weights = np.array([[leak, r], [0.0, 1.0]], dtype=complex)  # down-branch inert
    axis = state.axis_of(control)
    psi = np.moveaxis(state.amps.reshape(state.dims), axis, 0)
    new = np.einsum("k...,ke->k...e", psi, weights)
    new = np.moveaxis(new, 0, axis)
    return PureState(new.reshape(-1), state.labels + (env_label,))


def decohere_system(state: PureState, r_s: float) -> PureState:
    """Couple an environment qubit ES to the |down> branch of A (Eve on the system)."""
    r_s = _check_unit_interval("r_s", r_s)
    return _decohere(state, "A", r_s, "ES")


def decohere_meter(state: PureState, r_m: float) -> PureState:
    """Couple an environment qubit EM to the |up> branch of B (Eve on the meter)."""
    r_m = _check_unit_interval("r_m", r_m)
    return _decohere(state, "B", r_m, "EM")


def build_joint_state(params: ScenarioParams, scenario: Scenario) -> PureState:
    """Full pure state of the scenario on A (x) B (x) environments."""
    if scenario is not Scenario.FREE and params.r != 0.5:
        raise ValueError(f"scenario {scenario.value} requires the balanced path weight r = 1/2")
    state = couple_meter(input_state(params.r), params.d)
    if scenario is Scenario.FREE:
        return state
    if scenario is Scenario.SYSTEM:
        return decohere_system(state, params.r_s)
    if scenario is Scenario.METER:
        return decohere_meter(state, params.r_m)
    return decohere_meter(decohere_system(state, params.r_s), params.r_m)


def reduce_to_ab(state: PureState) -> np.ndarray:
    """Trace out every environment factor, leaving the 4x4 A(x)B density matrix."""
    return partial_trace(state, ("A", "B"))


def scenario_density(params: ScenarioParams, scenario: Scenario) -> np.ndarray:
    """Convenience: build the joint state and reduce it to A(x)B."""
    return reduce_to_ab(build_joint_state(params, scenario))


def _apply_a_unitary(target, u: np.ndarray):
    """Apply a single-qubit unitary on factor A of a PureState or 4x4 matrix."""
    if isinstance(target, PureState):
        axis = target.axis_of("A")
        psi = target.amps.reshape(target.dims)
        psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
        return PureState(psi.reshape(-1), target.labels)
    rho = np.asarray(target, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a PureState or a 4x4 A(x)B density matrix")
    full = np.kron(u, np.eye(2, dtype=complex))
    return full @ rho @ full.conj().T


def phase_shift(target, phi: float):
    """Multiply the |up>_A amplitude by exp(-i phi); |down>_A is untouched."""
    if not math.isfinite(phi):
        raise ValueError("phase must be finite")
    u = np.diag([np.exp(-1j * phi), 1.0]).astype(complex)
    return _apply_a_unitary(target, u)


ROTATION_A = np.array([[1, -1], [1, 1]], dtype=complex) / math.sqrt(2)


def interference_rotation(target):
    """Recombination rotation on A: |up> -> (|up>+|down>)/sqrt2, |down> -> (-|up>+|down>)/sqrt2."""
    return _apply_a_unitary(target, ROTATION_A)
