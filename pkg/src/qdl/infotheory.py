"""Separability (PPT), negativity, von Neumann entropies and mutual information.

Separability polarity is the standard Peres-Horodecki one for 2x2 systems: a
state is separable exactly when its partial transpose has no negative
eigenvalue.  Closed-form entropies are provided next to the matrix route so
the two can be checked against each other; where a printed closed form fails
that cross-check it is kept available under a ``printed_`` name for the
discrepancy report and the corrected form is used operationally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import hermitian_eigenvalues, partial_trace, partial_transpose
from .states import Scenario, ScenarioParams, scenario_density

SEPARABILITY_TOL = 1e-10
ENTROPY_EIGENVALUE_FLOOR = -1e-8

METER_THRESHOLD_MAX_ROBUSTNESS = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class SeparabilityReport:
    """Spectrum of the partial transpose and what it implies."""

    ppt_spectrum: np.ndarray  # 4 eigenvalues, descending
    negativity: float
    separable: bool


@dataclass(frozen=True)
class InformationReport:
    """Subsystem entropies (nats) and the mutual information they define."""

    s_a: float
    s_b: float
    s_ab: float
    i_ab: float
    threshold: float | None = None


def ppt_check(rho: np.ndarray) -> SeparabilityReport:
    """Peres-Horodecki test: spectrum of the partial transpose."""
    spectrum = hermitian_eigenvalues(partial_transpose(rho))
    negativity = float(np.sum(np.abs(spectrum[spectrum < 0.0])))
    separable = bool(spectrum[-1] >= -SEPARABILITY_TOL)
    return SeparabilityReport(ppt_spectrum=spectrum, negativity=negativity, separable=separable)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-sum lambda ln lambda over the spectrum, with 0 ln 0 = 0."""
    evals = hermitian_eigenvalues(rho)
    if evals[-1] < ENTROPY_EIGENVALUE_FLOOR:
        raise ValueError(f"state has eigenvalue {evals[-1]:.3e}; not positive semidefinite")
    total = 0.0
    for lam in evals:
        lam = min(1.0, max(0.0, float(lam)))
        if lam > 0.0:
            total -= lam * math.log(lam)
    return total


def mutual_information(rho: np.ndarray) -> InformationReport:
    """I_AB = S_A + S_B - S_AB from the eigenvalue route."""
    s_a = von_neumann_entropy(partial_trace(rho, ("A",)))
    s_b = von_neumann_entropy(partial_trace(rho, ("B",)))
    s_ab = von_neumann_entropy(rho)
    return InformationReport(s_a=s_a, s_b=s_b, s_ab=s_ab, i_ab=s_a + s_b - s_ab)


def binary_entropy(p: float) -> float:
    """Entropy (nats) of a two-outcome distribution (p, 1-p)."""
    p = min(1.0, max(0.0, p))
    total = 0.0
    for x in (p, 1.0 - p):
        if x > 0.0:
            total -= x * math.log(x)
    return total


def entropy_closed_form(scenario: Scenario, params: ScenarioParams) -> InformationReport:
    """Closed-form S_A, S_B, S_AB for the two single-environment scenarios.

    The meter-case S_B uses the corrected radical (1-d^2)(1 - d^2(1-r^2));
    see ``printed_meter_entropies`` for the published version, which is
    inconsistent with the constructed state (it already fails the purity
    requirement S_A = S_B at r = 1).
    """
    d2 = params.d * params.d
    o = math.sqrt(1.0 - d2)
    if scenario is Scenario.SYSTEM:
        r = params.r_s
        s_ab = binary_entropy((1.0 + r) / 2.0)
        s_a = binary_entropy((1.0 + r * o) / 2.0)
        s_b = binary_entropy((1.0 + o) / 2.0)
    elif scenario is Scenario.METER:
        r2 = params.r_m * params.r_m
        s_ab = binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - d2 * (2.0 - d2) * (1.0 - r2)))
        s_a = binary_entropy((1.0 + o) / 2.0)
        s_b = binary_entropy(0.5 + 0.5 * math.sqrt((1.0 - d2) * (1.0 - d2 * (1.0 - r2))))
    else:
        raise ValueError(f"no closed-form entropies for scenario {scenario.value}")
    return InformationReport(s_a=s_a, s_b=s_b, s_ab=s_ab, i_ab=s_a + s_b - s_ab)


def printed_meter_entropies(params: ScenarioParams) -> InformationReport:
    """Meter-case entropies exactly as published (S_B radical (1-d^2)^2 (1-r^2))."""
    d2 = params.d * params.d
    r2 = params.r_m * params.r_m
    s_ab = binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - d2 * (2.0 - d2) * (1.0 - r2)))
    s_a = binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - d2))
    s_b = binary_entropy(0.5 + 0.5 * math.sqrt((1.0 - d2) ** 2 * (1.0 - r2)))
    return InformationReport(s_a=s_a, s_b=s_b, s_ab=s_ab, i_ab=s_a + s_b - s_ab)


def info_threshold(scenario: Scenario, robustness: float) -> float | None:
    """Mutual information needed for a CHSH violation at the given robustness.

    System case: the closed form h((1+r^2)/2), which equals I_AB on the
    violation boundary d^2 = 1 - r^2.  Meter case: computed numerically as
    I_AB at the boundary distinguishability; returns None for robustness
    >= 1/sqrt(2), where every d > 0 already violates.
    """
    if not 0.0 <= robustness <= 1.0:
        raise ValueError(f"robustness must lie in [0, 1], got {robustness}")
    if scenario is Scenario.SYSTEM:
        return binary_entropy((1.0 + robustness * robustness) / 2.0)
    if scenario is Scenario.METER:
        if robustness >= METER_THRESHOLD_MAX_ROBUSTNESS:
            return None
        r2 = robustness * robustness
        d_boundary = math.sqrt(1.0 - r2 / (1.0 - r2))
        rho = scenario_density(ScenarioParams(d=d_boundary, r_m=robustness), Scenario.METER)
        return mutual_information(rho).i_ab
    raise ValueError(f"no information threshold defined for scenario {scenario.value}")


def printed_meter_info_threshold(robustness: float) -> float:
    """Published meter-case threshold expression, evaluated verbatim.

    The sign structure does not form an entropy (first term enters with a
    plus sign), so this disagrees with the numeric boundary value; it is kept
    only so the discrepancy can be quantified.
    """
    r2 = robustness * robustness
    arg = 0.5 + 0.5 * math.sqrt(2.0) * r2 / math.sqrt(1.0 - r2)
    hi = arg * math.log(arg) if arg > 0.0 else 0.0
    lo = (1.0 - arg) * math.log(1.0 - arg) if arg < 1.0 else 0.0
    return hi - lo
