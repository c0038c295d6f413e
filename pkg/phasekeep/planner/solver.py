"""Integer comb-tooth search for carrier and entangling-gate frequency plans."""

from __future__ import annotations

import logging
import math

import numpy as np

from .models import CoPropPlan, GatePlan, PlanDiagnostics, PlanList, PlannerInput, PlanReport

logger = logging.getLogger(__name__)

# Merits closer than this (Hz) count as tied and fall through to (n, m).
MERIT_RESOLUTION = 1e-3


def _in_window(value, window: tuple[float, float]):
    return (value >= window[0]) & (value <= window[1])


def _merit_key(merit: float) -> int:
    return int(round(merit / MERIT_RESOLUTION))


def plan_copropagating(inp: PlannerInput) -> PlanList:
    """Find comb teeth p with ν0 = p·νr + νB,1 − νB,2 and both tones in AOM B.

    Tones are placed symmetrically about the AOM B center, which minimizes
    their total distance from it.

    Returns:
        Plans sorted by merit then p. Empty with diagnostics if none fit.
    """
    lo, hi = inp.tooth_range
    center = inp.aom_b_center
    teeth = np.arange(lo, hi + 1)
    gaps = inp.qubit_frequency - teeth * inp.repetition_rate
    b1 = center + gaps / 2
    b2 = center - gaps / 2
    feasible = _in_window(b1, inp.aom_b_window) & _in_window(b2, inp.aom_b_window)

    plans = []
    for idx in np.flatnonzero(feasible):
        p = int(teeth[idx])
        nu_b1, nu_b2 = float(b1[idx]), float(b2[idx])
        plans.append(
            CoPropPlan(
                p=p,
                nu_b1=nu_b1,
                nu_b2=nu_b2,
                residual=p * inp.repetition_rate + nu_b1 - nu_b2 - inp.qubit_frequency,
                merit=abs(nu_b1 - center) + abs(nu_b2 - center),
            )
        )
    plans.sort(key=lambda plan: (_merit_key(plan.merit), plan.p))

    if plans:
        logger.info(f"Copropagating search: {len(plans)} plan(s), best p={plans[0].p}")
        return PlanList(plans)

    nearest = int(np.argmin(np.abs(gaps)))
    width = inp.aom_b_window[1] - inp.aom_b_window[0]
    diagnostics = PlanDiagnostics(
        nearest_tooth=int(teeth[nearest]),
        required_gap=float(gaps[nearest]),
        violations=[
            f"tooth p={int(teeth[nearest])} needs a tone gap of {gaps[nearest] / 1e6:.4f} MHz, "
            f"AOM B window spans {width / 1e6:.4f} MHz"
        ],
    )
    logger.warning(f"No copropagating plan: {diagnostics.violations[0]}")
    return PlanList([], diagnostics)


def _red_drive(inp: PlannerInput, n, sign: int, nu_a: float):
    return n * inp.repetition_rate - sign * nu_a - inp.red_target


def _blue_drive(inp: PlannerInput, m, sign: int, nu_a: float):
    return inp.blue_target - m * inp.repetition_rate - sign * nu_a


def _nearest(teeth: np.ndarray, drives: np.ndarray, center: float) -> tuple[int, float]:
    idx = int(np.argmin(np.abs(drives - center)))
    return int(teeth[idx]), float(drives[idx])


def plan_gate(inp: PlannerInput) -> PlanList:
    """Find (n, m, sA, νA) solving both sideband resonance conditions.

    Red:  ν0 − να + δ = n·νr − sA·νA − νB,r
    Blue: ν0 + να − δ = m·νr + sA·νA + νB,b

    AOM A diffracts into order −sA, so one sign choice enters both lines.
    Single-tooth (n == m) and distinct-tooth plans are both returned.

    Returns:
        Plans sorted by merit, then n, m, sA and νA. Empty with
        per-constraint diagnostics if nothing is feasible.
    """
    lo, hi = inp.tooth_range
    teeth = np.arange(lo, hi + 1)
    center = inp.aom_b_center
    plans: list[GatePlan] = []
    violations: list[str] = []
    nearest_pair: tuple[int, int] | None = None

    if not inp.aom_a_frequencies:
        violations.append("no candidate AOM A frequencies given")

    for nu_a in inp.aom_a_frequencies:
        if not inp.aom_a_window[0] <= nu_a <= inp.aom_a_window[1]:
            violations.append(f"νA={nu_a / 1e6:.4f} MHz outside AOM A window")
            continue
        for sign in inp.aom_a_signs:
            red = _red_drive(inp, teeth, sign, nu_a)
            blue = _blue_drive(inp, teeth, sign, nu_a)
            red_ok = np.flatnonzero(_in_window(red, inp.aom_b_window))
            blue_ok = np.flatnonzero(_in_window(blue, inp.aom_b_window))

            if len(red_ok) == 0 or len(blue_ok) == 0:
                n_near, red_near = _nearest(teeth, red, center)
                m_near, blue_near = _nearest(teeth, blue, center)
                if nearest_pair is None:
                    nearest_pair = (n_near, m_near)
                if len(red_ok) == 0:
                    violations.append(
                        f"νA={nu_a / 1e6:.4f} MHz, sA={sign:+d}: no red tooth puts νB,r in "
                        f"AOM B window (nearest n={n_near}, νB,r={red_near / 1e6:.4f} MHz)"
                    )
                if len(blue_ok) == 0:
                    violations.append(
                        f"νA={nu_a / 1e6:.4f} MHz, sA={sign:+d}: no blue tooth puts νB,b in "
                        f"AOM B window (nearest m={m_near}, νB,b={blue_near / 1e6:.4f} MHz)"
                    )
                continue

            for i in red_ok:
                for j in blue_ok:
                    plans.append(_make_gate_plan(inp, int(teeth[i]), int(teeth[j]), sign, nu_a))

    plans.sort(key=lambda p: (_merit_key(p.merit), p.n, p.m, p.aom_a_sign, p.nu_a))

    if plans:
        best = plans[0]
        logger.info(
            f"Gate search: {len(plans)} plan(s), best n={best.n} m={best.m} sA={best.aom_a_sign:+d}"
        )
        return PlanList(plans)

    diagnostics = PlanDiagnostics(nearest_pair=nearest_pair, violations=violations)
    logger.warning(f"No gate plan: {len(violations)} constraint violation(s)")
    return PlanList([], diagnostics)


def _make_gate_plan(inp: PlannerInput, n: int, m: int, sign: int, nu_a: float) -> GatePlan:
    nu_b_red = float(_red_drive(inp, n, sign, nu_a))
    nu_b_blue = float(_blue_drive(inp, m, sign, nu_a))
    center = inp.aom_b_center
    residual_red, residual_blue = _gate_residuals(inp, n, m, sign, nu_a, nu_b_red, nu_b_blue)
    return GatePlan(
        n=n,
        m=m,
        aom_a_sign=sign,
        nu_a=nu_a,
        nu_b_red=nu_b_red,
        nu_b_blue=nu_b_blue,
        residual_red=residual_red,
        residual_blue=residual_blue,
        merit=abs(nu_b_red - center) + abs(nu_b_blue - center),
    )


def _gate_residuals(
    inp: PlannerInput, n: int, m: int, sign: int, nu_a: float, nu_b_red: float, nu_b_blue: float
) -> tuple[float, float]:
    residual_red = n * inp.repetition_rate - sign * nu_a - nu_b_red - inp.red_target
    residual_blue = m * inp.repetition_rate + sign * nu_a + nu_b_blue - inp.blue_target
    return residual_red, residual_blue


def validate_plan(plan: GatePlan | CoPropPlan, inp: PlannerInput) -> PlanReport:
    """Recompute resonance residuals and window membership. Never raises."""
    violations: list[str] = []

    def check(label: str, value: float, window: tuple[float, float], aom: str) -> None:
        if not math.isfinite(value) or not window[0] <= value <= window[1]:
            violations.append(f"{label}={value / 1e6:.6f} MHz outside {aom} window")

    if isinstance(plan, GatePlan):
        residuals = _gate_residuals(
            inp, plan.n, plan.m, plan.aom_a_sign, plan.nu_a, plan.nu_b_red, plan.nu_b_blue
        )
        check("νA", plan.nu_a, inp.aom_a_window, "AOM A")
        check("νB,r", plan.nu_b_red, inp.aom_b_window, "AOM B")
        check("νB,b", plan.nu_b_blue, inp.aom_b_window, "AOM B")
    else:
        residuals = (
            plan.p * inp.repetition_rate + plan.nu_b1 - plan.nu_b2 - inp.qubit_frequency,
        )
        check("νB,1", plan.nu_b1, inp.aom_b_window, "AOM B")
        check("νB,2", plan.nu_b2, inp.aom_b_window, "AOM B")

    return PlanReport(
        residuals=tuple(float(r) for r in residuals),
        window_violations=violations,
        tolerance=inp.tolerance,
    )
