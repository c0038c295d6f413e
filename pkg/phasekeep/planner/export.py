"""Fixed-column plan tables."""

from __future__ import annotations

from collections.abc import Sequence

import pandas as pd

from .models import CoPropPlan, GatePlan

GATE_COLUMNS = [
    "n",
    "m",
    "s_a",
    "nu_a_mhz",
    "nu_b_red_mhz",
    "nu_b_blue_mhz",
    "residual_red_hz",
    "residual_blue_hz",
]

COPROP_COLUMNS = ["p", "nu_b1_mhz", "nu_b2_mhz", "residual_hz"]


def gate_plans_to_frame(plans: Sequence[GatePlan]) -> pd.DataFrame:
    """One row per plan, in search order."""
    rows = [
        {
            "n": plan.n,
            "m": plan.m,
            "s_a": plan.aom_a_sign,
            "nu_a_mhz": plan.nu_a / 1e6,
            "nu_b_red_mhz": plan.nu_b_red / 1e6,
            "nu_b_blue_mhz": plan.nu_b_blue / 1e6,
            "residual_red_hz": plan.residual_red,
            "residual_blue_hz": plan.residual_blue,
        }
        for plan in plans
    ]
    return pd.DataFrame(rows, columns=GATE_COLUMNS)


def coprop_plans_to_frame(plans: Sequence[CoPropPlan]) -> pd.DataFrame:
    rows = [
        {
            "p": plan.p,
            "nu_b1_mhz": plan.nu_b1 / 1e6,
            "nu_b2_mhz": plan.nu_b2 / 1e6,
            "residual_hz": plan.residual,
        }
        for plan in plans
    ]
    return pd.DataFrame(rows, columns=COPROP_COLUMNS)
