"""Comb-tooth frequency planning."""

from .export import COPROP_COLUMNS, GATE_COLUMNS, coprop_plans_to_frame, gate_plans_to_frame
from .models import (
    RESIDUAL_TOLERANCE,
    CoPropPlan,
    GatePlan,
    PlanDiagnostics,
    PlanList,
    PlannerInput,
    PlanReport,
)
from .solver import plan_copropagating, plan_gate, validate_plan

__all__ = [
    "COPROP_COLUMNS",
    "GATE_COLUMNS",
    "RESIDUAL_TOLERANCE",
    "CoPropPlan",
    "GatePlan",
    "PlanDiagnostics",
    "PlanList",
    "PlannerInput",
    "PlanReport",
    "coprop_plans_to_frame",
    "gate_plans_to_frame",
    "plan_copropagating",
    "plan_gate",
    "validate_plan",
]
