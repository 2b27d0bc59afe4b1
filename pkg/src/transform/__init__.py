"""General-form to standard-form reduction of Tikhonov problems."""

from src.transform.standard_form import (
    StandardFormSystem,
    TransformCase,
    TransformPlan,
    back_map,
    null_range_bases,
    plan_transform,
    to_standard_form,
)

__all__ = [
    "StandardFormSystem",
    "TransformCase",
    "TransformPlan",
    "back_map",
    "null_range_bases",
    "plan_transform",
    "to_standard_form",
]
