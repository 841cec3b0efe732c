"""Shortest escape paths for a swimmer lost in a strip or a disk."""
from .disk import DiskGeometry, DiskState, DiskStrategy, disk_classify, disk_geometry, disk_path_length
from .estimators import DiskTwoSegment, StripThreeSegment, StripTwoSegment, check_states
from .exceptions import (DomainError, InvalidStrategyError, NoEscapeError, QuadratureError,
                         SingularEvaluationError)
from .gevirtz import TurningCurve, a_gamma_arc, a_gamma_mc, arcs_disjoint, trace_curve
from .montecarlo import HeavyTailWarning, estimate_mean, estimate_median, simulate
from .numerics import QuadratureSpec, integrate, minimize, multistart
from .objectives import (DISK_STRAIGHT_MEAN, disk_expected, strip2_expected, strip2_expected_quad,
                         strip3_expected, strip3_expected_quad)
from .oracle import EscapeRealization, Region, raycast, realize
from .strip import (CaseLabel, NoPivot, Strategy2, Strategy3, classify_strip2, classify_strip3,
                    normalize_state, strip2_path_length, strip3_path_length, theta0)
from .zalgaller import build_zalgaller, evaluate_zalgaller, fit_three_segment, fit_two_segment

__version__ = "0.1.0"

__all__ = [
    "CaseLabel", "DISK_STRAIGHT_MEAN", "DiskGeometry", "DiskState", "DiskStrategy",
    "DiskTwoSegment", "DomainError", "EscapeRealization", "HeavyTailWarning",
    "InvalidStrategyError", "NoEscapeError", "NoPivot", "QuadratureError", "QuadratureSpec",
    "Region", "SingularEvaluationError", "Strategy2", "Strategy3", "StripThreeSegment",
    "StripTwoSegment", "TurningCurve", "a_gamma_arc", "a_gamma_mc", "arcs_disjoint",
    "build_zalgaller", "check_states", "classify_strip2", "classify_strip3", "disk_classify",
    "disk_expected", "disk_geometry", "disk_path_length", "estimate_mean", "estimate_median",
    "evaluate_zalgaller", "fit_three_segment", "fit_two_segment", "integrate", "minimize",
    "multistart", "normalize_state", "raycast", "realize", "simulate", "strip2_expected",
    "strip2_expected_quad", "strip2_path_length", "strip3_expected", "strip3_expected_quad",
    "strip3_path_length", "theta0", "trace_curve",
]
