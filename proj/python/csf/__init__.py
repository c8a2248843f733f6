"""Curve shortening flow on polygonal curves."""

import json

from . import _csf
from ._csf import (
    DegenerateConfiguration,
    Error,
    FlowError,
    FlowParams,
    InvalidInput,
    RemeshMode,
    Scheme,
    approximants,
    arc_length,
    ccw,
    circle_radius,
    count_intersections,
    criterion_name,
    curvature,
    default_t_grid,
    enclosed_area,
    gamma0,
    grim_reaper_point,
    halfplane_area,
    hausdorff_distance,
    intersection_counts,
    is_basic_rectangle,
    is_embedded,
    perturbed,
    preset_reference_area,
    reference_area,
    resample,
    run_until,
    slingshot_flow_params,
    step,
)

import numpy as np


def circle(n, r=1.0, center=(0.0, 0.0)):
    th = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack([center[0] + r * np.cos(th), center[1] + r * np.sin(th)])


def ellipse(n, a, b, center=(0.0, 0.0)):
    th = 2.0 * np.pi * np.arange(n) / n
    return np.column_stack([center[0] + a * np.cos(th), center[1] + b * np.sin(th)])


def hypotheses(preset):
    return json.loads(_csf.hypotheses(preset))


def build_cover(points, r_min, grid=32):
    return json.loads(_csf.build_cover(points, r_min, grid))


def run_criteria(ids, seed=1):
    """Runs acceptance criteria; returns (report lines, report dict)."""
    lines, report = _csf.run_criteria(list(ids), seed)
    return lines, json.loads(report)


def run(mode, config, base=".", out=None, seed=None):
    """Runs a CLI mode on a config dict; returns (exit code, log, errors)."""
    return _csf.run_cli(mode, json.dumps(config), base, out, seed)


def render_svg(curves, closed=None, dashed=None):
    closed = [True] * len(curves) if closed is None else list(closed)
    dashed = [False] * len(curves) if dashed is None else list(dashed)
    return _csf.render_svg(list(curves), closed, dashed)
