"""Placement planning: cone overlap, tag resolvability, read range.

Three questions a deployment planner asks of a scenario:

* at what plane distance do neighboring light cones fully overlap
  (geometric radius equals center spacing),
* which tags can still be read directly beneath their luminaires on a
  given plane (error rate at most a threshold, 1e-2 by default),
* how far away, and how far off axis, can a single tag be read reliably.

Coverage searches walk the boresight ray of the tag's (first) luminaire.
For a lone tag with fixed noise the error rate is monotone in distance, so
exponential bracketing plus bisection is sound; scenarios with interferers
fall back to a linear scan at 1 cm steps because interference geometry can
make the error rate non-monotone along the ray. The off-axis angle is
swept at half the maximum reliable distance with the receiver keeping the
scenario's receiver orientation; both the measurement fraction and the
threshold are explicit parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .geometry import Vec3
from .link import evaluate_link
from .scenario import Scenario

_BRACKET_START_M = 0.01
_BRACKET_CAP_M = 1.0e6
_SCAN_STEP_M = 0.01
_SCAN_CAP_M = 100.0
_DISTANCE_TOL_M = 1.0e-3
_ANGLE_TOL_DEG = 0.1

UNBOUNDED = math.inf


@dataclass(frozen=True)
class CoverageReport:
    """Maximum reliable read distance and off-axis angle for one tag."""

    tag_id: str
    max_reliable_distance_m: float
    max_reliable_angle_deg: float
    threshold_ber: float


@dataclass(frozen=True)
class TagResolvability:
    """Readability of one tag directly beneath its luminaire(s)."""

    tag_id: str
    min_ber_under_lamp: float
    resolvable: bool


@dataclass(frozen=True)
class ResolvabilityReport:
    """Per-tag readability on one plane plus the cone-overlap distance."""

    plane_distance_m: float
    threshold_ber: float
    tags: tuple[TagResolvability, ...]
    critical_overlap_distance_m: float


def critical_overlap_distance(spacing_m: float, semi_angle_deg: float) -> float:
    """Plane distance where a light cone's radius equals the lamp spacing.

    A cone limited by the radiation semi-angle t has radius d * tan(t) at
    plane distance d, so full overlap starts at spacing / tan(t).
    """
    if not spacing_m > 0.0:
        raise ParameterError(f"spacing must be positive, got {spacing_m}")
    if not 0.0 < semi_angle_deg < 90.0:
        raise ParameterError(f"semi-angle must be in (0, 90) degrees, got {semi_angle_deg}")
    return spacing_m / math.tan(math.radians(semi_angle_deg))


def resolvability(scenario: Scenario, plane_distance_m: float, threshold: float = 1e-2) -> ResolvabilityReport:
    """Evaluate each tag at the foot of its luminaire(s) on the given plane.

    A tag with several luminaires is scored by the best (lowest) of its
    per-lamp error rates.
    """
    if not 0.0 < plane_distance_m <= scenario.room.height_m:
        raise ParameterError(
            f"plane distance must be in (0, {scenario.room.height_m}] m, got {plane_distance_m}")
    if not 0.0 < threshold:
        raise ParameterError(f"threshold must be positive, got {threshold}")
    z = scenario.room.height_m - plane_distance_m
    entries = []
    for tag in scenario.tags():
        bers = [
            evaluate_link(scenario, Vec3(lum.pose.position.x, lum.pose.position.y, z), tag).ber
            for lum in scenario.luminaires_for(tag)
        ]
        best = min(bers)
        entries.append(TagResolvability(tag_id=tag, min_ber_under_lamp=best,
                                        resolvable=best <= threshold))
    return ResolvabilityReport(
        plane_distance_m=plane_distance_m,
        threshold_ber=threshold,
        tags=tuple(entries),
        critical_overlap_distance_m=scenario_critical_distance(scenario),
    )


def scenario_critical_distance(scenario: Scenario) -> float:
    """Cone-overlap distance from the tightest luminaire pair.

    Uses the minimum center spacing and the widest semi-angle, i.e. the
    earliest full overlap anywhere in the layout. Infinite for a single
    luminaire; zero when two luminaires coincide.
    """
    positions = [lum.pose.position for lum in scenario.luminaires]
    if len(positions) < 2:
        return UNBOUNDED
    spacing = min(
        (positions[i] - positions[j]).norm()
        for i in range(len(positions))
        for j in range(i + 1, len(positions))
    )
    if spacing == 0.0:
        return 0.0
    widest = max(lum.emitter.semi_angle_deg for lum in scenario.luminaires)
    return critical_overlap_distance(spacing, widest)


def coverage(scenario: Scenario, tag_id: str, threshold: float = 1e-2,
             angle_distance_fraction: float = 0.5) -> CoverageReport:
    """Maximum reliable on-axis distance and off-axis angle for one tag.

    With no interferers and all noise parameters zero the distance is
    unbounded (reported as inf, with the full 90 degree angle). If no
    crossing is found below the search cap the unbounded sentinel is
    returned as well.
    """
    if not 0.0 < threshold:
        raise ParameterError(f"threshold must be positive, got {threshold}")
    if not 0.0 < angle_distance_fraction <= 1.0:
        raise ParameterError(
            f"angle distance fraction must be in (0, 1], got {angle_distance_fraction}")
    lamps = scenario.luminaires_for(tag_id)
    has_interferers = len(lamps) != len(scenario.luminaires)
    noise = scenario.noise
    noiseless = (noise.background_current_a == 0.0 and noise.thermal_a2 == 0.0
                 and noise.isi_a2 == 0.0)
    if not has_interferers and noiseless:
        return CoverageReport(tag_id, UNBOUNDED, 90.0, threshold)

    origin = lamps[0].pose.position
    axis = lamps[0].pose.axis
    side = _perpendicular(axis)

    def ber_at(distance: float, angle_deg: float = 0.0) -> float:
        a = math.radians(angle_deg)
        direction = axis.scaled(math.cos(a)) + side.scaled(math.sin(a))
        position = origin + direction.scaled(distance)
        return evaluate_link(scenario, position, tag_id).ber

    def ok(distance: float) -> bool:
        return ber_at(distance) <= threshold

    if not ok(_BRACKET_START_M):
        return CoverageReport(tag_id, 0.0, 0.0, threshold)
    if has_interferers:
        distance = _scan_last_crossing(ok)
    else:
        distance = _bracket_and_bisect(ok)
    if math.isinf(distance):
        return CoverageReport(tag_id, UNBOUNDED, 90.0, threshold)

    radius = angle_distance_fraction * distance

    def angle_ok(angle_deg: float) -> bool:
        return ber_at(radius, angle_deg) <= threshold

    if angle_ok(90.0):
        angle = 90.0
    elif not angle_ok(0.0):
        angle = 0.0
    else:
        lo, hi = 0.0, 90.0
        while hi - lo > _ANGLE_TOL_DEG:
            mid = 0.5 * (lo + hi)
            if angle_ok(mid):
                lo = mid
            else:
                hi = mid
        angle = lo
    return CoverageReport(tag_id, distance, angle, threshold)


def _bracket_and_bisect(ok) -> float:
    # Monotone case: double out to the first failure, then bisect to 1 mm.
    lo = _BRACKET_START_M
    hi = lo
    while ok(hi):
        lo = hi
        hi *= 2.0
        if hi > _BRACKET_CAP_M:
            return UNBOUNDED
    while hi - lo > _DISTANCE_TOL_M:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _scan_last_crossing(ok) -> float:
    # Interference can make the error rate dip and rise along the ray, so
    # scan at fixed steps for the last passing point, then refine locally.
    steps = int(round(_SCAN_CAP_M / _SCAN_STEP_M))
    last_pass = None
    for k in range(1, steps + 1):
        d = k * _SCAN_STEP_M
        if ok(d):
            last_pass = k
    if last_pass is None:
        return _BRACKET_START_M
    if last_pass == steps:
        return UNBOUNDED
    lo = last_pass * _SCAN_STEP_M
    hi = (last_pass + 1) * _SCAN_STEP_M
    while hi - lo > _DISTANCE_TOL_M:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _perpendicular(axis: Vec3) -> Vec3:
    reference = Vec3(1.0, 0.0, 0.0) if abs(axis.x) < 0.9 else Vec3(0.0, 1.0, 0.0)
    return (reference - axis.scaled(reference.dot(axis))).normalized()
