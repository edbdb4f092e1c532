"""Scenario definition, document loading, built-in layouts, grid engine.

A scenario is a room, a set of tag-broadcasting luminaires, one receiver
template, and the noise environment. The room is centered on the origin
in x and y (x in [-width/2, width/2], y in [-depth/2, depth/2]) with
z in [0, height]; keeping symmetric layouts numerically symmetric about
zero makes the mirror-symmetry guarantees of the grid engine exact.

Scenario documents are YAML with a fixed key set (unknown keys are
rejected so typos cannot silently fall back to defaults):

    metadata:             optional: name, description
    room:                 width_m, depth_m, height_m
    luminaire:            list; per entry: tag, x_m, y_m, z_m, power_w,
                          semi_angle_deg, mod_index (1.0),
                          baseband_power (0.5)
    detector:             area_m2, fov_deg, gain,
                          responsivity_a_per_w (0.54), bandwidth_hz (1.0e4)
    noise:                optional: background_current_a (0), i2 (0.56),
                          thermal_a2 (0), isi_a2 (0)

Values in parentheses are the defaults applied when a key is omitted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .channel import DetectorModel, EmitterModel
from .errors import ParameterError, ScenarioParseError, ScenarioValidationError, TagNotFoundError
from .geometry import Pose, Vec3
from .link import LinkBudget, ModulationParams, evaluate_link
from .noise import NoiseParams

_DOWN = Vec3(0.0, 0.0, -1.0)
_UP = Vec3(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Room:
    """Axis-aligned room volume; luminaires and grids must stay inside."""

    width_m: float
    depth_m: float
    height_m: float

    def __post_init__(self) -> None:
        for name in ("width_m", "depth_m", "height_m"):
            if not getattr(self, name) > 0.0:
                raise ParameterError(f"room {name} must be positive, got {getattr(self, name)}")

    def contains(self, point: Vec3) -> bool:
        return (
            abs(point.x) <= 0.5 * self.width_m
            and abs(point.y) <= 0.5 * self.depth_m
            and 0.0 <= point.z <= self.height_m
        )


@dataclass(frozen=True)
class Luminaire:
    """One tag-broadcasting LED source."""

    tag: str
    pose: Pose
    emitter: EmitterModel
    modulation: ModulationParams = field(default_factory=ModulationParams)


@dataclass(frozen=True)
class Scenario:
    """A complete simulation setup; immutable once constructed."""

    room: Room
    luminaires: tuple[Luminaire, ...]
    detector: DetectorModel
    receiver_axis: Vec3 = _UP
    noise: NoiseParams = field(default_factory=NoiseParams)
    name: str = ""
    description: str = ""

    def __post_init__(self) -> None:
        if not self.luminaires:
            raise ScenarioValidationError("scenario must contain at least one luminaire")
        for i, lum in enumerate(self.luminaires):
            if not isinstance(lum.tag, str) or not lum.tag:
                raise ScenarioValidationError(f"luminaire[{i}].tag: must be a non-empty string")
            if not self.room.contains(lum.pose.position):
                raise ScenarioValidationError(
                    f"luminaire[{i}]: position must lie inside the room volume")
        if abs(self.receiver_axis.norm() - 1.0) > 1e-9:
            raise ScenarioValidationError("receiver axis must be a unit vector")

    def tags(self) -> tuple[str, ...]:
        """Distinct tag ids in first-appearance order."""
        seen: dict[str, None] = {}
        for lum in self.luminaires:
            seen.setdefault(lum.tag, None)
        return tuple(seen)

    def luminaires_for(self, tag_id: str) -> tuple[Luminaire, ...]:
        found = tuple(lum for lum in self.luminaires if lum.tag == tag_id)
        if not found:
            raise TagNotFoundError(f"no luminaire carries tag {tag_id!r}")
        return found


@dataclass(frozen=True)
class GridSpec:
    """Sampling plan for a horizontal receiver plane.

    ``plane_distance_m`` is measured downward from the luminaire plane at
    the ceiling; ``resolution`` is cells per axis and each cell is sampled
    at its center (an open sampling of the field, not an average).
    """

    plane_distance_m: float
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    resolution: int

    def __post_init__(self) -> None:
        if not self.plane_distance_m > 0.0:
            raise ParameterError(f"plane distance must be positive, got {self.plane_distance_m}")
        if isinstance(self.resolution, bool) or not isinstance(self.resolution, int) or self.resolution < 2:
            raise ParameterError(f"resolution must be an integer >= 2, got {self.resolution}")
        for name, (lo, hi) in (("x_range", self.x_range), ("y_range", self.y_range)):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ParameterError(f"{name} must be an increasing finite interval, got ({lo}, {hi})")

    @classmethod
    def for_room(cls, room: Room, plane_distance_m: float, resolution: int) -> "GridSpec":
        """Grid spanning the full room footprint."""
        half_w = 0.5 * room.width_m
        half_d = 0.5 * room.depth_m
        return cls(plane_distance_m, (-half_w, half_w), (-half_d, half_d), resolution)


@dataclass(frozen=True)
class BerGrid:
    """Per-cell link budgets for one tag on one receiver plane.

    ``cells[iy][ix]`` corresponds to ``(x_centers_m[ix], y_centers_m[iy])``.
    """

    spec: GridSpec
    tag_id: str
    x_centers_m: tuple[float, ...]
    y_centers_m: tuple[float, ...]
    cells: tuple[tuple[LinkBudget, ...], ...]


def _cell_centers(lo: float, hi: float, n: int) -> tuple[float, ...]:
    # (2i + 1 - n) / (2n) is an exact-negation ladder, so a symmetric range
    # yields exactly mirrored center coordinates; the grid symmetry
    # guarantees rely on this.
    mid = 0.5 * (lo + hi)
    span = hi - lo
    return tuple(mid + ((2 * i + 1 - n) / (2 * n)) * span for i in range(n))


def evaluate_grid(scenario: Scenario, spec: GridSpec, data_tag_id: str, workers: int = 1) -> BerGrid:
    """Evaluate the link budget for ``data_tag_id`` at every cell center.

    The result is deterministic: each cell is a pure function of the
    scenario and its center coordinate, so the worker count and evaluation
    order cannot change a single bit of the output.
    """
    scenario.luminaires_for(data_tag_id)
    room = scenario.room
    half_w = 0.5 * room.width_m
    half_d = 0.5 * room.depth_m
    if spec.x_range[0] < -half_w or spec.x_range[1] > half_w:
        raise ScenarioValidationError("grid x_range must lie within the room footprint")
    if spec.y_range[0] < -half_d or spec.y_range[1] > half_d:
        raise ScenarioValidationError("grid y_range must lie within the room footprint")
    if spec.plane_distance_m > room.height_m:
        raise ScenarioValidationError("plane distance must not exceed the room height")

    z = room.height_m - spec.plane_distance_m
    xs = _cell_centers(spec.x_range[0], spec.x_range[1], spec.resolution)
    ys = _cell_centers(spec.y_range[0], spec.y_range[1], spec.resolution)

    def row(iy: int) -> tuple[LinkBudget, ...]:
        y = ys[iy]
        return tuple(evaluate_link(scenario, Vec3(x, y, z), data_tag_id) for x in xs)

    if workers <= 1:
        rows = [row(iy) for iy in range(len(ys))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(len(ys))))
    return BerGrid(spec=spec, tag_id=data_tag_id, x_centers_m=xs, y_centers_m=ys, cells=tuple(rows))


def load_scenario(text: str) -> Scenario:
    """Parse and validate a YAML scenario document."""
    scenario, _ = load_scenario_with_defaults(text)
    return scenario


def load_scenario_file(path: str | Path) -> Scenario:
    """Read and parse a scenario document from disk."""
    return load_scenario(Path(path).read_text(encoding="utf-8"))


def load_scenario_with_defaults(text: str) -> tuple[Scenario, tuple[str, ...]]:
    """Like load_scenario, also reporting which optional keys were defaulted."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioParseError(f"document is not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioParseError("top level: expected a mapping of sections")

    _reject_unknown(doc, ("metadata", "room", "luminaire", "detector", "noise"), "top level")
    applied: list[str] = []

    meta = _mapping(doc, "metadata", required=False)
    _reject_unknown(meta, ("name", "description"), "metadata")
    name = _string(meta, "name", "metadata", default="")
    description = _string(meta, "description", "metadata", default="")

    room_map = _mapping(doc, "room", required=True)
    _reject_unknown(room_map, ("width_m", "depth_m", "height_m"), "room")
    width = _number(room_map, "width_m", "room")
    depth = _number(room_map, "depth_m", "room")
    height = _number(room_map, "height_m", "room")
    for key, value in (("room.width_m", width), ("room.depth_m", depth), ("room.height_m", height)):
        _validate(value > 0.0, key, "must be positive")
    room = Room(width, depth, height)

    if "luminaire" not in doc:
        raise ScenarioParseError("luminaire: missing required section")
    lum_list = doc["luminaire"]
    if not isinstance(lum_list, list) or not lum_list:
        raise ScenarioParseError("luminaire: expected a non-empty list of entries")
    luminaire_keys = ("tag", "x_m", "y_m", "z_m", "power_w", "semi_angle_deg",
                      "mod_index", "baseband_power")
    luminaires = []
    for i, entry in enumerate(lum_list):
        path = f"luminaire[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioParseError(f"{path}: expected a mapping")
        _reject_unknown(entry, luminaire_keys, path)
        tag = _string(entry, "tag", path)
        _validate(bool(tag), f"{path}.tag", "must be a non-empty string")
        x = _number(entry, "x_m", path)
        y = _number(entry, "y_m", path)
        z = _number(entry, "z_m", path)
        power = _number(entry, "power_w", path)
        semi = _number(entry, "semi_angle_deg", path)
        mod_index = _number(entry, "mod_index", path, default=1.0, applied=applied)
        baseband = _number(entry, "baseband_power", path, default=0.5, applied=applied)
        _validate(power > 0.0, f"{path}.power_w", "must be positive")
        _validate(0.0 < semi < 90.0, f"{path}.semi_angle_deg", "must be in (0, 90) degrees")
        _validate(0.0 < mod_index <= 1.0, f"{path}.mod_index", "must be in (0, 1]")
        _validate(baseband > 0.0, f"{path}.baseband_power", "must be positive")
        position = Vec3(x, y, z)
        _validate(room.contains(position), path, "position must lie inside the room volume")
        luminaires.append(Luminaire(
            tag=tag,
            pose=Pose(position, _DOWN),
            emitter=EmitterModel(power_w=power, semi_angle_deg=semi),
            modulation=ModulationParams(mod_index=mod_index, baseband_power=baseband),
        ))

    det_map = _mapping(doc, "detector", required=True)
    _reject_unknown(det_map, ("area_m2", "fov_deg", "gain", "responsivity_a_per_w", "bandwidth_hz"),
                    "detector")
    area = _number(det_map, "area_m2", "detector")
    fov = _number(det_map, "fov_deg", "detector")
    gain = _number(det_map, "gain", "detector")
    responsivity = _number(det_map, "responsivity_a_per_w", "detector", default=0.54, applied=applied)
    bandwidth = _number(det_map, "bandwidth_hz", "detector", default=1.0e4, applied=applied)
    _validate(area > 0.0, "detector.area_m2", "must be positive")
    _validate(0.0 < fov <= 90.0, "detector.fov_deg", "must be in (0, 90] degrees")
    _validate(gain > 0.0, "detector.gain", "must be positive")
    _validate(responsivity > 0.0, "detector.responsivity_a_per_w", "must be positive")
    _validate(bandwidth > 0.0, "detector.bandwidth_hz", "must be positive")
    detector = DetectorModel(area_m2=area, fov_deg=fov, gain=gain,
                             responsivity_a_per_w=responsivity, bandwidth_hz=bandwidth)

    noise_map = _mapping(doc, "noise", required=False)
    _reject_unknown(noise_map, ("background_current_a", "i2", "thermal_a2", "isi_a2"), "noise")
    background = _number(noise_map, "background_current_a", "noise", default=0.0, applied=applied)
    i2 = _number(noise_map, "i2", "noise", default=0.56, applied=applied)
    thermal = _number(noise_map, "thermal_a2", "noise", default=0.0, applied=applied)
    isi = _number(noise_map, "isi_a2", "noise", default=0.0, applied=applied)
    for key, value in (("noise.background_current_a", background), ("noise.i2", i2),
                       ("noise.thermal_a2", thermal), ("noise.isi_a2", isi)):
        _validate(value >= 0.0, key, "must be >= 0")
    noise = NoiseParams(background_current_a=background, i2=i2, thermal_a2=thermal, isi_a2=isi)

    scenario = Scenario(room=room, luminaires=tuple(luminaires), detector=detector,
                        receiver_axis=_UP, noise=noise, name=name, description=description)
    return scenario, tuple(applied)


def builtin_l1() -> Scenario:
    """Three tags in a line at 16 cm pitch, centered under a 2 m ceiling."""
    emitter = EmitterModel(power_w=1.0, semi_angle_deg=20.0)
    layout = (("outer-left", -0.16), ("inner", 0.0), ("outer-right", 0.16))
    luminaires = tuple(
        Luminaire(tag=tag, pose=Pose(Vec3(x, 0.0, 2.0), _DOWN), emitter=emitter)
        for tag, x in layout
    )
    return Scenario(
        room=Room(2.0, 2.0, 2.0),
        luminaires=luminaires,
        detector=DetectorModel(area_m2=1.0e-4, fov_deg=60.0, gain=1.3),
        noise=NoiseParams(),
        name="L1",
        description="three luminaires in a line at 16 cm spacing",
    )


def builtin_g1() -> Scenario:
    """Nine tags on a 3x3 grid at 16 cm pitch, centered under a 2 m ceiling."""
    emitter = EmitterModel(power_w=1.0, semi_angle_deg=20.0)
    layout = (
        ("nw", -0.16, 0.16), ("n", 0.0, 0.16), ("ne", 0.16, 0.16),
        ("w", -0.16, 0.0), ("center", 0.0, 0.0), ("e", 0.16, 0.0),
        ("sw", -0.16, -0.16), ("s", 0.0, -0.16), ("se", 0.16, -0.16),
    )
    luminaires = tuple(
        Luminaire(tag=tag, pose=Pose(Vec3(x, y, 2.0), _DOWN), emitter=emitter)
        for tag, x, y in layout
    )
    return Scenario(
        room=Room(2.0, 2.0, 2.0),
        luminaires=luminaires,
        detector=DetectorModel(area_m2=1.0e-4, fov_deg=60.0, gain=1.3),
        noise=NoiseParams(),
        name="G1",
        description="nine luminaires on a 3x3 grid at 16 cm spacing",
    )


def builtin_scenario_path(name: str) -> Path:
    """Filesystem path of a shipped scenario document ('l1' or 'g1')."""
    path = Path(__file__).parent / "scenarios" / f"{name.lower()}.yaml"
    if not path.is_file():
        raise ParameterError(f"no shipped scenario named {name!r}")
    return path


def _reject_unknown(mapping: dict, allowed: tuple[str, ...], path: str) -> None:
    unknown = sorted(k for k in mapping if k not in allowed)
    if unknown:
        raise ScenarioParseError(f"{path}: unknown key {unknown[0]!r}")


def _mapping(doc: dict, key: str, required: bool) -> dict:
    if key not in doc:
        if required:
            raise ScenarioParseError(f"{key}: missing required section")
        return {}
    value = doc[key]
    if not isinstance(value, dict):
        raise ScenarioParseError(f"{key}: expected a mapping")
    return value


_REQUIRED = object()


def _number(mapping: dict, key: str, path: str, default=_REQUIRED, applied: list[str] | None = None):
    if key not in mapping:
        if default is _REQUIRED:
            raise ScenarioParseError(f"{path}.{key}: missing required key")
        if applied is not None:
            applied.append(f"{path}.{key}")
        return default
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioParseError(f"{path}.{key}: expected a number, got {value!r}")
    return float(value)


def _string(mapping: dict, key: str, path: str, default=_REQUIRED):
    if key not in mapping:
        if default is _REQUIRED:
            raise ScenarioParseError(f"{path}.{key}: missing required key")
        return default
    value = mapping[key]
    if not isinstance(value, str):
        raise ScenarioParseError(f"{path}.{key}: expected a string, got {value!r}")
    return value


def _validate(condition: bool, key: str, constraint: str) -> None:
    if not condition:
        raise ScenarioValidationError(f"{key}: {constraint}")
