"""Procedural scene, material, and light-rig sampling.

Scenes are clusters of 1-9 primitives (cube/ellipsoid/cylinder) with
sinusoidal surface perturbation bands, resting above a floor rectangle in
the x-z plane, viewed by an orthographic camera whose optical axis lies in
the y-z plane. World up is +y. All sampling is driven by an explicit numpy
Generator so scenes are pure functions of (rng state, config).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .brdf import FRESNEL_F0

PRIMITIVE_KINDS = ("cube", "ellipsoid", "cylinder")

# Fixed input slot order, shared by data generation, training, and inference.
LIGHT_SLOTS = ("codirectional", "front_right", "right", "front_left", "left", "above")
SIDE_SLOT_AZIMUTHS = {1: 45.0, 2: 90.0, 3: -45.0, 4: -90.0}
SIDE_LIGHT_ELEVATION = 25.0
SIDE_LIGHT_MAX_PERTURB = 10.0


@dataclass
class TextureRef:
    """Albedo source: a procedural seed or an image file, plus channel jitter."""

    kind: str  # "procedural" | "file"
    key: str  # seed (as str) or file path
    jitter: tuple[float, float, float] = (1.0, 1.0, 1.0)


@dataclass
class Material:
    texture: TextureRef
    roughness: float
    f0: float = FRESNEL_F0


@dataclass
class PerturbBand:
    """One sinusoidal displacement band in the primitive's local frame."""

    direction: tuple[float, float, float]
    frequency: float  # cycles per object
    amplitude: float  # world units, along the base surface normal
    phase: float


@dataclass
class Primitive:
    kind: str
    scale: tuple[float, float, float]
    rotation: np.ndarray  # 3x3 world-from-local
    position: tuple[float, float, float]
    bands: list[PerturbBand]
    material: Material

    def circumradius(self) -> float:
        s = np.asarray(self.scale)
        if self.kind == "cube":
            r = float(np.linalg.norm(s))
        elif self.kind == "cylinder":
            r = float(math.hypot(max(s[0], s[2]), s[1]))
        else:
            r = float(np.max(s))
        return r + sum(b.amplitude for b in self.bands)


@dataclass
class CameraSpec:
    """Orthographic camera in the y-z plane, looking down at the floor."""

    elevation_deg: float
    half_width: float
    target: tuple[float, float, float]
    distance: float = 10.0

    def basis(self):
        """Return (right, up, forward) unit vectors in world space."""
        beta = math.radians(self.elevation_deg)
        forward = np.array([0.0, -math.sin(beta), math.cos(beta)])
        right = np.array([1.0, 0.0, 0.0])
        up = np.cross(forward, right)
        return right, up, forward

    @property
    def axis_toward_camera(self) -> np.ndarray:
        return -self.basis()[2]


@dataclass
class SceneSpec:
    primitives: list[Primitive]
    floor_half_extent: float
    floor_material: Material
    camera: CameraSpec


@dataclass
class LightRig:
    """Six directional lights in fixed slot order; directions point at the light."""

    directions: np.ndarray  # (6, 3) unit vectors, world space
    intensities: np.ndarray  # (6,)


@dataclass
class SceneGenConfig:
    min_primitives: int = 1
    max_primitives: int = 9
    scale_range: tuple[float, float] = (0.15, 0.55)
    spread: float = 0.8
    max_bands: int = 4
    band_freq_range: tuple[float, float] = (1.0, 16.0)
    band_max_amp_frac: float = 0.05
    frame_fraction_range: tuple[float, float] = (0.4, 0.8)
    camera_elevation_range: tuple[float, float] = (10.0, 45.0)
    texture_dir: str | None = None
    max_retries: int = 32


def phong_to_beckmann(exponent: float) -> float:
    """Convert a Phong exponent to the equivalent Beckmann roughness sqrt(2/(2+E))."""
    if exponent < 0:
        raise ValueError("Phong exponent must be >= 0")
    return math.sqrt(2.0 / (2.0 + exponent))


def sample_roughness(rng: np.random.Generator) -> float:
    """Draw roughness by sampling a Phong exponent ~ Exp(median 80) and converting."""
    exponent = rng.exponential(scale=80.0 / math.log(2.0))
    return phong_to_beckmann(exponent)


def procedural_texture(seed: int, size: int = 128, rng: np.random.Generator | None = None) -> np.ndarray:
    """Deterministic fallback albedo texture: smooth color field + flat patches."""
    rng = np.random.default_rng(seed) if rng is None else rng
    cells = int(rng.integers(3, 9))
    coarse = rng.uniform(0.05, 0.95, size=(cells, cells, 3))
    # bilinear upsample with wraparound so tiling has no seam
    pad = np.pad(coarse, ((0, 1), (0, 1), (0, 0)), mode="wrap")
    ys = np.linspace(0, cells, size, endpoint=False)
    xs = np.linspace(0, cells, size, endpoint=False)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    fy = (ys - y0)[:, None, None]
    fx = (xs - x0)[None, :, None]
    tex = (
        pad[y0][:, x0] * (1 - fy) * (1 - fx)
        + pad[y0][:, x0 + 1] * (1 - fy) * fx
        + pad[y0 + 1][:, x0] * fy * (1 - fx)
        + pad[y0 + 1][:, x0 + 1] * fy * fx
    )
    for _ in range(int(rng.integers(0, 4))):
        h = int(rng.integers(size // 8, size // 2))
        w = int(rng.integers(size // 8, size // 2))
        y = int(rng.integers(0, size - h))
        x = int(rng.integers(0, size - w))
        tex[y : y + h, x : x + w] = rng.uniform(0.05, 0.95, size=3)
    return np.clip(tex, 0.0, 1.0).astype(np.float64)


def load_texture_image(path) -> np.ndarray:
    from .imgio import read_image

    img = read_image(path)
    if img.ndim == 2:
        img = np.repeat(img[:, :, None], 3, axis=2)
    return img


def resolve_texture(ref: TextureRef) -> np.ndarray:
    """Materialize a texture reference into an HxWx3 albedo in [0,1], jitter applied."""
    if ref.kind == "procedural":
        tex = procedural_texture(int(ref.key))
    elif ref.kind == "file":
        tex = load_texture_image(ref.key)
    elif ref.kind == "constant":
        rgb = [float(x) for x in ref.key.split()]
        tex = np.full((2, 2, 3), rgb, dtype=np.float64)
    else:
        raise ValueError(f"unknown texture kind {ref.kind!r}")
    return np.clip(tex * np.asarray(ref.jitter)[None, None, :], 0.0, 1.0)


def sample_albedo(rng: np.random.Generator, texture_source: str | None = None) -> TextureRef:
    """Pick an albedo texture and per-channel Gaussian jitter ~ N(1, 0.2).

    `texture_source` may be a directory of images; unreadable entries are
    skipped and resampled. Without a directory the procedural fallback is used.
    """
    jitter = tuple(float(j) for j in rng.normal(1.0, 0.2, size=3))
    if texture_source is not None:
        files = sorted(
            p for p in Path(texture_source).iterdir()
            if p.suffix.lower() in (".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff")
        )
        order = rng.permutation(len(files))
        for idx in order:
            path = files[int(idx)]
            try:
                load_texture_image(path)
            except Exception:
                continue
            return TextureRef("file", str(path), jitter)
    seed = int(rng.integers(0, 2**31 - 1))
    return TextureRef("procedural", str(seed), jitter)


def _sample_material(rng: np.random.Generator, texture_source: str | None) -> Material:
    return Material(texture=sample_albedo(rng, texture_source), roughness=sample_roughness(rng))


def _random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform random rotation from a normalized quaternion."""
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def _sample_primitive(rng: np.random.Generator, config: SceneGenConfig, texture_source) -> Primitive:
    kind = PRIMITIVE_KINDS[int(rng.integers(0, len(PRIMITIVE_KINDS)))]
    scale = tuple(float(s) for s in rng.uniform(*config.scale_range, size=3))
    rotation = _random_rotation(rng)
    n_bands = int(rng.integers(1, config.max_bands + 1))
    lo, hi = config.band_freq_range
    bands = []
    for _ in range(n_bands):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        freq = float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
        amp = float(rng.uniform(0.0, config.band_max_amp_frac) * min(scale))
        bands.append(PerturbBand(tuple(d), freq, amp, float(rng.uniform(0, 2 * math.pi))))
    prim = Primitive(kind, scale, rotation, (0.0, 0.0, 0.0), bands, _sample_material(rng, texture_source))
    r = prim.circumradius()
    x, z = rng.uniform(-config.spread, config.spread, size=2)
    y = float(r * rng.uniform(0.5, 1.0))
    prim.position = (float(x), y, float(z))
    return prim


def sample_scene(rng: np.random.Generator, config: SceneGenConfig | None = None) -> SceneSpec:
    """Sample a full SceneSpec; resamples until every primitive is in frame."""
    config = config or SceneGenConfig()
    for _ in range(config.max_retries):
        count = int(rng.integers(config.min_primitives, config.max_primitives + 1))
        prims = [_sample_primitive(rng, config, config.texture_dir) for _ in range(count)]

        centers = np.array([p.position for p in prims])
        radii = np.array([p.circumradius() for p in prims])
        centroid = centers.mean(axis=0)
        cluster_r = float(np.max(np.linalg.norm(centers - centroid, axis=1) + radii))

        frac = float(rng.uniform(*config.frame_fraction_range))
        half_width = cluster_r / frac
        camera = CameraSpec(
            elevation_deg=float(rng.uniform(*config.camera_elevation_range)),
            half_width=half_width,
            target=tuple(float(c) for c in centroid),
        )
        right, up, _ = camera.basis()
        offsets = centers - centroid
        u = offsets @ right
        v = offsets @ up
        margin = half_width * 0.95
        if np.all(np.abs(u) + radii <= margin) and np.all(np.abs(v) + radii <= margin):
            floor_half = max(6.0 * cluster_r, 3.0 * half_width)
            floor_mat = _sample_material(rng, config.texture_dir)
            return SceneSpec(prims, floor_half, floor_mat, camera)
    raise RuntimeError("scene sampling failed visibility check after bounded retries")


def _direction_from_angles(azimuth_deg: float, elevation_deg: float) -> np.ndarray:
    """World direction toward a light at (azimuth from the camera side, elevation)."""
    az = math.radians(azimuth_deg)
    el = math.radians(elevation_deg)
    horiz = np.array([-math.sin(az), 0.0, -math.cos(az)])
    return np.array([horiz[0] * math.cos(el), math.sin(el), horiz[2] * math.cos(el)])


def build_light_rig(rng: np.random.Generator, camera: CameraSpec) -> LightRig:
    """Six unit-intensity directional lights in the fixed slot order.

    Slot 0 is exactly the camera axis; the four side slots get up to 10
    degrees of azimuth/elevation perturbation; the overhead slot sits at
    80-90 degrees elevation with free azimuth.
    """
    directions = np.zeros((6, 3))
    directions[0] = camera.axis_toward_camera
    for slot, azimuth in SIDE_SLOT_AZIMUTHS.items():
        d_az = float(rng.uniform(-SIDE_LIGHT_MAX_PERTURB, SIDE_LIGHT_MAX_PERTURB))
        d_el = float(rng.uniform(-SIDE_LIGHT_MAX_PERTURB, SIDE_LIGHT_MAX_PERTURB))
        directions[slot] = _direction_from_angles(azimuth + d_az, SIDE_LIGHT_ELEVATION + d_el)
    el = float(rng.uniform(80.0, 90.0))
    az = float(rng.uniform(0.0, 360.0))
    directions[5] = _direction_from_angles(az, el)
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return LightRig(directions=directions, intensities=np.ones(6))


# ---------------------------------------------------------------------------
# scene.txt serialization (plain key/value text; floats round-trip via repr)
# ---------------------------------------------------------------------------

_MAGIC = "homelight-scene v1"


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in np.asarray(values).ravel())


def _write_material(lines: list[str], prefix: str, mat: Material) -> None:
    lines.append(f"{prefix}.texture = {mat.texture.kind} {mat.texture.key}")
    lines.append(f"{prefix}.jitter = {_fmt(mat.texture.jitter)}")
    lines.append(f"{prefix}.roughness = {repr(mat.roughness)}")
    lines.append(f"{prefix}.f0 = {repr(mat.f0)}")


def scene_to_text(scene: SceneSpec, rig: LightRig | None = None) -> str:
    lines = [_MAGIC, "[camera]"]
    lines.append(f"elevation_deg = {repr(scene.camera.elevation_deg)}")
    lines.append(f"half_width = {repr(scene.camera.half_width)}")
    lines.append(f"target = {_fmt(scene.camera.target)}")
    lines.append(f"distance = {repr(scene.camera.distance)}")
    lines.append("[floor]")
    lines.append(f"half_extent = {repr(scene.floor_half_extent)}")
    _write_material(lines, "material", scene.floor_material)
    for i, prim in enumerate(scene.primitives):
        lines.append(f"[primitive {i}]")
        lines.append(f"kind = {prim.kind}")
        lines.append(f"scale = {_fmt(prim.scale)}")
        lines.append(f"rotation = {_fmt(prim.rotation)}")
        lines.append(f"position = {_fmt(prim.position)}")
        for band in prim.bands:
            lines.append(
                f"band = {_fmt(band.direction)} {repr(band.frequency)} "
                f"{repr(band.amplitude)} {repr(band.phase)}"
            )
        _write_material(lines, "material", prim.material)
    if rig is not None:
        lines.append("[lights]")
        for slot in range(6):
            lines.append(f"slot {slot} = {_fmt(rig.directions[slot])} {repr(float(rig.intensities[slot]))}")
    return "\n".join(lines) + "\n"


def _parse_material(fields: dict) -> Material:
    kind, key = fields["material.texture"].split(None, 1)
    jitter = tuple(float(x) for x in fields["material.jitter"].split())
    return Material(
        texture=TextureRef(kind, key, jitter),
        roughness=float(fields["material.roughness"]),
        f0=float(fields["material.f0"]),
    )


def scene_from_text(text: str) -> tuple[SceneSpec, LightRig | None]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _MAGIC:
        raise ValueError("not a homelight scene file")
    sections: list[tuple[str, dict, list]] = []
    current = None
    for ln in lines[1:]:
        if ln.startswith("["):
            current = (ln.strip("[]"), {}, [])
            sections.append(current)
            continue
        key, _, value = ln.partition("=")
        key, value = key.strip(), value.strip()
        if key in ("band", "slot 0", "slot 1", "slot 2", "slot 3", "slot 4", "slot 5"):
            current[2].append((key, value))
        else:
            current[1][key] = value

    camera = floor_half = floor_mat = None
    prims: list[Primitive] = []
    rig = None
    for name, fields, repeats in sections:
        if name == "camera":
            camera = CameraSpec(
                elevation_deg=float(fields["elevation_deg"]),
                half_width=float(fields["half_width"]),
                target=tuple(float(x) for x in fields["target"].split()),
                distance=float(fields["distance"]),
            )
        elif name == "floor":
            floor_half = float(fields["half_extent"])
            floor_mat = _parse_material(fields)
        elif name.startswith("primitive"):
            bands = []
            for _, value in repeats:
                vals = value.split()
                bands.append(
                    PerturbBand(
                        tuple(float(x) for x in vals[:3]),
                        float(vals[3]),
                        float(vals[4]),
                        float(vals[5]),
                    )
                )
            prims.append(
                Primitive(
                    kind=fields["kind"],
                    scale=tuple(float(x) for x in fields["scale"].split()),
                    rotation=np.array([float(x) for x in fields["rotation"].split()]).reshape(3, 3),
                    position=tuple(float(x) for x in fields["position"].split()),
                    bands=bands,
                    material=_parse_material(fields),
                )
            )
        elif name == "lights":
            directions = np.zeros((6, 3))
            intensities = np.zeros(6)
            for key, value in repeats:
                slot = int(key.split()[1])
                vals = [float(x) for x in value.split()]
                directions[slot] = vals[:3]
                intensities[slot] = vals[3]
            rig = LightRig(directions, intensities)
    if camera is None or floor_mat is None:
        raise ValueError("scene file missing camera or floor section")
    return SceneSpec(prims, floor_half, floor_mat, camera), rig


def save_scene(path, scene: SceneSpec, rig: LightRig | None = None) -> None:
    Path(path).write_text(scene_to_text(scene, rig))


def load_scene(path) -> tuple[SceneSpec, LightRig | None]:
    return scene_from_text(Path(path).read_text())
