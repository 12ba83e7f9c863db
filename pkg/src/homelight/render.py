"""Direct-illumination renderer for procedural scenes.

Orthographic primary rays, analytic primitive intersection with optional
sphere-traced displacement refinement, one hard shadow ray per light.
Interreflections are not simulated. Also hosts the photometric pipeline:
sRGB tonemapping, exposure normalization, and train-time geometric
augmentation of render bundles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from . import imgio
from .brdf import beckmann_d, fresnel_schlick, smith_g1
from .scene import LightRig, Primitive, SceneSpec, load_scene, resolve_texture, save_scene

_EPS_HIT = 1e-4
_MAX_TRACE_STEPS = 192
_SHADOW_BIAS = 1e-3


# ---------------------------------------------------------------------------
# signed distances and displacement (local primitive frames)
# ---------------------------------------------------------------------------

def _sdf_base(kind: str, p: np.ndarray, s: np.ndarray) -> np.ndarray:
    if kind == "cube":
        q = np.abs(p) - s
        outside = np.linalg.norm(np.maximum(q, 0.0), axis=-1)
        inside = np.minimum(np.max(q, axis=-1), 0.0)
        return outside + inside
    if kind == "ellipsoid":
        k0 = np.linalg.norm(p / s, axis=-1)
        k1 = np.linalg.norm(p / (s * s), axis=-1)
        return np.where(k1 > 0, k0 * (k0 - 1.0) / np.maximum(k1, 1e-12), -np.min(s))
    if kind == "cylinder":
        rxz = np.sqrt((p[..., 0] / s[0]) ** 2 + (p[..., 2] / s[2]) ** 2)
        d_side = (rxz - 1.0) * min(s[0], s[2])
        d_cap = np.abs(p[..., 1]) - s[1]
        outside = np.sqrt(np.maximum(d_side, 0.0) ** 2 + np.maximum(d_cap, 0.0) ** 2)
        inside = np.minimum(np.maximum(d_side, d_cap), 0.0)
        return outside + inside
    raise ValueError(f"unknown primitive kind {kind!r}")


def _displacement(prim: Primitive, p: np.ndarray) -> np.ndarray:
    if not prim.bands:
        return np.zeros(p.shape[:-1])
    ref = max(prim.scale)
    q = p / ref
    disp = np.zeros(p.shape[:-1])
    for band in prim.bands:
        d = np.asarray(band.direction)
        disp += band.amplitude * np.sin(2.0 * math.pi * band.frequency * (q @ d) + band.phase)
    return disp


def _total_amplitude(prim: Primitive) -> float:
    return sum(b.amplitude for b in prim.bands)


def _field(prim: Primitive, p: np.ndarray) -> np.ndarray:
    """Implicit function whose zero level set is the displaced surface."""
    return _sdf_base(prim.kind, p, np.asarray(prim.scale)) - _displacement(prim, p)


def _field_normal(prim: Primitive, p: np.ndarray) -> np.ndarray:
    h = 1e-3 * min(prim.scale)
    grad = np.zeros_like(p)
    for axis in range(3):
        dp = np.zeros(3)
        dp[axis] = h
        grad[..., axis] = _field(prim, p + dp) - _field(prim, p - dp)
    norm = np.linalg.norm(grad, axis=-1, keepdims=True)
    return grad / np.maximum(norm, 1e-12)


def _analytic_normal(prim: Primitive, p: np.ndarray) -> np.ndarray:
    s = np.asarray(prim.scale)
    if prim.kind == "cube":
        q = np.abs(p) - s
        n = np.zeros_like(p)
        axis = np.argmax(q, axis=-1)
        np.put_along_axis(n, axis[..., None], 1.0, axis=-1)
        return n * np.sign(p)
    if prim.kind == "ellipsoid":
        n = p / (s * s)
    else:  # cylinder: side normal unless a cap is closer
        side = np.stack(
            [p[..., 0] / s[0] ** 2, np.zeros(p.shape[:-1]), p[..., 2] / s[2] ** 2], axis=-1
        )
        rxz = np.sqrt((p[..., 0] / s[0]) ** 2 + (p[..., 2] / s[2]) ** 2)
        d_side = np.abs((rxz - 1.0) * min(s[0], s[2]))
        d_cap = np.abs(np.abs(p[..., 1]) - s[1])
        cap = np.zeros_like(p)
        cap[..., 1] = np.sign(p[..., 1])
        n = np.where((d_cap < d_side)[..., None], cap, side)
    return n / np.maximum(np.linalg.norm(n, axis=-1, keepdims=True), 1e-12)


# ---------------------------------------------------------------------------
# analytic ray intersection with the (optionally inflated) base primitive
# ---------------------------------------------------------------------------

def _intersect_base(kind, o, d, s, inflate=0.0):
    """Entry/exit distances of rays against a base primitive; local frame."""
    s = np.asarray(s, dtype=np.float64) + inflate
    big = np.float64(np.inf)
    if kind == "cube":
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = (-s - o) / d
            t2 = (s - o) / d
        lo = np.where(np.isnan(t1), -big, np.minimum(t1, t2))
        hi = np.where(np.isnan(t2), big, np.maximum(t1, t2))
        parallel_out = (np.abs(d) < 1e-12) & (np.abs(o) > s)
        tnear = np.max(lo, axis=-1)
        tfar = np.min(hi, axis=-1)
        hit = (tnear <= tfar) & (tfar > 0) & ~np.any(parallel_out, axis=-1)
        return tnear, tfar, hit
    if kind == "ellipsoid":
        oo = o / s
        dd = d / s
        a = np.sum(dd * dd, axis=-1)
        b = 2.0 * np.sum(oo * dd, axis=-1)
        c = np.sum(oo * oo, axis=-1) - 1.0
        disc = b * b - 4 * a * c
        hit = disc >= 0
        sq = np.sqrt(np.maximum(disc, 0.0))
        tnear = (-b - sq) / (2 * a)
        tfar = (-b + sq) / (2 * a)
        hit &= tfar > 0
        return tnear, tfar, hit
    if kind == "cylinder":
        a = (d[..., 0] / s[0]) ** 2 + (d[..., 2] / s[2]) ** 2
        b = 2.0 * (o[..., 0] * d[..., 0] / s[0] ** 2 + o[..., 2] * d[..., 2] / s[2] ** 2)
        c = (o[..., 0] / s[0]) ** 2 + (o[..., 2] / s[2]) ** 2 - 1.0
        disc = b * b - 4 * a * c
        safe_a = np.where(np.abs(a) < 1e-14, 1.0, a)
        sq = np.sqrt(np.maximum(disc, 0.0))
        t_lo = np.where(np.abs(a) < 1e-14, -np.inf, (-b - sq) / (2 * safe_a))
        t_hi = np.where(np.abs(a) < 1e-14, np.inf, (-b + sq) / (2 * safe_a))
        # axial rays: hit only if already inside the elliptical cross-section
        side_ok = ((disc >= 0) | (np.abs(a) < 1e-14)) & ~((np.abs(a) < 1e-14) & (c > 0))
        with np.errstate(divide="ignore", invalid="ignore"):
            t_c1 = (-s[1] - o[..., 1]) / d[..., 1]
            t_c2 = (s[1] - o[..., 1]) / d[..., 1]
        cap_lo = np.where(np.isnan(t_c1), -np.inf, np.minimum(t_c1, t_c2))
        cap_hi = np.where(np.isnan(t_c2), np.inf, np.maximum(t_c1, t_c2))
        parallel_out = (np.abs(d[..., 1]) < 1e-12) & (np.abs(o[..., 1]) > s[1])
        tnear = np.maximum(t_lo, cap_lo)
        tfar = np.minimum(t_hi, cap_hi)
        hit = side_ok & (tnear <= tfar) & (tfar > 0) & ~parallel_out
        return tnear, tfar, hit
    raise ValueError(f"unknown primitive kind {kind!r}")


def _to_local(prim: Primitive, points: np.ndarray) -> np.ndarray:
    return (points - np.asarray(prim.position)) @ prim.rotation


def _trace_lipschitz(prim: Primitive) -> float:
    ref = max(prim.scale)
    l_disp = sum(b.amplitude * 2.0 * math.pi * b.frequency / ref for b in prim.bands)
    return 1.0 + 1.2 * l_disp


def _primitive_trace(prim: Primitive, origins: np.ndarray, direction: np.ndarray):
    """Nearest hit distance per ray (inf where missed), flat ray arrays."""
    o_loc = _to_local(prim, origins)
    d_loc = direction @ prim.rotation
    amp = _total_amplitude(prim)
    if amp <= 0:
        tnear, _, hit = _intersect_base(prim.kind, o_loc, d_loc, prim.scale)
        t = np.where(hit & (tnear > 0), tnear, np.inf)
        return t, False
    tnear, tfar, hit = _intersect_base(prim.kind, o_loc, d_loc, prim.scale, inflate=amp)
    t = np.full(origins.shape[0], np.inf)
    idx = np.flatnonzero(hit)
    if idx.size == 0:
        return t, True
    cur = np.maximum(tnear[idx], 0.0)
    far = tfar[idx]
    lam = 1.0 / _trace_lipschitz(prim)
    min_step = _EPS_HIT * 0.5 * min(prim.scale)
    active = np.ones(idx.size, dtype=bool)
    found = np.zeros(idx.size, dtype=bool)
    eps = _EPS_HIT * min(prim.scale)
    for _ in range(_MAX_TRACE_STEPS):
        if not active.any():
            break
        sel = np.flatnonzero(active)
        p = o_loc[idx[sel]] + cur[sel, None] * d_loc
        f = _field(prim, p)
        hit_now = f < eps
        found[sel[hit_now]] = True
        active[sel[hit_now]] = False
        step = np.maximum(f * lam, min_step)
        cur[sel] += np.where(hit_now, 0.0, step)
        overshoot = cur[sel] > far[sel]
        active[sel[overshoot & ~hit_now]] = False
    t[idx[found]] = cur[found]
    return t, True


@dataclass
class TraceResult:
    """Primary-hit buffers for one scene at one resolution (world + camera space)."""

    position: np.ndarray  # (H,W,3) world
    normal_world: np.ndarray  # (H,W,3), zero where no hit
    normal_cam: np.ndarray  # (H,W,3)
    albedo: np.ndarray  # (H,W,3)
    roughness: np.ndarray  # (H,W)
    prim_index: np.ndarray  # (H,W) int: -2 miss, -1 floor, >=0 primitive
    mask: np.ndarray  # (H,W) bool, primitives only
    view_dir: np.ndarray  # (3,) world, toward camera
    basis: np.ndarray  # (3,3) rows = right, up, toward-camera


def _sample_texture(tex: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    h, w = tex.shape[:2]
    x = (u % 1.0) * w - 0.5
    y = (v % 1.0) * h - 0.5
    x0 = np.floor(x).astype(int)
    y0 = np.floor(y).astype(int)
    fx = x - x0
    fy = y - y0
    x0 %= w
    y0 %= h
    x1 = (x0 + 1) % w
    y1 = (y0 + 1) % h
    return (
        tex[y0, x0] * ((1 - fy) * (1 - fx))[..., None]
        + tex[y0, x1] * ((1 - fy) * fx)[..., None]
        + tex[y1, x0] * (fy * (1 - fx))[..., None]
        + tex[y1, x1] * (fy * fx)[..., None]
    )


def _primitive_uv(p_local: np.ndarray, n_local: np.ndarray, scale) -> tuple[np.ndarray, np.ndarray]:
    """Dominant-axis planar projection of local coordinates into [0,1)^2."""
    ref = 2.0 * max(scale)
    axis = np.argmax(np.abs(n_local), axis=-1)
    coords = p_local / ref + 0.5
    u = np.choose(axis, [coords[..., 1], coords[..., 2], coords[..., 0]])
    v = np.choose(axis, [coords[..., 2], coords[..., 0], coords[..., 1]])
    return u, v


def trace_scene(scene: SceneSpec, resolution: int) -> TraceResult:
    """Cast orthographic primary rays and resolve nearest hits with materials."""
    cam = scene.camera
    right, up, forward = cam.basis()
    axis = -forward
    n = resolution
    px = (np.arange(n) + 0.5) / n * 2.0 - 1.0
    u, v = np.meshgrid(px, -px)  # u grows rightward, v downward rows map to +1..-1
    w = cam.half_width
    target = np.asarray(cam.target)
    origins = (
        target[None, None, :]
        + axis[None, None, :] * cam.distance
        + u[..., None] * w * right[None, None, :]
        + v[..., None] * w * up[None, None, :]
    ).reshape(-1, 3)

    n_rays = origins.shape[0]
    best_t = np.full(n_rays, np.inf)
    best_prim = np.full(n_rays, -2, dtype=int)

    for i, prim in enumerate(scene.primitives):
        t, _ = _primitive_trace(prim, origins, forward)
        closer = t < best_t
        best_t[closer] = t[closer]
        best_prim[closer] = i

    # floor rectangle y == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        t_floor = -origins[:, 1] / forward[1]
    p_floor = origins + t_floor[:, None] * forward
    floor_ok = (
        (t_floor > 0)
        & (np.abs(p_floor[:, 0]) <= scene.floor_half_extent)
        & (np.abs(p_floor[:, 2]) <= scene.floor_half_extent)
        & (t_floor < best_t)
    )
    best_t[floor_ok] = t_floor[floor_ok]
    best_prim[floor_ok] = -1

    position = np.zeros((n_rays, 3))
    normal = np.zeros((n_rays, 3))
    albedo = np.zeros((n_rays, 3))
    roughness = np.zeros(n_rays)

    hit_any = best_prim > -2
    position[hit_any] = origins[hit_any] + best_t[hit_any, None] * forward

    floor_sel = best_prim == -1
    if floor_sel.any():
        normal[floor_sel] = [0.0, 1.0, 0.0]
        tex = resolve_texture(scene.floor_material.texture)
        uf = position[floor_sel, 0] / 2.0
        vf = position[floor_sel, 2] / 2.0
        albedo[floor_sel] = _sample_texture(tex, uf, vf)
        roughness[floor_sel] = scene.floor_material.roughness

    for i, prim in enumerate(scene.primitives):
        sel = best_prim == i
        if not sel.any():
            continue
        p_loc = _to_local(prim, position[sel])
        if _total_amplitude(prim) > 0:
            n_loc = _field_normal(prim, p_loc)
        else:
            n_loc = _analytic_normal(prim, p_loc)
        normal[sel] = n_loc @ prim.rotation.T
        base_n = _analytic_normal(prim, p_loc)
        uu, vv = _primitive_uv(p_loc, base_n, prim.scale)
        tex = resolve_texture(prim.material.texture)
        albedo[sel] = _sample_texture(tex, uu, vv)
        roughness[sel] = prim.material.roughness

    # orient normals toward the camera (double-sided shading surfaces)
    flip = (normal @ axis) < 0
    normal[flip & hit_any] *= -1.0

    basis = np.stack([right, up, axis])
    normal_cam = normal @ basis.T

    shape = (n, n)
    return TraceResult(
        position=position.reshape(n, n, 3),
        normal_world=normal.reshape(n, n, 3),
        normal_cam=normal_cam.reshape(n, n, 3),
        albedo=albedo.reshape(n, n, 3),
        roughness=roughness.reshape(*shape),
        prim_index=best_prim.reshape(*shape),
        mask=(best_prim >= 0).reshape(*shape),
        view_dir=axis,
        basis=basis,
    )


def light_visibility(scene: SceneSpec, points: np.ndarray, normals: np.ndarray, light_dir: np.ndarray) -> np.ndarray:
    """1.0 where the shadow ray toward the light is unobstructed, else 0.0."""
    flat_p = points.reshape(-1, 3)
    flat_n = normals.reshape(-1, 3)
    origins = flat_p + flat_n * _SHADOW_BIAS
    blocked = np.zeros(flat_p.shape[0], dtype=bool)
    d = np.asarray(light_dir, dtype=np.float64)
    for prim in scene.primitives:
        todo = ~blocked
        if not todo.any():
            break
        t, _ = _primitive_trace(prim, origins[todo], d)
        blocked[np.flatnonzero(todo)[np.isfinite(t)]] = True
    return (~blocked).astype(np.float64).reshape(points.shape[:-1])


def shade(trace: TraceResult, scene: SceneSpec, light_dir, intensity=1.0) -> np.ndarray:
    """HDR image for one directional light: vis * I * CookTorrance * max(N.L,0)."""
    l = np.asarray(light_dir, dtype=np.float64)
    n = trace.normal_world
    v = trace.view_dir
    hit = trace.prim_index > -2

    nl = n @ l
    nv = n @ v
    h_vec = l + v
    h_vec = h_vec / np.linalg.norm(h_vec)
    nh = n @ h_vec
    hv = float(h_vec @ v)
    hl = float(h_vec @ l)

    front = hit & (nl > 0) & (nv > 0) & (nh > 0)
    spec = np.zeros_like(nl)
    if front.any():
        rough = np.maximum(trace.roughness, 1e-4)
        d_term = beckmann_d(rough[front], nh[front])
        f_term = fresnel_schlick(0.0 + scene_f0(scene), hv)
        g_term = smith_g1(nl[front], hl, rough[front]) * smith_g1(nv[front], hv, rough[front])
        spec[front] = f_term * d_term * g_term / (4.0 * nl[front] * nv[front])

    brdf_val = trace.albedo / math.pi + spec[..., None]
    vis = np.zeros(nl.shape)
    lit = hit & (nl > 0)
    if lit.any():
        vis_flat = light_visibility(scene, trace.position[lit], trace.normal_world[lit], l)
        vis[lit] = vis_flat
    weight = vis * intensity * np.maximum(nl, 0.0) * hit
    return (brdf_val * weight[..., None]).astype(np.float64)


def scene_f0(scene: SceneSpec) -> float:
    return scene.floor_material.f0


@dataclass
class RenderBundle:
    """Six HDR renders plus co-registered ground truth for one synthetic scene."""

    images: np.ndarray  # (6, H, W, 3) linear HDR, float32
    normal: np.ndarray  # (H, W, 3) camera space, zero outside mask
    albedo: np.ndarray  # (H, W, 3)
    roughness: np.ndarray  # (H, W)
    mask: np.ndarray  # (H, W) bool
    scene: SceneSpec | None = None
    rig: LightRig | None = None

    @property
    def resolution(self) -> int:
        return self.mask.shape[0]


def render_scene(scene: SceneSpec, rig: LightRig, resolution: int, supersample: int = 1) -> RenderBundle:
    """Render all six light slots and collect ground-truth maps from primary hits."""
    if resolution & (resolution - 1):
        raise ValueError("resolution must be a power of two")
    trace = trace_scene(scene, resolution * supersample)
    images = np.stack(
        [shade(trace, scene, rig.directions[slot], float(rig.intensities[slot])) for slot in range(6)]
    )
    if supersample > 1:
        s = supersample
        images = images.reshape(6, resolution, s, resolution, s, 3).mean(axis=(2, 4))
        center = trace_scene(scene, resolution)
    else:
        center = trace
    mask = center.mask
    normal = np.where(mask[..., None], center.normal_cam, 0.0)
    albedo = np.where(mask[..., None], center.albedo, 0.0)
    rough = np.where(mask, center.roughness, 0.0)
    return RenderBundle(
        images=images.astype(np.float32),
        normal=normal.astype(np.float32),
        albedo=albedo.astype(np.float32),
        roughness=rough.astype(np.float32),
        mask=mask,
        scene=scene,
        rig=rig,
    )


# ---------------------------------------------------------------------------
# photometric pipeline
# ---------------------------------------------------------------------------

def tonemap_srgb(hdr: np.ndarray) -> np.ndarray:
    """Standard sRGB transfer applied to linear values, clamped to [0,1]."""
    x = np.clip(np.asarray(hdr, dtype=np.float64), 0.0, None)
    low = x * 12.92
    high = 1.055 * np.power(np.maximum(x, 1e-12), 1.0 / 2.4) - 0.055
    return np.clip(np.where(x <= 0.0031308, low, high), 0.0, 1.0)


def normalize_exposure(hdr: np.ndarray, rng: np.random.Generator, mask: np.ndarray | None = None) -> np.ndarray:
    """Scale a linear image so its masked median lands uniformly in [0.01, 0.2]."""
    target = float(rng.uniform(0.01, 0.2))
    if mask is None:
        mask = np.any(hdr > 0, axis=-1) if hdr.ndim == 3 else hdr > 0
    vals = hdr[mask]
    med = float(np.median(vals)) if vals.size else 0.0
    if med <= 0:
        return hdr
    return hdr * (target / med)


def _resize(img: np.ndarray, size: int, nearest: bool = False) -> np.ndarray:
    interp = cv2.INTER_NEAREST if nearest else (
        cv2.INTER_AREA if size < img.shape[0] else cv2.INTER_LINEAR
    )
    out = cv2.resize(np.asarray(img, dtype=np.float32), (size, size), interpolation=interp)
    return out


def _renormalize_normals(normal: np.ndarray, mask: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(normal, axis=-1, keepdims=True)
    unit = normal / np.maximum(norm, 1e-12)
    return np.where(mask[..., None] & (norm[..., 0] > 1e-6)[..., None], unit, 0.0)


def _choose_augment_path(rng: np.random.Generator) -> str:
    """Crop-and-resize with probability 0.7, shrink-and-pad with probability 0.3."""
    return "crop" if rng.random() < 0.7 else "shrink"


def augment_geometry(bundle: RenderBundle, rng: np.random.Generator, out_size: int = 256) -> RenderBundle:
    """Random crop (70-100%, p=0.7) or shrink-and-pad (60-100%, p=0.3) to 256.

    All six images, ground-truth maps, and the mask undergo the identical
    transform; normals are renormalized after resampling.
    """
    if bundle.resolution < out_size:
        raise ValueError(f"bundle resolution {bundle.resolution} < output size {out_size}")
    path = _choose_augment_path(rng)
    n = bundle.resolution

    if path == "crop":
        for _ in range(16):
            frac = float(rng.uniform(0.7, 1.0))
            side = max(8, int(round(frac * n)))
            side = min(side, n)
            y0 = int(rng.integers(0, n - side + 1))
            x0 = int(rng.integers(0, n - side + 1))
            if bundle.mask[y0 : y0 + side, x0 : x0 + side].any():
                break
        else:
            y0 = x0 = 0
            side = n

        def tf(img, nearest=False):
            crop = img[y0 : y0 + side, x0 : x0 + side]
            return _resize(crop, out_size, nearest)

        images = np.stack([tf(bundle.images[s]) for s in range(6)])
        mask = _resize(bundle.mask.astype(np.float32), out_size) >= 0.5
        normal = _renormalize_normals(tf(bundle.normal), mask)
        albedo = tf(bundle.albedo)
        rough = tf(bundle.roughness)
    else:
        frac = float(rng.uniform(0.6, 1.0))
        side = max(8, int(round(frac * out_size)))
        y0 = int(rng.integers(0, out_size - side + 1))
        x0 = int(rng.integers(0, out_size - side + 1))

        def tf(img, nearest=False):
            small = _resize(img, side, nearest)
            shape = (out_size, out_size) + img.shape[2:]
            canvas = np.zeros(shape, dtype=np.float32)
            canvas[y0 : y0 + side, x0 : x0 + side] = small
            return canvas

        images = np.stack([tf(bundle.images[s]) for s in range(6)])
        mask = tf(bundle.mask.astype(np.float32)) >= 0.5
        normal = _renormalize_normals(tf(bundle.normal), mask)
        albedo = tf(bundle.albedo)
        rough = tf(bundle.roughness)

    albedo = np.where(mask[..., None], albedo, 0.0)
    rough = np.where(mask, rough, 0.0)
    return RenderBundle(
        images=images.astype(np.float32),
        normal=normal.astype(np.float32),
        albedo=albedo.astype(np.float32),
        roughness=rough.astype(np.float32),
        mask=mask,
        scene=bundle.scene,
        rig=bundle.rig,
    )


# ---------------------------------------------------------------------------
# bundle directory layout: img_{slot}.pfm, normal.pfm, albedo.pfm, rough.pfm,
# mask.png, scene.txt
# ---------------------------------------------------------------------------

def save_bundle(directory, bundle: RenderBundle) -> None:
    directory = imgio.ensure_dir(directory)
    for slot in range(6):
        imgio.write_pfm(directory / f"img_{slot}.pfm", bundle.images[slot])
    imgio.write_pfm(directory / "normal.pfm", bundle.normal)
    imgio.write_pfm(directory / "albedo.pfm", bundle.albedo)
    imgio.write_pfm(directory / "rough.pfm", bundle.roughness)
    imgio.write_mask_png(directory / "mask.png", bundle.mask)
    if bundle.scene is not None:
        save_scene(directory / "scene.txt", bundle.scene, bundle.rig)


def load_bundle(directory) -> RenderBundle:
    directory = Path(directory)
    images = np.stack([imgio.read_pfm(directory / f"img_{slot}.pfm") for slot in range(6)])
    scene = rig = None
    if (directory / "scene.txt").exists():
        scene, rig = load_scene(directory / "scene.txt")
    return RenderBundle(
        images=images,
        normal=imgio.read_pfm(directory / "normal.pfm"),
        albedo=imgio.read_pfm(directory / "albedo.pfm"),
        roughness=imgio.read_pfm(directory / "rough.pfm"),
        mask=imgio.read_mask_png(directory / "mask.png"),
        scene=scene,
        rig=rig,
    )
