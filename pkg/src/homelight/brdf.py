"""Cook-Torrance BRDF with a Beckmann microfacet distribution.

All functions accept scalars or broadcastable numpy arrays and evaluate in
double precision. Directions point away from the surface; `normal`, `view`
and `light` are expected to be unit length.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FRESNEL_F0 = 0.05


@dataclass(frozen=True)
class BrdfParams:
    """Material parameters: linear-RGB albedo, Beckmann roughness, Fresnel base."""

    albedo: tuple[float, float, float]
    roughness: float
    f0: float = FRESNEL_F0

    def __post_init__(self):
        a = np.asarray(self.albedo, dtype=np.float64)
        if a.shape != (3,) or np.any(a < 0) or np.any(a > 1):
            raise ValueError(f"albedo must be an RGB triple in [0,1], got {self.albedo}")
        if not self.roughness > 0:
            raise ValueError(f"roughness must be > 0, got {self.roughness}")
        if not 0 <= self.f0 <= 1:
            raise ValueError(f"f0 must be in [0,1], got {self.f0}")


@dataclass(frozen=True)
class ShadingGeometry:
    """Unit view/light/normal directions plus the derived half vector."""

    view: np.ndarray
    light: np.ndarray
    normal: np.ndarray
    half: np.ndarray = field(init=False)

    def __post_init__(self):
        for name in ("view", "light", "normal"):
            v = np.asarray(getattr(self, name), dtype=np.float64)
            if v.shape[-1] != 3:
                raise ValueError(f"{name} must have 3 components")
            n = np.linalg.norm(v, axis=-1)
            if np.any(np.abs(n - 1.0) > 1e-6):
                raise ValueError(f"{name} must be unit length (|v| deviates by > 1e-6)")
            object.__setattr__(self, name, v)
        h = self.view + self.light
        h = h / np.linalg.norm(h, axis=-1, keepdims=True)
        object.__setattr__(self, "half", h)


def beckmann_d(roughness, cos_theta_h):
    """Beckmann normal distribution exp(-tan^2(th)/R^2) / (pi R^2 cos^4(th))."""
    r2 = np.asarray(roughness, dtype=np.float64) ** 2
    c = np.asarray(cos_theta_h, dtype=np.float64)
    if np.any(c <= 0):
        raise ValueError("cos_theta_h must be > 0 (half vector below the surface)")
    c2 = c * c
    tan2 = (1.0 - c2) / c2
    return np.exp(-tan2 / r2) / (np.pi * r2 * c2 * c2)


def fresnel_schlick(f0, cos_hv):
    """Schlick Fresnel approximation f0 + (1-f0)(1-cos)^5, inputs clamped to [0,1]."""
    c = np.clip(np.asarray(cos_hv, dtype=np.float64), 0.0, 1.0)
    return f0 + (1.0 - f0) * (1.0 - c) ** 5


def smith_g1(cos_xn, cos_xh, roughness):
    """Smith masking term for one direction X, via the Walter rational fit.

    Returns 0 on sidedness violations ((H.X)(X.N) <= 0), 1 for a > 1.6, and
    the rational approximation in a = 1/(R tan(theta_X)) otherwise, clamped
    to 1 (the fit slightly overshoots near a = 1.6).
    """
    cn = np.asarray(cos_xn, dtype=np.float64)
    ch = np.asarray(cos_xh, dtype=np.float64)
    r = np.asarray(roughness, dtype=np.float64)
    if np.any(r <= 0):
        raise ValueError("roughness must be > 0")

    sin2 = np.clip(1.0 - cn * cn, 0.0, 1.0)
    tan = np.sqrt(sin2) / np.where(cn != 0, cn, 1.0)
    with np.errstate(divide="ignore"):
        a = np.where(tan > 0, 1.0 / (r * np.maximum(tan, 1e-300)), np.inf)

    rational = (3.535 * a + 2.181 * a * a) / (1.0 + 2.276 * a + 2.577 * a * a)
    out = np.where(a > 1.6, 1.0, np.minimum(rational, 1.0))
    out = np.where(cn <= 0, 0.0, out)
    out = np.where(ch * cn <= 0, 0.0, out)
    return out if out.ndim else float(out)


def eval_brdf(params: BrdfParams, geom: ShadingGeometry):
    """Cook-Torrance BRDF value A/pi + F D G / (4 (N.L)(N.V)) per channel.

    Back-facing configurations keep the diffuse term and zero the specular
    term rather than producing negative or undefined values.
    """
    albedo = np.asarray(params.albedo, dtype=np.float64)
    n, v, l, h = geom.normal, geom.view, geom.light, geom.half
    nl = np.sum(n * l, axis=-1)
    nv = np.sum(n * v, axis=-1)
    nh = np.sum(n * h, axis=-1)
    hv = np.sum(h * v, axis=-1)
    hl = np.sum(h * l, axis=-1)

    front = (nl > 0) & (nv > 0) & (nh > 0)
    spec = np.zeros_like(np.asarray(nl, dtype=np.float64))
    if np.any(front):
        nh_safe = np.where(front, nh, 1.0)
        d = beckmann_d(params.roughness, nh_safe)
        f = fresnel_schlick(params.f0, hv)
        g = smith_g1(nl, hl, params.roughness) * smith_g1(nv, hv, params.roughness)
        denom = 4.0 * np.where(front, nl * nv, 1.0)
        spec = np.where(front, f * d * g / denom, 0.0)

    return albedo / np.pi + spec[..., None]


def shade_direct(params: BrdfParams, geom: ShadingGeometry, intensity, visibility):
    """Radiance from one directional light: vis * I * brdf * max(N.L, 0)."""
    intensity = np.asarray(intensity, dtype=np.float64)
    if np.any(intensity < 0):
        raise ValueError("intensity must be >= 0")
    nl = np.maximum(np.sum(geom.normal * geom.light, axis=-1), 0.0)
    weight = np.asarray(visibility, dtype=np.float64) * intensity * nl
    return eval_brdf(params, geom) * weight[..., None]
