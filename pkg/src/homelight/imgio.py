"""Image file helpers: float PFM buffers and 8/16-bit PNG via Pillow."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np
from PIL import Image


def write_pfm(path, data: np.ndarray) -> None:
    """Write a 1- or 3-channel float32 image as little-endian PFM."""
    data = np.asarray(data, dtype=np.float32)
    if data.ndim == 2:
        header = b"Pf"
    elif data.ndim == 3 and data.shape[2] == 3:
        header = b"PF"
    else:
        raise ValueError(f"PFM supports HxW or HxWx3 arrays, got shape {data.shape}")
    h, w = data.shape[:2]
    with open(path, "wb") as f:
        f.write(header + b"\n")
        f.write(f"{w} {h}\n".encode())
        f.write(b"-1.0\n")  # negative scale: little-endian
        f.write(np.flipud(data).astype("<f4").tobytes())


def read_pfm(path) -> np.ndarray:
    """Read a PFM file into float32, shape HxW (gray) or HxWx3 (color)."""
    with open(path, "rb") as f:
        header = f.readline().rstrip()
        if header == b"PF":
            channels = 3
        elif header == b"Pf":
            channels = 1
        else:
            raise ValueError(f"{path}: not a PFM file (header {header!r})")
        dims = f.readline().decode("ascii")
        m = re.match(r"^\s*(\d+)\s+(\d+)\s*$", dims)
        if not m:
            raise ValueError(f"{path}: malformed PFM dimensions line {dims!r}")
        w, h = int(m.group(1)), int(m.group(2))
        scale = float(f.readline().decode("ascii").strip())
        dtype = "<f4" if scale < 0 else ">f4"
        raw = np.frombuffer(f.read(), dtype=dtype, count=w * h * channels)
    if raw.size != w * h * channels:
        raise ValueError(f"{path}: truncated PFM payload")
    img = raw.reshape((h, w) if channels == 1 else (h, w, 3))
    return np.flipud(img).astype(np.float32)


def write_mask_png(path, mask: np.ndarray) -> None:
    Image.fromarray((np.asarray(mask, bool) * 255).astype(np.uint8)).save(path)


def read_mask_png(path) -> np.ndarray:
    img = np.asarray(Image.open(path).convert("L"))
    return img >= 128


def write_png(path, img: np.ndarray, bits: int = 8) -> None:
    """Write an LDR image in [0,1] as 8-bit (or 16-bit grayscale-capable) PNG."""
    img = np.clip(np.asarray(img, dtype=np.float64), 0.0, 1.0)
    if bits == 8:
        Image.fromarray(np.round(img * 255).astype(np.uint8)).save(path)
    elif bits == 16:
        arr = np.round(img * 65535).astype(np.uint16)
        if arr.ndim == 3:
            raise ValueError("16-bit PNG output is single channel only")
        Image.fromarray(arr, mode="I;16").save(path)
    else:
        raise ValueError("bits must be 8 or 16")


def read_image(path) -> np.ndarray:
    """Read any PIL-supported image to float in [0,1], HxW or HxWx3."""
    img = Image.open(path)
    if img.mode in ("I;16", "I"):
        return np.asarray(img, dtype=np.float64) / 65535.0
    if img.mode == "L":
        return np.asarray(img, dtype=np.float64) / 255.0
    return np.asarray(img.convert("RGB"), dtype=np.float64) / 255.0


def ensure_dir(path) -> Path:
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p
