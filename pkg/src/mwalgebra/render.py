"""Point-cloud export and rendering (binary PPM or SVG).

Two-dimensional systems share one canvas spanning the union of the boxes.  In
one dimension each vertex gets its own horizontal band, stacked in vertex order.
"""

from __future__ import annotations

import numpy as np

BACKGROUND = 255
INK = 0


def _world_bounds(system):
    los = np.array([b.lo for b in system.spaces.values()], float)
    his = np.array([b.hi for b in system.spaces.values()], float)
    return los.min(axis=0), his.max(axis=0)


def pixel_coords(system, points: np.ndarray, width: int, height: int, band=(0, 1)) -> np.ndarray:
    """Map world points to integer ``(col, row)`` pixels."""
    lo, hi = _world_bounds(system)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    col = np.floor((points[:, 0] - lo[0]) / span[0] * (width - 1) + 0.5).astype(int)
    if system.dimension == 1:
        k, n = band
        row = np.full(len(points), int((k + 0.5) * height / n))
    else:
        row = np.floor((hi[1] - points[:, 1]) / span[1] * (height - 1) + 0.5).astype(int)
    return np.stack([np.clip(col, 0, width - 1), np.clip(row, 0, height - 1)], axis=1)


def raster(system, clouds: dict, width: int = 512, height: int = 512) -> np.ndarray:
    """``(height, width)`` uint8 image, white background, black points."""
    img = np.full((height, width), BACKGROUND, dtype=np.uint8)
    verts = list(system.graph.vertices)
    for k, v in enumerate(verts):
        pts = clouds.get(v)
        if pts is None or len(pts) == 0:
            continue
        px = pixel_coords(system, pts, width, height, (k, len(verts)))
        img[px[:, 1], px[:, 0]] = INK
    return img


def to_ppm(img: np.ndarray) -> bytes:
    h, w = img.shape
    rgb = np.repeat(img[:, :, None], 3, axis=2)
    return f"P6\n{w} {h}\n255\n".encode("ascii") + rgb.tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    """Inverse of :func:`to_ppm` (grey channel only)."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)[:, :, 0]


def to_svg(system, clouds: dict, width: int = 512, height: int = 512) -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    verts = list(system.graph.vertices)
    for k, v in enumerate(verts):
        pts = clouds.get(v)
        if pts is None or len(pts) == 0:
            continue
        px = np.unique(pixel_coords(system, pts, width, height, (k, len(verts))), axis=0)
        lines.append(f'<g id="{v}" fill="black">')
        lines.extend(f'<rect x="{c}" y="{r}" width="1" height="1"/>' for c, r in px)
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def point_cloud_text(clouds: dict) -> str:
    """One line per point: vertex id then coordinates, whitespace separated."""
    out = []
    for v in sorted(clouds):
        for p in clouds[v]:
            out.append(" ".join([v] + [repr(float(x)) for x in p]))
    return "\n".join(out) + "\n"
