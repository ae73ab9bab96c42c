"""Grayscale image preprocessing and augmentation.

Images are 2-D ``uint8`` numpy arrays (row-major, dark ink on a light
background).  Every function is pure: it returns a new array and takes any
randomness from an explicit generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ParseqError


class InvalidParameter(ParseqError, ValueError):
    pass


def _to_u8(x: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(x), 0, 255).astype(np.uint8)


def median_filter(img: np.ndarray, radius: int = 1) -> np.ndarray:
    """Median over a (2r+1)^2 window, clamping coordinates at the border."""
    if radius < 1:
        raise InvalidParameter(f"median radius must be >= 1, got {radius}")
    padded = np.pad(img, radius, mode="edge")
    win = sliding_window_view(padded, (2 * radius + 1, 2 * radius + 1))
    return _to_u8(np.median(win, axis=(-2, -1)))


def gaussian_kernel(sigma: float) -> np.ndarray:
    r = max(1, int(math.ceil(3 * sigma)))
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def _blur(x: np.ndarray, sigma: float) -> np.ndarray:
    k = gaussian_kernel(sigma)
    r = len(k) // 2
    p = np.pad(x, ((0, 0), (r, r)), mode="edge")
    x = sliding_window_view(p, len(k), axis=1) @ k
    p = np.pad(x, ((r, r), (0, 0)), mode="edge")
    return sliding_window_view(p, len(k), axis=0) @ k


def gaussian_filter(img: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian blur, kernel truncated at 3 sigma, border clamped."""
    if not sigma > 0:
        raise InvalidParameter(f"sigma must be > 0, got {sigma}")
    return _to_u8(_blur(img.astype(np.float64), sigma))


def contrast_stretch(img: np.ndarray, low_pct: float = 2.0, high_pct: float = 98.0) -> np.ndarray:
    """Linearly map the low/high percentiles to 0/255, clamping outside."""
    lo, hi = np.percentile(img, [low_pct, high_pct])
    if hi <= lo:
        return img.copy()
    return _to_u8((img.astype(np.float64) - lo) * (255.0 / (hi - lo)))


def background_level(img: np.ndarray) -> float:
    """Median of the border pixels; text crops are mostly background there."""
    border = np.concatenate([img[0], img[-1], img[:, 0], img[:, -1]])
    return float(np.median(border))


def _sample_bilinear(img: np.ndarray, xs: np.ndarray, ys: np.ndarray, fill: float) -> np.ndarray:
    h, w = img.shape
    src = img.astype(np.float64)
    x0, y0 = np.floor(xs).astype(np.int64), np.floor(ys).astype(np.int64)
    fx, fy = xs - x0, ys - y0
    out = np.zeros(xs.shape)
    for dy, wy in ((0, 1 - fy), (1, fy)):
        for dx, wx in ((0, 1 - fx), (1, fx)):
            yy, xx = y0 + dy, x0 + dx
            inside = (yy >= 0) & (yy < h) & (xx >= 0) & (xx < w)
            vals = np.where(inside, src[np.clip(yy, 0, h - 1), np.clip(xx, 0, w - 1)], fill)
            out += wy * wx * vals
    return out


def affine(img: np.ndarray, degrees: float = 0.0, scale: float = 1.0, shift_x: float = 0.0,
           shift_y: float = 0.0, fill: float | None = None) -> np.ndarray:
    """Rotate counter-clockwise (as displayed) and scale about the centre, then shift.

    Output keeps the input size; uncovered pixels get ``fill`` (default: the
    border background level).
    """
    h, w = img.shape
    if fill is None:
        fill = background_level(img)
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    th = math.radians(degrees)
    c, s = math.cos(th), math.sin(th)
    yy, xx = np.mgrid[0:h, 0:w].astype(np.float64)
    # output offsets in an upward-y frame, undo shift, rotation and scale
    u = (xx - cx - shift_x) / scale
    v = (cy - yy + shift_y) / scale
    su = u * c + v * s
    sv = -u * s + v * c
    return _to_u8(_sample_bilinear(img, cx + su, cy - sv, fill))


def rotate(img: np.ndarray, degrees: float, fill: float | None = None) -> np.ndarray:
    if degrees == 0:
        return img.copy()
    return affine(img, degrees=degrees, fill=fill)


def resize(img: np.ndarray, height: int, width: int) -> np.ndarray:
    """Bilinear resize with pixel-centre alignment."""
    h, w = img.shape
    if (h, w) == (height, width):
        return img.copy()
    ys = (np.arange(height) + 0.5) * (h / height) - 0.5
    xs = (np.arange(width) + 0.5) * (w / width) - 0.5
    yy, xx = np.meshgrid(np.clip(ys, 0, h - 1), np.clip(xs, 0, w - 1), indexing="ij")
    return _to_u8(_sample_bilinear(img, xx, yy, 0.0))


def fit_to(img: np.ndarray, height: int, width: int, fill: float | None = None) -> np.ndarray:
    """Shrink (keeping aspect) if too large, then centre on a background canvas."""
    h, w = img.shape
    if fill is None:
        fill = background_level(img)
    if h > height or w > width:
        s = min(height / h, width / w)
        img = resize(img, max(1, int(round(h * s))), max(1, int(round(w * s))))
        h, w = img.shape
    out = np.full((height, width), _to_u8(np.array(fill)), dtype=np.uint8)
    top, left = (height - h) // 2, (width - w) // 2
    out[top:top + h, left:left + w] = img
    return out


def ink_weights(img: np.ndarray) -> np.ndarray:
    """Ink coverage in [0, 1]: 0 at the background level, 1 at the darkest level.

    Graded rather than thresholded so that sub-pixel positions survive.
    Images without real contrast have no ink.
    """
    bg = background_level(img)
    dark = float(np.percentile(img, 1))
    if bg - dark < 32:
        return np.zeros(img.shape)
    return np.clip((bg - img.astype(np.float64)) / (bg - dark), 0.0, 1.0)


_SUBBINS = 4
_SMOOTH = np.convolve(np.ones(_SUBBINS), np.ones(_SUBBINS)) / _SUBBINS ** 2


def projection_profile(img: np.ndarray, degrees: float) -> np.ndarray:
    """Ink profile along lines rising at ``degrees``, sampled at quarter-pixel steps.

    Each pixel is split linearly between its two nearest fine bins and the
    result is smoothed with a fixed one-pixel kernel, so the profile is equally
    blurred whether or not the projection lands on whole rows.
    """
    ink = ink_weights(img)
    ys, xs = np.nonzero(ink)
    if len(ys) == 0:
        return np.zeros(1)
    cx = (img.shape[1] - 1) / 2.0
    # a line rising to the right at this angle keeps y + (x - cx) tan(angle) constant
    proj = (ys + (xs - cx) * math.tan(math.radians(degrees))) * _SUBBINS
    proj -= proj.min()
    lo = np.floor(proj).astype(np.int64)
    frac = proj - lo
    wts = ink[ys, xs]
    n = int(lo.max()) + 2
    prof = np.bincount(lo, weights=wts * (1 - frac), minlength=n)
    prof += np.bincount(lo + 1, weights=wts * frac, minlength=n)
    return np.convolve(prof, _SMOOTH)


def skew_score(img: np.ndarray, degrees: float) -> float:
    """Energy (sum of squares) of the projection profile; larger means better aligned."""
    prof = projection_profile(img, degrees)
    return float((prof * prof).sum())


def _profile_scores(img: np.ndarray, angles: np.ndarray) -> np.ndarray:
    return np.array([skew_score(img, a) for a in angles])


def detect_skew(img: np.ndarray, max_angle: float = 15.0, step: float = 0.5) -> float:
    """Angle (degrees, counter-clockwise) maximizing the projection-profile energy.

    The sweep covers +-max_angle in ``step`` increments; the best grid angle is
    refined by a parabola through it and its two neighbours.
    """
    n = int(round(max_angle / step))
    angles = np.arange(-n, n + 1) * step
    scores = _profile_scores(img, angles)
    if scores.max() <= 0 or np.allclose(scores, scores[0]):
        return 0.0
    best = scores.max()
    # ties go to the smallest correction
    cands = np.flatnonzero(np.isclose(scores, best, rtol=1e-12, atol=0.0))
    i = int(cands[np.argmin(np.abs(angles[cands]))])
    if 0 < i < len(angles) - 1:
        left, mid, right = scores[i - 1], scores[i], scores[i + 1]
        curv = left - 2 * mid + right
        if curv < 0:
            return float(angles[i] + step * 0.5 * (left - right) / curv)
    return float(angles[i])


def deskew(img: np.ndarray, max_angle: float = 15.0, step: float = 0.5) -> tuple[np.ndarray, float]:
    """Detect the text skew and rotate it away; returns (image, detected angle)."""
    angle = detect_skew(img, max_angle, step)
    if abs(angle) < 1e-9:
        return img.copy(), 0.0
    return rotate(img, -angle), angle


@dataclass(frozen=True)
class AugmentPolicy:
    """Ranges for random augmentation; all zero means identity."""

    rotation: float = 5.0          # degrees, +-
    translation: float = 0.10      # fraction of each side, +-
    scale_min: float = 0.9
    scale_max: float = 1.1
    blur_prob: float = 0.2
    blur_sigma: float = 1.0
    crop: float = 0.05             # fraction trimmed from each side, up to

    @classmethod
    def identity(cls) -> AugmentPolicy:
        return cls(0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0)

    @property
    def is_identity(self) -> bool:
        return (self.rotation == 0 and self.translation == 0 and self.scale_min == 1
                and self.scale_max == 1 and self.blur_prob == 0 and self.crop == 0)


def augment(img: np.ndarray, rng: np.random.Generator, policy: AugmentPolicy = AugmentPolicy(),
            height: int | None = None, width: int | None = None) -> np.ndarray:
    """Random rotation/scale/translation, crop jitter and optional blur.

    The output is resized to (height, width) when given, else keeps the input size.
    """
    h, w = img.shape
    height, width = height or h, width or w
    if policy.is_identity:
        return img.copy() if (h, w) == (height, width) else resize(img, height, width)
    fill = background_level(img)
    deg = rng.uniform(-policy.rotation, policy.rotation)
    sc = rng.uniform(policy.scale_min, policy.scale_max)
    tx = rng.uniform(-policy.translation, policy.translation) * w
    ty = rng.uniform(-policy.translation, policy.translation) * h
    out = affine(img, deg, sc, tx, ty, fill=fill)
    if policy.crop > 0:
        t, b = (rng.uniform(0, policy.crop, size=2) * h).astype(int)
        l, r = (rng.uniform(0, policy.crop, size=2) * w).astype(int)
        out = out[t:h - b, l:w - r]
    if rng.random() < policy.blur_prob:
        out = gaussian_filter(out, policy.blur_sigma)
    if out.shape != (height, width):
        out = resize(out, height, width)
    return out


@dataclass(frozen=True)
class PreprocessConfig:
    median_radius: int = 0         # 0 disables
    gaussian_sigma: float = 0.0    # 0 disables
    deskew: bool = True
    contrast: bool = True


def preprocess(img: np.ndarray, cfg: PreprocessConfig, height: int, width: int) -> np.ndarray:
    """Denoise, deskew, stretch contrast and fit to the model geometry, in that order."""
    out = img
    if cfg.median_radius:
        out = median_filter(out, cfg.median_radius)
    if cfg.gaussian_sigma:
        out = gaussian_filter(out, cfg.gaussian_sigma)
    if cfg.deskew:
        out, _ = deskew(out)
    if cfg.contrast:
        out = contrast_stretch(out)
    return fit_to(out, height, width)
