"""Webcam-space to screen-space mapping: scaling, X mirroring, smoothing.

All functions are pure and operate on real-valued coordinates; rounding to
integer pixels happens only when events are serialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class PixelPoint:
    """A point in webcam pixel coordinates (origin top-left, x = column)."""

    x: float
    y: float


@dataclass(frozen=True)
class ScreenPoint:
    """A point in screen pixel coordinates."""

    x: float
    y: float


def round_half_up(v: float) -> int:
    """Round to the nearest integer with ties going up (0.5 -> 1)."""
    return int(math.floor(v + 0.5))


def scale_to_screen(
    p: PixelPoint,
    cam: tuple[int, int],
    screen: tuple[int, int],
) -> ScreenPoint:
    """Map a webcam point onto the screen by per-axis resolution ratio.

    The ratios stay real-valued; nothing is truncated.
    """
    cam_w, cam_h = cam
    screen_w, screen_h = screen
    if cam_w <= 0 or cam_h <= 0:
        raise ConfigError(f"camera dimensions must be positive, got {cam_w}x{cam_h}")
    return ScreenPoint((screen_w / cam_w) * p.x, (screen_h / cam_h) * p.y)


def mirror_x(p: ScreenPoint, screen_w: int) -> ScreenPoint:
    """Reflect the X coordinate: x -> (screen_w - 1) - x, leaving y untouched.

    Camera motion appears reversed to the user, so the horizontal axis is
    flipped once the point is in screen space. Using screen_w - 1 keeps both
    extreme columns inside the screen.
    """
    return ScreenPoint((screen_w - 1) - p.x, p.y)


def mirror_y(p: ScreenPoint, screen_h: int) -> ScreenPoint:
    """Reflect the Y coordinate, for camera mountings that flip vertically."""
    return ScreenPoint(p.x, (screen_h - 1) - p.y)


def smooth(prev: ScreenPoint | None, cur: ScreenPoint, alpha: float) -> ScreenPoint:
    """Exponential smoothing: alpha*cur + (1-alpha)*prev per axis.

    With no previous point the current one passes through unchanged;
    alpha = 1 disables smoothing entirely.
    """
    if not 0.0 < alpha <= 1.0:
        raise ConfigError(f"smoothing alpha must be in (0, 1], got {alpha}")
    if prev is None:
        return cur
    return ScreenPoint(
        alpha * cur.x + (1.0 - alpha) * prev.x,
        alpha * cur.y + (1.0 - alpha) * prev.y,
    )
