"""RGB to YCbCr conversion (studio-swing BT.601) and cap-color calibration.

The chroma channels Cb/Cr are nearly independent of light intensity, which is
what makes a colored finger cap trackable under varying illumination. The
conversion is kept in full floating-point precision: quantizing to integers
would perturb the chroma threshold test downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .pointer_mapping import PixelPoint, round_half_up

if TYPE_CHECKING:
    from .segmentation import Frame

DEFAULT_THRESHOLD = 12.0

_CALIBRATION_WINDOWS = (1, 3, 5)


@dataclass(frozen=True)
class RgbTriple:
    """One pixel in RGB, channels real-valued in [0, 255]."""

    r: float
    g: float
    b: float

    def __post_init__(self):
        for name, v in (("r", self.r), ("g", self.g), ("b", self.b)):
            if not 0.0 <= v <= 255.0:
                raise ValueError(f"channel {name}={v} outside [0, 255]")


@dataclass(frozen=True)
class YcbcrTriple:
    """One pixel in YCbCr: y is luma, cb/cr the chroma differences."""

    y: float
    cb: float
    cr: float


def rgb_to_ycbcr(p: RgbTriple) -> YcbcrTriple:
    """Convert a pixel to studio-swing YCbCr.

        Y  =  0.257*R + 0.504*G + 0.098*B + 16
        Cb = -0.148*R - 0.291*G + 0.439*B + 128
        Cr =  0.439*R - 0.368*G - 0.071*B + 128

    The chroma rows are evaluated over channel differences (an algebraically
    identical grouping) so that equal channels cancel exactly: any gray pixel
    maps to Cb = Cr = 128.0 with no floating-point residue.
    """
    y = 0.257 * p.r + 0.504 * p.g + 0.098 * p.b + 16.0
    cb = -0.148 * (p.r - p.g) - 0.439 * (p.g - p.b) + 128.0
    cr = 0.439 * (p.r - p.g) + 0.071 * (p.g - p.b) + 128.0
    return YcbcrTriple(y, cb, cr)


def ycbcr_channels(pixels: np.ndarray) -> np.ndarray:
    """Vectorized rgb_to_ycbcr over an (..., 3) RGB array; returns float64.

    Uses the exact same operation order as the scalar form, so results are
    bit-identical to converting pixels one at a time.
    """
    rgb = np.asarray(pixels)
    # contiguous per-channel copies are faster than strided views
    r = rgb[..., 0].astype(np.float64)
    g = rgb[..., 1].astype(np.float64)
    b = rgb[..., 2].astype(np.float64)
    rg = r - g
    gb = g - b
    y = 0.257 * r + 0.504 * g + 0.098 * b + 16.0
    cb = -0.148 * rg - 0.439 * gb + 128.0
    cr = 0.439 * rg + 0.071 * gb + 128.0
    return np.stack([y, cb, cr], axis=-1)


@dataclass(frozen=True)
class ChromaSignature:
    """Calibrated cap color in YCbCr plus the chroma match threshold.

    Matching uses only cb/cr; y is kept because it correlates with the
    threshold a given color needs and is useful for diagnostics.
    """

    target: YcbcrTriple
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if self.threshold < 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")

    @property
    def y(self) -> float:
        return self.target.y

    @property
    def cb(self) -> float:
        return self.target.cb

    @property
    def cr(self) -> float:
        return self.target.cr

    def to_text(self) -> str:
        """Flat key/value record, one field per line, full precision."""
        return (
            f"y {self.y!r}\n"
            f"cb {self.cb!r}\n"
            f"cr {self.cr!r}\n"
            f"threshold {self.threshold!r}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "ChromaSignature":
        fields = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad signature record at line {lineno}: {line!r}")
            fields[parts[0]] = float(parts[1])
        missing = {"y", "cb", "cr", "threshold"} - fields.keys()
        if missing:
            raise ValueError(f"signature record missing keys: {sorted(missing)}")
        target = YcbcrTriple(fields["y"], fields["cb"], fields["cr"])
        return cls(target, fields["threshold"])


def calibrate_signature(
    frame: "Frame",
    at: PixelPoint,
    window: int = 3,
    threshold: float = DEFAULT_THRESHOLD,
) -> ChromaSignature:
    """Capture the cap color at a picked pixel.

    Every pixel in the window x window neighborhood (clipped to the frame) is
    converted to YCbCr and the per-channel median becomes the target. Window 1
    reproduces a bare single-pixel pick; the default 3x3 median rides out salt
    noise on the snapshot.
    """
    if window not in _CALIBRATION_WINDOWS:
        raise ValueError(f"window must be one of {_CALIBRATION_WINDOWS}, got {window}")
    cx = round_half_up(at.x)
    cy = round_half_up(at.y)
    if not (0 <= cx < frame.width and 0 <= cy < frame.height):
        raise ValueError(
            f"calibration point ({at.x}, {at.y}) outside frame "
            f"{frame.width}x{frame.height}"
        )
    half = window // 2
    x0, x1 = max(0, cx - half), min(frame.width, cx + half + 1)
    y0, y1 = max(0, cy - half), min(frame.height, cy + half + 1)
    samples = ycbcr_channels(frame.pixels[y0:y1, x0:x1]).reshape(-1, 3)
    target = YcbcrTriple(
        float(np.median(samples[:, 0])),
        float(np.median(samples[:, 1])),
        float(np.median(samples[:, 2])),
    )
    return ChromaSignature(target, threshold)
