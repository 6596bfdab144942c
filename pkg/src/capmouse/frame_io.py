"""Frame ingestion (PPM files, raw GFRM streams) and synthetic scenarios.

The synthetic side paints colored disks on a mid-gray background and can
perturb every channel with Gaussian noise, which stands in for the image
degradation a real camera shows as the hand moves away from it (smaller,
noisier blobs). Scenario scripts pair each synthetic frame with the gesture
class it should classify as, so recognition rates can be scored offline.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterator

import numpy as np

from .errors import PpmParseError, StreamError
from .gesture_engine import GestureTag
from .pointer_mapping import PixelPoint
from .color_model import RgbTriple
from .segmentation import Frame

GFRM_MAGIC = b"GFRM"
_GFRM_HEADER = struct.Struct("<IHH")  # frame index, width, height

BACKGROUND_GRAY = (128, 128, 128)


# ---------------------------------------------------------------------------
# PPM (binary P6, maxval 255)
# ---------------------------------------------------------------------------

def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Read one whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    if pos >= n:
        raise PpmParseError("unexpected end of header", pos)
    start = pos
    while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, what: str) -> tuple[int, int]:
    token, end = _next_token(data, pos)
    try:
        return int(token), end
    except ValueError:
        raise PpmParseError(f"bad {what} {token!r}", pos) from None


def load_frame_ppm(data: bytes) -> Frame:
    """Parse a binary PPM (P6, maxval 255) into a Frame."""
    magic, pos = _next_token(data, 0)
    if magic != b"P6":
        if magic == b"P3":
            raise PpmParseError("ASCII PPM (P3) unsupported, need binary P6", 0)
        raise PpmParseError(f"bad magic {magic!r}, need P6", 0)
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width <= 0 or height <= 0:
        raise PpmParseError(f"bad dimensions {width}x{height}", pos)
    if maxval != 255:
        raise PpmParseError(f"maxval must be 255, got {maxval}", pos)
    pos += 1  # exactly one whitespace byte separates the header from pixels
    expected = 3 * width * height
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise PpmParseError(
            f"truncated pixel payload, need {expected} bytes, have {len(payload)}",
            len(data),
        )
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3).copy()
    return Frame(pixels)


def frame_to_ppm(frame: Frame) -> bytes:
    """Encode a frame as canonical binary PPM."""
    header = f"P6\n{frame.width} {frame.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(frame.pixels).tobytes()


# ---------------------------------------------------------------------------
# Raw GFRM stream
# ---------------------------------------------------------------------------

def encode_frame_record(index: int, frame: Frame) -> bytes:
    """Binary record: b"GFRM", u32le index, u16le width, u16le height, RGB."""
    header = GFRM_MAGIC + _GFRM_HEADER.pack(index, frame.width, frame.height)
    return header + np.ascontiguousarray(frame.pixels).tobytes()


def read_frame_record(source: BinaryIO, cam: tuple[int, int] | None = None):
    """Read one GFRM record; returns (index, Frame) or None at clean EOF."""
    magic = source.read(len(GFRM_MAGIC))
    if magic == b"":
        return None
    if magic != GFRM_MAGIC:
        raise StreamError(f"bad magic at record boundary: {magic!r}")
    header = source.read(_GFRM_HEADER.size)
    if len(header) < _GFRM_HEADER.size:
        raise StreamError("truncated record header")
    index, width, height = _GFRM_HEADER.unpack(header)
    if cam is not None and (width, height) != cam:
        raise StreamError(
            f"frame dims {width}x{height} do not match session dims {cam[0]}x{cam[1]}"
        )
    expected = 3 * width * height
    payload = source.read(expected)
    if len(payload) < expected:
        raise StreamError(f"truncated frame payload for frame {index}")
    pixels = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3).copy()
    return index, Frame(pixels)


def read_raw_stream(
    source: BinaryIO, cam: tuple[int, int]
) -> Iterator[tuple[int, Frame]]:
    """Yield (index, Frame) records until end-of-stream."""
    while True:
        record = read_frame_record(source, cam)
        if record is None:
            return
        yield record


# ---------------------------------------------------------------------------
# Synthetic frames and scenario scripts
# ---------------------------------------------------------------------------

GREEN_CAP = RgbTriple(0.0, 255.0, 0.0)


@dataclass(frozen=True)
class BlobSpec:
    """One synthetic cap: a filled disk of a given color."""

    center: PixelPoint
    radius: float
    color: RgbTriple = GREEN_CAP

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"blob radius must be >= 1, got {self.radius}")


@dataclass(frozen=True)
class ScenarioFrame:
    blobs: tuple[BlobSpec, ...]
    expected: GestureTag


@dataclass(frozen=True)
class ScenarioScript:
    """A frame-by-frame blob layout with the gesture class each should yield."""

    cam_width: int
    cam_height: int
    noise_sigma: float
    frames: tuple[ScenarioFrame, ...]

    def __post_init__(self):
        if len(self.frames) < 1:
            raise ValueError("scenario needs at least one frame")
        if self.noise_sigma < 0:
            raise ValueError(f"noise sigma must be >= 0, got {self.noise_sigma}")

    @property
    def cam_size(self) -> tuple[int, int]:
        return (self.cam_width, self.cam_height)


def synth_frame(
    blobs: list[BlobSpec] | tuple[BlobSpec, ...],
    cam: tuple[int, int],
    noise_sigma: float = 0.0,
    seed=0,
) -> Frame:
    """Paint disks over a mid-gray background, then add clamped channel noise.

    The (128, 128, 128) background sits at neutral chroma, as far as possible
    from any saturated cap color, which keeps noise sweeps interpretable.
    Later blobs overdraw earlier ones. Deterministic for a fixed seed.
    """
    width, height = cam
    img = np.full((height, width, 3), 128.0, dtype=np.float64)
    for blob in blobs:
        cx, cy, r = blob.center.x, blob.center.y, blob.radius
        x0 = max(0, int(np.floor(cx - r)))
        x1 = min(width, int(np.ceil(cx + r)) + 1)
        y0 = max(0, int(np.floor(cy - r)))
        y1 = min(height, int(np.ceil(cy + r)) + 1)
        if x0 >= x1 or y0 >= y1:
            continue
        ys, xs = np.mgrid[y0:y1, x0:x1]
        inside = (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
        img[y0:y1, x0:x1][inside] = (blob.color.r, blob.color.g, blob.color.b)
    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        img = img + rng.normal(0.0, noise_sigma, size=img.shape)
    return Frame(np.rint(np.clip(img, 0, 255)).astype(np.uint8))


def synth_sequence(
    script: ScenarioScript, seed: int = 0
) -> tuple[list[Frame], list[GestureTag]]:
    """Materialize every scenario frame plus its ground-truth class.

    Each frame gets an independent sub-seed, so frames could be generated in
    parallel without changing the output.
    """
    frames = [
        synth_frame(sf.blobs, script.cam_size, script.noise_sigma, seed=[seed, i])
        for i, sf in enumerate(script.frames)
    ]
    return frames, [sf.expected for sf in script.frames]


# ---------------------------------------------------------------------------
# Scenario script text format
# ---------------------------------------------------------------------------
#
#   # comments and blank lines are ignored
#   cam 320 240
#   noise 2.0
#   frame point
#   blob 100 80 10
#   frame pair_far
#   blob 60 80 10 0 255 0
#   blob 260 80 10 255 0 0
#
# `cam W H` must appear before the first frame; `noise SIGMA` is optional
# (default 0). Each `frame EXPECT` starts a frame whose following `blob
# CX CY R [R G B]` lines define its disks (color defaults to green).

def parse_scenario(text: str) -> ScenarioScript:
    cam: tuple[int, int] | None = None
    noise = 0.0
    frames: list[tuple[list[BlobSpec], GestureTag]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key == "cam":
                cam = (int(parts[1]), int(parts[2]))
            elif key == "noise":
                noise = float(parts[1])
            elif key == "frame":
                frames.append(([], GestureTag(parts[1])))
            elif key == "blob":
                if not frames:
                    raise ValueError("blob before any frame")
                cx, cy, r = float(parts[1]), float(parts[2]), float(parts[3])
                if len(parts) >= 7:
                    color = RgbTriple(float(parts[4]), float(parts[5]), float(parts[6]))
                else:
                    color = GREEN_CAP
                frames[-1][0].append(BlobSpec(PixelPoint(cx, cy), r, color))
            else:
                raise ValueError(f"unknown directive {key!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"scenario line {lineno}: {exc}") from None
    if cam is None:
        raise ValueError("scenario is missing a 'cam W H' line")
    if not frames:
        raise ValueError("scenario has no frames")
    return ScenarioScript(
        cam[0],
        cam[1],
        noise,
        tuple(ScenarioFrame(tuple(blobs), expect) for blobs, expect in frames),
    )


def format_scenario(script: ScenarioScript) -> str:
    lines = [f"cam {script.cam_width} {script.cam_height}"]
    if script.noise_sigma:
        lines.append(f"noise {script.noise_sigma!r}")
    for sf in script.frames:
        lines.append(f"frame {sf.expected.value}")
        for blob in sf.blobs:
            c = blob.color
            lines.append(
                f"blob {blob.center.x!r} {blob.center.y!r} {blob.radius!r} "
                f"{c.r:g} {c.g:g} {c.b:g}"
            )
    return "\n".join(lines) + "\n"
