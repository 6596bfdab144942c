"""Chroma matching, connected-component labeling, and ROI extraction.

A frame is reduced to the set of pixels whose chroma falls inside the
calibrated signature's box, those pixels are grouped into connected blobs,
and each sufficiently large blob is summarized by area, bounding box, and
centroid. The centroid is the real-valued mean of member coordinates: a
noise-stable version of picking one representative pixel per blob.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .color_model import ChromaSignature, RgbTriple, ycbcr_channels

_STRUCTURE_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_STRUCTURE_8 = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class Frame:
    """One camera frame: (height, width, 3) uint8 RGB, origin top-left."""

    pixels: np.ndarray

    def __post_init__(self):
        p = self.pixels
        if p.ndim != 3 or p.shape[2] != 3:
            raise ValueError(f"frame pixels must have shape (h, w, 3), got {p.shape}")
        if p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError(f"frame dimensions must be positive, got {p.shape}")
        if p.dtype != np.uint8:
            raise ValueError(f"frame pixels must be uint8, got {p.dtype}")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def pixel_at(self, x: int, y: int) -> RgbTriple:
        r, g, b = self.pixels[y, x]
        return RgbTriple(float(r), float(g), float(b))

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "Frame":
        return cls(np.ascontiguousarray(pixels, dtype=np.uint8))


@dataclass(frozen=True)
class BitMask:
    """Boolean per-pixel chroma-match mask, same dimensions as its frame."""

    bits: np.ndarray

    def __post_init__(self):
        if self.bits.ndim != 2 or self.bits.dtype != np.bool_:
            raise ValueError("mask bits must be a 2-d boolean array")

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    def count(self) -> int:
        return int(self.bits.sum())


@dataclass(frozen=True)
class ComponentLabeling:
    """Dense component labels per pixel: 0 = background, 1..count = blobs.

    Labels are assigned in first-encounter order scanning rows top to bottom.
    """

    labels: np.ndarray
    count: int


@dataclass(frozen=True)
class Roi:
    """One detected blob: pixel count, bounding box, and mean coordinate.

    bbox is (min_x, min_y, max_x, max_y) inclusive; centroid is (x, y) in
    webcam pixel coordinates and always lies inside the bbox.
    """

    label: int
    area: int
    bbox: tuple[int, int, int, int]
    centroid: tuple[float, float]


def chroma_match_mask(frame: Frame, sig: ChromaSignature) -> BitMask:
    """Set a bit wherever the pixel chroma lands inside the signature's box.

    A pixel matches iff |Cb' - cb| <= threshold and |Cr' - cr| <= threshold
    with inclusive boundaries, so a threshold of 0 still matches the exact
    calibrated color. Luma is deliberately ignored.
    """
    ycc = ycbcr_channels(frame.pixels)
    bits = (np.abs(ycc[..., 1] - sig.cb) <= sig.threshold) & (
        np.abs(ycc[..., 2] - sig.cr) <= sig.threshold
    )
    return BitMask(bits)


def connected_components(mask: BitMask, connectivity: int = 8) -> ComponentLabeling:
    """Partition set bits into maximal connected components.

    Connectivity 8 treats diagonal neighbors as adjacent (the default; round
    cap blobs stay whole), 4 only the axis neighbors. Output labels are dense
    integers from 1 in row-major first-encounter order regardless of how the
    underlying labeling pass numbers them.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    structure = _STRUCTURE_8 if connectivity == 8 else _STRUCTURE_4
    raw, n = ndimage.label(mask.bits, structure=structure)
    if n == 0:
        return ComponentLabeling(raw.astype(np.int32), 0)
    values, first = np.unique(raw.ravel(), return_index=True)
    keep = values != 0
    values, first = values[keep], first[keep]
    order = np.argsort(first, kind="stable")
    lut = np.zeros(n + 1, dtype=np.int32)
    lut[values[order]] = np.arange(1, len(values) + 1, dtype=np.int32)
    return ComponentLabeling(lut[raw], int(n))


def extract_rois(labeling: ComponentLabeling, min_blob_area: int) -> list[Roi]:
    """Summarize each component with area >= min_blob_area as a Roi.

    Returned list is sorted by area descending, ties broken by label.
    """
    if min_blob_area < 0:
        raise ValueError(f"min_blob_area must be >= 0, got {min_blob_area}")
    n = labeling.count
    if n == 0:
        return []
    labels = labeling.labels
    h, w = labels.shape
    flat = labels.ravel()
    counts = np.bincount(flat, minlength=n + 1)
    xgrid = np.tile(np.arange(w, dtype=np.float64), h)
    ygrid = np.repeat(np.arange(h, dtype=np.float64), w)
    sum_x = np.bincount(flat, weights=xgrid, minlength=n + 1)
    sum_y = np.bincount(flat, weights=ygrid, minlength=n + 1)
    slices = ndimage.find_objects(labels, max_label=n)
    rois = []
    for label in range(1, n + 1):
        area = int(counts[label])
        if area < min_blob_area:
            continue
        sl = slices[label - 1]
        bbox = (sl[1].start, sl[0].start, sl[1].stop - 1, sl[0].stop - 1)
        centroid = (float(sum_x[label]) / area, float(sum_y[label]) / area)
        rois.append(Roi(label, area, bbox, centroid))
    rois.sort(key=lambda r: (-r.area, r.label))
    return rois


def mask_to_pbm(mask: BitMask) -> bytes:
    """Encode a mask as binary PBM (P4) for debugging, set bit = black."""
    header = f"P4\n{mask.width} {mask.height}\n".encode("ascii")
    packed = np.packbits(mask.bits, axis=1)
    return header + packed.tobytes()


def roi_record(roi: Roi) -> str:
    """One-line text record: label, area, bbox, centroid."""
    x0, y0, x1, y1 = roi.bbox
    cx, cy = roi.centroid
    return f"label={roi.label} area={roi.area} bbox={x0},{y0},{x1},{y1} centroid={cx!r},{cy!r}"


def rois_to_text(rois: list[Roi]) -> str:
    return "".join(roi_record(r) + "\n" for r in rois)
