"""Engine configuration shared by the CLI, the streaming service, and tests."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .errors import ConfigError
from .pointer_mapping import round_half_up

# Blob-area floor is calibrated at 320x240 and scaled with frame area.
_REFERENCE_MIN_AREA = 30
_REFERENCE_PIXELS = 320 * 240


@dataclass
class EngineConfig:
    """All knobs of the frame-to-events pipeline.

    min_blob_area and click_split default to None, meaning "derive from the
    camera dimensions": the area floor scales with frame area and the
    two-blob click split is a quarter of the frame width.
    """

    cam_width: int = 320
    cam_height: int = 240
    screen_width: int = 1600
    screen_height: int = 900
    chroma_threshold: float = 12.0
    threshold_y_gain: float = 0.0
    min_blob_area: int | None = None
    connectivity: int = 8
    click_split: float | None = None
    stable_frames: int = 3
    alpha: float = 1.0
    mirror_x: bool = True
    mirror_y: bool = False

    def __post_init__(self):
        for name in ("cam_width", "cam_height", "screen_width", "screen_height"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.chroma_threshold < 0:
            raise ConfigError(f"chroma_threshold must be >= 0, got {self.chroma_threshold}")
        if self.min_blob_area is not None and self.min_blob_area < 0:
            raise ConfigError(f"min_blob_area must be >= 0, got {self.min_blob_area}")
        if self.connectivity not in (4, 8):
            raise ConfigError(f"connectivity must be 4 or 8, got {self.connectivity}")
        if self.click_split is not None and self.click_split <= 0:
            raise ConfigError(f"click_split must be positive, got {self.click_split}")
        if self.stable_frames < 1:
            raise ConfigError(f"stable_frames must be >= 1, got {self.stable_frames}")
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in (0, 1], got {self.alpha}")

    @property
    def cam_size(self) -> tuple[int, int]:
        return (self.cam_width, self.cam_height)

    @property
    def screen_size(self) -> tuple[int, int]:
        return (self.screen_width, self.screen_height)

    @property
    def resolved_min_blob_area(self) -> int:
        if self.min_blob_area is not None:
            return self.min_blob_area
        scaled = _REFERENCE_MIN_AREA * (self.cam_width * self.cam_height) / _REFERENCE_PIXELS
        return max(1, round_half_up(scaled))

    @property
    def resolved_click_split(self) -> float:
        if self.click_split is not None:
            return self.click_split
        return 0.25 * self.cam_width

    def effective_threshold(self, target_y: float) -> float:
        """Chroma threshold for a cap of the given luma.

        Brighter colors tolerate a wider chroma box; the optional linear
        correction threshold + gain*(y - 128) models that. The gain defaults
        to 0 (correction disabled).
        """
        return max(0.0, self.chroma_threshold + self.threshold_y_gain * (target_y - 128.0))

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict, base: "EngineConfig | None" = None) -> "EngineConfig":
        """Build a config from a mapping, overriding `base` where given."""
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if base is None:
            return cls(**data)
        return replace(base, **data)
