"""The full per-frame pipeline glued into one session object.

mask -> components -> ROIs -> classify -> engine step, identical no matter
which transport (CLI directory run, raw stream, or the streaming service)
feeds it frames.
"""

from __future__ import annotations

from .color_model import ChromaSignature
from .config import EngineConfig
from .gesture_engine import GestureClass, GestureEngine, MouseEvent, classify_frame
from .segmentation import (
    Frame,
    Roi,
    chroma_match_mask,
    connected_components,
    extract_rois,
)


class GestureSession:
    """One calibrated engine processing an ordered frame stream."""

    def __init__(self, config: EngineConfig, signature: ChromaSignature):
        self.config = config
        self.signature = signature
        self.engine = GestureEngine(config)

    def observe(self, frame: Frame) -> tuple[GestureClass, list[Roi]]:
        """Run the stateless part of the pipeline on one frame."""
        if (frame.width, frame.height) != self.config.cam_size:
            raise ValueError(
                f"frame dims {frame.width}x{frame.height} do not match "
                f"configured camera dims {self.config.cam_width}x{self.config.cam_height}"
            )
        mask = chroma_match_mask(frame, self.signature)
        labeling = connected_components(mask, self.config.connectivity)
        rois = extract_rois(labeling, self.config.resolved_min_blob_area)
        return classify_frame(rois, self.config), rois

    def process_frame(self, frame: Frame, frame_index: int) -> list[MouseEvent]:
        """Observe one frame and advance the gesture engine."""
        gesture, _ = self.observe(frame)
        return self.engine.step(gesture, frame_index)

    def reset(self) -> None:
        self.engine.reset()
