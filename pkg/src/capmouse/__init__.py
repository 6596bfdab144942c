"""Color-cap gesture tracking: camera frames in, virtual mouse events out.

The pipeline converts each frame to YCbCr, keeps the pixels whose chroma
matches a calibrated cap color, groups them into blobs, and maps the blob
count and positions to cursor moves, clicks, and drag episodes.
"""

__version__ = "0.1.0"

from .color_model import (
    ChromaSignature,
    RgbTriple,
    YcbcrTriple,
    calibrate_signature,
    rgb_to_ycbcr,
    ycbcr_channels,
)
from .config import EngineConfig
from .errors import (
    CapmouseError,
    ConfigError,
    PpmParseError,
    ProtocolError,
    SequencingError,
    StreamError,
)
from .frame_io import (
    BlobSpec,
    ScenarioFrame,
    ScenarioScript,
    encode_frame_record,
    frame_to_ppm,
    load_frame_ppm,
    parse_scenario,
    read_raw_stream,
    synth_frame,
    synth_sequence,
)
from .gesture_engine import (
    GestureClass,
    GestureEngine,
    GestureTag,
    MouseEvent,
    classify_frame,
    run_sequence,
)
from .pipeline import GestureSession
from .pointer_mapping import (
    PixelPoint,
    ScreenPoint,
    mirror_x,
    mirror_y,
    scale_to_screen,
    smooth,
)
from .segmentation import (
    BitMask,
    ComponentLabeling,
    Frame,
    Roi,
    chroma_match_mask,
    connected_components,
    extract_rois,
    mask_to_pbm,
)

__all__ = [
    "BitMask",
    "BlobSpec",
    "CapmouseError",
    "ChromaSignature",
    "ComponentLabeling",
    "ConfigError",
    "EngineConfig",
    "Frame",
    "GestureClass",
    "GestureEngine",
    "GestureSession",
    "GestureTag",
    "MouseEvent",
    "PixelPoint",
    "PpmParseError",
    "ProtocolError",
    "RgbTriple",
    "Roi",
    "ScenarioFrame",
    "ScenarioScript",
    "ScreenPoint",
    "SequencingError",
    "StreamError",
    "YcbcrTriple",
    "calibrate_signature",
    "chroma_match_mask",
    "classify_frame",
    "connected_components",
    "encode_frame_record",
    "extract_rois",
    "frame_to_ppm",
    "load_frame_ppm",
    "mask_to_pbm",
    "mirror_x",
    "mirror_y",
    "parse_scenario",
    "read_raw_stream",
    "rgb_to_ycbcr",
    "run_sequence",
    "scale_to_screen",
    "smooth",
    "synth_frame",
    "synth_sequence",
    "ycbcr_channels",
]
