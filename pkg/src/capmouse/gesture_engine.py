"""ROI counts to mouse events: classification, debouncing, drag episodes.

The per-frame ROI list is classified purely by how many blobs are visible
(one = pointing, two = click pair, three = drag, four = double click) and,
for pairs, by how far apart the two blobs sit. A small amount of state turns
those per-frame classes into a debounced event stream: a click class must
persist for `stable_frames` consecutive frames to fire, fires once, and only
re-arms after the hand leaves that class.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

from .config import EngineConfig
from .errors import SequencingError
from .pointer_mapping import (
    PixelPoint,
    ScreenPoint,
    mirror_x,
    mirror_y,
    round_half_up,
    scale_to_screen,
    smooth,
)
from .segmentation import Roi


class GestureTag(enum.Enum):
    """Frame class by visible blob count (pairs split by blob distance)."""

    NONE = "none"
    POINT = "point"
    PAIR_FAR = "pair_far"
    PAIR_NEAR = "pair_near"
    TRIPLE = "triple"
    QUAD = "quad"
    OVERFLOW = "overflow"


_PAIR_TAGS = (GestureTag.PAIR_FAR, GestureTag.PAIR_NEAR)

EVENT_KINDS = (
    "move",
    "left_click",
    "right_click",
    "double_click",
    "drag_start",
    "drag_move",
    "drag_end",
)


@dataclass(frozen=True)
class GestureClass:
    """Classified frame: the tag plus the mean blob position, if meaningful."""

    tag: GestureTag
    anchor: PixelPoint | None = None


@dataclass(frozen=True)
class MouseEvent:
    """One emitted event with integer screen coordinates."""

    kind: str
    x: int
    y: int
    frame: int

    def to_record(self) -> str:
        return json.dumps(
            {"kind": self.kind, "x": self.x, "y": self.y, "frame": self.frame},
            separators=(",", ":"),
        )

    @classmethod
    def from_record(cls, line: str) -> "MouseEvent":
        data = json.loads(line)
        kind = data["kind"]
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {kind!r}")
        return cls(kind, int(data["x"]), int(data["y"]), int(data["frame"]))


@dataclass
class EngineState:
    """Mutable per-session engine state; one owner processes frames in order."""

    cursor_x: float
    cursor_y: float
    has_anchor: bool = False
    candidate_tag: GestureTag = GestureTag.NONE
    candidate_count: int = 0
    pair_armed: bool = True
    quad_armed: bool = True
    dragging: bool = False
    last_frame: int = -1


def classify_frame(rois: list[Roi], cfg: EngineConfig) -> GestureClass:
    """Classify a frame from its ROI list.

    Two blobs split into a far pair (left click) or near pair (right click)
    by the Euclidean distance between centroids against cfg's click split,
    with the boundary itself counting as near. More than four blobs is an
    unrecognized overflow and carries no anchor.
    """
    n = len(rois)
    if n == 0:
        return GestureClass(GestureTag.NONE)
    if n > 4:
        return GestureClass(GestureTag.OVERFLOW)
    anchor = PixelPoint(
        sum(r.centroid[0] for r in rois) / n,
        sum(r.centroid[1] for r in rois) / n,
    )
    if n == 1:
        return GestureClass(GestureTag.POINT, anchor)
    if n == 2:
        (x0, y0), (x1, y1) = rois[0].centroid, rois[1].centroid
        dist = math.hypot(x1 - x0, y1 - y0)
        tag = GestureTag.PAIR_FAR if dist > cfg.resolved_click_split else GestureTag.PAIR_NEAR
        return GestureClass(tag, anchor)
    if n == 3:
        return GestureClass(GestureTag.TRIPLE, anchor)
    return GestureClass(GestureTag.QUAD, anchor)


class GestureEngine:
    """Folds classified frames into a debounced mouse-event stream.

    Transition rules:

    * POINT moves the cursor every frame (scale, mirror, smooth) and emits
      ``move``, or ``drag_move`` while a drag is active.
    * A click class (PAIR_FAR/PAIR_NEAR/QUAD) fires its click once after
      persisting ``stable_frames`` consecutive frames, at the current cursor,
      and re-arms only after the hand leaves that class group (both pair
      classes share one group, so far -> near without letting go cannot
      double-fire).
    * TRIPLE persisting ``stable_frames`` frames opens a drag episode at the
      current cursor; further TRIPLE frames emit ``drag_move`` following the
      anchor. The episode closes with ``drag_end`` once any other class
      (including no blobs at all) persists ``stable_frames`` frames. At most
      one click-kind event fires per frame, so a click class that ends a drag
      fires its own click no earlier than the following frame.
    * NONE and OVERFLOW frames emit nothing on their own.
    """

    def __init__(self, config: EngineConfig):
        self.config = config
        self.state = self._fresh_state()

    def _fresh_state(self) -> EngineState:
        return EngineState(
            cursor_x=self.config.screen_width / 2.0,
            cursor_y=self.config.screen_height / 2.0,
        )

    def reset(self) -> None:
        """Return to a fresh state with the cursor at screen center."""
        self.state = self._fresh_state()

    def _update_cursor(self, anchor: PixelPoint) -> None:
        cfg = self.config
        st = self.state
        sp = scale_to_screen(anchor, cfg.cam_size, cfg.screen_size)
        if cfg.mirror_x:
            sp = mirror_x(sp, cfg.screen_width)
        if cfg.mirror_y:
            sp = mirror_y(sp, cfg.screen_height)
        prev = ScreenPoint(st.cursor_x, st.cursor_y) if st.has_anchor else None
        sm = smooth(prev, sp, cfg.alpha)
        st.cursor_x = min(max(sm.x, 0.0), cfg.screen_width - 1.0)
        st.cursor_y = min(max(sm.y, 0.0), cfg.screen_height - 1.0)
        st.has_anchor = True

    def _event(self, kind: str, frame_index: int) -> MouseEvent:
        st = self.state
        return MouseEvent(kind, round_half_up(st.cursor_x), round_half_up(st.cursor_y), frame_index)

    def step(self, gesture: GestureClass, frame_index: int) -> list[MouseEvent]:
        """Advance one frame; returns the events it produced."""
        st = self.state
        cfg = self.config
        if frame_index <= st.last_frame:
            raise SequencingError(
                f"frame index {frame_index} not after previous {st.last_frame}"
            )
        st.last_frame = frame_index

        tag = gesture.tag
        if tag == st.candidate_tag:
            st.candidate_count += 1
        else:
            st.candidate_tag = tag
            st.candidate_count = 1
        if tag not in _PAIR_TAGS:
            st.pair_armed = True
        if tag is not GestureTag.QUAD:
            st.quad_armed = True
        stable = st.candidate_count >= cfg.stable_frames

        events: list[MouseEvent] = []

        if tag is GestureTag.POINT or (tag is GestureTag.TRIPLE and st.dragging):
            assert gesture.anchor is not None
            self._update_cursor(gesture.anchor)

        if st.dragging:
            if tag is GestureTag.TRIPLE:
                events.append(self._event("drag_move", frame_index))
            elif tag is GestureTag.POINT:
                if stable:
                    st.dragging = False
                    events.append(self._event("drag_end", frame_index))
                    events.append(self._event("move", frame_index))
                else:
                    events.append(self._event("drag_move", frame_index))
            elif stable:
                st.dragging = False
                events.append(self._event("drag_end", frame_index))
            return events

        if tag is GestureTag.POINT:
            events.append(self._event("move", frame_index))
        elif tag is GestureTag.TRIPLE:
            if stable:
                st.dragging = True
                events.append(self._event("drag_start", frame_index))
        elif tag in _PAIR_TAGS:
            if stable and st.pair_armed:
                st.pair_armed = False
                kind = "left_click" if tag is GestureTag.PAIR_FAR else "right_click"
                events.append(self._event(kind, frame_index))
        elif tag is GestureTag.QUAD:
            if stable and st.quad_armed:
                st.quad_armed = False
                events.append(self._event("double_click", frame_index))
        return events


def run_sequence(roi_frames: list[list[Roi]], cfg: EngineConfig) -> list[MouseEvent]:
    """Fold a whole ROI-list sequence through a fresh engine."""
    engine = GestureEngine(cfg)
    events: list[MouseEvent] = []
    for index, rois in enumerate(roi_frames):
        events.extend(engine.step(classify_frame(rois, cfg), index))
    return events
