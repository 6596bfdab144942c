"""Hand-traced gesture scripts and their golden event streams.

Each script lists per-frame ROI centroids (webcam coordinates, 320x240) and
the exact event stream the engine must produce under the golden config:
screen 1600x900, stable_frames=3, click_split=80, alpha=1, mirror_x on.

Coordinate bookkeeping used in every trace below:
    screen_x = 1599 - 5 * anchor_x      (scale by 1600/320, then mirror)
    screen_y = 3.75 * anchor_y
Anchors are chosen so both map to integers. The cursor starts at screen
center (800, 450) and only moves on point frames or during a drag.
"""

from capmouse.config import EngineConfig
from capmouse.segmentation import Roi

GOLDEN_CONFIG = dict(
    cam_width=320,
    cam_height=240,
    screen_width=1600,
    screen_height=900,
    stable_frames=3,
    alpha=1.0,
    mirror_x=True,
    mirror_y=False,
)


def golden_config() -> EngineConfig:
    return EngineConfig(**GOLDEN_CONFIG)


def make_roi(label: int, cx: float, cy: float, area: int = 100) -> Roi:
    half = 5
    return Roi(
        label=label,
        area=area,
        bbox=(int(cx) - half, int(cy) - half, int(cx) + half, int(cy) + half),
        centroid=(float(cx), float(cy)),
    )


def rois_at(*centroids) -> list:
    return [make_roi(i + 1, cx, cy) for i, (cx, cy) in enumerate(centroids)]


# distances: FAR pair is 200 px apart (> 80), NEAR pair 30 px (<= 80)
_FAR = [(60, 80), (260, 80)]
_NEAR = [(150, 80), (180, 80)]
_TRIPLE_AT = lambda x: [(x - 8, 80), (x, 80), (x + 8, 80)]  # noqa: E731  mean = (x, 80)
_QUAD = [(60, 40), (260, 40), (60, 120), (260, 120)]
_FIVE = [(30, 40), (90, 40), (150, 40), (210, 40), (270, 40)]


GOLDEN_SCRIPTS = [
    # ------------------------------------------------------------------
    # 1. plain cursor movement: every point frame emits a move
    #    f0 anchor (100,80) -> (1099,300); f1 (110,80) -> (1049,300);
    #    f2 (120,160) -> (999,600)
    (
        "move_basic",
        [
            rois_at((100, 80)),
            rois_at((110, 80)),
            rois_at((120, 160)),
        ],
        [
            ("move", 1099, 300, 0),
            ("move", 1049, 300, 1),
            ("move", 999, 600, 2),
        ],
    ),
    # ------------------------------------------------------------------
    # 2. left click: far pair held 3 frames fires once at the cursor the
    #    preceding point frame left at (1099,300)
    (
        "left_click",
        [
            rois_at((100, 80)),
            rois_at(*_FAR),
            rois_at(*_FAR),
            rois_at(*_FAR),
            [],
        ],
        [
            ("move", 1099, 300, 0),
            ("left_click", 1099, 300, 3),
        ],
    ),
    # ------------------------------------------------------------------
    # 3. right click: near pair (30 px <= 80) held 3 frames
    (
        "right_click",
        [
            rois_at((100, 80)),
            rois_at(*_NEAR),
            rois_at(*_NEAR),
            rois_at(*_NEAR),
        ],
        [
            ("move", 1099, 300, 0),
            ("right_click", 1099, 300, 3),
        ],
    ),
    # ------------------------------------------------------------------
    # 4. debounce: a pair never held 3 consecutive frames fires nothing
    (
        "debounce_too_short",
        [
            rois_at(*_FAR),
            rois_at(*_FAR),
            [],
            [],
            rois_at(*_FAR),
            rois_at(*_FAR),
        ],
        [],
    ),
    # ------------------------------------------------------------------
    # 5. re-arming needs to leave the two-blob group entirely: far fires at
    #    f2; drifting to near without letting go must NOT fire right_click
    #    (f5..f7); after the hand opens (f8) a fresh near run fires at f11.
    #    no point frame ever ran, so clicks land at the center (800,450).
    (
        "pair_rearm_after_leaving_group",
        [
            rois_at(*_FAR),   # f0 count 1
            rois_at(*_FAR),   # f1 count 2
            rois_at(*_FAR),   # f2 count 3 -> left_click, group disarmed
            rois_at(*_FAR),   # f3 no refire
            rois_at(*_FAR),   # f4
            rois_at(*_NEAR),  # f5 new run, still disarmed
            rois_at(*_NEAR),  # f6
            rois_at(*_NEAR),  # f7 stable but disarmed -> nothing
            [],               # f8 leaves the group -> re-arm
            rois_at(*_NEAR),  # f9 count 1
            rois_at(*_NEAR),  # f10 count 2
            rois_at(*_NEAR),  # f11 count 3 -> right_click
        ],
        [
            ("left_click", 800, 450, 2),
            ("right_click", 800, 450, 11),
        ],
    ),
    # ------------------------------------------------------------------
    # 6. double click: four blobs held 3 frames fire one double_click
    (
        "double_click",
        [
            rois_at(*_QUAD),
            rois_at(*_QUAD),
            rois_at(*_QUAD),
            rois_at(*_QUAD),
        ],
        [
            ("double_click", 800, 450, 2),
        ],
    ),
    # ------------------------------------------------------------------
    # 7. full drag episode: point parks the cursor at (1099,300); triple
    #    becomes stable at f3 (drag_start at the parked cursor); the triple
    #    anchor then pulls the cursor (drag_move); point frames keep pulling
    #    while the button is held (drag_move) until point is stable at f8,
    #    which closes the drag and resumes plain moves on the same frame.
    #    anchors: triple mean (108,80)->1059, (112,80)->1039; then point
    #    (116,80)->1019, (120,80)->999, (124,80)->979.
    (
        "drag_episode",
        [
            rois_at((100, 80)),        # f0 move (1099,300)
            rois_at(*_TRIPLE_AT(104)), # f1 triple count 1
            rois_at(*_TRIPLE_AT(104)), # f2 count 2
            rois_at(*_TRIPLE_AT(104)), # f3 count 3 -> drag_start
            rois_at(*_TRIPLE_AT(108)), # f4 drag_move (1059,300)
            rois_at(*_TRIPLE_AT(112)), # f5 drag_move (1039,300)
            rois_at((116, 80)),        # f6 point count 1 -> drag_move (1019,300)
            rois_at((120, 80)),        # f7 point count 2 -> drag_move (999,300)
            rois_at((124, 80)),        # f8 point count 3 -> drag_end + move (979,300)
            rois_at((124, 80)),        # f9 plain move again
        ],
        [
            ("move", 1099, 300, 0),
            ("drag_start", 1099, 300, 3),
            ("drag_move", 1059, 300, 4),
            ("drag_move", 1039, 300, 5),
            ("drag_move", 1019, 300, 6),
            ("drag_move", 999, 300, 7),
            ("drag_end", 979, 300, 8),
            ("move", 979, 300, 8),
            ("move", 979, 300, 9),
        ],
    ),
    # ------------------------------------------------------------------
    # 8. drag released by losing the blobs: empty frames stable for 3 end it
    (
        "drag_release_by_none",
        [
            rois_at(*_TRIPLE_AT(100)),  # f0
            rois_at(*_TRIPLE_AT(100)),  # f1
            rois_at(*_TRIPLE_AT(100)),  # f2 -> drag_start at center
            rois_at(*_TRIPLE_AT(100)),  # f3 drag_move (1099,300)
            [],                         # f4
            [],                         # f5
            [],                         # f6 -> drag_end
        ],
        [
            ("drag_start", 800, 450, 2),
            ("drag_move", 1099, 300, 3),
            ("drag_end", 1099, 300, 6),
        ],
    ),
    # ------------------------------------------------------------------
    # 9. overflow frames (5 blobs) are ignored and break nothing
    (
        "overflow_ignored",
        [
            rois_at((100, 80)),
            rois_at(*_FIVE),
            rois_at(*_FIVE),
            rois_at(*_FIVE),
            rois_at(*_FIVE),
            rois_at((120, 80)),
        ],
        [
            ("move", 1099, 300, 0),
            ("move", 999, 300, 5),
        ],
    ),
    # ------------------------------------------------------------------
    # 10. a far pair that interrupts a drag first closes the episode (one
    #     click-kind per frame), then fires its own click on the next frame.
    (
        "drag_interrupted_by_click",
        [
            rois_at(*_TRIPLE_AT(100)),  # f0
            rois_at(*_TRIPLE_AT(100)),  # f1
            rois_at(*_TRIPLE_AT(100)),  # f2 -> drag_start (800,450)
            rois_at(*_TRIPLE_AT(100)),  # f3 drag_move (1099,300)
            rois_at(*_FAR),             # f4 pair count 1
            rois_at(*_FAR),             # f5 count 2
            rois_at(*_FAR),             # f6 count 3 -> drag_end only
            rois_at(*_FAR),             # f7 count 4, armed -> left_click
            [],                         # f8
        ],
        [
            ("drag_start", 800, 450, 2),
            ("drag_move", 1099, 300, 3),
            ("drag_end", 1099, 300, 6),
            ("left_click", 1099, 300, 7),
        ],
    ),
]
