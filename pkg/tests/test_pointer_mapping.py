import pytest
from hypothesis import given, strategies as st

from capmouse.errors import ConfigError
from capmouse.pointer_mapping import (
    PixelPoint,
    ScreenPoint,
    mirror_x,
    mirror_y,
    round_half_up,
    scale_to_screen,
    smooth,
)

CAM = (640, 480)
SCREEN = (1600, 900)


def test_origin_is_fixed_point():
    assert scale_to_screen(PixelPoint(0, 0), CAM, SCREEN) == ScreenPoint(0.0, 0.0)


def test_center_scaling():
    out = scale_to_screen(PixelPoint(320, 240), CAM, SCREEN)
    assert out == ScreenPoint(800.0, 450.0)


def test_far_corner_scaling():
    out = scale_to_screen(PixelPoint(639, 479), CAM, SCREEN)
    assert out.x == pytest.approx(1597.5)
    assert out.y == pytest.approx(898.125)


def test_zero_cam_dimension_rejected():
    with pytest.raises(ConfigError):
        scale_to_screen(PixelPoint(0, 0), (0, 480), SCREEN)


@given(
    st.floats(min_value=0, max_value=639, allow_nan=False),
    st.floats(min_value=0, max_value=479, allow_nan=False),
)
def test_scaling_is_linear_and_stays_on_screen(x, y):
    out = scale_to_screen(PixelPoint(x, y), CAM, SCREEN)
    assert 0 <= out.x < 1600
    assert 0 <= out.y < 900
    double = scale_to_screen(PixelPoint(x, y), (1280, 960), SCREEN)
    assert double.x == pytest.approx(out.x / 2, abs=1e-9)


def test_mirror_left_edge():
    assert mirror_x(ScreenPoint(0, 10), 1600) == ScreenPoint(1599.0, 10)


def test_mirror_center_example():
    assert mirror_x(ScreenPoint(800, 450), 1600) == ScreenPoint(799.0, 450)


# involution is tested on a quarter-pixel grid: those coordinates subtract
# exactly in binary floating point, so the reflection must return bit-equal
@given(
    st.integers(min_value=0, max_value=4 * 1599),
    st.floats(min_value=0, max_value=899, allow_nan=False),
)
def test_mirror_x_involution_and_y_preserved(quarters, y):
    p = ScreenPoint(quarters / 4.0, y)
    back = mirror_x(mirror_x(p, 1600), 1600)
    assert back.x == p.x
    assert back.y == p.y


def test_mirror_y_reflects_vertically():
    assert mirror_y(ScreenPoint(5, 0), 900) == ScreenPoint(5, 899.0)
    assert mirror_y(mirror_y(ScreenPoint(5, 123.25), 900), 900) == ScreenPoint(5, 123.25)


def test_smooth_without_history_passes_through():
    cur = ScreenPoint(123.4, 56.7)
    assert smooth(None, cur, 0.3) == cur


def test_smooth_alpha_one_has_no_memory():
    assert smooth(ScreenPoint(0, 0), ScreenPoint(100, 100), 1.0) == ScreenPoint(100, 100)


def test_smooth_midpoint():
    assert smooth(ScreenPoint(0, 0), ScreenPoint(100, 100), 0.5) == ScreenPoint(50.0, 50.0)


def test_smooth_alpha_out_of_range_rejected():
    with pytest.raises(ConfigError):
        smooth(None, ScreenPoint(0, 0), 0.0)
    with pytest.raises(ConfigError):
        smooth(None, ScreenPoint(0, 0), 1.5)


def test_smooth_converges_geometrically():
    # holding cur fixed, the gap decays as (1-alpha)^n
    alpha = 0.25
    cur = ScreenPoint(200.0, -40.0)
    p = ScreenPoint(0.0, 0.0)
    for n in range(1, 30):
        p = smooth(p, cur, alpha)
        expected_gap = (1 - alpha) ** n
        assert p.x == pytest.approx(cur.x - expected_gap * 200.0, abs=1e-9)
        assert p.y == pytest.approx(cur.y + expected_gap * 40.0, abs=1e-9)


@given(
    st.floats(min_value=-1000, max_value=1000, allow_nan=False),
    st.floats(min_value=-1000, max_value=1000, allow_nan=False),
    st.floats(min_value=0.01, max_value=1.0, allow_nan=False),
)
def test_smooth_output_lies_on_segment(a, b, alpha):
    prev = ScreenPoint(a, b)
    cur = ScreenPoint(b, a)
    out = smooth(prev, cur, alpha)
    lo, hi = min(a, b), max(a, b)
    assert lo - 1e-9 <= out.x <= hi + 1e-9
    assert lo - 1e-9 <= out.y <= hi + 1e-9


def test_round_half_up():
    assert round_half_up(0.5) == 1
    assert round_half_up(1.5) == 2
    assert round_half_up(2.4999) == 2
    assert round_half_up(-0.5) == 0
