"""Synthetic recognition-rate and throughput benchmark.

Sweeps gesture kind x noise sigma x blob radius over scripted synthetic
sequences, scoring the fraction of frames whose classified gesture matches
the script's ground truth and timing the full per-frame pipeline. Shrinking
blob radius emulates the user stepping away from the camera (apparent cap
size falls off with distance), so the radius sweep is the distance sweep.

Reports are CSV; companion matplotlib figures are rendered next to the
report unless disabled.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path

from .color_model import ChromaSignature, rgb_to_ycbcr
from .config import EngineConfig
from .frame_io import GREEN_CAP, BlobSpec, ScenarioFrame, ScenarioScript, synth_sequence
from .gesture_engine import GestureTag
from .pipeline import GestureSession
from .pointer_mapping import PixelPoint

BENCH_GESTURES = ("move", "left_click", "right_click", "double_click", "drag")

CSV_COLUMNS = ("gesture", "sigma", "radius", "trials", "recognition_rate", "mean_frame_micros")

_GESTURE_TAG = {
    "move": GestureTag.POINT,
    "left_click": GestureTag.PAIR_FAR,
    "right_click": GestureTag.PAIR_NEAR,
    "double_click": GestureTag.QUAD,
    "drag": GestureTag.TRIPLE,
}


@dataclass(frozen=True)
class BenchCell:
    gesture: str
    sigma: float
    radius: float
    trials: int
    recognition_rate: float
    mean_frame_micros: float


def _drift(base: float, frame: int, limit: float) -> float:
    # bounce within [base, limit] one pixel per frame
    span = max(1.0, limit - base)
    t = frame % int(2 * span)
    return base + (t if t < span else 2 * span - t)


def build_gesture_script(
    gesture: str,
    cam: tuple[int, int],
    radius: float,
    sigma: float,
    n_frames: int,
) -> ScenarioScript:
    """Blob layout for one benchmark gesture, scaled to the camera size.

    Pair layouts keep blob centers far enough apart that the disks can never
    touch (distance > 2*radius + 2) while staying on the proper side of the
    default click split of a quarter frame width.
    """
    if gesture not in _GESTURE_TAG:
        raise ValueError(f"unknown bench gesture {gesture!r}")
    w, h = cam
    tag = _GESTURE_TAG[gesture]
    frames = []
    for i in range(n_frames):
        if gesture == "move":
            blobs = [BlobSpec(PixelPoint(_drift(0.2 * w, i, 0.8 * w), 0.5 * h), radius)]
        elif gesture == "left_click":
            blobs = [
                BlobSpec(PixelPoint(0.2 * w, 0.5 * h), radius),
                BlobSpec(PixelPoint(0.8 * w, 0.5 * h), radius),
            ]
        elif gesture == "right_click":
            blobs = [
                BlobSpec(PixelPoint(0.425 * w, 0.5 * h), radius),
                BlobSpec(PixelPoint(0.575 * w, 0.5 * h), radius),
            ]
        elif gesture == "double_click":
            blobs = [
                BlobSpec(PixelPoint(0.2 * w, 0.25 * h), radius),
                BlobSpec(PixelPoint(0.8 * w, 0.25 * h), radius),
                BlobSpec(PixelPoint(0.2 * w, 0.75 * h), radius),
                BlobSpec(PixelPoint(0.8 * w, 0.75 * h), radius),
            ]
        else:  # drag
            y = _drift(0.3 * h, i, 0.7 * h)
            blobs = [
                BlobSpec(PixelPoint(0.2 * w, y), radius),
                BlobSpec(PixelPoint(0.5 * w, 0.5 * h), radius),
                BlobSpec(PixelPoint(0.8 * w, y), radius),
            ]
        frames.append(ScenarioFrame(tuple(blobs), tag))
    return ScenarioScript(w, h, sigma, tuple(frames))


def cap_signature(cfg: EngineConfig) -> ChromaSignature:
    """Signature of the synthetic green cap under the configured threshold."""
    target = rgb_to_ycbcr(GREEN_CAP)
    return ChromaSignature(target, cfg.effective_threshold(target.y))


def run_cell(
    gesture: str,
    sigma: float,
    radius: float,
    trials: int,
    frames_per_trial: int,
    seed: int,
    cfg: EngineConfig,
) -> BenchCell:
    """Score one sweep cell: recognition rate and mean pipeline time."""
    signature = cap_signature(cfg)
    script = build_gesture_script(gesture, cfg.cam_size, radius, sigma, frames_per_trial)
    matched = 0
    total = 0
    elapsed = 0.0
    for trial in range(trials):
        frames, truth = synth_sequence(script, seed=seed * 10007 + trial)
        session = GestureSession(cfg, signature)
        for index, (frame, expected) in enumerate(zip(frames, truth)):
            t0 = time.perf_counter()
            observed, _ = session.observe(frame)
            session.engine.step(observed, index)
            elapsed += time.perf_counter() - t0
            matched += observed.tag == expected
            total += 1
    return BenchCell(
        gesture=gesture,
        sigma=sigma,
        radius=radius,
        trials=trials,
        recognition_rate=matched / total,
        mean_frame_micros=elapsed / total * 1e6,
    )


def run_bench(
    cfg: EngineConfig,
    gestures=BENCH_GESTURES,
    sigmas=(0.0, 2.0, 4.0, 6.0),
    radii=(16.0, 12.0, 8.0, 4.0, 2.0),
    trials: int = 3,
    frames_per_trial: int = 30,
    seed: int = 0,
) -> list[BenchCell]:
    cells = []
    for gesture in gestures:
        for sigma in sigmas:
            for radius in radii:
                cells.append(
                    run_cell(gesture, sigma, radius, trials, frames_per_trial, seed, cfg)
                )
    return cells


def write_report(cells: list[BenchCell], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for c in cells:
            writer.writerow(
                [c.gesture, c.sigma, c.radius, c.trials,
                 f"{c.recognition_rate:.6f}", f"{c.mean_frame_micros:.3f}"]
            )


def render_figures(cells: list[BenchCell], report_path: Path) -> list[Path]:
    """Render the companion figures next to the CSV report.

    * rate by gesture at the benchmark's friendliest cell (bar chart)
    * rate vs noise sigma at the largest radius (one line per gesture)
    * rate vs blob radius at the largest sigma, radius axis reversed so
      "further away" reads left to right (one line per gesture)
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    report_path = Path(report_path)
    stem = report_path.with_suffix("")
    gestures = sorted({c.gesture for c in cells}, key=lambda g: BENCH_GESTURES.index(g) if g in BENCH_GESTURES else 99)
    sigmas = sorted({c.sigma for c in cells})
    radii = sorted({c.radius for c in cells})
    by_key = {(c.gesture, c.sigma, c.radius): c for c in cells}
    written = []

    fig, ax = plt.subplots(figsize=(6, 3.5))
    baseline = [by_key[(g, sigmas[0], radii[-1])].recognition_rate for g in gestures]
    ax.bar(range(len(gestures)), baseline, color="#2a9d8f")
    ax.set_xticks(range(len(gestures)), gestures, rotation=20)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("recognition rate")
    ax.set_title(f"Recognition by gesture (sigma={sigmas[0]:g}, radius={radii[-1]:g})")
    path = Path(f"{stem}_rate_by_gesture.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 3.5))
    for g in gestures:
        ax.plot(sigmas, [by_key[(g, s, radii[-1])].recognition_rate for s in sigmas],
                marker="o", label=g)
    ax.set_xlabel("channel noise sigma")
    ax.set_ylabel("recognition rate")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"Recognition vs noise (radius={radii[-1]:g})")
    ax.legend(fontsize=8)
    path = Path(f"{stem}_rate_vs_sigma.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 3.5))
    for g in gestures:
        ax.plot(radii, [by_key[(g, sigmas[-1], r)].recognition_rate for r in radii],
                marker="o", label=g)
    ax.invert_xaxis()
    ax.set_xlabel("blob radius (px); smaller = further from camera")
    ax.set_ylabel("recognition rate")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"Recognition vs apparent cap size (sigma={sigmas[-1]:g})")
    ax.legend(fontsize=8)
    path = Path(f"{stem}_rate_vs_radius.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    return written
