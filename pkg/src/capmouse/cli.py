"""Command-line interface: calibrate, run, synth, bench, serve.

Exit codes: 0 success, 1 pipeline failure while processing frames,
2 usage/configuration/I-O errors. Set GESTURE_LOG=DEBUG|INFO|WARNING to
control log verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections import Counter
from pathlib import Path

from .bench import BENCH_GESTURES, render_figures, run_bench, write_report
from .color_model import ChromaSignature, calibrate_signature
from .config import EngineConfig
from .errors import ConfigError, PpmParseError, SequencingError, StreamError
from .frame_io import (
    frame_to_ppm,
    load_frame_ppm,
    parse_scenario,
    read_raw_stream,
    synth_sequence,
)
from .pipeline import GestureSession
from .pointer_mapping import PixelPoint
from .service import create_server

log = logging.getLogger("capmouse.cli")

_USAGE_ERRORS = (ConfigError, ValueError, OSError)


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None


def _parse_point(text: str) -> tuple[float, float]:
    try:
        x, y = text.split(",")
        return float(x), float(y)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cam", type=_parse_dims, default=(320, 240), metavar="WxH",
                   help="camera frame dimensions (default 320x240)")
    p.add_argument("--screen", type=_parse_dims, default=(1600, 900), metavar="WxH",
                   help="virtual screen dimensions (default 1600x900)")
    p.add_argument("--threshold", type=float, default=12.0,
                   help="chroma match threshold (default 12)")
    p.add_argument("--threshold-y-gain", type=float, default=0.0,
                   help="linear luma correction applied to the threshold (default 0, off)")
    p.add_argument("--min-blob-area", type=int, default=None,
                   help="minimum blob area in pixels (default: scaled from 30 at 320x240)")
    p.add_argument("--connectivity", type=int, choices=(4, 8), default=8,
                   help="blob adjacency (default 8)")
    p.add_argument("--click-split", type=float, default=None,
                   help="two-blob distance separating left from right click "
                        "(default: a quarter of the camera width)")
    p.add_argument("--stable-frames", type=int, default=3,
                   help="frames a click class must persist before firing (default 3)")
    p.add_argument("--alpha", type=float, default=1.0,
                   help="cursor smoothing factor in (0, 1]; 1 disables smoothing")
    p.add_argument("--mirror-x", action=argparse.BooleanOptionalAction, default=True,
                   help="mirror the X axis (default on)")
    p.add_argument("--mirror-y", action=argparse.BooleanOptionalAction, default=False,
                   help="mirror the Y axis (default off)")


def _config_from_args(args) -> EngineConfig:
    return EngineConfig(
        cam_width=args.cam[0],
        cam_height=args.cam[1],
        screen_width=args.screen[0],
        screen_height=args.screen[1],
        chroma_threshold=args.threshold,
        threshold_y_gain=args.threshold_y_gain,
        min_blob_area=args.min_blob_area,
        connectivity=args.connectivity,
        click_split=args.click_split,
        stable_frames=args.stable_frames,
        alpha=args.alpha,
        mirror_x=args.mirror_x,
        mirror_y=args.mirror_y,
    )


def _fail(code: int, message: str) -> int:
    print(f"capmouse: error: {message}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# calibrate
# ---------------------------------------------------------------------------

def cmd_calibrate(args) -> int:
    try:
        cfg = _config_from_args(args)
        frame = load_frame_ppm(Path(args.snapshot).read_bytes())
        base = calibrate_signature(
            frame, PixelPoint(*args.at), args.window, cfg.chroma_threshold
        )
        signature = ChromaSignature(base.target, cfg.effective_threshold(base.y))
        text = signature.to_text()
        if args.out:
            Path(args.out).write_text(text)
        print(text, end="")
        return 0
    except _USAGE_ERRORS as exc:
        return _fail(2, str(exc))


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def _iter_ppm_dir(path: Path, cam):
    names = sorted(p.name for p in path.iterdir() if p.suffix.lower() == ".ppm")
    for index, name in enumerate(names):
        yield index, name, load_frame_ppm((path / name).read_bytes())


def _iter_stream(path: Path, cam):
    with open(path, "rb") as fh:
        for index, frame in read_raw_stream(fh, cam):
            yield index, f"record {index}", frame


def cmd_run(args) -> int:
    try:
        cfg = _config_from_args(args)
        signature = ChromaSignature.from_text(Path(args.signature).read_text())
        source = Path(args.frames)
        if not source.exists():
            raise FileNotFoundError(f"no such frame source: {source}")
        frames = _iter_ppm_dir(source, cfg.cam_size) if source.is_dir() \
            else _iter_stream(source, cfg.cam_size)
        out = open(args.events, "w") if args.events else sys.stdout
    except _USAGE_ERRORS as exc:
        return _fail(2, str(exc))

    session = GestureSession(cfg, signature)
    counts: Counter[str] = Counter()
    processed = 0
    try:
        for index, name, frame in frames:
            try:
                events = session.process_frame(frame, index)
            except ValueError as exc:
                return _fail(1, f"{name}: {exc}")
            for event in events:
                out.write(event.to_record() + "\n")
                counts[event.kind] += 1
            processed += 1
    except (PpmParseError, StreamError, SequencingError) as exc:
        return _fail(1, str(exc))
    finally:
        if out is not sys.stdout:
            out.close()

    summary = sys.stdout if out is not sys.stdout else sys.stderr
    print(f"frames processed: {processed}", file=summary)
    by_kind = " ".join(f"{k}={v}" for k, v in sorted(counts.items())) or "(none)"
    print(f"events: {by_kind}", file=summary)
    return 0


# ---------------------------------------------------------------------------
# synth
# ---------------------------------------------------------------------------

def cmd_synth(args) -> int:
    try:
        script = parse_scenario(Path(args.script).read_text())
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        frames, truth = synth_sequence(script, seed=args.seed)
        for i, frame in enumerate(frames):
            (out_dir / f"frame_{i:04d}.ppm").write_bytes(frame_to_ppm(frame))
        with open(out_dir / "truth.txt", "w") as fh:
            for i, tag in enumerate(truth):
                fh.write(f"frame_{i:04d}.ppm {tag.value}\n")
        print(f"wrote {len(frames)} frames and truth.txt to {out_dir}")
        return 0
    except _USAGE_ERRORS as exc:
        return _fail(2, str(exc))


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def cmd_bench(args) -> int:
    try:
        cfg = _config_from_args(args)
        gestures = args.gestures.split(",") if args.gestures else list(BENCH_GESTURES)
        for g in gestures:
            if g not in BENCH_GESTURES:
                raise ValueError(f"unknown gesture {g!r}; choose from {BENCH_GESTURES}")
        report = Path(args.report)
    except _USAGE_ERRORS as exc:
        return _fail(2, str(exc))

    cells = run_bench(
        cfg,
        gestures=gestures,
        sigmas=args.sigmas,
        radii=args.radii,
        trials=args.trials,
        frames_per_trial=args.frames,
        seed=args.seed,
    )
    try:
        write_report(cells, report)
    except OSError as exc:
        return _fail(2, str(exc))
    print(f"wrote {len(cells)} cells to {report}")
    if args.figures:
        for path in render_figures(cells, report):
            print(f"wrote figure {path}")
    return 0


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------

def cmd_serve(args) -> int:
    try:
        cfg = _config_from_args(args)
        server = create_server(args.host, args.port, cfg)
    except _USAGE_ERRORS as exc:
        return _fail(2, str(exc))
    host, port = server.server_address[:2]
    print(f"capmouse service listening on {host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capmouse",
        description="Color-cap gesture tracking: camera frames in, mouse events out.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="capture the cap color from a snapshot")
    p.add_argument("snapshot", help="snapshot PPM (binary P6)")
    p.add_argument("--at", type=_parse_point, required=True, metavar="X,Y",
                   help="picked pixel in frame coordinates")
    p.add_argument("--window", type=int, choices=(1, 3, 5), default=3,
                   help="median window around the pick (default 3)")
    p.add_argument("--out", default=None, help="signature file to write")
    _add_config_flags(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("run", help="run the pipeline over stored frames")
    p.add_argument("frames", help="directory of .ppm frames (lexicographic order) "
                                  "or a raw GFRM stream file")
    p.add_argument("--signature", required=True, help="signature file from calibrate")
    p.add_argument("--events", default=None, help="event log to write (default stdout)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("synth", help="materialize a scenario script to PPM frames")
    p.add_argument("script", help="scenario script file")
    p.add_argument("--out-dir", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", help="recognition-rate and throughput sweeps")
    p.add_argument("--report", required=True, help="CSV report path")
    p.add_argument("--gestures", default=None,
                   help=f"comma list from {','.join(BENCH_GESTURES)} (default all)")
    p.add_argument("--sigmas", type=_parse_floats, default=(0.0, 2.0, 4.0, 6.0),
                   help="comma list of noise sigmas (default 0,2,4,6)")
    p.add_argument("--radii", type=_parse_floats, default=(16.0, 12.0, 8.0, 4.0, 2.0),
                   help="comma list of blob radii (default 16,12,8,4,2)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--frames", type=int, default=30, help="frames per trial (default 30)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True,
                   help="render companion figures next to the report (default on)")
    _add_config_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="run the local streaming service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7600, help="0 picks a free port")
    _add_config_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("GESTURE_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
