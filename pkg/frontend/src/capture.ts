// Camera capture loop: downscale to the session dimensions, encode GFRM
// records, send them in order with a frame-rate cap.

import { encodeFrameRecord, rgbaToRgb } from "./protocol.js";

export interface CaptureOptions {
  width: number;
  height: number;
  fps: number;
  onRecord: (record: Uint8Array) => void;
  onCameraLoss: () => void;
}

/** Pure throttle rule so the fps cap is testable: send when a full frame
 * period has elapsed since the last send. */
export function shouldSendFrame(lastSentMs: number | null, nowMs: number, fps: number): boolean {
  if (lastSentMs === null) return true;
  return nowMs - lastSentMs >= 1000 / fps;
}

export interface CaptureHandle {
  stop(): void;
  nextIndex(): number;
}

export function startCaptureLoop(
  video: HTMLVideoElement,
  startIndex: number,
  opts: CaptureOptions,
): CaptureHandle {
  const canvas = document.createElement("canvas");
  canvas.width = opts.width;
  canvas.height = opts.height;
  const ctx = canvas.getContext("2d", { willReadFrequently: true })!;
  let index = startIndex;
  let lastSent: number | null = null;

  const tick = () => {
    const now = performance.now();
    if (!shouldSendFrame(lastSent, now, opts.fps)) return;
    if (video.readyState < video.HAVE_CURRENT_DATA) return;
    lastSent = now;
    ctx.drawImage(video, 0, 0, opts.width, opts.height);
    const rgba = ctx.getImageData(0, 0, opts.width, opts.height).data;
    opts.onRecord(encodeFrameRecord(index++, opts.width, opts.height, rgbaToRgb(rgba)));
  };

  // poll faster than the cap so the throttle sets the pace
  const timer = setInterval(tick, 1000 / (opts.fps * 4));
  const track = (video.srcObject as MediaStream | null)?.getVideoTracks()[0];
  if (track) {
    track.onended = () => {
      clearInterval(timer);
      opts.onCameraLoss();
    };
  }
  return {
    stop: () => clearInterval(timer),
    nextIndex: () => index,
  };
}

/** Grab one frame from the video right now (the calibration snapshot). */
export function grabFrame(
  video: HTMLVideoElement,
  width: number,
  height: number,
): { rgb: Uint8Array; canvas: HTMLCanvasElement } {
  const canvas = document.createElement("canvas");
  canvas.width = width;
  canvas.height = height;
  const ctx = canvas.getContext("2d", { willReadFrequently: true })!;
  ctx.drawImage(video, 0, 0, width, height);
  const rgba = ctx.getImageData(0, 0, width, height).data;
  return { rgb: rgbaToRgb(rgba), canvas };
}
