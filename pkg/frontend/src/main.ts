// Demo wiring: camera preview, snapshot freeze, calibrate-by-click, frame
// streaming, and a virtual desktop driven purely by service events.

import { grabFrame, startCaptureLoop, CaptureHandle } from "./capture.js";
import { displayToFrame } from "./coords.js";
import {
  calibrateMessage,
  encodeFrameRecord,
  helloMessage,
  parseServerRecord,
  startMessage,
} from "./protocol.js";
import { render, Elements } from "./render.js";
import { DemoState, initialState, markCalibrating, reduce } from "./state.js";

const CAM = { width: 320, height: 240 };
const FPS_CAP = 15;

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function serviceUrl(): string {
  const params = new URLSearchParams(location.search);
  const host = params.get("host") ?? "127.0.0.1";
  const port = params.get("port") ?? "7600";
  return `ws://${host}:${port}/session`;
}

async function start() {
  const els: Elements = {
    status: $("status"),
    signature: $("signature"),
    desktop: $("desktop"),
    cursor: $("cursor"),
    feed: $("feed"),
  };
  const video = $("preview") as HTMLVideoElement;
  const snapshotCanvas = $("snapshot") as HTMLCanvasElement;
  const snapshotButton = $("take-snapshot") as HTMLButtonElement;

  let state: DemoState = initialState();
  const apply = (next: DemoState) => {
    state = next;
    render(els, state);
  };
  render(els, state);

  let socket: WebSocket;
  try {
    socket = new WebSocket(serviceUrl());
  } catch (err) {
    apply({ ...state, lastError: `cannot reach the service: ${err}` });
    return;
  }
  socket.binaryType = "arraybuffer";

  let nextFrameIndex = 0;
  let capture: CaptureHandle | null = null;

  const sendRecord = (record: Uint8Array) => {
    if (socket.readyState === WebSocket.OPEN) socket.send(record);
  };

  socket.onopen = () => {
    socket.send(helloMessage({ cam_width: CAM.width, cam_height: CAM.height }));
  };
  socket.onclose = () => {
    capture?.stop();
    apply({ ...state, lastError: "service connection closed" });
  };
  socket.onmessage = (msg) => {
    const record = parseServerRecord(String(msg.data));
    if (record === null) return;
    const wasLive = state.phase === "live";
    apply(reduce(state, record));
    if (record.kind === "calibrated" && !wasLive) {
      // calibration accepted: start streaming camera frames
      socket.send(startMessage());
      capture = startCaptureLoop(video, nextFrameIndex, {
        ...CAM,
        fps: FPS_CAP,
        onRecord: (r) => {
          nextFrameIndex += 1;
          sendRecord(r);
        },
        onCameraLoss: () =>
          apply({ ...state, lastError: "camera lost - reload to reconnect" }),
      });
    }
  };

  try {
    const stream = await navigator.mediaDevices.getUserMedia({
      video: { width: CAM.width, height: CAM.height },
      audio: false,
    });
    video.srcObject = stream;
    await video.play();
  } catch {
    apply({ ...state, lastError: "camera permission denied" });
    return;
  }

  snapshotButton.onclick = () => {
    // freeze one frame: shown for clicking and held server-side for calibration
    const { rgb, canvas } = grabFrame(video, CAM.width, CAM.height);
    snapshotCanvas.getContext("2d")!.drawImage(canvas, 0, 0);
    snapshotCanvas.classList.add("ready");
    sendRecord(encodeFrameRecord(nextFrameIndex++, CAM.width, CAM.height, rgb));
  };

  snapshotCanvas.onclick = (ev) => {
    if (!snapshotCanvas.classList.contains("ready")) return;
    const rect = snapshotCanvas.getBoundingClientRect();
    const point = displayToFrame(
      ev.clientX - rect.left,
      ev.clientY - rect.top,
      rect.width,
      rect.height,
      CAM.width,
      CAM.height,
    );
    if (point === null) return; // outside the image
    apply(markCalibrating(state));
    socket.send(calibrateMessage(point.x, point.y));
  };
}

start();
