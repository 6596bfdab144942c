// Wire protocol shared with the capmouse service: single-line JSON control
// records plus binary GFRM frame records. Over WebSocket, text messages
// carry the JSON and binary messages carry one GFRM record each.

export const GFRM_HEADER_BYTES = 12;

export interface EngineConfigOverrides {
  cam_width?: number;
  cam_height?: number;
  screen_width?: number;
  screen_height?: number;
  chroma_threshold?: number;
  stable_frames?: number;
  alpha?: number;
}

export interface MouseEventRecord {
  kind: "move" | "left_click" | "right_click" | "double_click"
      | "drag_start" | "drag_move" | "drag_end";
  x: number;
  y: number;
  frame: number;
}

export interface CalibratedRecord {
  kind: "calibrated";
  y: number;
  cb: number;
  cr: number;
  threshold: number;
}

export interface ErrorRecord {
  kind: "error";
  code: string;
  detail: string;
}

export interface HelloOkRecord {
  kind: "hello_ok";
  config: Record<string, unknown>;
}

export interface SnapshotOkRecord {
  kind: "snapshot_ok";
  frame: number;
  width: number;
  height: number;
}

export type ServerRecord =
  | MouseEventRecord
  | CalibratedRecord
  | ErrorRecord
  | HelloOkRecord
  | SnapshotOkRecord;

const EVENT_KINDS = new Set([
  "move", "left_click", "right_click", "double_click",
  "drag_start", "drag_move", "drag_end",
]);

const SERVER_KINDS = new Set([
  ...EVENT_KINDS, "calibrated", "error", "hello_ok", "snapshot_ok",
]);

export function isMouseEvent(record: ServerRecord): record is MouseEventRecord {
  return EVENT_KINDS.has(record.kind);
}

/** Parse one server record; malformed input is ignored with a warning. */
export function parseServerRecord(line: string): ServerRecord | null {
  let data: unknown;
  try {
    data = JSON.parse(line);
  } catch {
    console.warn("ignoring malformed record:", line);
    return null;
  }
  if (typeof data !== "object" || data === null || !("kind" in data)) {
    console.warn("ignoring record without kind:", line);
    return null;
  }
  const record = data as { kind: string } & Record<string, unknown>;
  if (!SERVER_KINDS.has(record.kind)) {
    console.warn("ignoring record of unknown kind:", record.kind);
    return null;
  }
  if (EVENT_KINDS.has(record.kind) &&
      (typeof record.x !== "number" || typeof record.y !== "number")) {
    console.warn("ignoring event with bad coordinates:", line);
    return null;
  }
  return record as unknown as ServerRecord;
}

// -- control records --------------------------------------------------------

export function helloMessage(config: EngineConfigOverrides): string {
  return JSON.stringify({ kind: "hello", config });
}

export function calibrateMessage(x: number, y: number, window = 3): string {
  return JSON.stringify({ kind: "calibrate", x, y, window });
}

export function snapshotRequestMessage(): string {
  return JSON.stringify({ kind: "snapshot_request" });
}

export function startMessage(): string {
  return JSON.stringify({ kind: "start" });
}

export function stopMessage(): string {
  return JSON.stringify({ kind: "stop" });
}

// -- binary frame records ---------------------------------------------------

/** Drop the alpha channel of canvas RGBA pixel data. */
export function rgbaToRgb(rgba: Uint8ClampedArray): Uint8Array {
  const pixels = rgba.length / 4;
  const rgb = new Uint8Array(pixels * 3);
  for (let i = 0, o = 0; i < rgba.length; i += 4, o += 3) {
    rgb[o] = rgba[i]!;
    rgb[o + 1] = rgba[i + 1]!;
    rgb[o + 2] = rgba[i + 2]!;
  }
  return rgb;
}

/**
 * Encode one GFRM record: magic "GFRM", u32le frame index, u16le width,
 * u16le height, then width*height*3 RGB bytes, rows from the top.
 */
export function encodeFrameRecord(
  index: number,
  width: number,
  height: number,
  rgb: Uint8Array,
): Uint8Array {
  if (rgb.length !== width * height * 3) {
    throw new Error(`payload is ${rgb.length} bytes, need ${width * height * 3}`);
  }
  const record = new Uint8Array(GFRM_HEADER_BYTES + rgb.length);
  record[0] = 0x47; // G
  record[1] = 0x46; // F
  record[2] = 0x52; // R
  record[3] = 0x4d; // M
  const view = new DataView(record.buffer);
  view.setUint32(4, index, true);
  view.setUint16(8, width, true);
  view.setUint16(10, height, true);
  record.set(rgb, GFRM_HEADER_BYTES);
  return record;
}
