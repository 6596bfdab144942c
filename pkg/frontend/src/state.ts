// Demo state driven entirely by server records: the demo never interprets
// gestures itself, every visual change comes from an engine event.

import { isMouseEvent, ServerRecord } from "./protocol.js";

export const VIRTUAL_SCREEN = { width: 1600, height: 900 };
export const FEED_LIMIT = 50;

export type Phase = "connecting" | "snapshot" | "calibrating" | "live";

export interface Signature {
  y: number;
  cb: number;
  cr: number;
  threshold: number;
}

export interface DemoState {
  phase: Phase;
  signature: Signature | null;
  cursor: { x: number; y: number };
  dragging: boolean;
  /** last click-style event, for a short visual flash */
  flash: { kind: string; frame: number } | null;
  feed: string[];
  lastError: string | null;
}

export function initialState(): DemoState {
  return {
    phase: "connecting",
    signature: null,
    cursor: { x: VIRTUAL_SCREEN.width / 2, y: VIRTUAL_SCREEN.height / 2 },
    dragging: false,
    flash: null,
    feed: [],
    lastError: null,
  };
}

function pushFeed(feed: string[], line: string): string[] {
  const next = [...feed, line];
  return next.length > FEED_LIMIT ? next.slice(next.length - FEED_LIMIT) : next;
}

/** The demo just sent its calibrate click. */
export function markCalibrating(state: DemoState): DemoState {
  return { ...state, phase: "calibrating" };
}

export function reduce(state: DemoState, record: ServerRecord): DemoState {
  const feed = pushFeed(state.feed, JSON.stringify(record));
  switch (record.kind) {
    case "hello_ok":
      return { ...state, feed, phase: state.phase === "connecting" ? "snapshot" : state.phase };
    case "calibrated":
      return {
        ...state,
        feed,
        signature: {
          y: record.y,
          cb: record.cb,
          cr: record.cr,
          threshold: record.threshold,
        },
        phase: "live",
      };
    case "snapshot_ok":
      return { ...state, feed };
    case "error":
      return { ...state, feed, lastError: `${record.code}: ${record.detail}` };
  }
  if (!isMouseEvent(record)) {
    return { ...state, feed };
  }
  switch (record.kind) {
    case "move":
    case "drag_move":
      return { ...state, feed, cursor: { x: record.x, y: record.y } };
    case "drag_start":
      return { ...state, feed, dragging: true, cursor: { x: record.x, y: record.y } };
    case "drag_end":
      return { ...state, feed, dragging: false, cursor: { x: record.x, y: record.y } };
    case "left_click":
    case "right_click":
    case "double_click":
      return { ...state, feed, flash: { kind: record.kind, frame: record.frame } };
  }
}
