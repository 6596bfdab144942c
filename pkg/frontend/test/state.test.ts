import { describe, expect, test } from "vitest";

import { ServerRecord } from "../src/protocol.js";
import { FEED_LIMIT, initialState, markCalibrating, reduce } from "../src/state.js";

const CALIBRATED: ServerRecord = {
  kind: "calibrated", y: 144.52, cb: 53.795, cr: 34.16, threshold: 12,
};

function move(x: number, y: number, frame: number): ServerRecord {
  return { kind: "move", x, y, frame };
}

describe("demo state reducer", () => {
  test("starts connecting with the cursor at the virtual center", () => {
    const s = initialState();
    expect(s.phase).toBe("connecting");
    expect(s.cursor).toEqual({ x: 800, y: 450 });
  });

  test("hello_ok advances to the snapshot phase", () => {
    const s = reduce(initialState(), { kind: "hello_ok", config: {} });
    expect(s.phase).toBe("snapshot");
  });

  test("live phase is only reachable through a calibrated record", () => {
    let s = reduce(initialState(), { kind: "hello_ok", config: {} });
    s = markCalibrating(s);
    expect(s.phase).toBe("calibrating");
    expect(s.signature).toBeNull();
    s = reduce(s, CALIBRATED);
    expect(s.phase).toBe("live");
    expect(s.signature).toEqual({ y: 144.52, cb: 53.795, cr: 34.16, threshold: 12 });
  });

  test("move events reposition the cursor", () => {
    let s = reduce(initialState(), move(799, 450, 0));
    expect(s.cursor).toEqual({ x: 799, y: 450 });
    s = reduce(s, move(10, 20, 1));
    expect(s.cursor).toEqual({ x: 10, y: 20 });
  });

  test("drag episodes tint on and off and keep following", () => {
    let s = initialState();
    s = reduce(s, { kind: "drag_start", x: 100, y: 100, frame: 2 });
    expect(s.dragging).toBe(true);
    s = reduce(s, { kind: "drag_move", x: 120, y: 110, frame: 3 });
    expect(s.cursor).toEqual({ x: 120, y: 110 });
    expect(s.dragging).toBe(true);
    s = reduce(s, { kind: "drag_end", x: 120, y: 110, frame: 6 });
    expect(s.dragging).toBe(false);
  });

  test("clicks flash but do not move the cursor", () => {
    let s = reduce(initialState(), move(500, 300, 0));
    s = reduce(s, { kind: "left_click", x: 500, y: 300, frame: 3 });
    expect(s.flash).toEqual({ kind: "left_click", frame: 3 });
    expect(s.cursor).toEqual({ x: 500, y: 300 });
  });

  test("errors are surfaced", () => {
    const s = reduce(initialState(), { kind: "error", code: "no_snapshot", detail: "x" });
    expect(s.lastError).toBe("no_snapshot: x");
  });

  test("the feed keeps only the most recent records", () => {
    let s = initialState();
    for (let i = 0; i < FEED_LIMIT + 20; i++) {
      s = reduce(s, move(i, i, i));
    }
    expect(s.feed.length).toBe(FEED_LIMIT);
    expect(JSON.parse(s.feed[s.feed.length - 1]!).frame).toBe(FEED_LIMIT + 19);
  });
});
