import { describe, expect, test, vi } from "vitest";

import {
  calibrateMessage,
  encodeFrameRecord,
  helloMessage,
  parseServerRecord,
  rgbaToRgb,
  GFRM_HEADER_BYTES,
} from "../src/protocol.js";

describe("GFRM encoding", () => {
  test("a 320x240 record is 12 + 230400 bytes", () => {
    const rgb = new Uint8Array(320 * 240 * 3);
    const record = encodeFrameRecord(0, 320, 240, rgb);
    expect(record.length).toBe(GFRM_HEADER_BYTES + 230400);
  });

  test("header layout is magic + u32le index + u16le dims", () => {
    const rgb = new Uint8Array(2 * 1 * 3).fill(9);
    const record = encodeFrameRecord(0x01020304, 2, 1, rgb);
    expect([...record.slice(0, 4)]).toEqual([0x47, 0x46, 0x52, 0x4d]); // GFRM
    expect([...record.slice(4, 8)]).toEqual([0x04, 0x03, 0x02, 0x01]); // little-endian
    expect([...record.slice(8, 10)]).toEqual([2, 0]);
    expect([...record.slice(10, 12)]).toEqual([1, 0]);
    expect([...record.slice(12)]).toEqual([9, 9, 9, 9, 9, 9]);
  });

  test("payload size mismatch is rejected", () => {
    expect(() => encodeFrameRecord(0, 2, 2, new Uint8Array(5))).toThrow(/bytes/);
  });

  test("rgba strips alpha", () => {
    const rgba = new Uint8ClampedArray([1, 2, 3, 255, 4, 5, 6, 128]);
    expect([...rgbaToRgb(rgba)]).toEqual([1, 2, 3, 4, 5, 6]);
  });
});

describe("control records", () => {
  test("hello carries config overrides", () => {
    expect(JSON.parse(helloMessage({ cam_width: 320, cam_height: 240 }))).toEqual({
      kind: "hello",
      config: { cam_width: 320, cam_height: 240 },
    });
  });

  test("calibrate defaults the window to 3", () => {
    expect(JSON.parse(calibrateMessage(160, 120))).toEqual({
      kind: "calibrate", x: 160, y: 120, window: 3,
    });
  });
});

describe("server record parsing", () => {
  test("valid event parses", () => {
    const record = parseServerRecord('{"kind":"move","x":799,"y":450,"frame":3}');
    expect(record).toEqual({ kind: "move", x: 799, y: 450, frame: 3 });
  });

  test("malformed lines are ignored with a console warning", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    expect(parseServerRecord("not json at all")).toBeNull();
    expect(parseServerRecord('{"no_kind":1}')).toBeNull();
    expect(parseServerRecord('{"kind":"teleport","x":1,"y":2}')).toBeNull();
    expect(parseServerRecord('{"kind":"move","x":"oops","y":2}')).toBeNull();
    expect(warn).toHaveBeenCalledTimes(4);
    warn.mockRestore();
  });
});
