// DOM rendering of the demo state: virtual desktop with the cursor sprite,
// signature readout, rolling event feed, status line.

import { virtualToCanvas } from "./coords.js";
import { DemoState, VIRTUAL_SCREEN } from "./state.js";

export interface Elements {
  status: HTMLElement;
  signature: HTMLElement;
  desktop: HTMLElement;
  cursor: HTMLElement;
  feed: HTMLElement;
}

const PHASE_LABEL: Record<string, string> = {
  connecting: "connecting to the service...",
  snapshot: "camera live - take a snapshot, then click the colored cap",
  calibrating: "calibrating...",
  live: "live - steer the cursor with your finger caps",
};

let flashedFrame = -1;

export function render(el: Elements, state: DemoState): void {
  el.status.textContent = state.lastError
    ? `error - ${state.lastError}`
    : PHASE_LABEL[state.phase] ?? state.phase;
  el.status.classList.toggle("error", state.lastError !== null);

  if (state.signature) {
    const s = state.signature;
    el.signature.textContent =
      `cap color: y=${s.y.toFixed(2)} cb=${s.cb.toFixed(2)} cr=${s.cr.toFixed(2)} ` +
      `threshold=${s.threshold.toFixed(1)}`;
  } else {
    el.signature.textContent = "cap color: not calibrated";
  }

  const rect = el.desktop.getBoundingClientRect();
  const pos = virtualToCanvas(
    state.cursor.x, state.cursor.y,
    VIRTUAL_SCREEN.width, VIRTUAL_SCREEN.height,
    rect.width, rect.height,
  );
  el.cursor.style.transform = `translate(${pos.x}px, ${pos.y}px)`;
  el.cursor.classList.toggle("dragging", state.dragging);

  if (state.flash && state.flash.frame !== flashedFrame) {
    flashedFrame = state.flash.frame;
    el.cursor.classList.remove("flash-left_click", "flash-right_click", "flash-double_click");
    void el.cursor.offsetWidth; // restart the CSS animation
    el.cursor.classList.add(`flash-${state.flash.kind}`);
  }

  el.feed.textContent = state.feed.slice().reverse().join("\n");
}
