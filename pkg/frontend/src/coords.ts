// Mapping between displayed element coordinates and camera frame pixels.
// The snapshot canvas is usually rendered larger than the 320x240 frame,
// so a calibration click must be scaled back before it is sent.

export interface FramePoint {
  x: number;
  y: number;
}

/**
 * Convert a click on the displayed snapshot to frame pixel coordinates.
 * Returns null when the click falls outside the displayed image.
 */
export function displayToFrame(
  clickX: number,
  clickY: number,
  displayWidth: number,
  displayHeight: number,
  frameWidth: number,
  frameHeight: number,
): FramePoint | null {
  if (clickX < 0 || clickY < 0 || clickX >= displayWidth || clickY >= displayHeight) {
    return null;
  }
  const x = Math.floor((clickX * frameWidth) / displayWidth);
  const y = Math.floor((clickY * frameHeight) / displayHeight);
  return {
    x: Math.min(x, frameWidth - 1),
    y: Math.min(y, frameHeight - 1),
  };
}

/** Scale a virtual-desktop point onto the rendered desktop canvas. */
export function virtualToCanvas(
  x: number,
  y: number,
  virtualWidth: number,
  virtualHeight: number,
  canvasWidth: number,
  canvasHeight: number,
): FramePoint {
  return {
    x: (x * canvasWidth) / virtualWidth,
    y: (y * canvasHeight) / virtualHeight,
  };
}
