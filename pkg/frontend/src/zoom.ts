/**
 * Window arithmetic for drag zooming.  The raster maps the window
 * (cx, cy, half width) onto width x height pixels with square pixels,
 * row 0 at the top, so pixel (px, py) sits at
 *   x = cx - hw + px * pixel,  y = cy + hh - py * pixel
 * with pixel = 2 hw / width and hh = pixel * height / 2.
 */

export interface DragRect {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export type ViewWindow = [number, number, number];

const CLICK_TOLERANCE = 5;
const MIN_HALF_WIDTH = 1e-12;

export function zoomWindow(
  current: ViewWindow,
  drag: DragRect,
  width: number,
  height: number
): ViewWindow {
  const [cx, cy, hw] = current;
  const pixel = (2 * hw) / width;
  const halfH = (pixel * height) / 2;

  const px = (drag.x0 + drag.x1) / 2;
  const py = (drag.y0 + drag.y1) / 2;
  const centerX = cx - hw + px * pixel;
  const centerY = cy + halfH - py * pixel;

  const dw = Math.abs(drag.x1 - drag.x0);
  const dh = Math.abs(drag.y1 - drag.y0);
  if (dw < CLICK_TOLERANCE && dh < CLICK_TOLERANCE) {
    // a plain click: zoom in twofold on that point
    return [centerX, centerY, Math.max(hw / 2, MIN_HALF_WIDTH)];
  }

  // half width that fits the dragged rectangle in both directions
  const fitX = (dw / 2) * pixel;
  const fitY = ((dh / 2) * pixel * width) / height;
  return [centerX, centerY, Math.max(fitX, fitY, MIN_HALF_WIDTH)];
}
