/** Minimal grayscale software rasterizer: enough geometry for the figures. */

export class Canvas {
  readonly pixels: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
    background = 255,
  ) {
    this.pixels = new Uint8Array(width * height).fill(background);
  }

  get(x: number, y: number): number {
    return this.pixels[y * this.width + x];
  }

  set(x: number, y: number, value: number): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi >= 0 && xi < this.width && yi >= 0 && yi < this.height) {
      this.pixels[yi * this.width + xi] = value;
    }
  }

  fillRect(x0: number, y0: number, w: number, h: number, value: number): void {
    for (let y = Math.max(0, Math.round(y0)); y < Math.min(this.height, Math.round(y0 + h)); y++) {
      for (let x = Math.max(0, Math.round(x0)); x < Math.min(this.width, Math.round(x0 + w)); x++) {
        this.pixels[y * this.width + x] = value;
      }
    }
  }

  fillDisc(cx: number, cy: number, radius: number, value: number): void {
    for (let y = Math.ceil(cy - radius); y <= Math.floor(cy + radius); y++) {
      for (let x = Math.ceil(cx - radius); x <= Math.floor(cx + radius); x++) {
        if ((x - cx) ** 2 + (y - cy) ** 2 <= radius ** 2) {
          this.set(x, y, value);
        }
      }
    }
  }

  /** Bresenham segment; `dash` alternates [on, off] pixel runs when given. */
  drawLine(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    value: number,
    dash?: [number, number],
  ): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const xEnd = Math.round(x1);
    const yEnd = Math.round(y1);
    const dx = Math.abs(xEnd - x);
    const dy = -Math.abs(yEnd - y);
    const sx = x < xEnd ? 1 : -1;
    const sy = y < yEnd ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      const visible = !dash || step % (dash[0] + dash[1]) < dash[0];
      if (visible) {
        this.set(x, y, value);
      }
      if (x === xEnd && y === yEnd) {
        break;
      }
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step++;
    }
  }

  /** Plot a function of pixel x as a connected curve across [xStart, xEnd]. */
  drawCurve(xStart: number, xEnd: number, yOf: (x: number) => number, value: number): void {
    let prevY: number | null = null;
    for (let x = Math.round(xStart); x <= Math.round(xEnd); x++) {
      const y = Math.round(yOf(x));
      if (prevY !== null && Math.abs(y - prevY) > 1) {
        this.drawLine(x - 1, prevY, x, y, value);
      } else {
        this.set(x, y, value);
      }
      prevY = y;
    }
  }
}

/** Linear data-to-pixel mapping for one axis. */
export interface AxisScale {
  toPixel(value: number): number;
}

export function linearScale(
  dataMin: number,
  dataMax: number,
  pixelMin: number,
  pixelMax: number,
): AxisScale {
  const span = dataMax - dataMin || 1;
  return {
    toPixel: (value: number) => pixelMin + ((value - dataMin) / span) * (pixelMax - pixelMin),
  };
}
