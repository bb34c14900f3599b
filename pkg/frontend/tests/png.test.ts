import { describe, expect, it } from "vitest";

import { decodeGrayPng, encodeGrayPng } from "../src/png.js";

describe("grayscale PNG codec", () => {
  it("round-trips pixel data exactly", () => {
    const width = 37;
    const height = 23;
    const pixels = new Uint8Array(width * height).map((_, i) => (i * 7) % 256);
    const decoded = decodeGrayPng(encodeGrayPng(width, height, pixels));
    expect(decoded.width).toBe(width);
    expect(decoded.height).toBe(height);
    expect(Buffer.from(decoded.pixels).equals(Buffer.from(pixels))).toBe(true);
  });

  it("starts with the PNG signature and IHDR", () => {
    const buf = encodeGrayPng(4, 4, new Uint8Array(16));
    expect([...buf.subarray(0, 8)]).toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(buf.toString("ascii", 12, 16)).toBe("IHDR");
    expect(buf.toString("ascii", buf.length - 8, buf.length - 4)).toBe("IEND");
  });

  it("rejects a mis-sized pixel buffer", () => {
    expect(() => encodeGrayPng(4, 4, new Uint8Array(15))).toThrowError(/expected 16/);
  });
});
