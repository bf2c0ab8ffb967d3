/** Binary PPM (P6) decoding into RGBA for canvas ImageData. */

import type { DecodedImage } from "./types.js";

export class PpmFormatError extends Error {}

/**
 * Decode a P6 stream: "P6" <ws> width <ws> height <ws> maxval <single ws>
 * followed by raw RGB bytes. '#' comments are allowed in the header.
 */
export function decodePpm(buffer: ArrayBuffer): DecodedImage {
  const bytes = new Uint8Array(buffer);
  let pos = 0;

  function token(): string {
    // skip whitespace and comments
    for (;;) {
      while (pos < bytes.length && isSpace(bytes[pos])) pos += 1;
      if (pos < bytes.length && bytes[pos] === 0x23) {
        while (pos < bytes.length && bytes[pos] !== 0x0a) pos += 1;
      } else {
        break;
      }
    }
    const start = pos;
    while (pos < bytes.length && !isSpace(bytes[pos])) pos += 1;
    if (start === pos) throw new PpmFormatError("truncated header");
    return String.fromCharCode(...bytes.slice(start, pos));
  }

  const magic = token();
  if (magic !== "P6") throw new PpmFormatError(`not a P6 file: ${magic}`);
  const width = Number(token());
  const height = Number(token());
  const maxval = Number(token());
  if (!Number.isInteger(width) || !Number.isInteger(height) || width < 1 || height < 1) {
    throw new PpmFormatError(`bad dimensions ${width}x${height}`);
  }
  if (maxval !== 255) throw new PpmFormatError(`unsupported maxval ${maxval}`);
  pos += 1; // the single whitespace byte after maxval

  const expected = width * height * 3;
  if (bytes.length - pos < expected) {
    throw new PpmFormatError(
      `pixel data truncated: need ${expected}, have ${bytes.length - pos}`
    );
  }
  const rgba = new Uint8ClampedArray(width * height * 4);
  for (let i = 0; i < width * height; i += 1) {
    rgba[i * 4] = bytes[pos + i * 3];
    rgba[i * 4 + 1] = bytes[pos + i * 3 + 1];
    rgba[i * 4 + 2] = bytes[pos + i * 3 + 2];
    rgba[i * 4 + 3] = 255;
  }
  return { width, height, rgba };
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

/** Pixel accessor used by tests. */
export function pixelAt(
  image: DecodedImage,
  x: number,
  y: number
): [number, number, number] {
  const off = (y * image.width + x) * 4;
  return [image.rgba[off], image.rgba[off + 1], image.rgba[off + 2]];
}
