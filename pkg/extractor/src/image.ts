/**
 * Minimal image stack: binary PPM (P6) decode, bilinear resize,
 * center crop, random resized crop, horizontal flip.
 *
 * Images are row-major interleaved RGB float32 in [0, 1]. Bilinear
 * sampling uses half-pixel centers (the convention of the usual
 * vision-preprocessing stacks) and accumulates in float64.
 */

import { Rng } from './rng.js';

export interface Image {
  width: number;
  height: number;
  /** length = width * height * 3 */
  data: Float32Array;
}

export class ImageDecodeError extends Error {}

const CHANNELS = 3;

// RandomResizedCrop defaults: area fraction and aspect-ratio bounds.
const CROP_SCALE: readonly [number, number] = [0.08, 1.0];
const CROP_RATIO: readonly [number, number] = [3 / 4, 4 / 3];
const CROP_ATTEMPTS = 10;

/** Decode a binary PPM (P6, maxval 255). */
export function decodePpm(buf: Buffer): Image {
  let pos = 0;

  const token = (): string => {
    // skip whitespace and '#' comment lines between header fields
    for (;;) {
      while (pos < buf.length && isSpace(buf[pos])) pos++;
      if (pos < buf.length && buf[pos] === 0x23) {
        while (pos < buf.length && buf[pos] !== 0x0a) pos++;
        continue;
      }
      break;
    }
    const start = pos;
    while (pos < buf.length && !isSpace(buf[pos])) pos++;
    if (start === pos) throw new ImageDecodeError('truncated header');
    return buf.toString('ascii', start, pos);
  };

  if (token() !== 'P6') throw new ImageDecodeError('not a P6 ppm');
  const width = parseInt(token(), 10);
  const height = parseInt(token(), 10);
  const maxval = parseInt(token(), 10);
  if (!(width > 0) || !(height > 0)) {
    throw new ImageDecodeError(`bad dimensions ${width}x${height}`);
  }
  if (maxval !== 255) {
    throw new ImageDecodeError(`unsupported maxval ${maxval}`);
  }
  pos++; // single whitespace byte after maxval

  const n = width * height * CHANNELS;
  if (buf.length - pos < n) {
    throw new ImageDecodeError(
      `pixel data truncated: need ${n} bytes, have ${buf.length - pos}`,
    );
  }
  const data = new Float32Array(n);
  for (let i = 0; i < n; i++) data[i] = buf[pos + i] / 255;
  return { width, height, data };
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

/** Bilinear resample to outW x outH (half-pixel centers, edge clamp). */
export function resizeBilinear(img: Image, outW: number, outH: number): Image {
  if (outW === img.width && outH === img.height) {
    return { width: outW, height: outH, data: img.data.slice() };
  }
  const out = new Float32Array(outW * outH * CHANNELS);
  const sx = img.width / outW;
  const sy = img.height / outH;
  for (let y = 0; y < outH; y++) {
    const fy = Math.min(Math.max((y + 0.5) * sy - 0.5, 0), img.height - 1);
    const y0 = Math.floor(fy);
    const y1 = Math.min(y0 + 1, img.height - 1);
    const wy = fy - y0;
    for (let x = 0; x < outW; x++) {
      const fx = Math.min(Math.max((x + 0.5) * sx - 0.5, 0), img.width - 1);
      const x0 = Math.floor(fx);
      const x1 = Math.min(x0 + 1, img.width - 1);
      const wx = fx - x0;
      for (let c = 0; c < CHANNELS; c++) {
        const p00 = img.data[(y0 * img.width + x0) * CHANNELS + c];
        const p01 = img.data[(y0 * img.width + x1) * CHANNELS + c];
        const p10 = img.data[(y1 * img.width + x0) * CHANNELS + c];
        const p11 = img.data[(y1 * img.width + x1) * CHANNELS + c];
        const top = p00 + (p01 - p00) * wx;
        const bot = p10 + (p11 - p10) * wx;
        out[(y * outW + x) * CHANNELS + c] = top + (bot - top) * wy;
      }
    }
  }
  return { width: outW, height: outH, data: out };
}

export function crop(img: Image, x: number, y: number, w: number, h: number): Image {
  if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > img.width || y + h > img.height) {
    throw new RangeError(`crop ${w}x${h}@(${x},${y}) outside ${img.width}x${img.height}`);
  }
  const out = new Float32Array(w * h * CHANNELS);
  for (let row = 0; row < h; row++) {
    const src = ((y + row) * img.width + x) * CHANNELS;
    out.set(img.data.subarray(src, src + w * CHANNELS), row * w * CHANNELS);
  }
  return { width: w, height: h, data: out };
}

/** Resize the shorter side to `size`, then crop the central size x size. */
export function centerCrop(img: Image, size: number): Image {
  const scale = size / Math.min(img.width, img.height);
  const w = Math.max(size, Math.round(img.width * scale));
  const h = Math.max(size, Math.round(img.height * scale));
  const resized = resizeBilinear(img, w, h);
  return crop(resized, Math.floor((w - size) / 2), Math.floor((h - size) / 2), size, size);
}

/**
 * Sample a crop with area in CROP_SCALE x image area and aspect ratio in
 * CROP_RATIO, then resize it to size x size. Falls back to the center
 * crop when no sample fits after CROP_ATTEMPTS tries.
 */
export function randomResizedCrop(img: Image, size: number, rng: Rng): Image {
  const area = img.width * img.height;
  for (let attempt = 0; attempt < CROP_ATTEMPTS; attempt++) {
    const targetArea = area * rng.range(CROP_SCALE[0], CROP_SCALE[1]);
    // log-uniform aspect keeps wide/tall crops symmetric
    const logRatio = rng.range(Math.log(CROP_RATIO[0]), Math.log(CROP_RATIO[1]));
    const ratio = Math.exp(logRatio);
    const w = Math.round(Math.sqrt(targetArea * ratio));
    const h = Math.round(Math.sqrt(targetArea / ratio));
    if (w < 1 || h < 1 || w > img.width || h > img.height) continue;
    const x = rng.int(img.width - w + 1);
    const y = rng.int(img.height - h + 1);
    return resizeBilinear(crop(img, x, y, w, h), size, size);
  }
  return centerCrop(img, size);
}

export function horizontalFlip(img: Image): Image {
  const out = new Float32Array(img.data.length);
  for (let y = 0; y < img.height; y++) {
    for (let x = 0; x < img.width; x++) {
      const src = (y * img.width + x) * CHANNELS;
      const dst = (y * img.width + (img.width - 1 - x)) * CHANNELS;
      out[dst] = img.data[src];
      out[dst + 1] = img.data[src + 1];
      out[dst + 2] = img.data[src + 2];
    }
  }
  return { width: img.width, height: img.height, data: out };
}

/** Encode an image back to binary PPM (used by tests and fixtures). */
export function encodePpm(img: Image): Buffer {
  const header = Buffer.from(`P6\n${img.width} ${img.height}\n255\n`, 'ascii');
  const pixels = Buffer.alloc(img.width * img.height * CHANNELS);
  for (let i = 0; i < pixels.length; i++) {
    pixels[i] = Math.max(0, Math.min(255, Math.round(img.data[i] * 255)));
  }
  return Buffer.concat([header, pixels]);
}
