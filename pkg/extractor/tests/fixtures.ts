// Shared test fixtures: tiny deterministic PPM datasets on disk.

import * as fs from 'node:fs';
import * as os from 'node:os';
import * as path from 'node:path';

import { Image, encodePpm } from '../src/image.js';

export function tmpdir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), prefix));
}

/** Deterministic class-coded test pattern. */
export function patternImage(
  classIdx: number,
  imageIdx: number,
  width: number,
  height: number,
): Image {
  const data = new Float32Array(width * height * 3);
  const base = (classIdx + 1) / 8;
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      for (let c = 0; c < 3; c++) {
        const wave = Math.sin(0.7 * (x * (imageIdx + 1) + y * (classIdx + 2) + c));
        const v = base + 0.35 * wave + 0.05 * c;
        data[(y * width + x) * 3 + c] = Math.min(1, Math.max(0, v));
      }
    }
  }
  return { width, height, data };
}

export interface ToyDatasetOptions {
  classes?: string[];
  perClass?: number;
  width?: number;
  height?: number;
  withBrokenFile?: boolean;
  withClassesTxt?: string[] | null;
}

/** Write <root>/val/<class>/img<i>.ppm for each class. */
export function writeToyDataset(root: string, opts: ToyDatasetOptions = {}): string[] {
  const classes = opts.classes ?? ['ash', 'birch', 'cedar'];
  const perClass = opts.perClass ?? 3;
  const width = opts.width ?? 24;
  const height = opts.height ?? 20;

  classes.forEach((name, c) => {
    const dir = path.join(root, 'val', name);
    fs.mkdirSync(dir, { recursive: true });
    for (let i = 0; i < perClass; i++) {
      fs.writeFileSync(
        path.join(dir, `img${i}.ppm`),
        encodePpm(patternImage(c, i, width, height)),
      );
    }
  });
  if (opts.withBrokenFile) {
    fs.writeFileSync(
      path.join(root, 'val', classes[0], 'zz-broken.ppm'),
      Buffer.from('this is not a ppm'),
    );
  }
  if (opts.withClassesTxt) {
    fs.writeFileSync(
      path.join(root, 'classes.txt'),
      opts.withClassesTxt.join('\n') + '\n',
    );
  }
  return classes;
}
