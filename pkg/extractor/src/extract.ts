/**
 * Extraction pipeline: walk a dataset split, encode B views per image,
 * and write one .baft file plus a provenance sidecar.
 *
 * Dataset layout on disk:
 *   <dataset>/classes.txt          optional, one class name per line
 *   <dataset>/<split>/<class>/*.ppm
 *
 * Class order comes from classes.txt when present, otherwise from the
 * sorted directory names; the label of a record is the index of its
 * class directory in that order. View 0 is the un-augmented center
 * crop; views 1..B-1 are random-resized crops with a fair-coin
 * horizontal flip. A single RNG seeded from `seed` drives every
 * augmentation in dataset order, so equal specs give equal files.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';

import { BaftRecord, writeDataset } from './baft.js';
import { createEncoder } from './encoder.js';
import {
  centerCrop,
  decodePpm,
  horizontalFlip,
  randomResizedCrop,
} from './image.js';
import { Rng } from './rng.js';
import { DEFAULT_TEMPLATES, fillTemplate } from './templates.js';

const FLIP_PROBABILITY = 0.5;

export interface ExtractSpec {
  checkpoint: string;
  datasetDir: string;
  split: string;
  views: number;
  seed: number;
  out: string;
  templates?: readonly string[];
}

export interface SkippedImage {
  path: string;
  reason: string;
}

export interface ExtractResult {
  classCount: number;
  recordCount: number;
  dim: number;
  skipped: SkippedImage[];
  manifestPath: string;
}

export class DatasetLayoutError extends Error {}

export function listClasses(datasetDir: string, split: string): string[] {
  const listing = path.join(datasetDir, 'classes.txt');
  if (fs.existsSync(listing)) {
    const names = fs
      .readFileSync(listing, 'utf-8')
      .split('\n')
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
    if (names.length === 0) throw new DatasetLayoutError('classes.txt is empty');
    return names;
  }
  const splitDir = path.join(datasetDir, split);
  if (!fs.existsSync(splitDir)) {
    throw new DatasetLayoutError(`split directory not found: ${splitDir}`);
  }
  const names = fs
    .readdirSync(splitDir, { withFileTypes: true })
    .filter((e) => e.isDirectory())
    .map((e) => e.name)
    .sort();
  if (names.length === 0) {
    throw new DatasetLayoutError(`no class directories under ${splitDir}`);
  }
  return names;
}

export function extract(spec: ExtractSpec): ExtractResult {
  if (spec.views < 1) throw new RangeError(`views must be >= 1, got ${spec.views}`);
  const encoder = createEncoder(spec.checkpoint);
  const templates = spec.templates ?? DEFAULT_TEMPLATES;
  if (templates.length === 0) throw new RangeError('need at least one template');

  const classNames = listClasses(spec.datasetDir, spec.split);
  const j = classNames.length;
  const d = encoder.dim;

  // Text side: mean of unit template embeddings, left unnormalized.
  const textEmbeddings = new Float32Array(j * d);
  for (let c = 0; c < j; c++) {
    const mean = new Float64Array(d);
    for (const template of templates) {
      const e = encoder.encodeText(fillTemplate(template, classNames[c]));
      for (let i = 0; i < d; i++) mean[i] += e[i];
    }
    for (let i = 0; i < d; i++) textEmbeddings[c * d + i] = mean[i] / templates.length;
  }

  const rng = new Rng(spec.seed);
  const records: BaftRecord[] = [];
  const skipped: SkippedImage[] = [];

  for (let c = 0; c < j; c++) {
    const classDir = path.join(spec.datasetDir, spec.split, classNames[c]);
    let files: string[];
    try {
      files = fs
        .readdirSync(classDir)
        .filter((f) => f.toLowerCase().endsWith('.ppm'))
        .sort();
    } catch {
      // a listed class may have no directory in this split
      continue;
    }
    for (const file of files) {
      const imagePath = path.join(classDir, file);
      let img;
      try {
        img = decodePpm(fs.readFileSync(imagePath));
      } catch (err) {
        skipped.push({ path: imagePath, reason: String(err) });
        continue;
      }
      const views = new Float32Array(spec.views * d);
      views.set(encoder.encodeImage(centerCrop(img, encoder.imageSize)), 0);
      for (let b = 1; b < spec.views; b++) {
        let augmented = randomResizedCrop(img, encoder.imageSize, rng);
        if (rng.uniform() < FLIP_PROBABILITY) augmented = horizontalFlip(augmented);
        views.set(encoder.encodeImage(augmented), b * d);
      }
      records.push({ label: c, views });
    }
  }

  writeDataset(spec.out, {
    dim: d,
    textEmbeddings,
    classNames,
    viewsPerRecord: spec.views,
    records,
  });

  const manifestPath = `${spec.out}.manifest.json`;
  const manifest = {
    checkpoint: spec.checkpoint,
    dataset: spec.datasetDir,
    split: spec.split,
    views: spec.views,
    seed: spec.seed,
    templates: [...templates],
    augmentation: {
      crop_scale: [0.08, 1.0],
      crop_ratio: [0.75, 4 / 3],
      flip_probability: FLIP_PROBABILITY,
    },
    classes: j,
    records: records.length,
    skipped,
  };
  fs.writeFileSync(manifestPath, JSON.stringify(manifest, null, 2) + '\n');

  return {
    classCount: j,
    recordCount: records.length,
    dim: d,
    skipped,
    manifestPath,
  };
}
