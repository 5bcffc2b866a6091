/**
 * Encoder registry. An Encoder turns an image or a prompt string into a
 * unit-norm embedding; the engine downstream never sees pixels or text.
 *
 * Only deterministic mock checkpoints are registered here — they give
 * the full pipeline (decode, augment, encode, serialize) something real
 * to chew on without shipping gigabytes of weights. A real dual-encoder
 * drops in by implementing the same interface.
 */

import { Image, resizeBilinear } from './image.js';
import { Rng, fnv1a } from './rng.js';

export interface Encoder {
  readonly checkpoint: string;
  readonly dim: number;
  /** square input resolution fed to encodeImage */
  readonly imageSize: number;
  encodeImage(img: Image): Float64Array;
  encodeText(prompt: string): Float64Array;
}

export class UnknownCheckpointError extends Error {}

interface MockSpec {
  dim: number;
  imageSize: number;
}

const MOCK_CHECKPOINTS: Record<string, MockSpec> = {
  'mock/tiny': { dim: 32, imageSize: 16 },
  'mock/base': { dim: 64, imageSize: 32 },
};

class MockEncoder implements Encoder {
  readonly checkpoint: string;
  readonly dim: number;
  readonly imageSize: number;
  private readonly weights: Float64Array; // dim x (imageSize^2 * 3)

  constructor(checkpoint: string, spec: MockSpec) {
    this.checkpoint = checkpoint;
    this.dim = spec.dim;
    this.imageSize = spec.imageSize;
    const inputs = spec.imageSize * spec.imageSize * 3;
    const rng = new Rng(fnv1a(`${checkpoint}#image`));
    this.weights = new Float64Array(spec.dim * inputs);
    for (let i = 0; i < this.weights.length; i++) {
      this.weights[i] = rng.normal() / Math.sqrt(inputs);
    }
  }

  encodeImage(img: Image): Float64Array {
    const sized =
      img.width === this.imageSize && img.height === this.imageSize
        ? img
        : resizeBilinear(img, this.imageSize, this.imageSize);
    const inputs = this.imageSize * this.imageSize * 3;
    const out = new Float64Array(this.dim);
    for (let d = 0; d < this.dim; d++) {
      let acc = 0;
      const row = d * inputs;
      for (let i = 0; i < inputs; i++) acc += this.weights[row + i] * sized.data[i];
      out[d] = Math.tanh(acc); // keep one nonlinearity so crops don't collapse
    }
    return normalize(out);
  }

  encodeText(prompt: string): Float64Array {
    const rng = new Rng(fnv1a(`${this.checkpoint}#text#${prompt}`));
    const out = new Float64Array(this.dim);
    for (let d = 0; d < this.dim; d++) out[d] = rng.normal();
    return normalize(out);
  }
}

function normalize(v: Float64Array): Float64Array {
  let sq = 0;
  for (let i = 0; i < v.length; i++) sq += v[i] * v[i];
  const norm = Math.sqrt(sq);
  if (norm === 0) throw new Error('zero embedding');
  for (let i = 0; i < v.length; i++) v[i] /= norm;
  return v;
}

export function createEncoder(checkpoint: string): Encoder {
  const spec = MOCK_CHECKPOINTS[checkpoint];
  if (spec === undefined) {
    const known = Object.keys(MOCK_CHECKPOINTS).join(', ');
    throw new UnknownCheckpointError(
      `unknown checkpoint "${checkpoint}" (available: ${known})`,
    );
  }
  return new MockEncoder(checkpoint, spec);
}

export function knownCheckpoints(): string[] {
  return Object.keys(MOCK_CHECKPOINTS);
}
