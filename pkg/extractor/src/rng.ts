/**
 * Small deterministic PRNG (mulberry32) plus the sampling helpers the
 * augmentation pipeline needs. Everything downstream that randomizes —
 * crop geometry, flips, the mock encoder weights — draws from one of
 * these so a seed fixes the whole extraction byte-for-byte.
 */

export function fnv1a(text: string): number {
  // 32-bit FNV-1a over UTF-8; used to turn checkpoint ids and prompts
  // into seeds.
  const bytes = Buffer.from(text, 'utf-8');
  let h = 0x811c9dc5;
  for (const b of bytes) {
    h ^= b;
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export class Rng {
  private state: number;
  private spare: number | null = null;

  constructor(seed: number) {
    this.state = seed >>> 0;
  }

  /** Uniform float in [0, 1). */
  uniform(): number {
    this.state = (this.state + 0x6d2b79f5) >>> 0;
    let t = this.state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  }

  /** Uniform integer in [0, n). */
  int(n: number): number {
    if (!Number.isInteger(n) || n <= 0) {
      throw new RangeError(`int() needs a positive integer bound, got ${n}`);
    }
    return Math.floor(this.uniform() * n);
  }

  /** Uniform float in [lo, hi). */
  range(lo: number, hi: number): number {
    return lo + (hi - lo) * this.uniform();
  }

  /** Standard normal via Box-Muller; pairs are cached. */
  normal(): number {
    if (this.spare !== null) {
      const v = this.spare;
      this.spare = null;
      return v;
    }
    let u = 0;
    do {
      u = this.uniform();
    } while (u === 0); // log(0) guard
    const r = Math.sqrt(-2 * Math.log(u));
    const theta = 2 * Math.PI * this.uniform();
    this.spare = r * Math.sin(theta);
    return r * Math.cos(theta);
  }
}
