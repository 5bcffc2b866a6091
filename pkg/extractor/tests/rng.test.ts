import { describe, expect, it } from 'vitest';

import { Rng, fnv1a } from '../src/rng.js';

describe('fnv1a', () => {
  it('matches the published 32-bit test vectors', () => {
    expect(fnv1a('')).toBe(0x811c9dc5);
    expect(fnv1a('a')).toBe(0xe40c292c);
    expect(fnv1a('foobar')).toBe(0xbf9cf968);
  });
});

describe('Rng', () => {
  it('is deterministic for a given seed', () => {
    const a = new Rng(42);
    const b = new Rng(42);
    for (let i = 0; i < 100; i++) expect(a.uniform()).toBe(b.uniform());
  });

  it('different seeds diverge', () => {
    const a = new Rng(1);
    const b = new Rng(2);
    const same = Array.from({ length: 10 }, () => a.uniform() === b.uniform());
    expect(same.every(Boolean)).toBe(false);
  });

  it('uniform stays in [0, 1) and int in [0, n)', () => {
    const rng = new Rng(7);
    for (let i = 0; i < 10_000; i++) {
      const u = rng.uniform();
      expect(u).toBeGreaterThanOrEqual(0);
      expect(u).toBeLessThan(1);
      const k = rng.int(13);
      expect(k).toBeGreaterThanOrEqual(0);
      expect(k).toBeLessThan(13);
      expect(Number.isInteger(k)).toBe(true);
    }
  });

  it('rejects non-positive int bounds', () => {
    expect(() => new Rng(0).int(0)).toThrow(RangeError);
  });

  it('normal() has roughly standard moments', () => {
    const rng = new Rng(123);
    const n = 20_000;
    let sum = 0;
    let sq = 0;
    for (let i = 0; i < n; i++) {
      const z = rng.normal();
      sum += z;
      sq += z * z;
    }
    const mean = sum / n;
    const variance = sq / n - mean * mean;
    expect(Math.abs(mean)).toBeLessThan(0.03);
    expect(Math.abs(variance - 1)).toBeLessThan(0.05);
  });

  it('range() respects its bounds', () => {
    const rng = new Rng(5);
    for (let i = 0; i < 1000; i++) {
      const v = rng.range(-2, 3);
      expect(v).toBeGreaterThanOrEqual(-2);
      expect(v).toBeLessThan(3);
    }
  });
});
