import * as fs from 'node:fs';
import * as path from 'node:path';
import { describe, expect, it } from 'vitest';

import { readDataset } from '../src/baft.js';
import { DatasetLayoutError, extract, listClasses } from '../src/extract.js';
import { tmpdir, writeToyDataset } from './fixtures.js';

function spec(datasetDir: string, out: string, overrides: object = {}) {
  return {
    checkpoint: 'mock/tiny',
    datasetDir,
    split: 'val',
    views: 3,
    seed: 0,
    out,
    ...overrides,
  };
}

describe('listClasses', () => {
  it('uses sorted directory names by default', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { classes: ['oak', 'ash'] });
    expect(listClasses(root, 'val')).toEqual(['ash', 'oak']);
  });

  it('classes.txt overrides the directory order', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { classes: ['oak', 'ash'], withClassesTxt: ['oak', 'ash'] });
    expect(listClasses(root, 'val')).toEqual(['oak', 'ash']);
  });

  it('missing split directory is a layout error', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root);
    expect(() => listClasses(root, 'train')).toThrow(DatasetLayoutError);
  });
});

describe('extract', () => {
  it('writes a parseable dataset with labels in class order', () => {
    const root = tmpdir('toy-');
    const classes = writeToyDataset(root, { perClass: 2 });
    const out = path.join(root, 'toy.baft');
    const result = extract(spec(root, out));

    expect(result.classCount).toBe(3);
    expect(result.recordCount).toBe(6);
    expect(result.skipped).toEqual([]);

    const ds = readDataset(out);
    expect(ds.dim).toBe(32);
    expect(ds.viewsPerRecord).toBe(3);
    expect(ds.classNames).toEqual(classes);
    expect(ds.records.map((r) => r.label)).toEqual([0, 0, 1, 1, 2, 2]);
    expect(ds.textEmbeddings).toHaveLength(3 * 32);
  });

  it('views are unit norm within the encoder contract', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { perClass: 1 });
    const out = path.join(root, 'toy.baft');
    extract(spec(root, out));
    const ds = readDataset(out);
    for (const rec of ds.records) {
      for (let b = 0; b < ds.viewsPerRecord; b++) {
        let sq = 0;
        for (let i = 0; i < ds.dim; i++) {
          const v = rec.views[b * ds.dim + i];
          sq += v * v;
        }
        expect(Math.abs(Math.sqrt(sq) - 1)).toBeLessThan(1e-3);
      }
    }
  });

  it('equal specs produce byte-identical files; seeds change augmented views', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { perClass: 2 });
    const a = path.join(root, 'a.baft');
    const b = path.join(root, 'b.baft');
    const c = path.join(root, 'c.baft');
    extract(spec(root, a, { seed: 9 }));
    extract(spec(root, b, { seed: 9 }));
    extract(spec(root, c, { seed: 10 }));
    expect(fs.readFileSync(a).equals(fs.readFileSync(b))).toBe(true);
    expect(fs.readFileSync(a).equals(fs.readFileSync(c))).toBe(false);
  });

  it('view 0 is augmentation-free: identical across seeds and view counts', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { perClass: 1 });
    const one = path.join(root, 'one.baft');
    const many = path.join(root, 'many.baft');
    extract(spec(root, one, { views: 1, seed: 1 }));
    extract(spec(root, many, { views: 4, seed: 2 }));
    const dsOne = readDataset(one);
    const dsMany = readDataset(many);
    dsOne.records.forEach((rec, i) => {
      const v0 = dsMany.records[i].views.subarray(0, dsMany.dim);
      expect(Array.from(rec.views)).toEqual(Array.from(v0));
    });
  });

  it('unreadable images are skipped and logged in the manifest', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { perClass: 2, withBrokenFile: true });
    const out = path.join(root, 'toy.baft');
    const result = extract(spec(root, out));

    expect(result.recordCount).toBe(6);
    expect(result.skipped).toHaveLength(1);
    expect(result.skipped[0].path).toContain('zz-broken.ppm');

    const manifest = JSON.parse(fs.readFileSync(result.manifestPath, 'utf-8'));
    expect(manifest.skipped).toHaveLength(1);
    expect(manifest.records).toBe(6);
    expect(manifest.augmentation.flip_probability).toBe(0.5);
  });

  it('text embeddings are the raw template mean (below unit norm)', () => {
    const root = tmpdir('toy-');
    writeToyDataset(root, { perClass: 1 });
    const out = path.join(root, 'toy.baft');
    extract(spec(root, out));
    const ds = readDataset(out);
    for (let c = 0; c < 3; c++) {
      let sq = 0;
      for (let i = 0; i < ds.dim; i++) {
        const v = ds.textEmbeddings[c * ds.dim + i];
        sq += v * v;
      }
      const n = Math.sqrt(sq);
      // mean of distinct unit vectors is strictly inside the ball
      expect(n).toBeGreaterThan(0.05);
      expect(n).toBeLessThan(0.999);
    }
  });
});
