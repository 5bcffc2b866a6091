#!/usr/bin/env node
// extract --checkpoint mock/base --dataset ./toy --split val \
//         --views 64 --seed 0 --out toy.baft
//
// Exit codes follow the engine CLI: 0 ok, 1 usage, 2 data/io.

import { parseArgs } from 'node:util';

import { UnknownCheckpointError, knownCheckpoints } from './encoder.js';
import { DatasetLayoutError, extract } from './extract.js';
import { ImageDecodeError } from './image.js';
import { BaftError } from './baft.js';

function usage(): string {
  return [
    'usage: baft-extract --checkpoint ID --dataset DIR --out FILE',
    '                    [--split val] [--views 64] [--seed 0]',
    `checkpoints: ${knownCheckpoints().join(', ')}`,
  ].join('\n');
}

export function cliMain(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        checkpoint: { type: 'string' },
        dataset: { type: 'string' },
        split: { type: 'string', default: 'val' },
        views: { type: 'string', default: '64' },
        seed: { type: 'string', default: '0' },
        out: { type: 'string' },
        help: { type: 'boolean', short: 'h', default: false },
      },
    });
  } catch (err) {
    console.error(String(err));
    console.error(usage());
    return 1;
  }
  const opts = parsed.values;
  if (opts.help) {
    console.log(usage());
    return 0;
  }
  for (const required of ['checkpoint', 'dataset', 'out'] as const) {
    if (opts[required] === undefined) {
      console.error(`missing --${required}\n${usage()}`);
      return 1;
    }
  }
  const views = Number(opts.views);
  const seed = Number(opts.seed);
  if (!Number.isInteger(views) || views < 1) {
    console.error(`--views must be a positive integer, got ${opts.views}`);
    return 1;
  }
  if (!Number.isInteger(seed)) {
    console.error(`--seed must be an integer, got ${opts.seed}`);
    return 1;
  }

  try {
    const result = extract({
      checkpoint: opts.checkpoint!,
      datasetDir: opts.dataset!,
      split: opts.split!,
      views,
      seed,
      out: opts.out!,
    });
    const skipNote = result.skipped.length
      ? ` (${result.skipped.length} skipped, see manifest)`
      : '';
    console.log(
      `wrote ${result.recordCount} records x ${views} views, ` +
        `${result.classCount} classes, dim ${result.dim} -> ${opts.out}${skipNote}`,
    );
    return 0;
  } catch (err) {
    if (err instanceof UnknownCheckpointError || err instanceof RangeError) {
      console.error(String(err));
      return 1;
    }
    if (
      err instanceof DatasetLayoutError ||
      err instanceof BaftError ||
      err instanceof ImageDecodeError ||
      (err as NodeJS.ErrnoException).code !== undefined
    ) {
      console.error(String(err));
      return 2;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(cliMain(process.argv.slice(2)));
}
