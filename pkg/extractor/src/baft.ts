/**
 * Writer/reader for the .baft container the adaptation engine consumes.
 *
 * Layout (all little-endian):
 *   header  magic "BAFT" | u16 version=1 | u16 flags | u32 D | u32 J
 *           | u32 B | u64 N                              (28 bytes)
 *   names   J x { u16 byteLength, UTF-8 bytes }          (flags bit 1)
 *   text    J x D float32, raw multi-template averages
 *   records N x { i32 label (-1 = absent), B x D float32 }
 *
 * The writer must stay bit-exact with the engine's own writer; the test
 * suite byte-compares against its committed golden file.
 */

import * as fs from 'node:fs';

export const MAGIC = 'BAFT';
export const VERSION = 1;
export const HEADER_SIZE = 28;
export const FLAG_LABELS = 0x1;
export const FLAG_NAMES = 0x2;

export class BaftError extends Error {}

export interface BaftRecord {
  /** null when unlabeled; serialized as -1 */
  label: number | null;
  /** B x D row-major */
  views: Float32Array;
}

export interface BaftDataset {
  dim: number;
  /** J x dim row-major, raw (not necessarily unit) text embeddings */
  textEmbeddings: Float32Array;
  classNames: string[] | null;
  viewsPerRecord: number;
  records: BaftRecord[];
}

function checkFinite(arr: Float32Array, what: string): void {
  for (let i = 0; i < arr.length; i++) {
    if (!Number.isFinite(arr[i])) {
      throw new BaftError(`${what} contains a non-finite value at index ${i}`);
    }
  }
}

export function serializeDataset(ds: BaftDataset): Buffer {
  const { dim, textEmbeddings, classNames, viewsPerRecord, records } = ds;
  if (dim < 2) throw new BaftError(`dimension must be >= 2, got ${dim}`);
  if (viewsPerRecord < 1) {
    throw new BaftError(`views per record must be >= 1, got ${viewsPerRecord}`);
  }
  if (textEmbeddings.length % dim !== 0) {
    throw new BaftError('text embedding length is not a multiple of dim');
  }
  const j = textEmbeddings.length / dim;
  if (j < 1) throw new BaftError('need at least one class');
  if (classNames !== null && classNames.length !== j) {
    throw new BaftError(`${classNames.length} names for ${j} classes`);
  }
  checkFinite(textEmbeddings, 'text embeddings');

  let flags = 0;
  if (records.some((r) => r.label !== null)) flags |= FLAG_LABELS;
  if (classNames !== null) flags |= FLAG_NAMES;

  const header = Buffer.alloc(HEADER_SIZE);
  header.write(MAGIC, 0, 'ascii');
  header.writeUInt16LE(VERSION, 4);
  header.writeUInt16LE(flags, 6);
  header.writeUInt32LE(dim, 8);
  header.writeUInt32LE(j, 12);
  header.writeUInt32LE(viewsPerRecord, 16);
  header.writeBigUInt64LE(BigInt(records.length), 20);

  const parts: Buffer[] = [header];
  if (classNames !== null) {
    for (const name of classNames) {
      const utf8 = Buffer.from(name, 'utf-8');
      if (utf8.length > 0xffff) throw new BaftError(`class name too long: ${name}`);
      const len = Buffer.alloc(2);
      len.writeUInt16LE(utf8.length, 0);
      parts.push(len, utf8);
    }
  }
  parts.push(float32Bytes(textEmbeddings));

  const viewLen = viewsPerRecord * dim;
  for (let i = 0; i < records.length; i++) {
    const rec = records[i];
    if (rec.views.length !== viewLen) {
      throw new BaftError(
        `record ${i} has ${rec.views.length} floats, expected ${viewsPerRecord}x${dim}`,
      );
    }
    if (rec.label !== null && (rec.label < 0 || rec.label >= j)) {
      throw new BaftError(`record ${i} label ${rec.label} outside [0, ${j})`);
    }
    checkFinite(rec.views, `record ${i} views`);
    const label = Buffer.alloc(4);
    label.writeInt32LE(rec.label === null ? -1 : rec.label, 0);
    parts.push(label, float32Bytes(rec.views));
  }
  return Buffer.concat(parts);
}

export function writeDataset(path: string, ds: BaftDataset): void {
  fs.writeFileSync(path, serializeDataset(ds));
}

function float32Bytes(arr: Float32Array): Buffer {
  // Fresh little-endian copy; never alias the caller's buffer.
  const buf = Buffer.alloc(arr.length * 4);
  for (let i = 0; i < arr.length; i++) buf.writeFloatLE(arr[i], i * 4);
  return buf;
}

export function readDataset(path: string): BaftDataset {
  const buf = fs.readFileSync(path);
  if (buf.length < HEADER_SIZE) throw new BaftError('file shorter than header');
  if (buf.toString('ascii', 0, 4) !== MAGIC) throw new BaftError('bad magic');
  const version = buf.readUInt16LE(4);
  if (version !== VERSION) throw new BaftError(`unsupported version ${version}`);
  const flags = buf.readUInt16LE(6);
  const dim = buf.readUInt32LE(8);
  const j = buf.readUInt32LE(12);
  const b = buf.readUInt32LE(16);
  const n = Number(buf.readBigUInt64LE(20));

  let pos = HEADER_SIZE;
  let classNames: string[] | null = null;
  if (flags & FLAG_NAMES) {
    classNames = [];
    for (let i = 0; i < j; i++) {
      if (pos + 2 > buf.length) throw new BaftError('truncated in names');
      const len = buf.readUInt16LE(pos);
      pos += 2;
      if (pos + len > buf.length) throw new BaftError('truncated in names');
      classNames.push(buf.toString('utf-8', pos, pos + len));
      pos += len;
    }
  }

  const textBytes = j * dim * 4;
  if (pos + textBytes > buf.length) throw new BaftError('truncated in text section');
  const textEmbeddings = readFloat32(buf, pos, j * dim);
  pos += textBytes;

  const records: BaftRecord[] = [];
  const viewBytes = b * dim * 4;
  for (let i = 0; i < n; i++) {
    if (pos + 4 + viewBytes > buf.length) {
      throw new BaftError(`truncated in record ${i}`);
    }
    const raw = buf.readInt32LE(pos);
    pos += 4;
    records.push({ label: raw < 0 ? null : raw, views: readFloat32(buf, pos, b * dim) });
    pos += viewBytes;
  }
  if (pos !== buf.length) {
    throw new BaftError(`${buf.length - pos} trailing bytes after last record`);
  }
  return { dim, textEmbeddings, classNames, viewsPerRecord: b, records };
}

function readFloat32(buf: Buffer, offset: number, count: number): Float32Array {
  const out = new Float32Array(count);
  for (let i = 0; i < count; i++) out[i] = buf.readFloatLE(offset + i * 4);
  return out;
}
