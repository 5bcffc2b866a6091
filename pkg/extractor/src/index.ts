export {
  BaftError,
  FLAG_LABELS,
  FLAG_NAMES,
  HEADER_SIZE,
  MAGIC,
  VERSION,
  readDataset,
  serializeDataset,
  writeDataset,
} from './baft.js';
export type { BaftDataset, BaftRecord } from './baft.js';
export { UnknownCheckpointError, createEncoder, knownCheckpoints } from './encoder.js';
export type { Encoder } from './encoder.js';
export { DatasetLayoutError, extract, listClasses } from './extract.js';
export type { ExtractResult, ExtractSpec, SkippedImage } from './extract.js';
export {
  ImageDecodeError,
  centerCrop,
  crop,
  decodePpm,
  encodePpm,
  horizontalFlip,
  randomResizedCrop,
  resizeBilinear,
} from './image.js';
export type { Image } from './image.js';
export { Rng, fnv1a } from './rng.js';
export { DEFAULT_TEMPLATES, fillTemplate } from './templates.js';
