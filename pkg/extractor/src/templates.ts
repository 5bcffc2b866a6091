// Prompt templates averaged per class. `{}` is replaced with the class
// name; the per-class text embedding is the plain mean of the unit
// template embeddings (left unnormalized — the engine normalizes once).

export const DEFAULT_TEMPLATES: readonly string[] = [
  'a photo of a {}.',
  'a bad photo of a {}.',
  'a photo of many {}.',
  'a low resolution photo of a {}.',
  'a cropped photo of a {}.',
  'a bright photo of a {}.',
  'a photo of the {}.',
];

export function fillTemplate(template: string, className: string): string {
  if (!template.includes('{}')) {
    throw new Error(`template has no {} placeholder: ${template}`);
  }
  return template.replaceAll('{}', className);
}
