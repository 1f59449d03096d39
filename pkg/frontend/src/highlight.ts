/** Offset-faithful rendering of document text with highlighted concept spans.
 * Spans are non-overlapping and sorted by start, so a single left-to-right
 * walk reproduces the text exactly. */

import type { AnnotationDto } from './types.js';

export interface SpanFlags {
  flagged: Set<string>;
  selected?: string;
}

export function renderHighlighted(
  text: string,
  annotations: AnnotationDto[],
  flags: SpanFlags,
): DocumentFragment {
  const fragment = document.createDocumentFragment();
  const ordered = [...annotations].sort((a, b) => a.start - b.start);
  let cursor = 0;
  for (const ann of ordered) {
    if (ann.start > cursor) {
      fragment.append(document.createTextNode(text.slice(cursor, ann.start)));
    }
    const mark = document.createElement('mark');
    mark.className = 'span';
    mark.dataset.annotationId = ann.id;
    mark.dataset.cui = ann.cui;
    mark.dataset.status = ann.status;
    mark.dataset.start = String(ann.start);
    mark.dataset.end = String(ann.end);
    if (flags.flagged.has(ann.id)) mark.classList.add('flagged');
    if (flags.selected === ann.id) mark.classList.add('selected');
    mark.textContent = text.slice(ann.start, ann.end);
    fragment.append(mark);
    cursor = ann.end;
  }
  if (cursor < text.length) {
    fragment.append(document.createTextNode(text.slice(cursor)));
  }
  return fragment;
}

/** Rendered text must be byte-equal to the source document. */
export function renderedText(container: HTMLElement): string {
  return container.textContent ?? '';
}
