// Split a sentence into plain/highlighted segments from API span offsets.
// The rendered highlights must cover exactly the served offsets, so this
// is pure string slicing: no trimming, no re-tokenizing.

import type { SpanOffsets } from './types.js';

export interface Segment {
  text: string;
  kind: 'plain' | 'verb' | 'source-verb';
}

export function segmentSentence(
  sentence: string,
  vSpans: SpanOffsets[],
  vjSpan: SpanOffsets | null,
): Segment[] {
  const marks: { span: SpanOffsets; kind: Segment['kind'] }[] = [
    ...vSpans.map((span) => ({ span, kind: 'verb' as const })),
    ...(vjSpan ? [{ span: vjSpan, kind: 'source-verb' as const }] : []),
  ].sort((a, b) => a.span.start - b.span.start);

  const segments: Segment[] = [];
  let cursor = 0;
  for (const { span, kind } of marks) {
    if (span.start < cursor || span.end > sentence.length || span.end <= span.start) {
      throw new Error(`bad span ${span.start}..${span.end} for sentence of length ${sentence.length}`);
    }
    if (span.start > cursor) {
      segments.push({ text: sentence.slice(cursor, span.start), kind: 'plain' });
    }
    segments.push({ text: sentence.slice(span.start, span.end), kind });
    cursor = span.end;
  }
  if (cursor < sentence.length) {
    segments.push({ text: sentence.slice(cursor), kind: 'plain' });
  }
  return segments;
}

export function joinSegments(segments: Segment[]): string {
  return segments.map((segment) => segment.text).join('');
}
