// Payload shapes served by the /v1 review API.

export interface SpanOffsets {
  start: number;
  end: number;
}

export interface VerdictView {
  decision: 'accept' | 'reject' | 'edit';
  editLabel: string | null;
  annotator: string;
  timestamp: string;
}

export interface CandidateView {
  exampleId: string;
  rank: number;
  sentence: string;
  japanese: string;
  vSpans: SpanOffsets[];
  vjSpan: SpanOffsets | null;
  originalId: string;
  originalGloss: string;
  proposedId: string;
  proposedGloss: string;
  pOriginal: number;
  pProposed: number;
  confidenceM1: number;
  confidenceM2: number;
  support: number;
  learner: string;
  mode: string;
  verdict: VerdictView | null;
}

export interface CandidatePage {
  total: number;
  offset: number;
  limit: number;
  items: CandidateView[];
}

export interface Progress {
  total: number;
  reviewed: number;
  accepted: number;
  rejected: number;
  edited: number;
  cursor: number;
}

export interface TaxonomyLabel {
  id: string;
  symbol: string;
  group: string;
  description: string;
}

export type Decision = 'accept' | 'reject' | 'edit';

export interface VerdictRequest {
  decision: Decision;
  editLabel?: string;
  annotator: string;
}
