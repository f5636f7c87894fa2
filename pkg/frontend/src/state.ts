// Client-side review queue: a cache of served pages plus a focus index.
// Nothing here extrapolates server state; progress counters and verdict
// badges always come from the latest server responses.

import type { CandidateView, Decision, Progress, TaxonomyLabel } from './types.js';

export interface QueueState {
  total: number;
  pageSize: number;
  // sparse cache of candidates by rank position
  byRank: Map<number, CandidateView>;
  focus: number;
  progress: Progress | null;
  editing: boolean;
}

export function initialState(pageSize = 20): QueueState {
  return {
    total: 0,
    pageSize,
    byRank: new Map(),
    focus: 0,
    progress: null,
    editing: false,
  };
}

export function absorbPage(
  state: QueueState,
  items: CandidateView[],
  total: number,
): QueueState {
  const byRank = new Map(state.byRank);
  for (const item of items) byRank.set(item.rank, item);
  return { ...state, byRank, total };
}

export function absorbProgress(state: QueueState, progress: Progress): QueueState {
  return { ...state, progress };
}

export function absorbVerdict(state: QueueState, updated: CandidateView): QueueState {
  const byRank = new Map(state.byRank);
  byRank.set(updated.rank, updated);
  return { ...state, byRank };
}

export function focused(state: QueueState): CandidateView | undefined {
  return state.byRank.get(state.focus);
}

export function moveFocus(state: QueueState, delta: number): QueueState {
  if (state.total === 0) return state;
  const focus = Math.min(Math.max(state.focus + delta, 0), state.total - 1);
  return { ...state, focus, editing: false };
}

/** After an acknowledged verdict, land on the next unreviewed candidate. */
export function advanceToNextUnreviewed(state: QueueState): QueueState {
  for (let rank = state.focus + 1; rank < state.total; rank++) {
    const candidate = state.byRank.get(rank);
    if (!candidate || candidate.verdict === null) {
      return { ...state, focus: rank, editing: false };
    }
  }
  return { ...state, editing: false };
}

export function missingPageFor(state: QueueState, rank: number): number | null {
  if (state.byRank.has(rank)) return null;
  return Math.floor(rank / state.pageSize) * state.pageSize;
}

/** Client-side check mirroring the server's verdict invariant. */
export function validateEdit(
  candidate: CandidateView,
  editLabel: string,
  taxonomy: TaxonomyLabel[],
): string | null {
  if (!taxonomy.some((label) => label.id === editLabel)) {
    return `unknown category ${editLabel}`;
  }
  if (editLabel === candidate.originalId) {
    return 'the corrected category must differ from the original tag';
  }
  return null;
}

export function verdictBadge(candidate: CandidateView): string {
  if (candidate.verdict === null) return '';
  if (candidate.verdict.decision === 'edit') {
    return `edited -> ${candidate.verdict.editLabel}`;
  }
  return candidate.verdict.decision === 'accept' ? 'accepted' : 'rejected';
}

export interface PendingVerdict {
  exampleId: string;
  decision: Decision;
  editLabel?: string;
}
