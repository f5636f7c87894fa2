// Orchestrates API calls against the queue state.  The DOM layer only
// calls controller methods and re-renders from the state it returns, so
// tests can drive the whole review flow without a browser.

import { ApiError, ReviewApi } from './api.js';
import {
  QueueState,
  absorbPage,
  absorbProgress,
  absorbVerdict,
  advanceToNextUnreviewed,
  focused,
  initialState,
  missingPageFor,
  validateEdit,
} from './state.js';
import type { Decision, TaxonomyLabel } from './types.js';

export class ReviewController {
  state: QueueState;
  taxonomy: TaxonomyLabel[] = [];
  lastError: string | null = null;

  constructor(
    private readonly api: ReviewApi,
    private readonly annotator = 'annotator',
    pageSize = 20,
  ) {
    this.state = initialState(pageSize);
  }

  async start(): Promise<void> {
    this.taxonomy = await this.api.taxonomy();
    const page = await this.api.candidates(0, this.state.pageSize);
    this.state = absorbPage(this.state, page.items, page.total);
    this.state = absorbProgress(this.state, await this.api.progress());
    this.state = { ...this.state, focus: this.state.progress?.cursor ?? 0 };
    await this.ensureFocusLoaded();
  }

  async ensureFocusLoaded(): Promise<void> {
    const offset = missingPageFor(this.state, this.state.focus);
    if (offset === null) return;
    const page = await this.api.candidates(offset, this.state.pageSize);
    this.state = absorbPage(this.state, page.items, page.total);
  }

  async move(delta: number): Promise<void> {
    const next = Math.min(
      Math.max(this.state.focus + delta, 0),
      Math.max(this.state.total - 1, 0),
    );
    this.state = { ...this.state, focus: next, editing: false };
    await this.ensureFocusLoaded();
  }

  /** Submit a verdict for the focused candidate; local state changes only
   * after the server acknowledges. */
  async submit(decision: Decision, editLabel?: string): Promise<boolean> {
    const candidate = focused(this.state);
    if (!candidate) return false;
    if (decision === 'edit') {
      const problem = validateEdit(candidate, editLabel ?? '', this.taxonomy);
      if (problem !== null) {
        this.lastError = problem;
        return false;
      }
    }
    try {
      const progress = await this.api.submitVerdict(candidate.exampleId, {
        decision,
        editLabel: decision === 'edit' ? editLabel : undefined,
        annotator: this.annotator,
      });
      this.state = absorbProgress(this.state, progress);
      const refreshed = await this.api.candidate(candidate.exampleId);
      this.state = absorbVerdict(this.state, refreshed);
      this.state = advanceToNextUnreviewed(this.state);
      await this.ensureFocusLoaded();
      this.lastError = null;
      return true;
    } catch (error) {
      this.lastError = error instanceof ApiError ? error.detail : String(error);
      return false;
    }
  }
}
