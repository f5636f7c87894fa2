// DOM wiring: render the queue and detail panes from controller state and
// forward user input to the controller.

import { ReviewApi } from './api.js';
import { ReviewController } from './controller.js';
import { segmentSentence } from './highlight.js';
import { actionForKey } from './keyboard.js';
import { focused, verdictBadge } from './state.js';
import type { CandidateView } from './types.js';

const api = new ReviewApi('');
const controller = new ReviewController(api, 'annotator');

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function renderSentence(container: HTMLElement, candidate: CandidateView): void {
  container.textContent = '';
  for (const segment of segmentSentence(candidate.sentence, candidate.vSpans, candidate.vjSpan)) {
    if (segment.kind === 'plain') {
      container.appendChild(document.createTextNode(segment.text));
    } else {
      const mark = document.createElement('mark');
      mark.className = segment.kind === 'verb' ? 'v-phrase' : 'vj-phrase';
      mark.textContent = segment.text;
      container.appendChild(mark);
    }
  }
}

function renderQueue(): void {
  const list = el<HTMLOListElement>('queue');
  list.textContent = '';
  const state = controller.state;
  if (state.total === 0) {
    el('empty-state').hidden = false;
    return;
  }
  el('empty-state').hidden = true;
  const start = Math.max(0, state.focus - 5);
  const end = Math.min(state.total, start + 12);
  for (let rank = start; rank < end; rank++) {
    const item = document.createElement('li');
    const candidate = state.byRank.get(rank);
    item.className = rank === state.focus ? 'focused' : '';
    if (candidate) {
      const badge = verdictBadge(candidate);
      item.textContent =
        `#${rank + 1}  ${candidate.originalId} → ${candidate.proposedId}` +
        `  (M1 ${candidate.confidenceM1.toFixed(3)})${badge ? `  [${badge}]` : ''}`;
    } else {
      item.textContent = `#${rank + 1}  …`;
    }
    item.addEventListener('click', () => {
      void controller.move(rank - controller.state.focus).then(renderAll);
    });
    list.appendChild(item);
  }
}

function renderDetail(): void {
  const candidate = focused(controller.state);
  const pane = el('detail');
  pane.hidden = candidate === undefined;
  if (!candidate) return;
  renderSentence(el('sentence'), candidate);
  el('source-sentence').textContent = candidate.japanese;
  el('original').textContent = `${candidate.originalId} — ${candidate.originalGloss}`;
  el('proposed').textContent = `${candidate.proposedId} — ${candidate.proposedGloss}`;
  el('scores').textContent =
    `M1 ${candidate.confidenceM1.toFixed(4)} · M2 ${candidate.confidenceM2.toFixed(4)}` +
    ` · support ${candidate.support} · ${candidate.learner}/${candidate.mode}`;
  el('verdict-badge').textContent = verdictBadge(candidate);
}

function renderProgress(): void {
  const progress = controller.state.progress;
  el('progress').textContent = progress
    ? `${progress.reviewed} / ${progress.total} reviewed ` +
      `(${progress.accepted} accepted, ${progress.rejected} rejected, ${progress.edited} edited)`
    : '';
}

function renderError(): void {
  const box = el('error');
  box.hidden = controller.lastError === null;
  box.textContent = controller.lastError ?? '';
}

function renderEditor(): void {
  const editor = el<HTMLDivElement>('editor');
  editor.hidden = !controller.state.editing;
  if (!controller.state.editing) return;
  const input = el<HTMLInputElement>('edit-filter');
  const options = el<HTMLDataListElement>('category-options');
  options.textContent = '';
  for (const label of controller.taxonomy) {
    const option = document.createElement('option');
    option.value = label.id;
    option.label = label.description;
    options.appendChild(option);
  }
  input.focus();
}

function renderAll(): void {
  renderQueue();
  renderDetail();
  renderProgress();
  renderError();
  renderEditor();
}

async function submit(decision: 'accept' | 'reject' | 'edit', editLabel?: string): Promise<void> {
  await controller.submit(decision, editLabel);
  renderAll();
}

function wire(): void {
  el('accept').addEventListener('click', () => void submit('accept'));
  el('reject').addEventListener('click', () => void submit('reject'));
  el('edit').addEventListener('click', () => {
    controller.state = { ...controller.state, editing: true };
    renderAll();
  });
  el<HTMLFormElement>('editor').addEventListener('submit', (event) => {
    event.preventDefault();
    const input = el<HTMLInputElement>('edit-filter');
    void submit('edit', input.value.trim()).then(() => {
      input.value = '';
    });
  });
  el('edit-cancel').addEventListener('click', () => {
    controller.state = { ...controller.state, editing: false };
    renderAll();
  });
  document.addEventListener('keydown', (event) => {
    const action = actionForKey(event.key, controller.state.editing);
    if (action.kind === 'none') return;
    event.preventDefault();
    if (action.kind === 'move') void controller.move(action.delta).then(renderAll);
    else if (action.kind === 'accept') void submit('accept');
    else if (action.kind === 'reject') void submit('reject');
    else {
      controller.state = { ...controller.state, editing: true };
      renderAll();
    }
  });
}

async function boot(): Promise<void> {
  try {
    await controller.start();
  } catch (error) {
    controller.lastError = `cannot reach the review service: ${String(error)}`;
  }
  wire();
  renderAll();
}

void boot();
