import { describe, expect, it } from 'vitest';

import { ApiError, ReviewApi } from '../src/api.js';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

describe('ReviewApi', () => {
  it('requests pages with offset and limit', async () => {
    const calls: string[] = [];
    const api = new ReviewApi('', async (input) => {
      calls.push(input);
      return jsonResponse({ total: 0, offset: 3, limit: 7, items: [] });
    });
    const page = await api.candidates(3, 7);
    expect(calls).toEqual(['/v1/candidates?offset=3&limit=7']);
    expect(page.limit).toBe(7);
  });

  it('posts verdicts as JSON and returns server progress', async () => {
    let captured: RequestInit | undefined;
    const api = new ReviewApi('http://x', async (_input, init) => {
      captured = init;
      return jsonResponse({
        ok: true,
        progress: { total: 2, reviewed: 1, accepted: 1, rejected: 0, edited: 0, cursor: 1 },
      });
    });
    const progress = await api.submitVerdict('e7', { decision: 'accept', annotator: 'me' });
    expect(progress.reviewed).toBe(1);
    expect(captured?.method).toBe('POST');
    expect(JSON.parse(String(captured?.body))).toEqual({ decision: 'accept', annotator: 'me' });
  });

  it('surfaces server error details', async () => {
    const api = new ReviewApi('', async () => jsonResponse({ detail: 'no candidate' }, 404));
    await expect(api.candidate('ghost')).rejects.toThrowError(ApiError);
    await expect(api.candidate('ghost')).rejects.toMatchObject({
      status: 404,
      detail: 'no candidate',
    });
  });

  it('unwraps the taxonomy label list', async () => {
    const api = new ReviewApi('', async () =>
      jsonResponse({ labels: [{ id: 'past', symbol: 'd', group: 'tense-aspect-combination', description: '' }] }),
    );
    const labels = await api.taxonomy();
    expect(labels).toHaveLength(1);
    expect(labels[0].id).toBe('past');
  });
});
