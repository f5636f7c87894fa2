// Thin typed client over the /v1 review API.  The fetch function is
// injectable so tests can stub the transport or point it at a live server.

import type { CandidatePage, CandidateView, Progress, TaxonomyLabel, VerdictRequest } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`API error ${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === 'string') detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export class ReviewApi {
  constructor(
    private readonly baseUrl = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  candidates(offset: number, limit: number): Promise<CandidatePage> {
    return this.get<CandidatePage>(`/v1/candidates?offset=${offset}&limit=${limit}`);
  }

  candidate(exampleId: string): Promise<CandidateView> {
    return this.get<CandidateView>(`/v1/candidates/${encodeURIComponent(exampleId)}`);
  }

  progress(): Promise<Progress> {
    return this.get<Progress>('/v1/progress');
  }

  async taxonomy(): Promise<TaxonomyLabel[]> {
    const body = await this.get<{ labels: TaxonomyLabel[] }>('/v1/taxonomy');
    return body.labels;
  }

  async submitVerdict(exampleId: string, request: VerdictRequest): Promise<Progress> {
    const response = await this.fetchFn(
      `${this.baseUrl}/v1/candidates/${encodeURIComponent(exampleId)}/verdict`,
      {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(request),
      },
    );
    if (!response.ok) throw await parseError(response);
    const body = (await response.json()) as { ok: boolean; progress: Progress };
    return body.progress;
  }
}
