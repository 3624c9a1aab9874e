// Thin typed client for the annotation service. Non-2xx responses become
// ApiError with the HTTP status so callers can branch on 409/422.

import type { NextPayload, Progress, RatingRecord, SubmitResult } from './types';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.error === 'string') message = body.error;
  } catch {
    // keep the generic message
  }
  return new ApiError(response.status, message);
}

export class AnnotationApi {
  constructor(
    readonly sessionId: string,
    readonly baseUrl: string = '',
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private url(tail: string): string {
    return `${this.baseUrl}/api/session/${encodeURIComponent(this.sessionId)}/${tail}`;
  }

  async nextItem(): Promise<NextPayload> {
    const response = await this.fetchFn(this.url('next'));
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as NextPayload;
  }

  async submitRating(record: RatingRecord): Promise<SubmitResult> {
    const response = await this.fetchFn(this.url('rating'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(record),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as SubmitResult;
  }

  async progress(): Promise<Progress> {
    const response = await this.fetchFn(this.url('progress'));
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as Progress;
  }
}
