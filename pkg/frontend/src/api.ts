/**
 * Thin HTTP client for the advisor service.
 *
 * Every failure surfaces as an ApiError. Requests the service rejects
 * carry its machine-readable error code; transport failures use the
 * synthetic code "unreachable" so callers can offer a retry.
 */

import type {
  ApiErrorBody,
  HealthResponse,
  ModelsResponse,
  RankRequest,
  RankResponse,
} from './types.js';

export class ApiError extends Error {
  readonly code: string;
  readonly detail: string;
  /** HTTP status, or 0 when the service could not be reached at all. */
  readonly status: number;

  constructor(code: string, detail: string, status: number) {
    super(`${code}: ${detail}`);
    this.name = 'ApiError';
    this.code = code;
    this.detail = detail;
    this.status = status;
  }

  /** Worth retrying unchanged: the service was down or broken, not the request. */
  get retryable(): boolean {
    return this.code === 'unreachable' || this.status >= 500;
  }
}

function errorFromPayload(payload: unknown, status: number): ApiError {
  const body = payload as Partial<ApiErrorBody> | null;
  const error = body && typeof body === 'object' ? body.error : undefined;
  if (error && typeof error.code === 'string' && typeof error.detail === 'string') {
    return new ApiError(error.code, error.detail, status);
  }
  return new ApiError('bad_response', `unexpected ${status} response`, status);
}

export class ApiClient {
  readonly baseUrl: string;

  /** baseUrl '' targets the page's own origin. */
  constructor(baseUrl = '') {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
  }

  health(): Promise<HealthResponse> {
    return this.request<HealthResponse>('GET', '/health');
  }

  models(): Promise<ModelsResponse> {
    return this.request<ModelsResponse>('GET', '/models');
  }

  rank(request: RankRequest): Promise<RankResponse> {
    return this.request<RankResponse>('POST', '/rank', request);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      throw new ApiError(
        'unreachable',
        `cannot reach the advisor service: ${reason}`,
        0,
      );
    }
    let payload: unknown;
    try {
      payload = await response.json();
    } catch {
      throw new ApiError(
        'bad_response',
        `response was not JSON (status ${response.status})`,
        response.status,
      );
    }
    if (!response.ok) {
      throw errorFromPayload(payload, response.status);
    }
    return payload as T;
  }
}
