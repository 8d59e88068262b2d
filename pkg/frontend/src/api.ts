// Thin JSON client for the cadv server; fetch is injectable for tests.

import type { LayoutDocument, ProjectInfo, SourceRef, ViewState } from './types.js';

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

export function layoutQuery(state: ViewState): string {
  const params = new URLSearchParams();
  params.set('view', state.view);
  if (state.view !== 'system' && state.focus) params.set('focus', state.focus);
  if (state.hidden.length > 0) params.set('hide', state.hidden.join(','));
  return params.toString();
}

export class Client {
  private readonly fetchFn: FetchLike;

  constructor(fetchFn?: FetchLike, private readonly base: string = '') {
    this.fetchFn = fetchFn ?? ((url) => fetch(url));
  }

  private async get<T>(path: string): Promise<T> {
    let resp: FetchResponse;
    try {
      resp = await this.fetchFn(this.base + path);
    } catch (err) {
      throw new ApiError(0, `server unreachable: ${String(err)}`);
    }
    if (!resp.ok) {
      let message = `request failed with status ${resp.status}`;
      try {
        const body = (await resp.json()) as { error?: string };
        if (body && typeof body.error === 'string') message = body.error;
      } catch {
        // not JSON; keep the generic message
      }
      throw new ApiError(resp.status, message);
    }
    return (await resp.json()) as T;
  }

  project(): Promise<ProjectInfo> {
    return this.get<ProjectInfo>('/api/project');
  }

  layout(state: ViewState): Promise<LayoutDocument> {
    return this.get<LayoutDocument>(`/api/layout?${layoutQuery(state)}`);
  }

  sourceRef(qualifiedName: string): Promise<SourceRef> {
    return this.get<SourceRef>(`/api/source-ref?class=${encodeURIComponent(qualifiedName)}`);
  }
}
