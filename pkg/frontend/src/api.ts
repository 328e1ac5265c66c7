import type {
  CooccurrenceLevel,
  QueryResultPayload,
  StatsPayload,
} from './types';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export type FetchFn = (url: string) => Promise<Response>;

/** Thin typed client over the read-only HTTP API; fetch is injectable for tests. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchFn = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path);
    } catch (err) {
      throw new ApiError(0, `API unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof body === 'object' && body !== null && 'error' in body
          ? String((body as { error: unknown }).error)
          : `HTTP ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  stats(): Promise<StatsPayload> {
    return this.get('/stats');
  }

  search(q: string, limit = 20): Promise<QueryResultPayload> {
    return this.get(`/search?q=${encodeURIComponent(q)}&limit=${limit}`);
  }

  neighborhood(name: string, depth = 1): Promise<QueryResultPayload> {
    return this.get(`/nodes/${encodeURIComponent(name)}/neighborhood?depth=${depth}`);
  }

  articleEntities(pubmedId: string): Promise<QueryResultPayload> {
    return this.get(`/articles/${encodeURIComponent(pubmedId)}`);
  }

  diseaseArticles(name: string): Promise<QueryResultPayload> {
    return this.get(`/diseases/${encodeURIComponent(name)}/articles`);
  }

  geneArticles(name: string): Promise<QueryResultPayload> {
    return this.get(`/genes/${encodeURIComponent(name)}/articles`);
  }

  cooccurrence(
    level: CooccurrenceLevel,
    filters: { gene?: string; disease?: string } = {},
  ): Promise<QueryResultPayload> {
    const params = new URLSearchParams({ level });
    if (filters.gene) params.set('gene', filters.gene);
    if (filters.disease) params.set('disease', filters.disease);
    return this.get(`/cooccurrence?${params.toString()}`);
  }
}
