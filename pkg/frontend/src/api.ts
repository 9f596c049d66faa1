/** Typed client for the inversearch JSON API. */

export type Mode = 'inverse' | 'direct';

export interface RankedResult {
  rank: number;
  symbol: string;
  score: number;
}

export interface SimilarResponse {
  symbol: string;
  mode: Mode;
  nodes_visited: number;
  results: RankedResult[];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

/** Error carrying the machine-readable code from the API ("unknown_symbol", ...). */
export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export interface ApiClient {
  fetchSymbols(signal?: AbortSignal): Promise<string[]>;
  fetchSimilar(symbol: string, mode: Mode, top: number, signal?: AbortSignal): Promise<SimilarResponse>;
}

async function parseError(response: Response): Promise<never> {
  let code = 'bad_request';
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as ApiErrorBody;
    if (body?.error?.code) {
      code = body.error.code;
      message = body.error.message;
    }
  } catch {
    // non-JSON error body: keep the generic message
  }
  throw new ApiError(code, message, response.status);
}

export function createApiClient(baseUrl = ''): ApiClient {
  return {
    async fetchSymbols(signal?: AbortSignal): Promise<string[]> {
      const response = await fetch(`${baseUrl}/api/v1/symbols`, { signal });
      if (!response.ok) await parseError(response);
      const body = (await response.json()) as { symbols: string[] };
      return body.symbols;
    },

    async fetchSimilar(symbol: string, mode: Mode, top: number, signal?: AbortSignal): Promise<SimilarResponse> {
      const params = new URLSearchParams({ symbol, mode, top: String(top) });
      const response = await fetch(`${baseUrl}/api/v1/similar?${params}`, { signal });
      if (!response.ok) await parseError(response);
      return (await response.json()) as SimilarResponse;
    },
  };
}
