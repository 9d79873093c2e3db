/**
 * Typed client for the quality-monitoring HTTP API (/api/v1).
 *
 * The UI performs no quality arithmetic: every number it shows originates
 * from one of these responses.
 */

export interface ResultDoc {
  qp: number;
  dc: number;
  po: number;
  ratqual: number;
}

export interface RatesDoc {
  ds: number;
  qos: number;
  ts: number;
}

export interface InputDoc {
  characteristic: string;
  org_maturities: Record<string, number>;
  matrix: number[][];
  matrix_mode: 'strict' | 'fractional';
  rates: RatesDoc;
  weights: [number, number, number];
}

export interface AssessResponse {
  scope_id: string;
  characteristic: string;
  input: InputDoc;
  result: ResultDoc;
  recorded: boolean;
  snapshot?: { taken_at: string; input_digest: string; label: string | null };
}

export interface ActionDoc {
  kind: 'raise_maturity' | 'fix_compatibility_cell' | 'improve_rate';
  org_id?: string;
  to_level?: number;
  row?: number;
  col?: number;
  row_label?: string;
  col_label?: string;
  which?: string;
  to_value?: number;
}

export interface ScenarioResponse {
  scope_id: string;
  characteristic: string;
  target: number;
  total_cost: number;
  actions: ActionDoc[];
  baseline: ResultDoc;
  projected: ResultDoc;
  explanation: string[];
}

export interface TimelinePoint {
  taken_at: string;
  qp: number;
  dc: number;
  po: number;
  ratqual: number;
}

export interface RegressionFlag {
  aspect: 'qp' | 'dc' | 'po' | 'ratqual';
  taken_at: string;
  delta: number;
}

export interface TimelineResponse {
  scope_id: string;
  characteristic: string;
  series: TimelinePoint[];
  deltas: Record<string, number>;
  flags: RegressionFlag[];
}

export interface CatalogCharacteristic {
  id: string;
  category: string;
  is_category_head: boolean;
  maturity_models: { short_name: string; full_name: string }[];
}

export interface CatalogResponse {
  schema_version: number;
  categories: { name: string; description: string }[];
  characteristics: CatalogCharacteristic[];
  matrix: {
    rows: string[];
    columns: string[];
    column_groups: { name: string; columns: string[] }[];
  };
}

export interface ScopeSummary {
  scope_id: string;
  name: string;
  version: number;
  created_at: string;
  characteristics_assessed: string[];
}

export type ScopeDocument = Record<string, unknown> & {
  scope_id: string;
  version: number;
  assessments: Record<string, Omit<InputDoc, 'characteristic'>>;
};

/** Error envelope raised for every non-success response. */
export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly details?: unknown[],
  ) {
    super(message);
    this.name = 'ApiError';
  }

  /** Maximum achievable ratio reported by infeasible plan requests. */
  maxAchievable(): number | null {
    if (this.code !== 'infeasible' || !this.details) return null;
    for (const entry of this.details) {
      const value = (entry as { max_achievable?: number }).max_achievable;
      if (typeof value === 'number') return value;
    }
    return null;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class QmtClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`, init);
    if (!response.ok) {
      throw await readError(response);
    }
    return (await response.json()) as T;
  }

  catalog(): Promise<CatalogResponse> {
    return this.request('/catalog');
  }

  async listScopes(): Promise<ScopeSummary[]> {
    const payload = await this.request<{ scopes: ScopeSummary[] }>('/scopes');
    return payload.scopes;
  }

  getScope(scopeId: string): Promise<ScopeDocument> {
    return this.request(`/scopes/${encodeURIComponent(scopeId)}`);
  }

  createScope(document: ScopeDocument): Promise<ScopeDocument> {
    return this.request('/scopes', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(document),
    });
  }

  updateScope(document: ScopeDocument): Promise<ScopeDocument> {
    return this.request(`/scopes/${encodeURIComponent(document.scope_id)}`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(document),
    });
  }

  assess(
    scopeId: string,
    characteristic: string,
    input?: Omit<InputDoc, 'characteristic'> | InputDoc,
    record = false,
  ): Promise<AssessResponse> {
    const query = record ? '?record=true' : '';
    return this.request(
      `/scopes/${encodeURIComponent(scopeId)}/characteristics/${encodeURIComponent(
        characteristic,
      )}/assess${query}`,
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(input ? { input } : {}),
      },
    );
  }

  plan(
    scopeId: string,
    characteristic: string,
    target: number,
    costs?: Record<string, unknown>,
  ): Promise<ScenarioResponse> {
    return this.request(
      `/scopes/${encodeURIComponent(scopeId)}/characteristics/${encodeURIComponent(
        characteristic,
      )}/plan`,
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(costs ? { target, costs } : { target }),
      },
    );
  }

  timeline(scopeId: string, characteristic: string): Promise<TimelineResponse> {
    return this.request(
      `/scopes/${encodeURIComponent(scopeId)}/characteristics/${encodeURIComponent(
        characteristic,
      )}/timeline`,
    );
  }

  /** CSV body exactly as the service serialized it (byte passthrough). */
  async timelineCsv(scopeId: string, characteristic: string): Promise<string> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/api/v1/scopes/${encodeURIComponent(
        scopeId,
      )}/characteristics/${encodeURIComponent(characteristic)}/timeline`,
      { headers: { accept: 'text/csv' } },
    );
    if (!response.ok) {
      throw await readError(response);
    }
    return response.text();
  }
}

async function readError(response: Response): Promise<ApiError> {
  try {
    const payload = (await response.json()) as {
      error?: { code?: string; message?: string; details?: unknown[] };
    };
    const error = payload.error ?? {};
    return new ApiError(
      error.code ?? 'internal',
      error.message ?? `request failed with status ${response.status}`,
      response.status,
      error.details,
    );
  } catch {
    return new ApiError('internal', `request failed with status ${response.status}`, response.status);
  }
}
