import { beforeEach, describe, expect, it } from 'vitest';

import { ApiError, type AssessResponse, type InputDoc, type QmtClient, type ScenarioResponse } from '../src/api.js';
import { WhatIfPanel } from '../src/whatif.js';

const MATRIX_LABELS = {
  rows: ['Process', 'Service', 'Data', 'Infrastructure'],
  columns: ['Syntactic', 'Semantic', 'Responsibilities', 'Organization', 'Platform', 'Communication'],
  column_groups: [
    { name: 'Conceptual', columns: ['Syntactic', 'Semantic'] },
    { name: 'Organizational', columns: ['Responsibilities', 'Organization'] },
    { name: 'Technology', columns: ['Platform', 'Communication'] },
  ],
};

function baseInput(): InputDoc {
  return {
    characteristic: 'Interoperability',
    org_maturities: { 'org-a': 3, 'org-b': 4 },
    matrix: Array.from({ length: 4 }, () => [0, 0, 0, 0, 0, 0]),
    matrix_mode: 'strict',
    rates: { ds: 0.9, qos: 0.9, ts: 0.9 },
    weights: [1, 1, 1],
  };
}

class FakeClient {
  assessCalls: (InputDoc | undefined)[] = [];
  planCalls: number[] = [];
  nextRatio = 0.75;
  failWith: ApiError | null = null;
  scenario: ScenarioResponse | null = null;
  planFailure: ApiError | null = null;

  async assess(
    scopeId: string,
    characteristic: string,
    input?: InputDoc,
  ): Promise<AssessResponse> {
    this.assessCalls.push(input ? structuredClone(input) : undefined);
    if (this.failWith) throw this.failWith;
    return {
      scope_id: scopeId,
      characteristic,
      input: input ?? baseInput(),
      result: { qp: 0.6, dc: 1, po: 0.9, ratqual: this.nextRatio },
      recorded: false,
    };
  }

  async plan(_scopeId: string, _characteristic: string, target: number): Promise<ScenarioResponse> {
    this.planCalls.push(target);
    if (this.planFailure) throw this.planFailure;
    if (!this.scenario) throw new Error('no scenario stubbed');
    return this.scenario;
  }
}

async function settled(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}

async function mountPanel(fake: FakeClient): Promise<{ panel: WhatIfPanel; root: HTMLElement }> {
  const root = document.createElement('div');
  document.body.append(root);
  const panel = new WhatIfPanel({
    root,
    client: fake as unknown as QmtClient,
    scopeId: 'demo',
    characteristic: 'Interoperability',
    matrixLabels: MATRIX_LABELS,
    debounceMs: 0,
  });
  await panel.init();
  return { panel, root };
}

function gauge(root: HTMLElement, aspect: string): HTMLElement {
  return root.querySelector(`[data-aspect="${aspect}"] .gauge-value`) as HTMLElement;
}

describe('WhatIfPanel', () => {
  beforeEach(() => {
    document.body.textContent = '';
  });

  it('shows the initial assessment on all four gauges', async () => {
    const fake = new FakeClient();
    const { root } = await mountPanel(fake);
    expect(gauge(root, 'qp').textContent).toBe('0.6000');
    expect(gauge(root, 'dc').textContent).toBe('1.0000');
    expect(gauge(root, 'po').textContent).toBe('0.9000');
    expect(gauge(root, 'ratqual').textContent).toBe('0.7500');
  });

  it('renders the matrix with the exact row and column labels', async () => {
    const fake = new FakeClient();
    const { root } = await mountPanel(fake);
    const headers = Array.from(root.querySelectorAll('table.matrix th')).map(
      (th) => th.textContent,
    );
    for (const label of [...MATRIX_LABELS.rows, ...MATRIX_LABELS.columns, 'Conceptual']) {
      expect(headers).toContain(label);
    }
    expect(root.querySelectorAll('table.matrix button')).toHaveLength(24);
  });

  it('re-assesses with the edited working copy when a maturity changes', async () => {
    const fake = new FakeClient();
    const { panel, root } = await mountPanel(fake);
    fake.nextRatio = 0.81;
    const select = root.querySelector('select[data-org="org-a"]') as HTMLSelectElement;
    select.value = '5';
    select.dispatchEvent(new Event('change'));
    panel.flushPending();
    await settled();
    const sent = fake.assessCalls[fake.assessCalls.length - 1];
    expect(sent?.org_maturities['org-a']).toBe(5);
    expect(gauge(root, 'ratqual').textContent).toBe('0.8100');
    expect(panel.state.dirty).toBe(false);
  });

  it('marks gauges stale while an edit is unconfirmed', async () => {
    const fake = new FakeClient();
    const { panel, root } = await mountPanel(fake);
    const button = root.querySelector('button[data-row="1"][data-col="2"]') as HTMLButtonElement;
    button.click();
    expect(panel.state.dirty).toBe(true);
    expect(gauge(root, 'ratqual').classList.contains('stale')).toBe(true);
    panel.flushPending();
    await settled();
    expect(gauge(root, 'ratqual').classList.contains('stale')).toBe(false);
    const sent = fake.assessCalls[fake.assessCalls.length - 1];
    expect(sent?.matrix[0]?.[1]).toBe(1);
  });

  it('sends rate edits from the sliders', async () => {
    const fake = new FakeClient();
    const { panel, root } = await mountPanel(fake);
    const slider = root.querySelector('input[data-rate="ds"]') as HTMLInputElement;
    slider.value = '0.4';
    slider.dispatchEvent(new Event('input'));
    panel.flushPending();
    await settled();
    expect(fake.assessCalls[fake.assessCalls.length - 1]?.rates.ds).toBe(0.4);
  });

  it('renders validation failures inline at the offending section', async () => {
    const fake = new FakeClient();
    const { panel, root } = await mountPanel(fake);
    fake.failWith = new ApiError('validation', 'rates.ds: must lie within [0, 1]', 400);
    const slider = root.querySelector('input[data-rate="ds"]') as HTMLInputElement;
    slider.value = '0.2';
    slider.dispatchEvent(new Event('input'));
    panel.flushPending();
    await settled();
    const inline = root.querySelector('.section-rates .inline-error') as HTMLElement;
    expect(inline.hidden).toBe(false);
    expect(inline.textContent).toContain('rates.ds');
  });

  it('lists scenario explanation lines after proposing', async () => {
    const fake = new FakeClient();
    const { root } = await mountPanel(fake);
    fake.scenario = {
      scope_id: 'demo',
      characteristic: 'Interoperability',
      target: 0.9,
      total_cost: 26,
      actions: [
        { kind: 'raise_maturity', org_id: 'org-a', to_level: 3 },
        { kind: 'fix_compatibility_cell', row: 1, col: 2 },
      ],
      baseline: { qp: 0.4, dc: 0.9583, po: 0.84, ratqual: 0.73 },
      projected: { qp: 0.6, dc: 1, po: 0.98, ratqual: 0.8643 },
      explanation: [
        "Improve Interoperability maturity of organization 'org-a' to reach level 3 (quality potentiality 0.4000 -> 0.6000)",
        'Resolve semantic incompatibilities at the process layer (compatibility degree 0.9583 -> 1.0000)',
      ],
    };
    const target = root.querySelector('input[data-role="target"]') as HTMLInputElement;
    target.value = '0.9';
    (root.querySelector('button[data-role="propose"]') as HTMLButtonElement).click();
    await settled();
    const items = Array.from(root.querySelectorAll('.scenario-steps li'));
    expect(items).toHaveLength(2);
    expect(items[1]?.textContent).toContain('semantic');
    expect(root.querySelector('.scenario-summary')?.textContent).toContain('total cost 26');
  });

  it('shows the empty-scenario note when the target is already satisfied', async () => {
    const fake = new FakeClient();
    const { root } = await mountPanel(fake);
    fake.scenario = {
      scope_id: 'demo',
      characteristic: 'Interoperability',
      target: 0.5,
      total_cost: 0,
      actions: [],
      baseline: { qp: 0.6, dc: 1, po: 0.9, ratqual: 0.75 },
      projected: { qp: 0.6, dc: 1, po: 0.9, ratqual: 0.75 },
      explanation: [],
    };
    (root.querySelector('button[data-role="propose"]') as HTMLButtonElement).click();
    await settled();
    expect(root.querySelector('.scenario-empty')?.textContent).toContain('already satisfied');
  });

  it('renders an infeasibility banner with the reported maximum', async () => {
    const fake = new FakeClient();
    const { root } = await mountPanel(fake);
    fake.planFailure = new ApiError('infeasible', 'target unreachable', 422, [
      { max_achievable: 0.8125 },
    ]);
    (root.querySelector('button[data-role="propose"]') as HTMLButtonElement).click();
    await settled();
    const banner = root.querySelector('.infeasible-banner') as HTMLElement;
    expect(banner.textContent).toContain('0.8125');
  });
});
