import { beforeEach, describe, expect, it } from 'vitest';

import type { QmtClient, TimelineResponse } from '../src/api.js';
import { TimelineView } from '../src/timeline.js';

class FakeClient {
  constructor(
    private readonly response: TimelineResponse,
    private readonly csv = 'taken_at,qp,dc,po,ratqual\n',
  ) {}

  async timeline(): Promise<TimelineResponse> {
    return this.response;
  }

  async timelineCsv(): Promise<string> {
    return this.csv;
  }
}

function report(overrides: Partial<TimelineResponse> = {}): TimelineResponse {
  return {
    scope_id: 'demo',
    characteristic: 'Interoperability',
    series: [],
    deltas: { qp: 0, dc: 0, po: 0, ratqual: 0 },
    flags: [],
    ...overrides,
  };
}

async function mount(response: TimelineResponse, csv?: string) {
  const root = document.createElement('div');
  document.body.append(root);
  const delivered: { filename: string; body: string }[] = [];
  const view = new TimelineView({
    root,
    client: new FakeClient(response, csv) as unknown as QmtClient,
    scopeId: 'demo',
    characteristic: 'Interoperability',
    deliverCsv: (filename, body) => delivered.push({ filename, body }),
  });
  await view.refresh();
  return { root, view, delivered };
}

describe('TimelineView', () => {
  beforeEach(() => {
    document.body.textContent = '';
  });

  it('shows an explicit empty state for an empty stream', async () => {
    const { root } = await mount(report());
    expect(root.querySelector('.empty-state')?.textContent).toContain('No snapshots');
    expect(root.querySelector('svg')).toBeNull();
  });

  it('draws four series with one point per snapshot', async () => {
    const { root } = await mount(
      report({
        series: [
          { taken_at: '2026-02-01T09:00:00.000000Z', qp: 0.6, dc: 1, po: 0.9, ratqual: 0.8333 },
          { taken_at: '2026-02-01T10:00:00.000000Z', qp: 0.8, dc: 1, po: 0.9, ratqual: 0.9 },
        ],
        deltas: { qp: 0.2, dc: 0, po: 0, ratqual: 0.0667 },
      }),
    );
    expect(root.querySelectorAll('polyline.series')).toHaveLength(4);
    expect(root.querySelectorAll('circle.marker')).toHaveLength(8);
    expect(root.querySelector('.deltas')?.textContent).toContain('qp +0.2000');
  });

  it('highlights regression flags on the matching point', async () => {
    const { root } = await mount(
      report({
        series: [
          { taken_at: '2026-02-01T09:00:00.000000Z', qp: 0.6, dc: 1, po: 0.9, ratqual: 0.8333 },
          { taken_at: '2026-02-01T10:00:00.000000Z', qp: 0.6, dc: 1, po: 0.7, ratqual: 0.7667 },
        ],
        deltas: { qp: 0, dc: 0, po: -0.2, ratqual: -0.0667 },
        flags: [
          { aspect: 'po', taken_at: '2026-02-01T10:00:00.000000Z', delta: -0.2 },
          { aspect: 'ratqual', taken_at: '2026-02-01T10:00:00.000000Z', delta: -0.0667 },
        ],
      }),
    );
    expect(root.querySelectorAll('circle.regression')).toHaveLength(2);
    const notes = Array.from(root.querySelectorAll('.regression-note')).map(
      (node) => node.textContent,
    );
    expect(notes.some((note) => note?.includes('po fell by 0.2000'))).toBe(true);
  });

  it('passes the CSV bytes through unchanged on download', async () => {
    const csv = 'taken_at,qp,dc,po,ratqual\n2026-02-01T09:00:00.000000Z,0.6,1.0,0.9,0.8333\n';
    const { root, delivered } = await mount(
      report({
        series: [
          { taken_at: '2026-02-01T09:00:00.000000Z', qp: 0.6, dc: 1, po: 0.9, ratqual: 0.8333 },
        ],
      }),
      csv,
    );
    (root.querySelector('button[data-role="download-csv"]') as HTMLButtonElement).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(delivered).toHaveLength(1);
    expect(delivered[0]?.body).toBe(csv);
    expect(delivered[0]?.filename).toBe('demo-Interoperability-timeline.csv');
  });
});
