import { describe, expect, it } from 'vitest';

import { ApiError, QmtClient } from '../src/api.js';

interface Captured {
  url: string;
  init?: RequestInit;
}

function clientWith(
  status: number,
  body: unknown,
  captured: Captured[] = [],
  contentType = 'application/json',
): QmtClient {
  return new QmtClient('http://svc', async (url, init) => {
    captured.push({ url, init });
    const payload = typeof body === 'string' ? body : JSON.stringify(body);
    return new Response(payload, {
      status,
      headers: { 'content-type': contentType },
    });
  });
}

describe('QmtClient', () => {
  it('assesses with the working copy in the body', async () => {
    const captured: Captured[] = [];
    const client = clientWith(
      200,
      { scope_id: 's', characteristic: 'Security', input: {}, result: {}, recorded: false },
      captured,
    );
    await client.assess('s', 'Security', {
      org_maturities: { a: 3 },
      matrix: [],
      matrix_mode: 'strict',
      rates: { ds: 1, qos: 1, ts: 1 },
      weights: [1, 1, 1],
    });
    expect(captured[0]!.url).toBe('http://svc/api/v1/scopes/s/characteristics/Security/assess');
    const body = JSON.parse(String(captured[0]!.init?.body));
    expect(body.input.rates.ds).toBe(1);
  });

  it('appends record=true when recording', async () => {
    const captured: Captured[] = [];
    const client = clientWith(200, { recorded: true }, captured);
    await client.assess('s', 'Security', undefined, true);
    expect(captured[0]!.url).toContain('/assess?record=true');
    expect(JSON.parse(String(captured[0]!.init?.body))).toEqual({});
  });

  it('plans with optional costs', async () => {
    const captured: Captured[] = [];
    const client = clientWith(200, { actions: [] }, captured);
    await client.plan('s', 'Security', 0.9);
    expect(JSON.parse(String(captured[0]!.init?.body))).toEqual({ target: 0.9 });
    await client.plan('s', 'Security', 0.9, { rate_step: 0.1 });
    expect(JSON.parse(String(captured[1]!.init?.body))).toEqual({
      target: 0.9,
      costs: { rate_step: 0.1 },
    });
  });

  it('negotiates CSV with an accept header and returns raw text', async () => {
    const captured: Captured[] = [];
    const client = new QmtClient('http://svc', async (url, init) => {
      captured.push({ url, init });
      return new Response('taken_at,qp,dc,po,ratqual\n', {
        status: 200,
        headers: { 'content-type': 'text/csv' },
      });
    });
    const text = await client.timelineCsv('s', 'Security');
    expect(text).toBe('taken_at,qp,dc,po,ratqual\n');
    expect((captured[0]!.init?.headers as Record<string, string>).accept).toBe('text/csv');
  });

  it('escapes path segments', async () => {
    const captured: Captured[] = [];
    const client = clientWith(200, { series: [] }, captured);
    await client.timeline('a b', 'Security');
    expect(captured[0]!.url).toContain('/scopes/a%20b/');
  });

  it('raises the error envelope as ApiError', async () => {
    const client = clientWith(
      400,
      { error: { code: 'validation', message: 'rates.ds: bad', details: ['rates.ds: bad'] } },
    );
    const failure = await client.assess('s', 'Security').catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.code).toBe('validation');
    expect(failure.status).toBe(400);
    expect(failure.details).toEqual(['rates.ds: bad']);
  });

  it('extracts the maximum achievable ratio from infeasible errors', async () => {
    const client = clientWith(
      422,
      { error: { code: 'infeasible', message: 'nope', details: [{ max_achievable: 0.75 }] } },
    );
    const failure: ApiError = await client.plan('s', 'Security', 0.99).catch((e) => e);
    expect(failure.code).toBe('infeasible');
    expect(failure.maxAchievable()).toBe(0.75);
  });

  it('copes with non-JSON error bodies', async () => {
    const client = clientWith(502, 'bad gateway', [], 'text/plain');
    const failure: ApiError = await client.catalog().catch((e) => e);
    expect(failure.code).toBe('internal');
    expect(failure.status).toBe(502);
  });
});
