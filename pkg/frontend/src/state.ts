/**
 * What-if working-copy state.
 *
 * Pure transitions over the assessment input fetched from the API. Edits only
 * touch input values (levels, cells, rates, weights); the four quality
 * numbers always come back from the assess endpoint, so `result` is null or
 * stale (`dirty`) until the service answers.
 */

import type { InputDoc, ResultDoc } from './api.js';

export interface WhatIfState {
  scopeId: string;
  characteristic: string;
  working: InputDoc;
  result: ResultDoc | null;
  dirty: boolean;
}

export type RateName = 'ds' | 'qos' | 'ts';

export function initialState(
  scopeId: string,
  characteristic: string,
  input: InputDoc,
  result: ResultDoc | null = null,
): WhatIfState {
  return {
    scopeId,
    characteristic,
    working: cloneInput(input),
    result,
    dirty: result === null,
  };
}

export function cloneInput(input: InputDoc): InputDoc {
  return {
    characteristic: input.characteristic,
    org_maturities: { ...input.org_maturities },
    matrix: input.matrix.map((row) => [...row]),
    matrix_mode: input.matrix_mode,
    rates: { ...input.rates },
    weights: [...input.weights] as [number, number, number],
  };
}

function withWorking(state: WhatIfState, working: InputDoc): WhatIfState {
  return { ...state, working, dirty: true };
}

export function setMaturity(state: WhatIfState, orgId: string, level: number): WhatIfState {
  const clamped = Math.min(5, Math.max(1, Math.round(level)));
  const working = cloneInput(state.working);
  working.org_maturities[orgId] = clamped;
  return withWorking(state, working);
}

/** Toggle one barrier cell between compatible (0) and incompatible (1); 1-based indices. */
export function toggleCell(state: WhatIfState, row: number, col: number): WhatIfState {
  const working = cloneInput(state.working);
  const current = working.matrix[row - 1]?.[col - 1];
  if (current === undefined) return state;
  working.matrix[row - 1]![col - 1] = current > 0 ? 0 : 1;
  return withWorking(state, working);
}

export function setRate(state: WhatIfState, which: RateName, value: number): WhatIfState {
  const clamped = Math.min(1, Math.max(0, value));
  const working = cloneInput(state.working);
  working.rates[which] = clamped;
  return withWorking(state, working);
}

export function setWeight(state: WhatIfState, index: 0 | 1 | 2, value: number): WhatIfState {
  const clamped = Math.max(0, value);
  const working = cloneInput(state.working);
  working.weights[index] = clamped;
  return withWorking(state, working);
}

/** Service answered for the current working copy: the numbers are live again. */
export function applyResult(state: WhatIfState, result: ResultDoc): WhatIfState {
  return { ...state, result, dirty: false };
}

// Selection is the only state kept across reloads, encoded in the URL.

export interface Selection {
  scopeId: string;
  characteristic: string;
}

export function encodeSelection(selection: Selection): string {
  const params = new URLSearchParams();
  params.set('scope', selection.scopeId);
  params.set('characteristic', selection.characteristic);
  return `?${params.toString()}`;
}

export function decodeSelection(search: string): Selection | null {
  const params = new URLSearchParams(search);
  const scopeId = params.get('scope');
  const characteristic = params.get('characteristic');
  if (!scopeId || !characteristic) return null;
  return { scopeId, characteristic };
}
