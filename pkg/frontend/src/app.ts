/**
 * Page bootstrap: scope and characteristic selectors (URL-encoded so reloads
 * keep the selection), with the what-if panel and timeline mounted below.
 */

import { QmtClient } from './api.js';
import type { CatalogResponse, ScopeSummary } from './api.js';
import { decodeSelection, encodeSelection, type Selection } from './state.js';
import { TimelineView } from './timeline.js';
import { WhatIfPanel } from './whatif.js';

export interface AppOptions {
  root: HTMLElement;
  client: QmtClient;
  window: Window;
}

export async function bootstrap(options: AppOptions): Promise<void> {
  const { root, client } = options;
  root.textContent = '';

  const [catalog, scopes] = await Promise.all([client.catalog(), client.listScopes()]);
  if (scopes.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'empty-state';
    empty.textContent =
      'No scopes yet. Create one with the CLI (init-scope) or POST /api/v1/scopes, then reload.';
    root.append(empty);
    return;
  }

  const selection = resolveSelection(options.window.location.search, scopes, catalog);
  options.window.history.replaceState(null, '', encodeSelection(selection));

  root.append(renderSelector(options, catalog, scopes, selection));

  const panelHost = document.createElement('div');
  panelHost.id = 'whatif-host';
  const timelineHost = document.createElement('div');
  timelineHost.id = 'timeline-host';
  root.append(panelHost, timelineHost);

  const panel = new WhatIfPanel({
    root: panelHost,
    client,
    scopeId: selection.scopeId,
    characteristic: selection.characteristic,
    matrixLabels: catalog.matrix,
  });
  const timeline = new TimelineView({
    root: timelineHost,
    client,
    scopeId: selection.scopeId,
    characteristic: selection.characteristic,
  });
  await panel.init();
  await timeline.refresh();
}

function resolveSelection(
  search: string,
  scopes: ScopeSummary[],
  catalog: CatalogResponse,
): Selection {
  const fromUrl = decodeSelection(search);
  if (fromUrl && scopes.some((scope) => scope.scope_id === fromUrl.scopeId)) {
    return fromUrl;
  }
  const scope = scopes[0]!;
  const characteristic =
    scope.characteristics_assessed[0] ?? catalog.characteristics[0]!.id;
  return { scopeId: scope.scope_id, characteristic };
}

function renderSelector(
  options: AppOptions,
  catalog: CatalogResponse,
  scopes: ScopeSummary[],
  selection: Selection,
): HTMLElement {
  const bar = document.createElement('div');
  bar.className = 'selector-bar';

  const scopeSelect = document.createElement('select');
  scopeSelect.dataset.role = 'scope-select';
  for (const scope of scopes) {
    const option = document.createElement('option');
    option.value = scope.scope_id;
    option.textContent = `${scope.name} (${scope.scope_id})`;
    scopeSelect.append(option);
  }
  scopeSelect.value = selection.scopeId;

  const charSelect = document.createElement('select');
  charSelect.dataset.role = 'characteristic-select';
  for (const characteristic of catalog.characteristics) {
    const option = document.createElement('option');
    option.value = characteristic.id;
    option.textContent = `${characteristic.id} [${characteristic.category}]`;
    charSelect.append(option);
  }
  charSelect.value = selection.characteristic;

  const reload = () => {
    const next: Selection = {
      scopeId: scopeSelect.value,
      characteristic: charSelect.value,
    };
    options.window.location.search = encodeSelection(next);
  };
  scopeSelect.addEventListener('change', reload);
  charSelect.addEventListener('change', reload);

  bar.append(scopeSelect, charSelect);
  return bar;
}

export function main(): void {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app container');
  const params = new URLSearchParams(window.location.search);
  const client = new QmtClient(params.get('api') ?? '');
  void bootstrap({ root, client, window }).catch((error) => {
    const failure = document.createElement('p');
    failure.className = 'error-banner';
    failure.textContent = `Failed to reach the service: ${String(error)}`;
    root.append(failure);
  });
}
