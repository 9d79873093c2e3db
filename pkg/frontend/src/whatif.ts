/**
 * Interactive what-if panel: edit maturity levels, barrier cells, rates and
 * weights; every edit re-assesses through the service and refreshes the four
 * gauges. A target input requests a scenario from the plan endpoint.
 *
 * The panel never computes quality numbers locally; while an assess call is
 * outstanding the gauges are marked stale instead.
 */

import { ApiError, QmtClient } from './api.js';
import type { AssessResponse, CatalogResponse, InputDoc } from './api.js';
import { formatCost, formatGauge } from './format.js';
import { LatestWins } from './scheduler.js';
import {
  applyResult,
  initialState,
  setMaturity,
  setRate,
  setWeight,
  toggleCell,
  type RateName,
  type WhatIfState,
} from './state.js';

export interface WhatIfPanelOptions {
  root: HTMLElement;
  client: QmtClient;
  scopeId: string;
  characteristic: string;
  matrixLabels: CatalogResponse['matrix'];
  debounceMs?: number;
}

const ASPECT_LABELS: Record<string, string> = {
  qp: 'QP',
  dc: 'DC',
  po: 'PO',
  ratqual: 'RatQual',
};

const RATE_LABELS: Record<RateName, string> = {
  ds: 'Server availability (DS)',
  qos: 'Network service quality (QoS)',
  ts: 'End-user satisfaction (TS)',
};

export class WhatIfPanel {
  state!: WhatIfState;
  private readonly scheduler: LatestWins<InputDoc, AssessResponse>;
  private gauges = new Map<string, HTMLElement>();
  private errorBanner!: HTMLElement;
  private sectionErrors = new Map<string, HTMLElement>();
  private scenarioArea!: HTMLElement;
  private matrixButtons = new Map<string, HTMLButtonElement>();

  constructor(private readonly options: WhatIfPanelOptions) {
    this.scheduler = new LatestWins<InputDoc, AssessResponse>({
      run: (working) =>
        this.options.client.assess(this.options.scopeId, this.options.characteristic, working),
      onResult: (_working, response) => {
        this.state = applyResult(this.state, response.result);
        this.clearErrors();
        this.refreshGauges();
      },
      onError: (_working, error) => this.showError(error),
      delayMs: options.debounceMs ?? 250,
    });
  }

  async init(): Promise<void> {
    const response = await this.options.client.assess(
      this.options.scopeId,
      this.options.characteristic,
    );
    this.state = initialState(
      this.options.scopeId,
      this.options.characteristic,
      response.input,
      response.result,
    );
    this.render();
  }

  /** Issue any pending assess immediately (used by tests and page unload). */
  flushPending(): void {
    this.scheduler.flush();
  }

  private edit(transition: (state: WhatIfState) => WhatIfState): void {
    this.state = transition(this.state);
    this.refreshGauges();
    this.scheduler.submit(this.state.working);
  }

  private render(): void {
    const root = this.options.root;
    root.textContent = '';
    root.classList.add('whatif-panel');

    this.errorBanner = el('div', 'error-banner');
    this.errorBanner.hidden = true;
    root.append(this.errorBanner);

    root.append(this.renderGauges());
    root.append(this.renderMaturity());
    root.append(this.renderMatrix());
    root.append(this.renderRates());
    root.append(this.renderWeights());
    root.append(this.renderPlanner());
    this.refreshGauges();
  }

  private renderGauges(): HTMLElement {
    const section = el('section', 'gauges');
    for (const aspect of ['qp', 'dc', 'po', 'ratqual']) {
      const gauge = el('div', 'gauge');
      gauge.dataset.aspect = aspect;
      const label = el('span', 'gauge-label');
      label.textContent = ASPECT_LABELS[aspect] ?? aspect;
      const value = el('output', 'gauge-value');
      gauge.append(label, value);
      section.append(gauge);
      this.gauges.set(aspect, value);
    }
    return section;
  }

  private sectionWithError(name: string, title: string): [HTMLElement, HTMLElement] {
    const section = el('section', `panel-section section-${name}`);
    const heading = el('h3');
    heading.textContent = title;
    const error = el('div', 'inline-error');
    error.hidden = true;
    section.append(heading, error);
    this.sectionErrors.set(name, error);
    return [section, error];
  }

  private renderMaturity(): HTMLElement {
    const [section] = this.sectionWithError('maturity', 'Organization maturity levels');
    for (const orgId of Object.keys(this.state.working.org_maturities).sort()) {
      const row = el('label', 'maturity-row');
      const caption = el('span');
      caption.textContent = orgId;
      const select = document.createElement('select');
      select.dataset.org = orgId;
      for (let level = 1; level <= 5; level += 1) {
        const option = document.createElement('option');
        option.value = String(level);
        option.textContent = `level ${level}`;
        select.append(option);
      }
      select.value = String(this.state.working.org_maturities[orgId]);
      select.addEventListener('change', () => {
        this.edit((state) => setMaturity(state, orgId, Number(select.value)));
      });
      row.append(caption, select);
      section.append(row);
    }
    return section;
  }

  private renderMatrix(): HTMLElement {
    const [section] = this.sectionWithError('matrix', 'Compatibility barriers');
    const labels = this.options.matrixLabels;
    const table = document.createElement('table');
    table.className = 'matrix';

    const groupRow = document.createElement('tr');
    groupRow.append(el('th'));
    for (const group of labels.column_groups) {
      const th = document.createElement('th');
      th.colSpan = group.columns.length;
      th.textContent = group.name;
      groupRow.append(th);
    }
    const headRow = document.createElement('tr');
    headRow.append(el('th'));
    for (const column of labels.columns) {
      const th = document.createElement('th');
      th.textContent = column;
      headRow.append(th);
    }
    table.append(groupRow, headRow);

    labels.rows.forEach((rowLabel, rowIndex) => {
      const tr = document.createElement('tr');
      const th = document.createElement('th');
      th.textContent = rowLabel;
      tr.append(th);
      labels.columns.forEach((_column, colIndex) => {
        const td = document.createElement('td');
        const button = document.createElement('button');
        button.type = 'button';
        button.dataset.row = String(rowIndex + 1);
        button.dataset.col = String(colIndex + 1);
        button.addEventListener('click', () => {
          this.edit((state) => toggleCell(state, rowIndex + 1, colIndex + 1));
          this.paintMatrixButton(button);
        });
        this.matrixButtons.set(`${rowIndex + 1},${colIndex + 1}`, button);
        td.append(button);
        tr.append(td);
      });
      table.append(tr);
    });
    section.append(table);
    for (const button of this.matrixButtons.values()) this.paintMatrixButton(button);
    return section;
  }

  private paintMatrixButton(button: HTMLButtonElement): void {
    const row = Number(button.dataset.row);
    const col = Number(button.dataset.col);
    const value = this.state.working.matrix[row - 1]?.[col - 1] ?? 0;
    const incompatible = value > 0;
    button.classList.toggle('incompatible', incompatible);
    button.textContent = incompatible ? '1' : '0';
    button.title = incompatible ? 'incompatible (click to resolve)' : 'compatible';
  }

  private renderRates(): HTMLElement {
    const [section] = this.sectionWithError('rates', 'Operational rates');
    for (const name of ['ds', 'qos', 'ts'] as RateName[]) {
      const row = el('label', 'rate-row');
      const caption = el('span');
      caption.textContent = RATE_LABELS[name];
      const slider = document.createElement('input');
      slider.type = 'range';
      slider.min = '0';
      slider.max = '1';
      slider.step = '0.01';
      slider.dataset.rate = name;
      slider.value = String(this.state.working.rates[name]);
      const value = el('output', 'rate-value');
      value.textContent = slider.value;
      slider.addEventListener('input', () => {
        value.textContent = slider.value;
        this.edit((state) => setRate(state, name, Number(slider.value)));
      });
      row.append(caption, slider, value);
      section.append(row);
    }
    return section;
  }

  private renderWeights(): HTMLElement {
    const [section] = this.sectionWithError('weights', 'Aggregation weights');
    (['qp', 'dc', 'po'] as const).forEach((aspect, index) => {
      const row = el('label', 'weight-row');
      const caption = el('span');
      caption.textContent = `weight of ${ASPECT_LABELS[aspect]}`;
      const input = document.createElement('input');
      input.type = 'number';
      input.min = '0';
      input.step = '0.1';
      input.dataset.weight = String(index);
      input.value = String(this.state.working.weights[index]);
      input.addEventListener('change', () => {
        this.edit((state) => setWeight(state, index as 0 | 1 | 2, Number(input.value)));
      });
      row.append(caption, input);
      section.append(row);
    });
    return section;
  }

  private renderPlanner(): HTMLElement {
    const [section] = this.sectionWithError('planner', 'Scenario toward a target ratio');
    const controls = el('div', 'planner-controls');
    const target = document.createElement('input');
    target.type = 'number';
    target.min = '0';
    target.max = '1';
    target.step = '0.01';
    target.dataset.role = 'target';
    target.value = '0.9';
    const button = document.createElement('button');
    button.type = 'button';
    button.dataset.role = 'propose';
    button.textContent = 'Propose scenario';
    button.addEventListener('click', () => {
      void this.propose(Number(target.value));
    });
    controls.append(target, button);
    this.scenarioArea = el('div', 'scenario-area');
    section.append(controls, this.scenarioArea);
    return section;
  }

  async propose(target: number): Promise<void> {
    this.scenarioArea.textContent = '';
    try {
      const scenario = await this.options.client.plan(
        this.options.scopeId,
        this.options.characteristic,
        target,
      );
      this.clearErrors();
      if (scenario.actions.length === 0) {
        const note = el('p', 'scenario-empty');
        note.textContent = `Target ${formatGauge(scenario.target)} already satisfied at ratio ${formatGauge(
          scenario.baseline.ratqual,
        )}; nothing to do.`;
        this.scenarioArea.append(note);
        return;
      }
      const summary = el('p', 'scenario-summary');
      summary.textContent =
        `${scenario.actions.length} action(s), total cost ${formatCost(scenario.total_cost)}, ` +
        `projected ratio ${formatGauge(scenario.projected.ratqual)} ` +
        `(as-is ${formatGauge(scenario.baseline.ratqual)})`;
      const list = el('ol', 'scenario-steps');
      for (const line of scenario.explanation) {
        const item = el('li');
        item.textContent = line;
        list.append(item);
      }
      this.scenarioArea.append(summary, list);
    } catch (error) {
      if (error instanceof ApiError && error.code === 'infeasible') {
        const banner = el('p', 'infeasible-banner');
        const max = error.maxAchievable();
        banner.textContent =
          `Target ${formatGauge(target)} is unreachable; ` +
          `the maximum achievable ratio is ${formatGauge(max)}.`;
        this.scenarioArea.append(banner);
        return;
      }
      this.showError(error);
    }
  }

  refreshGauges(): void {
    for (const [aspect, output] of this.gauges) {
      const result = this.state.result;
      output.textContent = formatGauge(
        result ? (result as unknown as Record<string, number>)[aspect] ?? null : null,
      );
      output.classList.toggle('stale', this.state.dirty);
    }
  }

  private clearErrors(): void {
    this.errorBanner.hidden = true;
    this.errorBanner.textContent = '';
    for (const element of this.sectionErrors.values()) {
      element.hidden = true;
      element.textContent = '';
    }
  }

  private showError(error: unknown): void {
    this.clearErrors();
    const message = error instanceof Error ? error.message : String(error);
    const details =
      error instanceof ApiError && error.details
        ? error.details.map((d) => (typeof d === 'string' ? d : JSON.stringify(d)))
        : [];
    const text = [message, ...details].join('\n');
    const section = this.sectionForError(text);
    if (section) {
      const box = this.sectionErrors.get(section)!;
      box.textContent = text;
      box.hidden = false;
    } else {
      this.errorBanner.textContent = text;
      this.errorBanner.hidden = false;
    }
  }

  private sectionForError(text: string): string | null {
    if (text.includes('rates')) return 'rates';
    if (text.includes('matrix')) return 'matrix';
    if (text.includes('org_maturities') || text.includes('maturity')) return 'maturity';
    if (text.includes('weights')) return 'weights';
    if (text.includes('target')) return 'planner';
    return null;
  }
}

function el(tag: string, className?: string): HTMLElement {
  const element = document.createElement(tag);
  if (className) element.className = className;
  return element;
}
