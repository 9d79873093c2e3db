/**
 * Timeline view: the four quality series over recorded snapshots, regression
 * flags highlighted, and a CSV download that passes the service's bytes
 * through untouched.
 */

import { QmtClient } from './api.js';
import type { TimelineResponse } from './api.js';
import { formatGauge, formatSignedDelta, timestampLabel } from './format.js';

export interface TimelineViewOptions {
  root: HTMLElement;
  client: QmtClient;
  scopeId: string;
  characteristic: string;
  /** Test seam; the default triggers a browser download. */
  deliverCsv?: (filename: string, body: string) => void;
}

const ASPECTS = ['qp', 'dc', 'po', 'ratqual'] as const;

const WIDTH = 640;
const HEIGHT = 240;
const PADDING = 24;
const SVG_NS = 'http://www.w3.org/2000/svg';

export class TimelineView {
  report: TimelineResponse | null = null;

  constructor(private readonly options: TimelineViewOptions) {}

  async refresh(): Promise<void> {
    this.report = await this.options.client.timeline(
      this.options.scopeId,
      this.options.characteristic,
    );
    this.render();
  }

  async downloadCsv(): Promise<string> {
    const body = await this.options.client.timelineCsv(
      this.options.scopeId,
      this.options.characteristic,
    );
    const filename = `${this.options.scopeId}-${this.options.characteristic}-timeline.csv`;
    const deliver = this.options.deliverCsv ?? browserDownload;
    deliver(filename, body);
    return body;
  }

  private render(): void {
    const root = this.options.root;
    root.textContent = '';
    root.classList.add('timeline-view');
    const report = this.report;
    if (!report) return;

    const heading = document.createElement('h3');
    heading.textContent = `Timeline: ${report.characteristic} in ${report.scope_id}`;
    root.append(heading);

    if (report.series.length === 0) {
      const empty = document.createElement('p');
      empty.className = 'empty-state';
      empty.textContent = 'No snapshots recorded yet; assess with recording enabled to start the stream.';
      root.append(empty);
      return;
    }

    root.append(this.renderChart(report));
    root.append(this.renderDeltas(report));
    for (const flag of report.flags) {
      const note = document.createElement('p');
      note.className = 'regression-note';
      note.textContent = `Regression: ${flag.aspect} fell by ${formatGauge(-flag.delta)} at ${timestampLabel(
        flag.taken_at,
      )}`;
      root.append(note);
    }

    const download = document.createElement('button');
    download.type = 'button';
    download.dataset.role = 'download-csv';
    download.textContent = 'Download CSV';
    download.addEventListener('click', () => {
      void this.downloadCsv();
    });
    root.append(download);
  }

  private renderChart(report: TimelineResponse): SVGSVGElement {
    const svg = document.createElementNS(SVG_NS, 'svg');
    svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute('class', 'timeline-chart');

    const n = report.series.length;
    const x = (index: number): number =>
      n === 1 ? WIDTH / 2 : PADDING + (index * (WIDTH - 2 * PADDING)) / (n - 1);
    const y = (value: number): number => PADDING + (1 - value) * (HEIGHT - 2 * PADDING);

    const flagged = new Set(report.flags.map((flag) => `${flag.aspect}@${flag.taken_at}`));

    for (const aspect of ASPECTS) {
      const points = report.series
        .map((point, index) => `${x(index)},${y(point[aspect])}`)
        .join(' ');
      const line = document.createElementNS(SVG_NS, 'polyline');
      line.setAttribute('points', points);
      line.setAttribute('fill', 'none');
      line.setAttribute('class', `series series-${aspect}`);
      svg.append(line);

      report.series.forEach((point, index) => {
        const marker = document.createElementNS(SVG_NS, 'circle');
        marker.setAttribute('cx', String(x(index)));
        marker.setAttribute('cy', String(y(point[aspect])));
        marker.setAttribute('r', '3');
        const isRegression = flagged.has(`${aspect}@${point.taken_at}`);
        marker.setAttribute(
          'class',
          isRegression ? `marker marker-${aspect} regression` : `marker marker-${aspect}`,
        );
        if (isRegression) {
          marker.setAttribute('r', '5');
        }
        svg.append(marker);
      });
    }
    return svg;
  }

  private renderDeltas(report: TimelineResponse): HTMLElement {
    const deltas = document.createElement('p');
    deltas.className = 'deltas';
    deltas.textContent = ASPECTS.map(
      (aspect) => `${aspect} ${formatSignedDelta(report.deltas[aspect] ?? 0)}`,
    ).join('  ');
    return deltas;
  }
}

function browserDownload(filename: string, body: string): void {
  const blob = new Blob([body], { type: 'text/csv;charset=utf-8' });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement('a');
  anchor.href = url;
  anchor.download = filename;
  document.body.append(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}
