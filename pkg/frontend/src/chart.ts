// Log-log CCDF chart rendered as inline SVG, with one polyline per series
// and the fitted exponent quoted verbatim in the legend.

import type { Fit } from './api.js';
import type { CcdfPoint } from './model.js';

export interface Series {
  label: string;
  points: CcdfPoint[];
  fit: Fit | null;
}

const WIDTH = 600;
const HEIGHT = 380;
const MARGIN = { top: 16, right: 16, bottom: 36, left: 56 };
const COLORS = ['#2563eb', '#dc2626', '#059669'];
const SVG_NS = 'http://www.w3.org/2000/svg';

function el<K extends string>(tag: K, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function decades(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    ticks.push(10 ** e);
  }
  return ticks;
}

export function renderCcdfChart(container: HTMLElement, series: Series[]): void {
  container.replaceChildren();
  const drawn = series.filter((s) => s.points.length > 0);
  if (drawn.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'chart-empty';
    empty.textContent = 'no degree data to plot';
    container.appendChild(empty);
    return;
  }

  const all = drawn.flatMap((s) => s.points);
  const xMax = Math.max(...all.map((p) => p.degree));
  const yMin = Math.min(...all.map((p) => p.ccdf));
  const x = (d: number) =>
    MARGIN.left + (Math.log10(d) / Math.log10(Math.max(xMax, 10))) * (WIDTH - MARGIN.left - MARGIN.right);
  const yLogSpan = Math.log10(Math.min(yMin, 0.1));
  const y = (c: number) =>
    MARGIN.top + (Math.log10(c) / yLogSpan) * (HEIGHT - MARGIN.top - MARGIN.bottom);

  const svg = el('svg', {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: 'ccdf-chart',
    role: 'img',
  });

  for (const tick of decades(1, xMax)) {
    svg.appendChild(el('line', {
      x1: String(x(tick)), x2: String(x(tick)),
      y1: String(MARGIN.top), y2: String(HEIGHT - MARGIN.bottom),
      class: 'grid',
    }));
    const label = el('text', { x: String(x(tick)), y: String(HEIGHT - 14), class: 'tick' });
    label.textContent = String(tick);
    svg.appendChild(label);
  }
  for (const tick of decades(Math.min(yMin, 0.1), 1)) {
    if (tick > 1) continue;
    svg.appendChild(el('line', {
      x1: String(MARGIN.left), x2: String(WIDTH - MARGIN.right),
      y1: String(y(tick)), y2: String(y(tick)),
      class: 'grid',
    }));
    const label = el('text', { x: String(MARGIN.left - 8), y: String(y(tick) + 4), class: 'tick tick-y' });
    label.textContent = tick.toExponential(0);
    svg.appendChild(label);
  }

  drawn.forEach((s, i) => {
    const color = COLORS[i % COLORS.length]!;
    const coords = s.points.map((p) => `${x(p.degree).toFixed(1)},${y(p.ccdf).toFixed(1)}`);
    svg.appendChild(el('polyline', {
      points: coords.join(' '),
      class: 'series',
      'data-label': s.label,
      fill: 'none',
      stroke: color,
      'stroke-width': '2',
    }));
    for (const p of s.points) {
      svg.appendChild(el('circle', {
        cx: x(p.degree).toFixed(1),
        cy: y(p.ccdf).toFixed(1),
        r: '2.5',
        fill: color,
      }));
    }
  });

  container.appendChild(svg);

  const legend = document.createElement('ul');
  legend.className = 'chart-legend';
  drawn.forEach((s, i) => {
    const item = document.createElement('li');
    item.style.color = COLORS[i % COLORS.length]!;
    const name = document.createElement('span');
    name.textContent = s.label;
    item.appendChild(name);
    if (s.fit !== null) {
      // The exponent is quoted exactly as the server sent it.
      const note = document.createElement('span');
      note.className = 'fit-note';
      note.textContent = ` β̂ = ${s.fit.beta_hat} ± ${s.fit.std_error}`;
      item.appendChild(note);
    }
    legend.appendChild(item);
  });
  container.appendChild(legend);
}
