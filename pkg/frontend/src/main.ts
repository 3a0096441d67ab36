// Wires the controls to the service. Requests fire only on explicit submit
// or the stats button, never on slider movement, and only the newest
// submission is allowed to paint.

import { getJson, searchUrl, statsUrl } from './api.js';
import type { SearchResponse, StatsResponse } from './api.js';
import { ccdfPoints } from './model.js';
import { renderCcdfChart } from './chart.js';
import type { Series } from './chart.js';
import { clearBanner, renderSearchView, showBanner } from './render.js';

function grab<T extends HTMLElement>(doc: Document, id: string): T {
  const node = doc.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export function randomSeed(): number {
  return Math.floor(Math.random() * 2 ** 31);
}

export function initApp(doc: Document, fetchFn: typeof fetch): void {
  const form = grab<HTMLFormElement>(doc, 'search-form');
  const query = grab<HTMLInputElement>(doc, 'query');
  const k = grab<HTMLInputElement>(doc, 'k');
  const kValue = grab<HTMLElement>(doc, 'k-value');
  const tcm = grab<HTMLInputElement>(doc, 'tcm');
  const tcmValue = grab<HTMLElement>(doc, 'tcm-value');
  const seed = grab<HTMLInputElement>(doc, 'seed');
  const reroll = grab<HTMLButtonElement>(doc, 'reroll');
  const baseUrl = grab<HTMLInputElement>(doc, 'base-url');
  const submit = grab<HTMLButtonElement>(doc, 'submit');
  const bannerSlot = grab<HTMLElement>(doc, 'banner-slot');
  const results = grab<HTMLElement>(doc, 'results');
  const statsToggle = grab<HTMLButtonElement>(doc, 'stats-toggle');
  const chart = grab<HTMLElement>(doc, 'chart');

  let generation = 0;

  const syncControls = () => {
    submit.disabled = query.value.trim() === '';
    kValue.textContent = k.value;
    tcmValue.textContent = tcm.value;
  };
  query.addEventListener('input', syncControls);
  k.addEventListener('input', syncControls);
  tcm.addEventListener('input', syncControls);
  syncControls();

  reroll.addEventListener('click', () => {
    seed.value = String(randomSeed());
  });

  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    const q = query.value.trim();
    if (q === '') {
      return;
    }
    const gen = ++generation;
    const url = searchUrl(baseUrl.value, {
      q,
      k: Number(k.value),
      tcm: Number(tcm.value),
      seed: Number(seed.value),
    });
    try {
      const resp = await getJson<SearchResponse>(url, fetchFn);
      if (gen !== generation) {
        return; // a newer submission owns the screen
      }
      clearBanner(bannerSlot);
      renderSearchView(results, resp);
    } catch (err) {
      if (gen !== generation) {
        return;
      }
      showBanner(bannerSlot, err instanceof Error ? err.message : String(err));
    }
  });

  statsToggle.addEventListener('click', async () => {
    const q = query.value.trim();
    try {
      // Both requests are started before either is awaited.
      const fullWanted = getJson<StatsResponse>(statsUrl(baseUrl.value), fetchFn);
      const subWanted = q !== ''
        ? getJson<StatsResponse>(statsUrl(baseUrl.value, q), fetchFn)
        : null;
      const full = await fullWanted;
      const sub = subWanted ? await subWanted : null;
      const series: Series[] = [
        { label: 'full graph', points: ccdfPoints(full.histogram), fit: full.fit },
      ];
      if (sub) {
        series.push({ label: `"${q}"`, points: ccdfPoints(sub.histogram), fit: sub.fit });
      }
      clearBanner(bannerSlot);
      renderCcdfChart(chart, series);
    } catch (err) {
      showBanner(bannerSlot, err instanceof Error ? err.message : String(err));
    }
  });
}

// Boot only inside a real page; tests import the pieces and wire their own.
if (typeof document !== 'undefined' && document.getElementById('search-form')) {
  initApp(document, window.fetch.bind(window));
}
