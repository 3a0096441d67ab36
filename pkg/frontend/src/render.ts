// DOM builders for the search view. Every displayed number is copied from
// the response object, never derived, so what the user sees is exactly what
// the server answered.

import type { Doc, SearchResponse } from './api.js';

function badge(label: string, value: string | number, name: string): HTMLElement {
  const node = document.createElement('span');
  node.className = `badge badge-${name}`;
  node.dataset.value = String(value);
  node.textContent = `${label} ${value}`;
  return node;
}

function docLine(doc: Doc): HTMLElement {
  const li = document.createElement('li');
  const link = document.createElement('a');
  link.href = doc.url;
  link.textContent = doc.url;
  const snippet = document.createElement('span');
  snippet.className = 'snippet';
  snippet.textContent = doc.snippet;
  li.append(link, ' ', snippet);
  return li;
}

export function renderSearchView(container: HTMLElement, resp: SearchResponse): void {
  container.replaceChildren();

  const summary = document.createElement('div');
  summary.className = 'summary';
  const rep = resp.coverage_report;
  summary.append(
    badge('coverage', rep.coverage, 'coverage'),
    badge('links', rep.n_links, 'links'),
    badge('in-cluster', rep.incluster, 'incluster'),
    badge('clusters', rep.n_clusters, 'clusters'),
    badge('largest', rep.max_size, 'max-size'),
    badge('seed', resp.params.seed, 'seed'),
  );
  container.appendChild(summary);

  for (const cluster of resp.clusters) {
    const card = document.createElement('article');
    card.className = 'cluster-card';
    card.dataset.clusterId = String(cluster.id);

    const head = document.createElement('header');
    const title = document.createElement('h3');
    title.textContent = `cluster ${cluster.id}`;
    const size = document.createElement('span');
    size.className = 'cluster-size';
    size.dataset.value = String(cluster.size);
    size.textContent = `${cluster.size} docs`;
    head.append(title, size);
    card.appendChild(head);

    const pivot = document.createElement('div');
    pivot.className = 'pivot';
    const pivotList = document.createElement('ul');
    pivotList.appendChild(docLine(cluster.pivot_doc));
    pivot.appendChild(pivotList);
    card.appendChild(pivot);

    const members = document.createElement('details');
    const label = document.createElement('summary');
    label.textContent = 'members';
    members.appendChild(label);
    const list = document.createElement('ul');
    for (const doc of cluster.docs) {
      list.appendChild(docLine(doc));
    }
    members.appendChild(list);
    card.appendChild(members);

    container.appendChild(card);
  }

  const unassigned = document.createElement('section');
  unassigned.className = 'unassigned';
  const title = document.createElement('h3');
  title.textContent = `unassigned (${resp.unassigned.size})`;
  unassigned.appendChild(title);
  if (resp.unassigned.docs.length > 0) {
    const details = document.createElement('details');
    const label = document.createElement('summary');
    label.textContent = 'show';
    details.appendChild(label);
    const list = document.createElement('ul');
    for (const doc of resp.unassigned.docs) {
      list.appendChild(docLine(doc));
    }
    details.appendChild(list);
    unassigned.appendChild(details);
  }
  container.appendChild(unassigned);
}

// Errors land in a dismissible banner instead of wiping the page.
export function showBanner(slot: HTMLElement, message: string): void {
  slot.replaceChildren();
  const banner = document.createElement('div');
  banner.className = 'banner';
  banner.setAttribute('role', 'alert');
  const text = document.createElement('span');
  text.textContent = message;
  const dismiss = document.createElement('button');
  dismiss.type = 'button';
  dismiss.className = 'banner-dismiss';
  dismiss.textContent = '×';
  dismiss.addEventListener('click', () => banner.remove());
  banner.append(text, dismiss);
  slot.appendChild(banner);
}

export function clearBanner(slot: HTMLElement): void {
  slot.replaceChildren();
}
