import { ApiClient } from './api';
import { ExplorerApp } from './app';
import { renderCooccurrenceTable } from './coocc';
import { GraphRenderer } from './render';
import type { ApiNode, CooccurrenceLevel } from './types';

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? 'http://127.0.0.1:8080';

const searchInput = el<HTMLInputElement>('search');
const candidatesList = el<HTMLUListElement>('candidates');
const errorBanner = el<HTMLDivElement>('error');
const cooccContainer = el<HTMLDivElement>('coocc');
const levelSelect = el<HTMLSelectElement>('coocc-level');
const statusLine = el<HTMLSpanElement>('status');
const svg = document.getElementById('graph') as SVGSVGElement | null;
if (!svg) throw new Error('missing element #graph');

const api = new ApiClient(baseUrl);
let renderer: GraphRenderer | null = null;

const app = new ExplorerApp(api, {
  onGraphChanged: (model) => {
    errorBanner.hidden = true;
    renderer?.update(model);
    const { nodes, edges } = model.size;
    statusLine.textContent = `${nodes} nodes, ${edges} edges`;
  },
  onCandidates: (candidates) => showCandidates(candidates),
  onRows: (rows, level) =>
    renderCooccurrenceTable(cooccContainer, rows, level, (pubmedId) => {
      void app.select({ id: `pmid:${pubmedId}`, label: 'PubMedID', name: pubmedId });
    }),
  onError: (message) => {
    errorBanner.textContent = message;
    errorBanner.hidden = false;
  },
  onBusy: (busy) => document.body.classList.toggle('busy', busy),
});

renderer = new GraphRenderer(svg, (nodeId) => {
  void app.expand(nodeId);
});

function showCandidates(candidates: ApiNode[]): void {
  candidatesList.replaceChildren();
  if (candidates.length === 0) {
    const li = document.createElement('li');
    li.className = 'empty';
    li.textContent = 'no matches';
    candidatesList.appendChild(li);
    return;
  }
  for (const candidate of candidates) {
    const li = document.createElement('li');
    const button = document.createElement('button');
    button.textContent = `${candidate.name} (${candidate.label})`;
    button.addEventListener('click', () => {
      candidatesList.replaceChildren();
      void app.select(candidate);
    });
    li.appendChild(button);
    candidatesList.appendChild(li);
  }
}

let debounce: number | undefined;
searchInput.addEventListener('input', () => {
  window.clearTimeout(debounce);
  debounce = window.setTimeout(() => void app.search(searchInput.value), 200);
});

levelSelect.addEventListener('change', () => {
  void app.loadCooccurrence(levelSelect.value as CooccurrenceLevel);
});
void app.loadCooccurrence('article');
