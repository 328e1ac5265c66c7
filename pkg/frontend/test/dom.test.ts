// @vitest-environment jsdom

import { describe, expect, it } from 'vitest';

import { NODE_COLORS } from '../src/colors';
import { renderCooccurrenceTable } from '../src/coocc';
import { GraphRenderer } from '../src/render';
import { ViewGraphModel } from '../src/viewgraph';
import { cooccArticle, teethNeighborhood1 } from './golden';

function svgElement(): SVGSVGElement {
  const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
  document.body.appendChild(svg);
  return svg;
}

describe('GraphRenderer', () => {
  it('renders one circle per node with the legend color', () => {
    const model = new ViewGraphModel();
    model.merge(teethNeighborhood1);
    const renderer = new GraphRenderer(svgElement(), () => undefined);
    renderer.update(model);

    const circles = [...document.querySelectorAll('g.node circle')];
    expect(circles).toHaveLength(5);
    const fills = circles.map((c) => c.getAttribute('fill'));
    expect(fills.filter((f) => f === NODE_COLORS.Disease)).toHaveLength(1);
    expect(fills.filter((f) => f === NODE_COLORS.PubMedID)).toHaveLength(4);

    const lines = document.querySelectorAll('line');
    expect(lines).toHaveLength(4);
    document.body.replaceChildren();
  });

  it('clicking a rendered node invokes the expansion callback', () => {
    const model = new ViewGraphModel();
    model.merge(teethNeighborhood1);
    const clicked: string[] = [];
    const renderer = new GraphRenderer(svgElement(), (id) => clicked.push(id));
    renderer.update(model);

    const node = document.querySelector('g.node') as SVGGElement;
    node.dispatchEvent(new MouseEvent('click', { bubbles: true }));
    expect(clicked).toHaveLength(1);
    expect(model.hasNode(clicked[0])).toBe(true);
    document.body.replaceChildren();
  });

  it('shows the three-entry legend', () => {
    new GraphRenderer(svgElement(), () => undefined);
    const texts = [...document.querySelectorAll('svg > g:last-child text')].map(
      (t) => t.textContent,
    );
    expect(texts).toEqual(['PubMed ID (article)', 'gene', 'disease']);
    document.body.replaceChildren();
  });
});

describe('co-occurrence table', () => {
  it('renders rows and article links route to the neighborhood view', () => {
    const container = document.createElement('div');
    document.body.appendChild(container);
    const opened: string[] = [];
    renderCooccurrenceTable(container, cooccArticle.rows, 'article', (id) =>
      opened.push(id),
    );

    const bodyRows = container.querySelectorAll('tbody tr');
    expect(bodyRows).toHaveLength(cooccArticle.rows.length);

    const firstLink = container.querySelector('tbody a') as HTMLAnchorElement;
    firstLink.click();
    expect(opened).toHaveLength(1);
    expect(cooccArticle.rows.some((r) => r.articles.includes(opened[0]))).toBe(true);
    document.body.replaceChildren();
  });

  it('sorts by clicked column', () => {
    const container = document.createElement('div');
    document.body.appendChild(container);
    renderCooccurrenceTable(container, cooccArticle.rows, 'article', () => undefined);

    const geneHeader = container.querySelector('th') as HTMLTableCellElement;
    geneHeader.click(); // sort by gene descending
    let genes = [...container.querySelectorAll('tbody tr td:first-child')].map(
      (td) => td.textContent ?? '',
    );
    expect(genes).toEqual([...genes].sort().reverse());

    geneHeader.click(); // same column again flips to ascending
    genes = [...container.querySelectorAll('tbody tr td:first-child')].map(
      (td) => td.textContent ?? '',
    );
    expect(genes).toEqual([...genes].sort());
    document.body.replaceChildren();
  });

  it('empty rows show an empty-state message', () => {
    const container = document.createElement('div');
    renderCooccurrenceTable(container, [], 'sentence', () => undefined);
    expect(container.textContent).toContain('No sentence-level co-occurrences');
  });
});
