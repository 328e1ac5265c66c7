import type { CooccurrenceLevel, CooccurrenceRow } from './types';

/**
 * Render the co-occurrence rows into a sortable table. Clicking an article
 * ID hands it to `onArticleClick` (which renders its neighborhood).
 */
export function renderCooccurrenceTable(
  container: HTMLElement,
  rows: CooccurrenceRow[],
  level: CooccurrenceLevel,
  onArticleClick: (pubmedId: string) => void,
): void {
  container.replaceChildren();
  if (rows.length === 0) {
    const empty = document.createElement('p');
    empty.className = 'empty';
    empty.textContent = `No ${level}-level co-occurrences.`;
    container.appendChild(empty);
    return;
  }

  const table = document.createElement('table');
  const head = table.createTHead().insertRow();
  const columns: Array<[string, (r: CooccurrenceRow) => string | number]> = [
    ['gene', (r) => r.gene],
    ['disease', (r) => r.disease],
    ['support', (r) => r.support],
  ];
  let sortKey = 2;
  let descending = true;

  const body = table.createTBody();
  const renderBody = () => {
    const sorted = [...rows].sort((a, b) => {
      const va = columns[sortKey][1](a);
      const vb = columns[sortKey][1](b);
      const cmp = typeof va === 'number' ? va - (vb as number) : String(va).localeCompare(String(vb));
      return descending ? -cmp : cmp;
    });
    body.replaceChildren();
    for (const row of sorted) {
      const tr = body.insertRow();
      tr.insertCell().textContent = row.gene;
      tr.insertCell().textContent = row.disease;
      tr.insertCell().textContent = String(row.support);
      const links = tr.insertCell();
      row.articles.forEach((pubmedId, i) => {
        if (i > 0) links.appendChild(document.createTextNode(' '));
        const a = document.createElement('a');
        a.href = '#';
        a.textContent = pubmedId;
        a.addEventListener('click', (ev) => {
          ev.preventDefault();
          onArticleClick(pubmedId);
        });
        links.appendChild(a);
      });
    }
  };

  columns.forEach(([name], i) => {
    const th = document.createElement('th');
    th.textContent = name;
    th.style.cursor = 'pointer';
    th.addEventListener('click', () => {
      descending = sortKey === i ? !descending : true;
      sortKey = i;
      renderBody();
    });
    head.appendChild(th);
  });
  const articlesTh = document.createElement('th');
  articlesTh.textContent = 'articles';
  head.appendChild(articlesTh);

  renderBody();
  container.appendChild(table);
}
