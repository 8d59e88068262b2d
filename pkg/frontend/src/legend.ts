// Schema legend: one row per schema with a hide checkbox, color swatch,
// id, and total count.

import type { SchemaEntry } from './types.js';

export interface LegendHandlers {
  onToggle(schemaId: string, hidden: boolean): void;
}

export function renderLegend(
  schemas: SchemaEntry[],
  hidden: ReadonlySet<string>,
  handlers: LegendHandlers,
  dom: Document = document,
): HTMLTableElement {
  const table = dom.createElement('table');
  table.className = 'cadv-legend';
  const head = table.createTHead().insertRow();
  for (const title of ['show', 'schema', 'count']) {
    const th = dom.createElement('th');
    th.textContent = title;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const schema of schemas) {
    const row = body.insertRow();
    row.dataset.schema = schema.id;

    const toggleCell = row.insertCell();
    const checkbox = dom.createElement('input');
    checkbox.type = 'checkbox';
    checkbox.checked = !hidden.has(schema.id);
    checkbox.addEventListener('change', () => {
      handlers.onToggle(schema.id, !checkbox.checked);
    });
    toggleCell.appendChild(checkbox);

    const nameCell = row.insertCell();
    const swatch = dom.createElement('span');
    swatch.className = 'swatch';
    swatch.style.backgroundColor = schema.color;
    nameCell.appendChild(swatch);
    nameCell.appendChild(dom.createTextNode(schema.id));

    row.insertCell().textContent = String(schema.count);
  }
  return table;
}
