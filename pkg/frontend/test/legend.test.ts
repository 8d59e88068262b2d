import { describe, expect, it } from 'vitest';

import { renderLegend } from '../src/legend.js';
import type { SchemaEntry } from '../src/types.js';

const SCHEMAS: SchemaEntry[] = [
  { id: 'javax.persistence', count: 7, color: '#d7428c' },
  { id: 'javax.ejb', count: 3, color: '#2fa857' },
  { id: 'unresolved', count: 1, color: '#000000' },
];

describe('renderLegend', () => {
  it('renders one row per schema with id, count, and swatch color', () => {
    const table = renderLegend(SCHEMAS, new Set(), { onToggle: () => {} });
    const rows = [...table.tBodies[0]!.rows];
    expect(rows.map((r) => r.dataset.schema))
      .toEqual(['javax.persistence', 'javax.ejb', 'unresolved']);
    expect(rows[0]!.cells[2]!.textContent).toBe('7');
    const swatch = rows[0]!.querySelector('span.swatch') as HTMLElement;
    expect(swatch.style.backgroundColor).toBe('rgb(215, 66, 140)');
    expect(rows[0]!.cells[1]!.textContent).toContain('javax.persistence');
  });

  it('unchecks hidden schemas', () => {
    const table = renderLegend(SCHEMAS, new Set(['javax.ejb']), { onToggle: () => {} });
    const boxes = [...table.querySelectorAll('input')];
    expect(boxes.map((b) => b.checked)).toEqual([true, false, true]);
  });

  it('reports toggles with the new hidden flag', () => {
    const calls: [string, boolean][] = [];
    const table = renderLegend(SCHEMAS, new Set(['javax.ejb']), {
      onToggle: (id, hidden) => calls.push([id, hidden]),
    });
    document.body.appendChild(table);
    const boxes = [...table.querySelectorAll('input')];
    boxes[0]!.click(); // visible -> hidden
    boxes[1]!.click(); // hidden -> visible
    expect(calls).toEqual([['javax.persistence', true], ['javax.ejb', false]]);
  });

  it('renders an empty table for no schemas', () => {
    const table = renderLegend([], new Set(), { onToggle: () => {} });
    expect(table.tBodies[0]!.rows.length).toBe(0);
  });
});
