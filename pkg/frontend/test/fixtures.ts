// Hand-built layout documents shaped like real server responses.

import type { LayoutCircle, LayoutDocument } from '../src/types.js';

export function circleOf(partial: Partial<LayoutCircle> & Pick<LayoutCircle, 'id' | 'kind'>): LayoutCircle {
  return {
    parent: null,
    cx: 0,
    cy: 0,
    r: 1,
    style: 'schema-color',
    schema: null,
    color: '#d7428c',
    label: {},
    ...partial,
  };
}

export function systemDoc(): LayoutDocument {
  return {
    version: 'cadv-layout/1',
    view: 'system',
    focus: '',
    metric: 'count',
    circles: [
      circleOf({ id: '<root>', kind: 'package', parent: null, r: 10, style: 'dashed-outline', color: '#ececec', label: { package: '' } }),
      circleOf({ id: 'a', kind: 'package', parent: 0, cx: -2, r: 6, style: 'dashed-outline', color: '#ececec', label: { package: 'a' } }),
      circleOf({ id: 'a::s.one', kind: 'schema-bubble', parent: 1, cx: -2, cy: 1, r: 2, schema: 's.one', label: { schema: 's.one', package: 'a', count: 4 } }),
    ],
  };
}

export function packageDoc(): LayoutDocument {
  return {
    version: 'cadv-layout/1',
    view: 'package',
    focus: 'a',
    metric: 'LOCAD',
    circles: [
      circleOf({ id: 'a', kind: 'package', parent: null, r: 8, style: 'dashed-outline', color: '#ececec', label: { package: 'a' } }),
      circleOf({ id: 'a.Widget', kind: 'class', parent: 0, cx: 1, r: 4, style: 'white-fill', color: '#ffffff', label: { package: 'a', class: 'Widget' } }),
      circleOf({ id: 'a.Widget@0', kind: 'annotation', parent: 1, cx: 1, cy: 1, r: 2, schema: 's.one', label: { package: 'a', class: 'Widget', annotation: 'Mark', locad: 4 } }),
    ],
  };
}

export function classDoc(): LayoutDocument {
  return {
    version: 'cadv-layout/1',
    view: 'class',
    focus: 'a.Widget',
    metric: 'AA',
    circles: [
      circleOf({ id: 'a.Widget', kind: 'class', parent: null, r: 8, style: 'white-fill', color: '#ffffff', label: { package: 'a', class: 'Widget' } }),
      circleOf({ id: 'a.Widget#1', kind: 'element', parent: 0, cx: 2, r: 4, style: 'gray-fill', color: '#9e9e9e', label: { package: 'a', class: 'Widget', element: 'run', elementKind: 'method' } }),
      circleOf({ id: 'a.Widget@1', kind: 'annotation', parent: 1, cx: 2, cy: 1, r: 1.5, schema: 's.one', label: { package: 'a', class: 'Widget', element: 'run', elementKind: 'method', annotation: 'Mark', aa: 2 } }),
    ],
  };
}
