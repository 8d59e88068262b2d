import { describe, expect, it } from 'vitest';

import {
  DEFAULT_STATE,
  formatHash,
  navigate,
  parseHash,
  sameState,
  withHidden,
} from '../src/state.js';
import type { LayoutCircle, ViewState } from '../src/types.js';

function circle(partial: Partial<LayoutCircle>): LayoutCircle {
  return {
    id: 'x',
    parent: null,
    kind: 'package',
    cx: 0,
    cy: 0,
    r: 1,
    style: 'dashed-outline',
    schema: null,
    color: '#ececec',
    label: {},
    ...partial,
  };
}

describe('parseHash', () => {
  it('defaults to the system view', () => {
    expect(parseHash('')).toEqual(DEFAULT_STATE);
    expect(parseHash('#')).toEqual(DEFAULT_STATE);
  });

  it('reads view, focus, and hidden schemas', () => {
    expect(parseHash('#view=package&focus=a.model&hide=x.y,z.w')).toEqual({
      view: 'package',
      focus: 'a.model',
      hidden: ['x.y', 'z.w'],
    });
  });

  it('rejects unknown views', () => {
    expect(parseHash('#view=galaxy&focus=a').view).toBe('system');
  });

  it('drops focus for the system view', () => {
    expect(parseHash('#view=system&focus=a.model').focus).toBe('');
  });

  it('normalizes the hidden list', () => {
    expect(parseHash('#view=system&hide=b,a,,b').hidden).toEqual(['a', 'b']);
  });
});

describe('formatHash', () => {
  it('round-trips every state', () => {
    const states: ViewState[] = [
      DEFAULT_STATE,
      { view: 'package', focus: 'a.model', hidden: [] },
      { view: 'class', focus: 'a.model.Example', hidden: ['javax.ejb'] },
      { view: 'system', focus: '', hidden: ['a.b', 'c.d'] },
    ];
    for (const state of states) {
      expect(parseHash(formatHash(state))).toEqual(state);
    }
  });

  it('omits empty parts', () => {
    expect(formatHash(DEFAULT_STATE)).toBe('#view=system');
  });

  it('backs sameState', () => {
    expect(sameState(
      { view: 'system', focus: '', hidden: ['b', 'a'] },
      { view: 'system', focus: 'ignored', hidden: ['a', 'b', 'a'] },
    )).toBe(true);
  });
});

describe('withHidden', () => {
  it('adds and removes ids', () => {
    const s0: ViewState = { view: 'system', focus: '', hidden: [] };
    const s1 = withHidden(s0, 'x.y', true);
    expect(s1.hidden).toEqual(['x.y']);
    expect(withHidden(s1, 'x.y', false).hidden).toEqual([]);
  });

  it('keeps the list sorted and unique', () => {
    const s: ViewState = { view: 'system', focus: '', hidden: ['b'] };
    expect(withHidden(s, 'a', true).hidden).toEqual(['a', 'b']);
    expect(withHidden(s, 'b', true).hidden).toEqual(['b']);
  });
});

describe('navigate', () => {
  const system: ViewState = { view: 'system', focus: '', hidden: ['h.h'] };
  const pkg: ViewState = { view: 'package', focus: 'a.model', hidden: ['h.h'] };
  const cls: ViewState = { view: 'class', focus: 'a.model.Example', hidden: ['h.h'] };

  it('drills from a package circle into the package view', () => {
    const next = navigate(system, circle({ kind: 'package', label: { package: 'a.model' } }), false);
    expect(next).toEqual({ view: 'package', focus: 'a.model', hidden: ['h.h'] });
  });

  it('drills from a schema bubble into its package', () => {
    const next = navigate(system,
      circle({ kind: 'schema-bubble', label: { schema: 's', package: 'a.tests', count: 3 } }),
      false);
    expect(next?.view).toBe('package');
    expect(next?.focus).toBe('a.tests');
  });

  it('drills from a class circle into the class view', () => {
    const next = navigate(pkg, circle({ kind: 'class', id: 'a.model.Example' }), false);
    expect(next).toEqual({ view: 'class', focus: 'a.model.Example', hidden: ['h.h'] });
  });

  it('drills from a package-view annotation into its class', () => {
    const next = navigate(pkg, circle({ kind: 'annotation', id: 'a.model.Example@3' }), false);
    expect(next?.view).toBe('class');
    expect(next?.focus).toBe('a.model.Example');
  });

  it('ignores annotations and elements inside the class view', () => {
    expect(navigate(cls, circle({ kind: 'annotation', id: 'a.model.Example@0' }), false)).toBeNull();
    expect(navigate(cls, circle({ kind: 'element', id: 'a.model.Example#1' }), false)).toBeNull();
  });

  it('goes up from the class view to its package', () => {
    const next = navigate(cls,
      circle({ kind: 'class', label: { package: 'a.model', class: 'Example' } }), true);
    expect(next).toEqual({ view: 'package', focus: 'a.model', hidden: ['h.h'] });
  });

  it('goes up from a nested package to its parent', () => {
    const next = navigate(pkg, circle({ kind: 'package' }), true);
    expect(next).toEqual({ view: 'package', focus: 'a', hidden: ['h.h'] });
  });

  it('goes up from a top-level package to the system view', () => {
    const top: ViewState = { view: 'package', focus: 'a', hidden: [] };
    expect(navigate(top, circle({ kind: 'package' }), true))
      .toEqual({ view: 'system', focus: '', hidden: [] });
  });

  it('does nothing at the top of the system view', () => {
    expect(navigate(system, circle({ kind: 'package' }), true)).toBeNull();
  });

  it('preserves the hidden set across every transition', () => {
    const next = navigate(system, circle({ kind: 'package', label: { package: 'a' } }), false);
    expect(next?.hidden).toEqual(['h.h']);
  });
});
