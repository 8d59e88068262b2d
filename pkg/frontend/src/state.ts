// View state <-> URL fragment, plus the click-navigation rules.

import type { LayoutCircle, View, ViewState } from './types.js';

const VIEWS: readonly View[] = ['system', 'package', 'class'];

export const DEFAULT_STATE: ViewState = { view: 'system', focus: '', hidden: [] };

function normalizeHidden(ids: Iterable<string>): string[] {
  return [...new Set([...ids].filter((s) => s.length > 0))].sort();
}

/** Parse "#view=package&focus=a.model&hide=x,y"; bad input falls back to defaults. */
export function parseHash(hash: string): ViewState {
  const raw = hash.startsWith('#') ? hash.slice(1) : hash;
  const params = new URLSearchParams(raw);
  const view = params.get('view') as View | null;
  const state: ViewState = {
    view: view !== null && VIEWS.includes(view) ? view : 'system',
    focus: params.get('focus') ?? '',
    hidden: normalizeHidden((params.get('hide') ?? '').split(',')),
  };
  if (state.view === 'system') state.focus = '';
  return state;
}

export function formatHash(state: ViewState): string {
  const params = new URLSearchParams();
  params.set('view', state.view);
  if (state.view !== 'system' && state.focus) params.set('focus', state.focus);
  const hidden = normalizeHidden(state.hidden);
  if (hidden.length > 0) params.set('hide', hidden.join(','));
  return '#' + params.toString();
}

export function sameState(a: ViewState, b: ViewState): boolean {
  return formatHash(a) === formatHash(b);
}

export function withHidden(state: ViewState, id: string, hidden: boolean): ViewState {
  const set = new Set(state.hidden);
  if (hidden) set.add(id);
  else set.delete(id);
  return { ...state, hidden: normalizeHidden(set) };
}

function parentPackage(name: string): string {
  const dot = name.lastIndexOf('.');
  return dot < 0 ? '' : name.slice(0, dot);
}

/** The class a package-view annotation circle belongs to (id is "<class>@<n>"). */
function owningClass(circleId: string): string {
  const at = circleId.lastIndexOf('@');
  return at < 0 ? circleId : circleId.slice(0, at);
}

/**
 * Where a click on `circle` leads. The outermost circle goes up one level
 * (class -> its package, package -> parent package or the system view);
 * packages and schema bubbles drill into the package view; classes and
 * their annotations drill into the class view. Returns null when the
 * click changes nothing.
 */
export function navigate(state: ViewState, circle: LayoutCircle, isRoot: boolean): ViewState | null {
  if (isRoot) {
    if (state.view === 'class') {
      return { ...state, view: 'package', focus: String(circle.label['package'] ?? '') };
    }
    if (state.view === 'package') {
      return state.focus.includes('.')
        ? { ...state, view: 'package', focus: parentPackage(state.focus) }
        : { ...state, view: 'system', focus: '' };
    }
    return null;
  }
  switch (circle.kind) {
    case 'package':
      return { ...state, view: 'package', focus: String(circle.label['package'] ?? '') };
    case 'schema-bubble':
      return { ...state, view: 'package', focus: String(circle.label['package'] ?? '') };
    case 'class':
      return { ...state, view: 'class', focus: circle.id };
    case 'annotation':
      if (state.view === 'package') {
        return { ...state, view: 'class', focus: owningClass(circle.id) };
      }
      return null;
    default:
      return null;
  }
}
