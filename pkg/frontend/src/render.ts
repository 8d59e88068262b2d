// SVG scene builder. Every position and radius comes straight from the
// layout document; the only value derived here is the viewBox framing.
// The scene itself carries no text (labels live in the hover panel).

import type { LayoutCircle, LayoutDocument } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const FRAME = 1.02; // breathing room around the outermost circle

export interface SceneHandlers {
  onCircleClick?(circle: LayoutCircle, isRoot: boolean): void;
  onCircleHover?(circle: LayoutCircle | null): void;
}

function applyStyle(el: SVGCircleElement, circle: LayoutCircle): void {
  switch (circle.style) {
    case 'dashed-outline':
      el.setAttribute('fill', '#ececec');
      el.setAttribute('stroke', '#8a8a8a');
      el.setAttribute('stroke-dasharray', '6 4');
      el.setAttribute('stroke-width', String(circle.r * 0.01 + 0.05));
      break;
    case 'white-fill':
      el.setAttribute('fill', circle.color);
      el.setAttribute('stroke', '#c4c4c4');
      el.setAttribute('stroke-width', String(circle.r * 0.005 + 0.02));
      break;
    case 'gray-fill':
    case 'schema-color':
      el.setAttribute('fill', circle.color);
      break;
  }
}

export function renderScene(
  doc: LayoutDocument,
  handlers: SceneHandlers = {},
  dom: Document = document,
): SVGSVGElement {
  const svg = dom.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
  svg.setAttribute('class', 'cadv-scene');
  const root = doc.circles[0];
  if (root === undefined) {
    svg.setAttribute('viewBox', '-1 -1 2 2');
    return svg;
  }
  const half = root.r * FRAME;
  svg.setAttribute('viewBox',
    `${root.cx - half} ${root.cy - half} ${2 * half} ${2 * half}`);
  svg.setAttribute('preserveAspectRatio', 'xMidYMid meet');

  // document order is depth-first, so parents paint under their children
  doc.circles.forEach((circle, index) => {
    const el = dom.createElementNS(SVG_NS, 'circle') as SVGCircleElement;
    el.setAttribute('cx', String(circle.cx));
    el.setAttribute('cy', String(circle.cy));
    el.setAttribute('r', String(circle.r));
    el.setAttribute('data-id', circle.id);
    el.setAttribute('data-kind', circle.kind);
    if (circle.schema !== null) el.setAttribute('data-schema', circle.schema);
    applyStyle(el, circle);
    const isRoot = index === 0;
    if (handlers.onCircleClick) {
      el.addEventListener('click', (ev) => {
        ev.stopPropagation();
        handlers.onCircleClick?.(circle, isRoot);
      });
    }
    if (handlers.onCircleHover) {
      el.addEventListener('mouseenter', () => handlers.onCircleHover?.(circle));
      el.addEventListener('mouseleave', () => handlers.onCircleHover?.(null));
    }
    svg.appendChild(el);
  });
  return svg;
}

/** Hover panel content: exactly the label fields the layout attached. */
export function renderHoverPanel(circle: LayoutCircle | null, panel: HTMLElement): void {
  panel.textContent = '';
  if (circle === null) {
    panel.classList.remove('visible');
    return;
  }
  panel.classList.add('visible');
  const dom = panel.ownerDocument;
  const list = dom.createElement('dl');
  for (const [key, value] of Object.entries(circle.label)) {
    const dt = dom.createElement('dt');
    dt.textContent = key;
    const dd = dom.createElement('dd');
    dd.textContent = String(value);
    list.appendChild(dt);
    list.appendChild(dd);
  }
  panel.appendChild(list);
}
