// Application wiring: URL fragment drives the view; every click or legend
// toggle becomes a fragment change, which triggers one layout fetch.
// Fetches follow latest-wins: a stale response is dropped, never drawn.

import { ApiError, Client } from './api.js';
import { renderLegend } from './legend.js';
import { renderHoverPanel, renderScene } from './render.js';
import {
  DEFAULT_STATE,
  formatHash,
  navigate,
  parseHash,
  sameState,
  withHidden,
} from './state.js';
import type { LayoutCircle, LayoutDocument, SchemaEntry, ViewState } from './types.js';

export interface AppElements {
  scene: HTMLElement;
  legend: HTMLElement;
  hover: HTMLElement;
  title: HTMLElement;
  banner: HTMLElement;
  notice: HTMLElement;
  sourceRef: HTMLElement;
}

const ELEMENT_IDS: Record<keyof AppElements, string> = {
  scene: 'scene',
  legend: 'legend',
  hover: 'hover-panel',
  title: 'view-title',
  banner: 'error-banner',
  notice: 'notice',
  sourceRef: 'source-ref',
};

export class App {
  private state: ViewState = DEFAULT_STATE;
  private schemas: SchemaEntry[] = [];
  private requestSeq = 0;
  private lastSeenHash: string | null = null;

  constructor(
    private readonly client: Client,
    private readonly win: Window,
    private readonly els: AppElements,
  ) {}

  static fromDocument(client: Client, win: Window, dom: Document): App {
    const els = Object.fromEntries(
      Object.entries(ELEMENT_IDS).map(([key, id]) => {
        const el = dom.getElementById(id);
        if (el === null) throw new Error(`missing #${id}`);
        return [key, el];
      }),
    ) as unknown as AppElements;
    return new App(client, win, els);
  }

  async start(): Promise<void> {
    this.win.addEventListener('hashchange', () => {
      void this.onHashChange();
    });
    try {
      const project = await this.client.project();
      this.schemas = project.schemas;
      this.els.notice.textContent = project.schemas.length === 0
        ? 'No annotations found in this project.'
        : '';
    } catch (err) {
      this.showError(err);
      return;
    }
    await this.onHashChange(true);
  }

  private async onHashChange(force = false): Promise<void> {
    const hash = this.win.location.hash;
    if (!force && hash === this.lastSeenHash) return;
    this.lastSeenHash = hash;
    this.state = parseHash(hash);
    this.renderLegendPane();
    await this.refresh();
  }

  private async refresh(): Promise<void> {
    const seq = ++this.requestSeq;
    try {
      const doc = await this.client.layout(this.state);
      if (seq !== this.requestSeq) return; // superseded by a newer request
      this.showError(null);
      this.renderTitle(doc);
      this.renderScenePane(doc);
      void this.updateSourceRef(seq);
    } catch (err) {
      if (seq !== this.requestSeq) return;
      this.showError(err);
    }
  }

  private goTo(next: ViewState): void {
    if (sameState(next, this.state)) return;
    this.win.location.hash = formatHash(next);
    void this.onHashChange();
  }

  private renderTitle(doc: LayoutDocument): void {
    const focus = doc.focus ? ` — ${doc.focus}` : '';
    this.els.title.textContent = `${doc.view} view (${doc.metric})${focus}`;
  }

  private renderScenePane(doc: LayoutDocument): void {
    const svg = renderScene(doc, {
      onCircleClick: (circle, isRoot) => {
        const next = navigate(this.state, circle, isRoot);
        if (next !== null) this.goTo(next);
      },
      onCircleHover: (circle: LayoutCircle | null) => {
        renderHoverPanel(circle, this.els.hover);
      },
    }, this.els.scene.ownerDocument);
    this.els.scene.textContent = '';
    this.els.scene.appendChild(svg);
    renderHoverPanel(null, this.els.hover);
  }

  private renderLegendPane(): void {
    const table = renderLegend(this.schemas, new Set(this.state.hidden), {
      onToggle: (id, hidden) => this.goTo(withHidden(this.state, id, hidden)),
    }, this.els.legend.ownerDocument);
    this.els.legend.textContent = '';
    this.els.legend.appendChild(table);
  }

  private async updateSourceRef(seq: number): Promise<void> {
    if (this.state.view !== 'class' || !this.state.focus) {
      this.els.sourceRef.textContent = '';
      return;
    }
    try {
      const ref = await this.client.sourceRef(this.state.focus);
      if (seq !== this.requestSeq) return;
      this.els.sourceRef.textContent = `${ref.path}:${ref.line}`;
    } catch {
      if (seq === this.requestSeq) this.els.sourceRef.textContent = '';
    }
  }

  private showError(err: unknown): void {
    if (err === null) {
      this.els.banner.textContent = '';
      this.els.banner.classList.remove('visible');
      return;
    }
    const message = err instanceof ApiError
      ? err.message
      : `unexpected error: ${String(err)}`;
    this.els.banner.textContent = message;
    this.els.banner.classList.add('visible');
  }
}

function boot(): void {
  if (typeof document === 'undefined') return;
  if (document.getElementById('cadv-app') === null) return;
  const app = App.fromDocument(new Client(), window, document);
  void app.start();
}

boot();
