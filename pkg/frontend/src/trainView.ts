/** Train Annotations screen: inspect spans, tick/cross feedback, rerun the
 * annotator, and add missing concepts from the side panel. */

import { WorkbenchClient } from './api.js';
import { renderHighlighted } from './highlight.js';
import {
  ViewState,
  applyNextDocument,
  emptyState,
  replaceAnnotations,
  selectedAnnotation,
} from './state.js';
import type { ProjectDto } from './types.js';

export class TrainView {
  state: ViewState;
  private delta: number;

  constructor(
    private root: HTMLElement,
    private client: WorkbenchClient,
    project: ProjectDto,
    annotator: string,
  ) {
    this.state = emptyState(project, annotator);
    this.delta = project.delta ?? 0.25;
  }

  async load(): Promise<void> {
    const payload = await this.client.nextDocument(
      this.state.project.id, this.state.annotator);
    if (payload === null) {
      this.renderDrained();
      return;
    }
    applyNextDocument(this.state, payload);
    this.render();
  }

  async tick(): Promise<void> {
    await this.applyVerdict('correct');
  }

  async cross(): Promise<void> {
    await this.applyVerdict('incorrect');
  }

  private async applyVerdict(verdict: 'correct' | 'incorrect'): Promise<void> {
    const ann = selectedAnnotation(this.state);
    if (!ann) return;
    const updated = await this.client.feedback(ann.id, verdict, this.state.annotator);
    this.state.annotations[this.state.selectedSpan] = updated;
    this.render();
  }

  async rerunAnnotator(): Promise<void> {
    if (!this.state.docId) return;
    const { annotations } = await this.client.rerun(
      this.state.docId, this.state.project.id);
    replaceAnnotations(this.state, annotations, this.delta);
    this.render();
  }

  async addConcept(): Promise<void> {
    const value = (selector: string): string =>
      (this.root.querySelector(selector) as HTMLInputElement | null)?.value ?? '';
    const cui = value('[data-field=cui]');
    const name = value('[data-field=name]');
    if (!cui || !name) return;
    const synonyms = value('[data-field=synonyms]')
      .split('|').map((s) => s.trim()).filter(Boolean);
    const context = value('[data-field=context]');
    await this.client.addConcept({
      cui, name, synonyms,
      context_example: context || undefined,
    });
    await this.rerunAnnotator();
  }

  selectSpan(index: number): void {
    if (index >= 0 && index < this.state.annotations.length) {
      this.state.selectedSpan = index;
      this.render();
    }
  }

  private renderDrained(): void {
    this.root.innerHTML =
      '<div class="dialog" role="dialog" data-testid="home-dialog">' +
      '<p>All documents reviewed.</p>' +
      '<button data-action="home">Return to home screen</button></div>';
  }

  render(): void {
    const state = this.state;
    this.root.innerHTML = '';

    const bar = document.createElement('header');
    bar.className = 'topbar';
    const rerunButton = document.createElement('button');
    rerunButton.dataset.action = 'rerun';
    rerunButton.textContent = 'Rerun the Annotator';
    rerunButton.addEventListener('click', () => void this.rerunAnnotator());
    const title = document.createElement('span');
    title.textContent =
      `${state.project.name} — ${state.docId ?? ''} (${state.remaining} remaining)`;
    bar.append(rerunButton, title);

    const textArea = document.createElement('section');
    textArea.className = 'document-text';
    textArea.dataset.testid = 'document-text';
    const selected = selectedAnnotation(state);
    textArea.append(renderHighlighted(state.text, state.annotations, {
      flagged: state.flaggedIds,
      selected: selected?.id,
    }));
    textArea.addEventListener('click', (event) => {
      const mark = (event.target as HTMLElement).closest('mark');
      if (!mark) return;
      const index = state.annotations.findIndex(
        (a) => a.id === mark.dataset.annotationId);
      this.selectSpan(index);
    });

    const panel = document.createElement('aside');
    panel.className = 'side-panel';
    if (selected) {
      const info = document.createElement('dl');
      info.dataset.testid = 'concept-meta';
      info.innerHTML =
        `<dt>CUI</dt><dd data-testid="selected-cui">${selected.cui}</dd>` +
        `<dt>Text</dt><dd>${selected.text}</dd>` +
        `<dt>Confidence</dt><dd>${selected.confidence.toFixed(3)}</dd>` +
        `<dt>Candidates</dt><dd>${selected.candidates.join(', ')}</dd>` +
        `<dt>Status</dt><dd><span class="badge" data-testid="status-badge">` +
        `${selected.status}</span></dd>`;
      const tickButton = document.createElement('button');
      tickButton.dataset.action = 'tick';
      tickButton.textContent = '✓';
      tickButton.title = 'correct';
      tickButton.addEventListener('click', () => void this.tick());
      const crossButton = document.createElement('button');
      crossButton.dataset.action = 'cross';
      crossButton.textContent = '✗';
      crossButton.title = 'incorrect';
      crossButton.addEventListener('click', () => void this.cross());
      panel.append(info, tickButton, crossButton);
    } else {
      panel.textContent = 'No concept spans in this document.';
    }

    const form = document.createElement('form');
    form.className = 'add-concept';
    form.dataset.testid = 'add-concept-form';
    form.innerHTML =
      '<h3>Add concept</h3>' +
      '<input data-field="cui" placeholder="CUI">' +
      '<input data-field="name" placeholder="Name">' +
      '<input data-field="synonyms" placeholder="Synonyms (| separated)">' +
      '<textarea data-field="context" placeholder="Context example"></textarea>' +
      '<button data-action="add-concept" type="submit">Add concept</button>';
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.addConcept();
    });

    this.root.append(bar, textArea, panel, form);
  }
}
