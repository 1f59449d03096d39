/** Task-specific annotation screen: span list with per-task values, central
 * highlighted text, value buttons, span/task arrows, Submit and Incomplete. */

import { WorkbenchClient } from './api.js';
import { renderHighlighted } from './highlight.js';
import {
  ViewState,
  applyNextDocument,
  emptyState,
  metaKey,
  moveSpan,
  moveTask,
  selectedAnnotation,
} from './state.js';
import { NOT_ANNOTATED, type ProjectDto } from './types.js';

interface StandoffDoc {
  id: string;
  entities: { id: string; meta: Record<string, string> }[];
}

export class TaskView {
  state: ViewState;
  drained = false;

  constructor(
    private root: HTMLElement,
    private client: WorkbenchClient,
    project: ProjectDto,
    annotator: string,
  ) {
    this.state = emptyState(project, annotator);
  }

  async load(): Promise<void> {
    const payload = await this.client.nextDocument(
      this.state.project.id, this.state.annotator);
    if (payload === null) {
      this.drained = true;
      this.renderDrained();
      return;
    }
    this.drained = false;
    applyNextDocument(this.state, payload);
    await this.restoreMetaValues();
    this.render();
  }

  /** Recorded values survive reloads: rebuild them from the standoff export. */
  private async restoreMetaValues(): Promise<void> {
    const standoff = await this.client.exportStandoff(
      this.state.project.id, this.state.annotator) as { documents: StandoffDoc[] };
    const doc = standoff.documents.find((d) => d.id === this.state.docId);
    if (!doc) return;
    for (const entity of doc.entities) {
      for (const [task, value] of Object.entries(entity.meta)) {
        this.state.metaValues.set(metaKey(entity.id, task), value);
      }
    }
  }

  currentTask() {
    return this.state.project.tasks[this.state.currentTask] ?? null;
  }

  valueFor(annotationId: string, task: string): string {
    return this.state.metaValues.get(metaKey(annotationId, task)) ?? NOT_ANNOTATED;
  }

  async chooseValue(value: string): Promise<void> {
    const ann = selectedAnnotation(this.state);
    const task = this.currentTask();
    if (!ann || !task || !task.values.includes(value)) return;
    await this.client.recordMeta(ann.id, task.name, value, this.state.annotator);
    this.state.metaValues.set(metaKey(ann.id, task.name), value);
    this.render();
  }

  async chooseValueByDigit(digit: number): Promise<void> {
    const task = this.currentTask();
    if (!task) return;
    const value = task.values[digit - 1];
    if (value !== undefined) await this.chooseValue(value);
  }

  nextSpan(): void { moveSpan(this.state, 1); this.render(); this.scrollToSelected(); }
  previousSpan(): void { moveSpan(this.state, -1); this.render(); this.scrollToSelected(); }
  nextTask(): void { moveTask(this.state, 1); this.render(); }
  previousTask(): void { moveTask(this.state, -1); this.render(); }

  selectSpanById(annotationId: string): void {
    const index = this.state.annotations.findIndex((a) => a.id === annotationId);
    if (index >= 0) {
      this.state.selectedSpan = index;
      this.render();
      this.scrollToSelected();
    }
  }

  private scrollToSelected(): void {
    const mark = this.root.querySelector('mark.selected');
    if (mark && typeof (mark as HTMLElement).scrollIntoView === 'function') {
      (mark as HTMLElement).scrollIntoView({ block: 'center' });
    }
  }

  async submit(): Promise<void> {
    if (!this.state.docId) return;
    await this.client.submit(this.state.docId, this.state.project.id,
      this.state.annotator);
    await this.load();
  }

  async markIncomplete(): Promise<void> {
    if (!this.state.docId) return;
    await this.client.markIncomplete(this.state.docId, this.state.project.id,
      this.state.annotator);
    await this.load();
  }

  handleKey(event: KeyboardEvent): void {
    const target = event.target as HTMLElement | null;
    if (target && ['INPUT', 'TEXTAREA', 'SELECT'].includes(target.tagName)) return;
    if (event.metaKey || event.ctrlKey) return;
    if (event.key === 'ArrowRight') { this.nextSpan(); event.preventDefault(); }
    else if (event.key === 'ArrowLeft') { this.previousSpan(); event.preventDefault(); }
    else if (event.key === 'ArrowDown') { this.nextTask(); event.preventDefault(); }
    else if (event.key === 'ArrowUp') { this.previousTask(); event.preventDefault(); }
    else if (/^[1-9]$/.test(event.key)) {
      void this.chooseValueByDigit(Number(event.key));
      event.preventDefault();
    } else if (event.key === 's') { void this.submit(); event.preventDefault(); }
    else if (event.key === 'i') { void this.markIncomplete(); event.preventDefault(); }
  }

  attachKeyboard(target: EventTarget = document): () => void {
    const handler = (event: Event) => this.handleKey(event as KeyboardEvent);
    target.addEventListener('keydown', handler);
    return () => target.removeEventListener('keydown', handler);
  }

  private renderDrained(): void {
    this.root.innerHTML =
      '<div class="dialog" role="dialog" data-testid="home-dialog">' +
      '<p>No more documents to annotate.</p>' +
      '<button data-action="home">Return to home screen</button></div>';
  }

  render(): void {
    const state = this.state;
    const task = this.currentTask();
    this.root.innerHTML = '';

    const bar = document.createElement('header');
    bar.className = 'topbar';
    bar.dataset.testid = 'task-bar';
    const label = document.createElement('strong');
    label.textContent = task ? task.name : 'No task';
    const remaining = document.createElement('span');
    remaining.dataset.testid = 'remaining';
    remaining.textContent = `${state.remaining} documents remaining`;
    const help = document.createElement('a');
    help.href = '#help';
    help.dataset.testid = 'help-link';
    help.title = task?.help_text ?? '';
    help.textContent = 'Help';
    bar.append(label, remaining, help);

    const sidebar = document.createElement('aside');
    sidebar.className = 'span-list';
    const table = document.createElement('table');
    table.dataset.testid = 'span-table';
    const header = document.createElement('tr');
    header.innerHTML = '<th>Span</th><th>CUI</th>' +
      state.project.tasks.map((t) => `<th>${t.name}</th>`).join('');
    table.append(header);
    // flagged spans sort first for priority review
    const reviewOrder = [...state.annotations].sort((a, b) => {
      const fa = state.flaggedIds.has(a.id) ? 0 : 1;
      const fb = state.flaggedIds.has(b.id) ? 0 : 1;
      return fa - fb || a.start - b.start;
    });
    for (const ann of reviewOrder) {
      const row = document.createElement('tr');
      row.dataset.annotationId = ann.id;
      if (ann.id === selectedAnnotation(state)?.id) row.classList.add('selected');
      if (state.flaggedIds.has(ann.id)) row.classList.add('flagged');
      const cells = state.project.tasks.map((t) =>
        `<td data-task="${t.name}">${this.valueFor(ann.id, t.name)}</td>`).join('');
      row.innerHTML = `<td>${ann.text}</td><td>${ann.cui}</td>${cells}`;
      row.addEventListener('click', () => this.selectSpanById(ann.id));
      table.append(row);
    }
    sidebar.append(table);

    const textArea = document.createElement('section');
    textArea.className = 'document-text';
    textArea.dataset.testid = 'document-text';
    textArea.append(renderHighlighted(state.text, state.annotations, {
      flagged: state.flaggedIds,
      selected: selectedAnnotation(state)?.id,
    }));
    textArea.addEventListener('click', (event) => {
      const mark = (event.target as HTMLElement).closest('mark');
      if (mark?.dataset.annotationId) this.selectSpanById(mark.dataset.annotationId);
    });

    const bottom = document.createElement('footer');
    bottom.className = 'bottombar';
    const taskLabel = document.createElement('span');
    taskLabel.dataset.testid = 'current-task';
    taskLabel.textContent = task ? task.name : '';
    bottom.append(taskLabel);
    if (task) {
      task.values.forEach((value, i) => {
        const button = document.createElement('button');
        button.dataset.value = value;
        button.textContent = `${i + 1}. ${value}`;
        button.addEventListener('click', () => void this.chooseValue(value));
        bottom.append(button);
      });
    }
    const nav = document.createElement('span');
    nav.className = 'nav';
    const controls: [string, () => void][] = [
      ['◀ span', () => this.previousSpan()],
      ['span ▶', () => this.nextSpan()],
      ['▲ task', () => this.previousTask()],
      ['task ▼', () => this.nextTask()],
    ];
    for (const [text, action] of controls) {
      const button = document.createElement('button');
      button.textContent = text;
      button.addEventListener('click', action);
      nav.append(button);
    }
    const submitButton = document.createElement('button');
    submitButton.dataset.action = 'submit';
    submitButton.textContent = 'Submit';
    submitButton.addEventListener('click', () => void this.submit());
    const incompleteButton = document.createElement('button');
    incompleteButton.dataset.action = 'incomplete';
    incompleteButton.textContent = 'Incomplete';
    incompleteButton.addEventListener('click', () => void this.markIncomplete());
    bottom.append(nav, submitButton, incompleteButton);

    this.root.append(bar, sidebar, textArea, bottom);
  }
}
