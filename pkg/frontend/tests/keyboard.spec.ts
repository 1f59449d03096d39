import { afterEach, describe, expect, it, vi } from 'vitest';

import { TaskView } from '../src/taskView.js';
import { tenDocumentServer } from './fakeServer.js';
import { flush, install, mount, press } from './helpers.js';

const detachers: (() => void)[] = [];

function attach(view: TaskView): void {
  detachers.push(view.attachKeyboard());
}

afterEach(() => {
  while (detachers.length) detachers.pop()!();
  vi.unstubAllGlobals();
});

describe('keyboard-only annotation', () => {
  it('arrows navigate spans, digits set values', async () => {
    const server = tenDocumentServer();
    const client = install(server);
    const root = mount();
    const view = new TaskView(root, client, await client.getProject('p1'), 'alice');
    attach(view);
    await view.load();

    expect(view.state.selectedSpan).toBe(0);
    press('ArrowRight');
    await flush();
    expect(view.state.selectedSpan).toBe(1);
    press('ArrowLeft');
    await flush();
    expect(view.state.selectedSpan).toBe(0);

    press('1');
    await flush();
    const selectedCell = root.querySelector(
      'tr.selected [data-task=Temporality]')!;
    expect(selectedCell.textContent).toBe('Is Historical');
  });

  it('annotates a 10-document project end-to-end via keyboard only', async () => {
    const server = tenDocumentServer();
    const client = install(server);
    const root = mount();
    const view = new TaskView(root, client, await client.getProject('p1'), 'alice');
    attach(view);
    await view.load();

    for (let doc = 0; doc < 10; doc += 1) {
      expect(view.state.docId).toBe(`note-${doc}`);
      // two spans per document: label first, arrow to second, label, submit
      press(doc % 2 === 0 ? '1' : '2');
      await flush();
      press('ArrowRight');
      await flush();
      press(doc % 2 === 0 ? '2' : '1');
      await flush();
      press('s');
      await flush();
    }

    // queue drained: the return-home dialog is showing
    expect(view.drained).toBe(true);
    expect(root.querySelector('[data-testid=home-dialog]')).not.toBeNull();

    // every document submitted, every span labelled
    for (let doc = 0; doc < 10; doc += 1) {
      expect(server.stateOf(`note-${doc}`, 'alice')).toBe('submitted');
    }
    expect(server.meta.size).toBe(20);
    const values = [...server.meta.values()];
    expect(values.filter((v) => v === 'Is Historical').length).toBe(10);
    expect(values.filter((v) => v === 'Not Historical').length).toBe(10);
  });

  it('ignores shortcuts while typing in form fields', async () => {
    const server = tenDocumentServer();
    const client = install(server);
    const root = mount();
    const view = new TaskView(root, client, await client.getProject('p1'), 'alice');
    attach(view);
    await view.load();

    const input = document.createElement('input');
    document.body.append(input);
    input.focus();
    input.dispatchEvent(new KeyboardEvent('keydown',
      { key: 's', bubbles: true }));
    await flush();
    expect(view.state.docId).toBe('note-0'); // no submit happened
  });
});
