import { afterEach, describe, expect, it } from 'vitest';
import { vi } from 'vitest';

import { TrainView } from '../src/trainView.js';
import { FakeWorkbench, ambiguityServer, makeAnnotation } from './fakeServer.js';
import { flush, install, mount } from './helpers.js';

afterEach(() => vi.unstubAllGlobals());

function simpleServer(): FakeWorkbench {
  const server = new FakeWorkbench();
  server.addDocument('d1', 'Chief complaint: seizure.', [
    makeAnnotation('d1', 17, 24, 'seizure', 'C001'),
  ]);
  return server;
}

describe('Train Annotations view', () => {
  it('renders the document with highlighted spans and concept metadata', async () => {
    const client = install(simpleServer());
    const root = mount();
    const view = new TrainView(root, client, await client.getProject('p1'), 'alice');
    await view.load();

    const textArea = root.querySelector('[data-testid=document-text]')!;
    expect(textArea.textContent).toBe('Chief complaint: seizure.');
    const mark = textArea.querySelector('mark')!;
    expect(mark.textContent).toBe('seizure');
    expect(mark.dataset.start).toBe('17');
    expect(mark.dataset.end).toBe('24');
    expect(root.querySelector('[data-testid=selected-cui]')!.textContent)
      .toBe('C001');
  });

  it('tick flips the status badge to correct', async () => {
    const client = install(simpleServer());
    const root = mount();
    const view = new TrainView(root, client, await client.getProject('p1'), 'alice');
    await view.load();
    expect(root.querySelector('[data-testid=status-badge]')!.textContent)
      .toBe('unreviewed');

    (root.querySelector('[data-action=tick]') as HTMLButtonElement).click();
    await flush();
    expect(root.querySelector('[data-testid=status-badge]')!.textContent)
      .toBe('correct');
    const mark = root.querySelector('mark')!;
    expect(mark.dataset.status).toBe('correct');
  });

  it('feedback persists across a reload (fresh view, same server)', async () => {
    const server = simpleServer();
    const client = install(server);
    const root = mount();
    const view = new TrainView(root, client, await client.getProject('p1'), 'alice');
    await view.load();
    (root.querySelector('[data-action=cross]') as HTMLButtonElement).click();
    await flush();
    expect(root.querySelector('[data-testid=status-badge]')!.textContent)
      .toBe('incorrect');

    // reload: a brand-new view against the same backend reconstructs the state
    const root2 = mount();
    const view2 = new TrainView(root2, client, await client.getProject('p1'), 'alice');
    await view2.load();
    expect(root2.querySelector('[data-testid=status-badge]')!.textContent)
      .toBe('incorrect');
  });

  it('cross + rerun visibly swaps the CUI on the ambiguity fixture', async () => {
    const client = install(ambiguityServer());
    const root = mount();
    const view = new TrainView(root, client, await client.getProject('p1'), 'alice');
    await view.load();
    expect(root.querySelector('[data-testid=selected-cui]')!.textContent)
      .toBe('C100');

    (root.querySelector('[data-action=cross]') as HTMLButtonElement).click();
    await flush();
    (root.querySelector('[data-action=rerun]') as HTMLButtonElement).click();
    await flush();

    expect(root.querySelector('[data-testid=selected-cui]')!.textContent)
      .toBe('C200');
    expect(root.querySelector('mark')!.dataset.cui).toBe('C200');
    expect(root.querySelector('[data-testid=status-badge]')!.textContent)
      .toBe('unreviewed'); // verdicts do not carry to a different cui
  });

  it('add-concept form posts the concept and reruns', async () => {
    const server = simpleServer();
    const client = install(server);
    const root = mount();
    const view = new TrainView(root, client, await client.getProject('p1'), 'alice');
    await view.load();

    (root.querySelector('[data-field=cui]') as HTMLInputElement).value = 'C900';
    (root.querySelector('[data-field=name]') as HTMLInputElement).value = 'szr';
    (root.querySelector('[data-field=synonyms]') as HTMLInputElement).value =
      'seizure abbreviation';
    (root.querySelector('[data-field=context]') as HTMLTextAreaElement).value =
      'patient had a szr today';
    (root.querySelector('[data-testid=add-concept-form]') as HTMLFormElement)
      .dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await flush();

    expect(server.concepts.get('C900')).toEqual({
      name: 'szr', synonyms: ['seizure abbreviation'],
    });
    expect(server.requests.some((r) => r.includes('/rerun'))).toBe(true);
  });
});
