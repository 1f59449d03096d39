import { vi } from 'vitest';

import { WorkbenchClient } from '../src/api.js';
import type { FakeWorkbench } from './fakeServer.js';

export function install(server: FakeWorkbench): WorkbenchClient {
  vi.stubGlobal('fetch', server.fetch);
  return new WorkbenchClient();
}

export function mount(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById('app') as HTMLElement;
}

/** Settle pending microtasks/timers spawned by fire-and-forget handlers. */
export async function flush(rounds = 4): Promise<void> {
  for (let i = 0; i < rounds; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

export function press(key: string): void {
  document.dispatchEvent(new KeyboardEvent('keydown', { key, bubbles: true }));
}
