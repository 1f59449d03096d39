/** Entry point: project/annotator picker, then one of the two screens. */

import { WorkbenchClient } from './api.js';
import { TaskView } from './taskView.js';
import { TrainView } from './trainView.js';

export async function bootstrap(root: HTMLElement,
                                client = new WorkbenchClient()): Promise<void> {
  const projects = await client.listProjects();
  root.innerHTML = '<h1>annobench</h1>';
  const picker = document.createElement('div');
  picker.className = 'picker';
  const annotatorInput = document.createElement('input');
  annotatorInput.placeholder = 'annotator name';
  annotatorInput.dataset.testid = 'annotator-input';
  picker.append(annotatorInput);
  for (const project of projects) {
    const row = document.createElement('div');
    row.className = 'project-row';
    row.textContent = `${project.name} (${project.documents.length} documents) `;
    const trainButton = document.createElement('button');
    trainButton.textContent = 'Train Annotations';
    trainButton.addEventListener('click', () => {
      const view = new TrainView(root, client, project,
        annotatorInput.value || project.annotators[0]);
      void view.load();
    });
    const taskButton = document.createElement('button');
    taskButton.textContent = 'Annotate';
    taskButton.addEventListener('click', () => {
      const view = new TaskView(root, client, project,
        annotatorInput.value || project.annotators[0]);
      view.attachKeyboard();
      void view.load();
    });
    row.append(trainButton, taskButton);
    picker.append(row);
  }
  root.append(picker);
}

declare global {
  interface Window { annobenchBootstrap?: typeof bootstrap }
}

if (typeof window !== 'undefined') {
  window.annobenchBootstrap = bootstrap;
  const root = document.getElementById('app');
  if (root) void bootstrap(root);
}
