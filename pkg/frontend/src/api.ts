/** Thin typed client for the workbench API. All state lives server-side. */

import type {
  AnnotationDto,
  MetaDto,
  NextDocumentDto,
  ProjectDto,
} from './types.js';

export class ApiError extends Error {
  constructor(public code: string, message: string, public status: number) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T | null> {
  const response = await fetch(url, {
    headers: { 'Content-Type': 'application/json' },
    ...init,
  });
  if (response.status === 204) return null;
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body.code ?? 'Error', body.message ?? 'request failed',
      response.status);
  }
  return body as T;
}

export class WorkbenchClient {
  constructor(private base = '') {}

  listProjects(): Promise<ProjectDto[]> {
    return request<ProjectDto[]>(`${this.base}/api/projects`) as Promise<ProjectDto[]>;
  }

  getProject(id: string): Promise<ProjectDto> {
    return request<ProjectDto>(`${this.base}/api/projects/${id}`) as Promise<ProjectDto>;
  }

  /** null when the queue is drained (HTTP 204). */
  nextDocument(projectId: string, annotator: string): Promise<NextDocumentDto | null> {
    const query = new URLSearchParams({ annotator });
    return request<NextDocumentDto>(
      `${this.base}/api/projects/${projectId}/next?${query}`);
  }

  feedback(annotationId: string, verdict: 'correct' | 'incorrect',
           annotator: string): Promise<AnnotationDto> {
    return request<AnnotationDto>(
      `${this.base}/api/annotations/${annotationId}/feedback`,
      { method: 'POST', body: JSON.stringify({ verdict, annotator }) },
    ) as Promise<AnnotationDto>;
  }

  rerun(docId: string, projectId: string): Promise<{ annotations: AnnotationDto[] }> {
    return request<{ annotations: AnnotationDto[] }>(
      `${this.base}/api/documents/${docId}/rerun`,
      { method: 'POST', body: JSON.stringify({ project: projectId }) },
    ) as Promise<{ annotations: AnnotationDto[] }>;
  }

  addConcept(concept: { cui: string; name: string; synonyms?: string[];
                        context_example?: string }): Promise<unknown> {
    return request(`${this.base}/api/concepts`,
      { method: 'POST', body: JSON.stringify(concept) });
  }

  recordMeta(annotationId: string, task: string, value: string,
             annotator: string): Promise<MetaDto> {
    return request<MetaDto>(`${this.base}/api/annotations/${annotationId}/meta`,
      { method: 'POST', body: JSON.stringify({ task, value, annotator }) },
    ) as Promise<MetaDto>;
  }

  submit(docId: string, projectId: string, annotator: string): Promise<unknown> {
    return request(`${this.base}/api/documents/${docId}/submit`,
      { method: 'POST', body: JSON.stringify({ project: projectId, annotator }) });
  }

  markIncomplete(docId: string, projectId: string, annotator: string): Promise<unknown> {
    return request(`${this.base}/api/documents/${docId}/incomplete`,
      { method: 'POST', body: JSON.stringify({ project: projectId, annotator }) });
  }

  exportStandoff(projectId: string, annotator: string): Promise<unknown> {
    const query = new URLSearchParams({ annotator });
    return request(`${this.base}/api/projects/${projectId}/export?${query}`);
  }
}
