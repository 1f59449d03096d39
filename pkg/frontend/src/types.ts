/** Wire types of the workbench HTTP API. The UI holds no authoritative state:
 * every view is reconstructable from these payloads alone. */

export type AnnotationStatus = 'unreviewed' | 'correct' | 'incorrect';
export type DocStatus = 'pending' | 'incomplete' | 'submitted';

export interface AnnotationDto {
  id: string;
  doc_id: string;
  start: number;
  end: number;
  text: string;
  cui: string;
  confidence: number;
  candidates: string[];
  status: AnnotationStatus;
}

export interface PartitionDto {
  trusted: AnnotationDto[];
  flagged: AnnotationDto[];
}

export interface TaskDto {
  name: string;
  values: string[];
  help_text: string;
}

export interface ProjectDto {
  id: string;
  name: string;
  documents: string[];
  annotators: string[];
  tasks: TaskDto[];
  ner_mode: string;
  regex_pattern: string | null;
  delta: number | null;
}

export interface NextDocumentDto {
  doc_id: string;
  text: string;
  annotations: PartitionDto;
  remaining: number;
}

export interface MetaDto {
  annotation_id: string;
  task: string;
  value: string;
  annotator: string;
}

export interface ApiErrorDto {
  code: string;
  message: string;
}

export const NOT_ANNOTATED = 'N/A';
