// Wire types, mirroring the annotation service exactly.

export interface CriterionDescriptor {
  index: number;
  short_name: string;
  description_hi: string;
  description_en: string;
}

export interface ItemPayload {
  completed: false;
  judge_id: string;
  system_id: string;
  doc_id: string;
  seg_id: number;
  source: string;
  hypothesis: string;
  criteria: CriterionDescriptor[];
  done: number;
  total: number;
}

export interface CompletedPayload {
  completed: true;
  done: number;
  total: number;
}

export type NextPayload = ItemPayload | CompletedPayload;

export interface Progress {
  done: number;
  total: number;
}

// Complete record as the server validates it: all ten ratings, 0..4 each.
export interface RatingRecord {
  judge_id: string;
  system_id: string;
  doc_id: string;
  seg_id: number;
  ratings: number[];
  timestamp: string;
}

export interface SubmitResult {
  stored: number;
  done: number;
  total: number;
}

export const CRITERIA_COUNT = 10;
export const RATING_MIN = 0;
export const RATING_MAX = 4;
