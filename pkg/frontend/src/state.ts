// Rating form state, kept free of DOM concerns so the invariants are
// unit-testable: submit is possible if and only if all ten criteria have
// a value, and a record can never be built with a missing or
// out-of-range rating.

import {
  CRITERIA_COUNT,
  RATING_MAX,
  RATING_MIN,
  type ItemPayload,
  type RatingRecord,
} from './types';

export class IncompleteFormError extends Error {
  constructor(readonly missing: number[]) {
    super(`criteria without a rating: ${missing.join(', ')}`);
    this.name = 'IncompleteFormError';
  }
}

export class RatingFormState {
  readonly payload: ItemPayload;
  private readonly selections: (number | null)[];
  focusIndex = 0; // 0..9 criteria; CRITERIA_COUNT means the submit control

  constructor(payload: ItemPayload) {
    if (payload.criteria.length !== CRITERIA_COUNT) {
      throw new Error(
        `payload carries ${payload.criteria.length} criteria, ` +
          `expected ${CRITERIA_COUNT}`,
      );
    }
    this.payload = payload;
    this.selections = new Array(CRITERIA_COUNT).fill(null);
  }

  selection(criterion: number): number | null {
    return this.selections[criterion];
  }

  setRating(criterion: number, value: number): void {
    if (criterion < 0 || criterion >= CRITERIA_COUNT) {
      throw new Error(`no criterion ${criterion}`);
    }
    if (!Number.isInteger(value) || value < RATING_MIN || value > RATING_MAX) {
      throw new Error(`rating ${value} outside ${RATING_MIN}..${RATING_MAX}`);
    }
    this.selections[criterion] = value;
  }

  clearRating(criterion: number): void {
    this.selections[criterion] = null;
  }

  missingCriteria(): number[] {
    const missing: number[] = [];
    this.selections.forEach((value, index) => {
      if (value === null) missing.push(index + 1);
    });
    return missing;
  }

  get submitEnabled(): boolean {
    return this.missingCriteria().length === 0;
  }

  toRecord(now: () => string = () => new Date().toISOString()): RatingRecord {
    const missing = this.missingCriteria();
    if (missing.length > 0) throw new IncompleteFormError(missing);
    return {
      judge_id: this.payload.judge_id,
      system_id: this.payload.system_id,
      doc_id: this.payload.doc_id,
      seg_id: this.payload.seg_id,
      ratings: this.selections.map((value) => value as number),
      timestamp: now(),
    };
  }
}
