// Keyboard entry: digits 0-4 rate the focused criterion and advance,
// arrows move between criteria, focus past the last criterion lands on
// the submit control. "0" is a real rating, never a skip.

import { CRITERIA_COUNT } from './types';
import type { RatingFormState } from './state';

export interface KeyboardActions {
  onRatingSet: (criterion: number, value: number) => void;
  onFocusChange: (focusIndex: number) => void;
  onSubmit: () => void;
}

export function handleKey(
  state: RatingFormState,
  key: string,
  actions: KeyboardActions,
): boolean {
  if (key >= '0' && key <= '4') {
    if (state.focusIndex >= CRITERIA_COUNT) return false;
    const criterion = state.focusIndex;
    state.setRating(criterion, Number(key));
    actions.onRatingSet(criterion, Number(key));
    state.focusIndex = Math.min(criterion + 1, CRITERIA_COUNT);
    actions.onFocusChange(state.focusIndex);
    return true;
  }
  if (key === 'ArrowDown' || key === 'j') {
    state.focusIndex = Math.min(state.focusIndex + 1, CRITERIA_COUNT);
    actions.onFocusChange(state.focusIndex);
    return true;
  }
  if (key === 'ArrowUp' || key === 'k') {
    state.focusIndex = Math.max(state.focusIndex - 1, 0);
    actions.onFocusChange(state.focusIndex);
    return true;
  }
  if (key === 'Enter' && state.focusIndex === CRITERIA_COUNT) {
    if (state.submitEnabled) actions.onSubmit();
    return true;
  }
  return false;
}
