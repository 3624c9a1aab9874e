// Single-page rating flow: one segment at a time, no back-navigation.
// The judge sees the source and the hypothesis side by side and rates the
// ten criteria on 0-4 controls; which system produced the hypothesis is
// never rendered.

import { AnnotationApi, ApiError } from './api';
import { handleKey } from './keyboard';
import { IncompleteFormError, RatingFormState } from './state';
import { CRITERIA_COUNT, type ItemPayload, type NextPayload } from './types';

export interface AppOptions {
  root: HTMLElement;
  sessionId: string;
  baseUrl?: string;
  fetchFn?: typeof fetch;
  now?: () => string;
  documentRef?: Document;
}

export class AnnotationApp {
  readonly api: AnnotationApi;
  private readonly root: HTMLElement;
  private readonly now: () => string;
  private readonly doc: Document;
  state: RatingFormState | null = null;
  private submitting = false;
  private keyListener: ((event: KeyboardEvent) => void) | null = null;

  constructor(options: AppOptions) {
    this.root = options.root;
    this.api = new AnnotationApi(
      options.sessionId,
      options.baseUrl ?? '',
      options.fetchFn ?? fetch.bind(globalThis),
    );
    this.now = options.now ?? (() => new Date().toISOString());
    this.doc = options.documentRef ?? document;
  }

  async start(): Promise<void> {
    this.attachKeyboard();
    await this.loadNext();
  }

  destroy(): void {
    if (this.keyListener) {
      this.doc.removeEventListener('keydown', this.keyListener);
      this.keyListener = null;
    }
    this.root.innerHTML = '';
    this.state = null;
  }

  private attachKeyboard(): void {
    if (this.keyListener) return;
    this.keyListener = (event: KeyboardEvent) => {
      if (!this.state || this.submitting) return;
      const target = event.target as HTMLElement | null;
      if (target && (target.tagName === 'INPUT' || target.tagName === 'TEXTAREA')) {
        return;
      }
      const handled = handleKey(this.state, event.key, {
        onRatingSet: (criterion, value) => this.paintRating(criterion, value),
        onFocusChange: (focusIndex) => this.paintFocus(focusIndex),
        onSubmit: () => void this.submit(),
      });
      if (handled) event.preventDefault();
    };
    this.doc.addEventListener('keydown', this.keyListener);
  }

  async loadNext(): Promise<void> {
    let payload: NextPayload;
    try {
      payload = await this.api.nextItem();
    } catch (error) {
      this.renderRetry(error, () => void this.loadNext());
      return;
    }
    if (payload.completed) {
      this.renderCompletion(payload.done, payload.total);
      return;
    }
    try {
      this.state = new RatingFormState(payload);
    } catch (error) {
      this.renderBrokenPayload(error);
      return;
    }
    this.renderItem(payload);
  }

  async submit(): Promise<void> {
    if (!this.state || this.submitting) return;
    if (!this.state.submitEnabled) return; // button is disabled too
    this.submitting = true;
    try {
      const record = this.state.toRecord(this.now);
      await this.api.submitRating(record);
      this.state = null;
      await this.loadNext();
    } catch (error) {
      if (error instanceof IncompleteFormError) {
        this.showInlineError(`rate criteria ${error.missing.join(', ')} first`);
      } else if (error instanceof ApiError && error.status === 422) {
        this.showInlineError(error.message);
      } else if (error instanceof ApiError && error.status === 409) {
        // already rated or out of step: the server decides what is next
        this.state = null;
        await this.loadNext();
      } else {
        this.showInlineError('could not reach the server; your ratings are kept — submit again');
      }
    } finally {
      this.submitting = false;
    }
  }

  // --- rendering -----------------------------------------------------

  private renderItem(payload: ItemPayload): void {
    const percent = payload.total === 0 ? 0 : (100 * payload.done) / payload.total;
    const rows = payload.criteria
      .map(
        (criterion, index) => `
      <div class="criterion-row" data-criterion="${index}">
        <div class="criterion-label">
          <span class="criterion-index">${criterion.index}.</span>
          <span class="criterion-hi">${escapeHtml(criterion.description_hi)}</span>
          <span class="criterion-en">${escapeHtml(criterion.description_en)}</span>
        </div>
        <div class="rating-buttons" role="radiogroup">
          ${[0, 1, 2, 3, 4]
            .map(
              (value) =>
                `<button type="button" class="rating-btn" data-criterion="${index}" data-value="${value}" aria-pressed="false">${value}</button>`,
            )
            .join('')}
        </div>
      </div>`,
      )
      .join('');

    this.root.innerHTML = `
      <div class="annotation-screen">
        <div class="progress">
          <div class="progress-track"><div class="progress-bar" style="width:${percent}%"></div></div>
          <span class="progress-label">${payload.done}/${payload.total}</span>
        </div>
        <div class="texts">
          <section class="pane">
            <h2>स्रोत वाक्य · Source</h2>
            <p class="source-text" lang="en">${escapeHtml(payload.source)}</p>
          </section>
          <section class="pane">
            <h2>मशीनी अनुवाद · Translation</h2>
            <p class="hypothesis-text" lang="hi">${escapeHtml(payload.hypothesis)}</p>
          </section>
        </div>
        <div class="criteria">${rows}</div>
        <div class="error-banner" hidden></div>
        <button id="submit-btn" type="button" disabled>जमा करें · Submit</button>
        <p class="hint">keys: 0-4 rate · ↑/↓ move · Enter submit</p>
      </div>`;

    this.root.querySelectorAll<HTMLButtonElement>('.rating-btn').forEach((button) => {
      button.addEventListener('click', () => {
        const criterion = Number(button.dataset.criterion);
        const value = Number(button.dataset.value);
        this.state?.setRating(criterion, value);
        if (this.state) {
          this.state.focusIndex = Math.min(criterion + 1, CRITERIA_COUNT);
          this.paintFocus(this.state.focusIndex);
        }
        this.paintRating(criterion, value);
      });
    });
    const submit = this.root.querySelector<HTMLButtonElement>('#submit-btn');
    submit?.addEventListener('click', () => void this.submit());
    this.paintFocus(0);
  }

  private paintRating(criterion: number, value: number): void {
    const row = this.root.querySelector(`.criterion-row[data-criterion="${criterion}"]`);
    row?.querySelectorAll<HTMLButtonElement>('.rating-btn').forEach((button) => {
      const selected = Number(button.dataset.value) === value;
      button.classList.toggle('selected', selected);
      button.setAttribute('aria-pressed', String(selected));
    });
    this.syncSubmitEnabled();
  }

  private paintFocus(focusIndex: number): void {
    this.root.querySelectorAll('.criterion-row').forEach((row, index) => {
      row.classList.toggle('focused', index === focusIndex);
    });
    const submit = this.root.querySelector<HTMLButtonElement>('#submit-btn');
    submit?.classList.toggle('focused', focusIndex === CRITERIA_COUNT);
  }

  private syncSubmitEnabled(): void {
    const submit = this.root.querySelector<HTMLButtonElement>('#submit-btn');
    if (submit && this.state) submit.disabled = !this.state.submitEnabled;
  }

  private showInlineError(message: string): void {
    const banner = this.root.querySelector<HTMLElement>('.error-banner');
    if (banner) {
      banner.textContent = message;
      banner.hidden = false;
    }
  }

  private renderRetry(error: unknown, retry: () => void): void {
    const message = error instanceof Error ? error.message : String(error);
    this.root.innerHTML = `
      <div class="retry-banner">
        <p>सर्वर से संपर्क नहीं हो सका · could not reach the server</p>
        <p class="retry-detail">${escapeHtml(message)}</p>
        <button id="retry-btn" type="button">फिर से · Retry</button>
      </div>`;
    this.root.querySelector('#retry-btn')?.addEventListener('click', retry);
  }

  private renderBrokenPayload(error: unknown): void {
    const message = error instanceof Error ? error.message : String(error);
    this.root.innerHTML = `
      <div class="payload-error">
        <p>रेटिंग फ़ॉर्म नहीं बन सका · cannot build the rating form</p>
        <p>${escapeHtml(message)}</p>
      </div>`;
  }

  private renderCompletion(done: number, total: number): void {
    this.state = null;
    this.root.innerHTML = `
      <div class="completion-screen">
        <h2>धन्यवाद! · All done</h2>
        <p class="progress-label">${done}/${total}</p>
      </div>`;
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}
