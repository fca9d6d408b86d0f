/**
 * Single-page advisor app: a situation form on one side, the ranked
 * play list on the other, with what-if comparison against the pinned
 * previous ranking.
 *
 * Flow: load the model roster to fill the team pickers, re-validate the
 * form on every keystroke, and allow submission only while every
 * invariant holds. Each submission takes a fresh request token; a
 * response whose token is no longer current is discarded, so a stale
 * answer can never overwrite a newer one. The submit button stays
 * disabled while a request is in flight, keeping one user-visible
 * request going at a time.
 *
 * Rendering rule: rows appear exactly in the order the service returned
 * them, with the service's scores. The client adds labels and rank
 * deltas, never its own ordering.
 */

import { ApiClient, ApiError } from './api.js';
import {
  candidateKey,
  describeSituation,
  fmtScore,
  fmtYards,
  isZeroDiff,
  playLabel,
  rankDeltas,
} from './ranking.js';
import type { ModelsResponse, RankResponse } from './types.js';
import { validateSituation } from './validation.js';
import type { SituationDraft, ValidationResult } from './validation.js';

const FIELDS: Array<keyof SituationDraft> = [
  'team',
  'opponent',
  'half',
  'time',
  'position',
  'down',
  'togo',
];

/** Primary-score preference order, mirroring the service's default. */
const TARGET_PREFERENCE = ['progress', 'success', 'yards'];

export class AdvisorApp {
  private readonly doc: Document;
  private readonly api: ApiClient;

  private teamSelect!: HTMLSelectElement;
  private opponentSelect!: HTMLSelectElement;
  private primarySelect!: HTMLSelectElement;
  private submitButton!: HTMLButtonElement;
  private retryButton!: HTMLButtonElement;

  private requestSeq = 0;
  private inFlight = false;
  private wired = false;
  private retryAction: (() => void) | null = null;

  /** Most recent ranking shown, and the one before it for comparison. */
  private lastResponse: RankResponse | null = null;
  private pinned: RankResponse | null = null;

  constructor(doc: Document, api: ApiClient) {
    this.doc = doc;
    this.api = api;
  }

  /** Look up a required element; a missing id is a wiring bug. */
  private el<T extends HTMLElement>(id: string): T {
    const node = this.doc.getElementById(id);
    if (node === null) throw new Error(`missing element #${id}`);
    return node as T;
  }

  /** Wire the form and load the model roster. Call once, DOM ready. */
  async init(): Promise<void> {
    this.teamSelect = this.el<HTMLSelectElement>('team');
    this.opponentSelect = this.el<HTMLSelectElement>('opponent');
    this.primarySelect = this.el<HTMLSelectElement>('primary');
    this.submitButton = this.el<HTMLButtonElement>('submit');
    this.retryButton = this.el<HTMLButtonElement>('retry');
    if (!this.wired) {
      this.wired = true;
      for (const field of FIELDS) {
        const input = this.el<HTMLElement>(field);
        input.addEventListener('input', () => void this.refreshValidation());
        input.addEventListener('change', () => void this.refreshValidation());
      }
      this.submitButton.addEventListener('click', () => {
        void this.submitSituation();
      });
      this.el<HTMLFormElement>('situation-form').addEventListener('submit', (event) => {
        event.preventDefault();
        void this.submitSituation();
      });
      this.retryButton.addEventListener('click', () => {
        const action = this.retryAction;
        this.hideBanner();
        if (action !== null) action();
      });
    }
    await this.loadModels();
  }

  /** Fetch /models and fill the team and primary-target pickers. */
  private async loadModels(): Promise<void> {
    let info: ModelsResponse;
    try {
      info = await this.api.models();
    } catch (err) {
      this.showError(err, () => void this.loadModels());
      return;
    }
    this.fillSelect(this.teamSelect, info.teams, 'pick the offense');
    this.fillSelect(this.opponentSelect, info.teams, 'pick the defense');
    const loaded = info.models.map((m) => m.target);
    const targets = TARGET_PREFERENCE.filter((t) => loaded.includes(t));
    this.fillSelect(this.primarySelect, targets, null);
    this.hideBanner();
    this.refreshValidation();
  }

  private fillSelect(
    select: HTMLSelectElement,
    values: string[],
    placeholder: string | null,
  ): void {
    select.innerHTML = '';
    if (placeholder !== null) {
      const option = this.doc.createElement('option');
      option.value = '';
      option.textContent = placeholder;
      select.appendChild(option);
    }
    for (const value of values) {
      const option = this.doc.createElement('option');
      option.value = value;
      option.textContent = value;
      select.appendChild(option);
    }
  }

  private readDraft(): SituationDraft {
    const value = (id: string) =>
      this.el<HTMLInputElement | HTMLSelectElement>(id).value;
    return {
      team: value('team'),
      opponent: value('opponent'),
      half: value('half'),
      time: value('time'),
      position: value('position'),
      down: value('down'),
      togo: value('togo'),
    };
  }

  /** Re-check the form, paint inline errors, and gate the submit button. */
  refreshValidation(): ValidationResult {
    const result = validateSituation(this.readDraft());
    for (const field of FIELDS) {
      this.el<HTMLElement>(`${field}-error`).textContent =
        result.errors[field] ?? '';
    }
    this.submitButton.disabled = result.situation === null || this.inFlight;
    return result;
  }

  /**
   * Submit the current form. A no-op while the form is invalid. Calling
   * again before the previous answer lands supersedes it: the older
   * response is discarded by its stale token when it finally arrives.
   */
  async submitSituation(): Promise<void> {
    const { situation } = this.refreshValidation();
    if (situation === null) return;
    const token = ++this.requestSeq;
    this.inFlight = true;
    this.submitButton.disabled = true;
    this.hideBanner();
    let response: RankResponse;
    try {
      response = await this.api.rank({
        situation,
        primary: this.primarySelect.value,
      });
    } catch (err) {
      if (token !== this.requestSeq) return;
      this.inFlight = false;
      this.refreshValidation();
      this.showError(err, () => void this.submitSituation());
      return;
    }
    if (token !== this.requestSeq) return;
    this.inFlight = false;
    this.pinned = this.lastResponse;
    this.lastResponse = response;
    this.renderRanking(response);
    this.refreshValidation();
  }

  /**
   * Route a failure to the right surface: an unknown team is an inline
   * field error, anything retryable gets the banner with a retry button,
   * and other rejections get a plain banner. Messages always carry the
   * service's reason code.
   */
  private showError(err: unknown, retry: () => void): void {
    if (err instanceof ApiError) {
      if (err.code === 'unknown_team') {
        this.el<HTMLElement>('team-error').textContent =
          `${err.code}: ${err.detail}`;
        return;
      }
      this.showBanner(
        `${err.code}: ${err.detail}`,
        err.retryable ? retry : null,
      );
      return;
    }
    const reason = err instanceof Error ? err.message : String(err);
    this.showBanner(reason, null);
  }

  private showBanner(text: string, retry: (() => void) | null): void {
    this.el<HTMLElement>('banner-text').textContent = text;
    this.retryButton.hidden = retry === null;
    this.retryAction = retry;
    this.el<HTMLElement>('banner').hidden = false;
  }

  private hideBanner(): void {
    this.el<HTMLElement>('banner').hidden = true;
    this.retryAction = null;
  }

  /** Paint the ranking table and the what-if comparison around it. */
  private renderRanking(response: RankResponse): void {
    const deltas = rankDeltas(this.pinned, response);
    const results = this.el<HTMLElement>('results');
    results.innerHTML = '';

    const table = this.doc.createElement('table');
    const caption = this.doc.createElement('caption');
    caption.textContent =
      `${response.primary} ranking for ` +
      `${describeSituation(response.situation)}; every score is a ` +
      'model estimate, not an observed outcome';
    table.appendChild(caption);

    const thead = this.doc.createElement('thead');
    const headRow = this.doc.createElement('tr');
    const headers = ['Rank', 'Play', 'Progress', 'Success', 'Yards', 'Pinned rank', 'Change'];
    for (const title of headers) {
      const th = this.doc.createElement('th');
      th.textContent = title;
      headRow.appendChild(th);
    }
    thead.appendChild(headRow);
    table.appendChild(thead);

    const tbody = this.doc.createElement('tbody');
    for (const play of response.plays) {
      const key = candidateKey(play.candidate);
      const movement = deltas.get(key);
      const row = this.doc.createElement('tr');
      row.dataset.key = key;
      const cells = [
        String(play.rank),
        playLabel(play.candidate),
        fmtScore(play.progress),
        fmtScore(play.success_score),
        fmtYards(play.yards),
        movement === undefined ? '' : String(movement.previousRank),
        movement === undefined || movement.delta === 0
          ? ''
          : movement.delta > 0
            ? `+${movement.delta}`
            : String(movement.delta),
      ];
      for (const text of cells) {
        const td = this.doc.createElement('td');
        td.textContent = text;
        row.appendChild(td);
      }
      if (movement !== undefined && movement.delta !== 0) {
        row.classList.add('rank-changed');
      }
      tbody.appendChild(row);
    }
    table.appendChild(tbody);
    results.appendChild(table);

    const pinnedSummary = this.el<HTMLElement>('pinned-summary');
    const diffNote = this.el<HTMLElement>('diff-note');
    if (this.pinned === null) {
      pinnedSummary.textContent = '';
      diffNote.textContent = '';
      return;
    }
    pinnedSummary.textContent =
      'Pinned for comparison: ' +
      `${describeSituation(this.pinned.situation)} ` +
      `(${this.pinned.primary} ranking)`;
    if (isZeroDiff(deltas, response.plays.length)) {
      diffNote.textContent = 'no rank changes against the pinned ranking';
    } else {
      let moved = 0;
      for (const entry of deltas.values()) {
        if (entry.delta !== 0) moved += 1;
      }
      diffNote.textContent = `${moved} plays changed rank against the pinned ranking`;
    }
  }
}
