/**
 * Client-side situation validation.
 *
 * The rules mirror the service's situation invariants exactly, so a form
 * that passes here is a request the service will accept, team spelling
 * aside (only the service knows which teams its models were trained on).
 */

import type { Situation } from './types.js';

/** Raw form values, exactly as typed, before any parsing. */
export interface SituationDraft {
  team: string;
  opponent: string;
  half: string;
  time: string;
  position: string;
  down: string;
  togo: string;
}

export type FieldErrors = Partial<Record<keyof SituationDraft, string>>;

export interface ValidationResult {
  /** The parsed situation, or null when any field is invalid. */
  situation: Situation | null;
  /** One message per offending field; empty when the form is valid. */
  errors: FieldErrors;
}

/** Parse a whole number; null for anything else (including blanks). */
function intField(raw: string): number | null {
  const trimmed = raw.trim();
  if (!/^-?\d+$/.test(trimmed)) return null;
  return Number(trimmed);
}

/** Parse a finite number; null for anything else (including blanks). */
function numberField(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === '') return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

/**
 * Check every field of a situation form draft.
 *
 * Returns the parsed situation when all invariants hold, plus a map of
 * per-field error messages when they do not. A draft never raises; bad
 * input is an error entry, not an exception.
 */
export function validateSituation(draft: SituationDraft): ValidationResult {
  const errors: FieldErrors = {};

  const team = draft.team.trim();
  const opponent = draft.opponent.trim();
  if (team === '') {
    errors.team = 'pick the offense';
  }
  if (opponent === '') {
    errors.opponent = 'pick the defense';
  } else if (team !== '' && team === opponent) {
    errors.opponent = 'offense and defense must differ';
  }

  const half = intField(draft.half);
  if (half === null || (half !== 1 && half !== 2)) {
    errors.half = 'half must be 1 or 2';
  }

  const time = numberField(draft.time);
  if (time === null || time < 0 || time > 1800) {
    errors.time = 'seconds left must be between 0 and 1800';
  }

  const position = intField(draft.position);
  if (position === null || position < 1 || position > 99) {
    errors.position = 'field position must be a whole number from 1 to 99';
  }

  const down = intField(draft.down);
  if (down === null || down < 1 || down > 4) {
    errors.down = 'down must be between 1 and 4';
  }

  const togo = intField(draft.togo);
  if (togo === null || togo < 1) {
    errors.togo = 'yards to go must be a whole number of at least 1';
  }

  if (
    team === '' ||
    opponent === '' ||
    half === null ||
    time === null ||
    position === null ||
    down === null ||
    togo === null ||
    Object.keys(errors).length > 0
  ) {
    return { situation: null, errors };
  }
  return {
    situation: { team, opponent, half, time, position, down, togo },
    errors,
  };
}
