/**
 * Presentation helpers for ranked plays: human-readable labels, stable
 * candidate identity keys, and what-if deltas against a pinned ranking.
 *
 * None of these touch scores beyond formatting digits for display; the
 * service's order and values pass through untouched.
 */

import type { CandidatePlay, RankResponse, Situation } from './types.js';

/**
 * Short human-readable play name, matching the service's own labels:
 * "pass short left (shotgun)", "qb run middle", and so on.
 */
export function playLabel(play: CandidatePlay): string {
  const parts: string[] = [];
  if (play.pass === 1) {
    parts.push('pass', play.passlen);
    if (play.side !== 'none') parts.push(play.side);
  } else {
    parts.push(play.qbrun === 1 ? 'qb run' : 'run');
    if (play.side !== 'none') parts.push(play.side);
  }
  if (play.shotgun === 1) parts.push('(shotgun)');
  return parts.join(' ');
}

/** Stable identity for a candidate across rankings of the same set. */
export function candidateKey(play: CandidatePlay): string {
  return [play.pass, play.side, play.passlen, play.shotgun, play.qbrun].join('|');
}

/** How one candidate moved between the pinned and current rankings. */
export interface RankDelta {
  previousRank: number;
  /** previousRank minus current rank; positive means it moved up. */
  delta: number;
}

/**
 * Per-candidate rank movement from a pinned response to the current one.
 *
 * Candidates missing from the pinned response get no entry. A null
 * pinned response yields an empty map.
 */
export function rankDeltas(
  previous: RankResponse | null,
  current: RankResponse,
): Map<string, RankDelta> {
  const deltas = new Map<string, RankDelta>();
  if (previous === null) return deltas;
  const previousRanks = new Map<string, number>();
  for (const play of previous.plays) {
    previousRanks.set(candidateKey(play.candidate), play.rank);
  }
  for (const play of current.plays) {
    const key = candidateKey(play.candidate);
    const previousRank = previousRanks.get(key);
    if (previousRank === undefined) continue;
    deltas.set(key, { previousRank, delta: previousRank - play.rank });
  }
  return deltas;
}

/**
 * True when every candidate kept its rank: same candidate set as the
 * pinned ranking (hence the expected count) and every delta is zero.
 */
export function isZeroDiff(
  deltas: Map<string, RankDelta>,
  expectedCount: number,
): boolean {
  if (deltas.size !== expectedCount) return false;
  for (const entry of deltas.values()) {
    if (entry.delta !== 0) return false;
  }
  return true;
}

const ORDINALS = ['1st', '2nd', '3rd', '4th'];

/** One-line situation summary for captions and the pinned-result note. */
export function describeSituation(s: Situation): string {
  const down = ORDINALS[s.down - 1] ?? `${s.down}th`;
  return (
    `${s.team} vs ${s.opponent}, ${down} & ${s.togo} at yardline ` +
    `${s.position}, half ${s.half}, ${Math.round(s.time)}s left`
  );
}

/** Format a model score for a table cell; null means not loaded. */
export function fmtScore(value: number | null): string {
  return value === null ? '-' : value.toFixed(3);
}

/** Format a yards estimate for a table cell; null means not loaded. */
export function fmtYards(value: number | null): string {
  return value === null ? '-' : value.toFixed(1);
}
