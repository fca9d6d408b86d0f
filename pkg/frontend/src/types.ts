/**
 * Wire types for the playcall advisor HTTP API.
 *
 * These mirror the JSON shapes the service emits. The UI treats them as
 * read-only data: scores arrive already ordered and scaled, and nothing
 * on the client reorders or rescales them.
 */

/** Game context: who has the ball, where, when, and what they need. */
export interface Situation {
  team: string;
  opponent: string;
  half: number;
  time: number;
  position: number;
  down: number;
  togo: number;
}

/** One play call, without the game context. Flags are 0 or 1. */
export interface CandidatePlay {
  pass: number;
  side: string;
  passlen: string;
  shotgun: number;
  qbrun: number;
}

/** A candidate with its model scores and final position (1 = best). */
export interface RankedPlay {
  rank: number;
  candidate: CandidatePlay;
  progress: number | null;
  success_score: number | null;
  yards: number | null;
}

/** POST /rank response: ranked plays, best first. */
export interface RankResponse {
  primary: string;
  situation: Situation;
  plays: RankedPlay[];
}

/** POST /rank request body. */
export interface RankRequest {
  situation: Situation;
  primary?: string;
}

/** One loaded model, as reported by GET /models. */
export interface ModelInfo {
  kind: string;
  target: string;
  task: string;
  width: number;
  scaled: boolean;
  metadata: Record<string, unknown>;
}

/** GET /models response: loaded models plus the team roster. */
export interface ModelsResponse {
  models: ModelInfo[];
  teams: string[];
}

/** GET /health response. */
export interface HealthResponse {
  status: string;
  models: number;
}

/** Error envelope every non-2xx response carries. */
export interface ApiErrorBody {
  error: {
    code: string;
    detail: string;
  };
}
