/**
 * In-process stand-in for the advisor service so the UI suite runs
 * without it. It mirrors the documented contract: the same routes, the
 * same error envelope and codes, and the same 24-candidate enumeration
 * order, with deterministic scores a test can predict.
 *
 * Scoring is deliberately simple but situation-sensitive:
 *   - success score: 0.8 when togo <= 7.5, else 0.3, for every
 *     candidate, which is the shape a depth-1 stump on togo produces;
 *   - progress score: a distinct per-candidate base plus a togo-driven
 *     bonus favouring deep passes on long distance and short plays on
 *     short distance, so the served order differs from enumeration
 *     order and reshuffles when togo crosses the stump threshold;
 *   - yards: a fixed per-candidate spread.
 * Ranking sorts by the primary score descending, ties by enumeration
 * index, exactly like the real service.
 */

import { createServer } from 'node:http';
import type { IncomingMessage, Server, ServerResponse } from 'node:http';
import type { AddressInfo } from 'node:net';
import type {
  CandidatePlay,
  ModelsResponse,
  RankedPlay,
  Situation,
} from '../src/types.js';

export const MOCK_TEAMS = ['ATL', 'CAR', 'DEN', 'OAK'];

const TARGETS = ['progress', 'success', 'yards'];

const MODELS: ModelsResponse = {
  models: [
    {
      kind: 'tree',
      target: 'progress',
      task: 'regression',
      width: 77,
      scaled: false,
      metadata: { max_depth: 2 },
    },
    {
      kind: 'tree',
      target: 'success',
      task: 'classification',
      width: 77,
      scaled: false,
      metadata: { max_depth: 1 },
    },
    {
      kind: 'linreg',
      target: 'yards',
      task: 'regression',
      width: 77,
      scaled: false,
      metadata: {},
    },
  ],
  teams: MOCK_TEAMS,
};

class MockApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(detail);
  }
}

/** The full candidate set in the service's enumeration order. */
export function enumerateCandidates(): CandidatePlay[] {
  const out: CandidatePlay[] = [];
  for (const side of ['left', 'middle', 'right']) {
    for (const passlen of ['short', 'deep']) {
      for (const shotgun of [0, 1]) {
        out.push({ pass: 1, side, passlen, shotgun, qbrun: 0 });
      }
    }
  }
  for (const side of ['left', 'middle', 'right']) {
    for (const shotgun of [0, 1]) {
      for (const qbrun of [0, 1]) {
        out.push({ pass: 0, side, passlen: 'none', shotgun, qbrun });
      }
    }
  }
  return out;
}

function successScore(situation: Situation): number {
  return situation.togo <= 7.5 ? 0.8 : 0.3;
}

function progressScore(
  situation: Situation,
  index: number,
  candidate: CandidatePlay,
): number {
  // multiplying by 7 (coprime to 24) scrambles the per-candidate bases
  const base = 0.3 + 0.001 * ((index * 7) % 24);
  const bonus =
    candidate.passlen === 'deep'
      ? 0.02 * Math.min(situation.togo, 15)
      : 0.02 * Math.max(0, 10 - situation.togo);
  return base + bonus;
}

function yardsScore(index: number): number {
  return 4.0 + 0.25 * ((index * 5) % 24);
}

function parseSituation(raw: unknown): Situation {
  if (typeof raw !== 'object' || raw === null || Array.isArray(raw)) {
    throw new MockApiError(400, 'invalid_situation', 'situation must be an object');
  }
  const d = raw as Record<string, unknown>;
  for (const key of ['team', 'opponent', 'half', 'time', 'position', 'down', 'togo']) {
    if (!(key in d)) {
      throw new MockApiError(400, 'missing_field', `situation needs '${key}'`);
    }
  }
  const bad = (detail: string) => new MockApiError(400, 'invalid_situation', detail);
  const { team, opponent, half, time, position, down, togo } = d;
  if (typeof team !== 'string' || typeof opponent !== 'string' || !team || !opponent) {
    throw bad('team and opponent are required');
  }
  if (team === opponent) throw bad('team and opponent must differ');
  if (half !== 1 && half !== 2) throw bad(`half must be 1 or 2, got ${half}`);
  if (typeof time !== 'number' || time < 0 || time > 1800) {
    throw bad(`time out of range: ${time}`);
  }
  if (!Number.isInteger(position) || (position as number) < 1 || (position as number) > 99) {
    throw bad(`position out of range: ${position}`);
  }
  if (!Number.isInteger(down) || (down as number) < 1 || (down as number) > 4) {
    throw bad(`down out of range: ${down}`);
  }
  if (!Number.isInteger(togo) || (togo as number) < 1) {
    throw bad(`togo out of range: ${togo}`);
  }
  for (const name of [team, opponent]) {
    if (!MOCK_TEAMS.includes(name)) {
      throw new MockApiError(
        400,
        'unknown_team',
        `team '${name}' is not in the model schema`,
      );
    }
  }
  return {
    team,
    opponent,
    half,
    time: time as number,
    position: position as number,
    down: down as number,
    togo: togo as number,
  };
}

function handleRank(body: Record<string, unknown>): unknown {
  if (!('situation' in body)) {
    throw new MockApiError(400, 'missing_field', 'request needs a situation');
  }
  const situation = parseSituation(body.situation);
  const primary = body.primary === undefined ? 'progress' : body.primary;
  if (typeof primary !== 'string' || !TARGETS.includes(primary)) {
    throw new MockApiError(
      400,
      'invalid_primary',
      `unknown primary target ${JSON.stringify(primary)}`,
    );
  }
  const scored = enumerateCandidates().map((candidate, index) => ({
    candidate,
    index,
    progress: progressScore(situation, index, candidate),
    success_score: successScore(situation),
    yards: yardsScore(index),
  }));
  const primaryOf = (row: (typeof scored)[number]): number =>
    primary === 'progress'
      ? row.progress
      : primary === 'success'
        ? row.success_score
        : row.yards;
  const order = [...scored].sort(
    (a, b) => primaryOf(b) - primaryOf(a) || a.index - b.index,
  );
  const plays: RankedPlay[] = order.map((row, position) => ({
    rank: position + 1,
    candidate: row.candidate,
    progress: row.progress,
    success_score: row.success_score,
    yards: row.yards,
  }));
  return { primary, situation, plays };
}

function readBody(req: IncomingMessage): Promise<Record<string, unknown>> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    req.on('data', (chunk: Buffer) => chunks.push(chunk));
    req.on('end', () => {
      const raw = Buffer.concat(chunks).toString('utf8');
      if (raw === '') {
        reject(new MockApiError(400, 'bad_json', 'request needs a JSON body'));
        return;
      }
      let body: unknown;
      try {
        body = JSON.parse(raw);
      } catch (err) {
        reject(new MockApiError(400, 'bad_json', `body is not valid JSON: ${err}`));
        return;
      }
      if (typeof body !== 'object' || body === null || Array.isArray(body)) {
        reject(new MockApiError(400, 'bad_json', 'body must be a JSON object'));
        return;
      }
      resolve(body as Record<string, unknown>);
    });
    req.on('error', reject);
  });
}

export interface MockHandle {
  baseUrl: string;
  port: number;
  server: Server;
  /** Delay every subsequent /rank response by this many milliseconds. */
  setDelay(ms: number): void;
  close(): Promise<void>;
}

/** Start the mock on an ephemeral 127.0.0.1 port. */
export function startMockServer(): Promise<MockHandle> {
  let delayMs = 0;

  const server = createServer((req, res) => {
    void dispatch(req, res);
  });

  async function dispatch(req: IncomingMessage, res: ServerResponse): Promise<void> {
    const path = (req.url ?? '/').split('?')[0];
    let status = 200;
    let payload: unknown;
    let delay = 0;
    try {
      const known: Record<string, string> = {
        '/health': 'GET',
        '/models': 'GET',
        '/rank': 'POST',
      };
      if (!(path in known)) {
        throw new MockApiError(404, 'not_found', `no such endpoint: ${path}`);
      }
      if (req.method !== known[path]) {
        throw new MockApiError(
          405,
          'method_not_allowed',
          `${path} expects ${known[path]}`,
        );
      }
      if (path === '/health') {
        payload = { status: 'ok', models: MODELS.models.length };
      } else if (path === '/models') {
        payload = MODELS;
      } else {
        const body = await readBody(req);
        delay = delayMs;
        payload = handleRank(body);
      }
    } catch (err) {
      if (err instanceof MockApiError) {
        status = err.status;
        payload = { error: { code: err.code, detail: err.detail } };
      } else {
        status = 500;
        payload = { error: { code: 'internal_error', detail: String(err) } };
      }
    }
    const send = () => {
      res.writeHead(status, { 'Content-Type': 'application/json' });
      res.end(JSON.stringify(payload));
    };
    if (delay > 0) {
      setTimeout(send, delay);
    } else {
      send();
    }
  }

  return new Promise((resolve, reject) => {
    server.on('error', reject);
    server.listen(0, '127.0.0.1', () => {
      const { port } = server.address() as AddressInfo;
      resolve({
        baseUrl: `http://127.0.0.1:${port}`,
        port,
        server,
        setDelay(ms: number) {
          delayMs = ms;
        },
        close() {
          return new Promise<void>((done, fail) => {
            server.close((err) => (err ? fail(err) : done()));
            server.closeAllConnections();
          });
        },
      });
    });
  });
}
