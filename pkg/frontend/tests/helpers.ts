// Shared test scaffolding: payload builders and an in-memory fake of the
// annotation endpoints with the same status-code semantics as the server.

import type { CriterionDescriptor, ItemPayload, RatingRecord } from '../src/types';

export function makeCriteria(count = 10): CriterionDescriptor[] {
  return Array.from({ length: count }, (_, i) => ({
    index: i + 1,
    short_name: `criterion-${i + 1}`,
    description_hi: `कसौटी ${i + 1}`,
    description_en: `criterion ${i + 1}`,
  }));
}

export function makeItem(overrides: Partial<ItemPayload> = {}): ItemPayload {
  return {
    completed: false,
    judge_id: 'j1',
    system_id: 'sys-secret',
    doc_id: 'doc1',
    seg_id: 1,
    source: 'the fort is beautiful',
    hypothesis: 'किला सुंदर है',
    criteria: makeCriteria(),
    done: 0,
    total: 100,
    ...overrides,
  };
}

export interface FakeServer {
  fetchFn: typeof fetch;
  submissions: RatingRecord[];
  cursor(): number;
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

/** In-memory queue with the live service's semantics: 404 unknown
 * session, 409 non-current item, 422 invalid ratings. */
export function fakeServer(items: ItemPayload[], sessionId = 'j1'): FakeServer {
  let cursor = 0;
  const submissions: RatingRecord[] = [];

  const fetchFn = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const match = url.match(/\/api\/session\/([^/]+)\/(next|rating|progress)$/);
    if (!match) return json(404, { error: 'no such endpoint' });
    if (match[1] !== sessionId) return json(404, { error: 'unknown session' });
    const verb = match[2];

    if (verb === 'progress') return json(200, { done: cursor, total: items.length });

    if (verb === 'next') {
      if (cursor >= items.length) {
        return json(200, { completed: true, done: cursor, total: items.length });
      }
      return json(200, { ...items[cursor], done: cursor, total: items.length });
    }

    // rating
    let body: RatingRecord;
    try {
      body = JSON.parse(String(init?.body));
    } catch {
      return json(400, { error: 'body is not valid JSON' });
    }
    if (cursor >= items.length) return json(409, { error: 'session already complete' });
    const current = items[cursor];
    if (
      body.system_id !== current.system_id ||
      body.doc_id !== current.doc_id ||
      body.seg_id !== current.seg_id
    ) {
      return json(409, { error: 'rating is not for the current item' });
    }
    if (!Array.isArray(body.ratings) || body.ratings.length !== 10) {
      return json(422, { error: 'expected 10 ratings' });
    }
    for (const value of body.ratings) {
      if (!Number.isInteger(value) || value < 0 || value > 4) {
        return json(422, { error: `rating ${value} outside 0..4` });
      }
    }
    submissions.push(body);
    cursor += 1;
    return json(200, { stored: submissions.length, done: cursor, total: items.length });
  }) as typeof fetch;

  return { fetchFn, submissions, cursor: () => cursor };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
