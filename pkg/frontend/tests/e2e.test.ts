// Scripted browser session against the real annotation service: the
// Python server is spawned as a subprocess and the app is driven purely
// through the DOM. Covers the full 20-segment walk, a mid-session
// "refresh" (remount), and the impossibility of an incomplete submit.

import { spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, readFileSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { AnnotationApp } from '../src/app';

const PORT = 8800 + (process.pid % 150);
const BASE = `http://127.0.0.1:${PORT}`;
const JUDGE = 'asha';

let server: ChildProcess;
let workDir: string;

function writeCorpus(dir: string): { manifest: string; hyp: string } {
  const n = 20;
  const lines = (prefix: string) =>
    Array.from({ length: n }, (_, i) => `${prefix} sentence ${i}`).join('\n') + '\n';
  writeFileSync(join(dir, 'source.txt'), lines('source'));
  writeFileSync(join(dir, 'ref1.txt'), lines('reference'));
  writeFileSync(join(dir, 'hyp.txt'), lines('hypothesis'));
  writeFileSync(join(dir, 'manifest.tsv'), 'doc1\t1\t10\ndoc2\t11\t20\n');
  return { manifest: join(dir, 'manifest.tsv'), hyp: join(dir, 'hyp.txt') };
}

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/session/${JUDGE}/progress`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error('annotation service did not come up');
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 'annotation-e2e-'));
  const { manifest, hyp } = writeCorpus(workDir);
  server = spawn(
    'python3',
    ['-m', 'anuvadeval.cli', 'serve',
     '--corpus', manifest,
     '--system', `mt=${hyp}`,
     '--judges', JUDGE,
     '--port', String(PORT),
     '--out', workDir],
    { stdio: 'ignore' },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
});

function mount(): { app: AnnotationApp; root: HTMLElement } {
  const root = document.createElement('main');
  document.body.appendChild(root);
  const app = new AnnotationApp({ root, sessionId: JUDGE, baseUrl: BASE });
  return { app, root };
}

function clickRating(root: HTMLElement, criterion: number, value: number): void {
  const button = root.querySelector<HTMLButtonElement>(
    `.rating-btn[data-criterion="${criterion}"][data-value="${value}"]`,
  );
  if (!button) throw new Error(`no rating button ${criterion}/${value}`);
  button.click();
}

async function submitAndSettle(app: AnnotationApp): Promise<void> {
  await app.submit();
}

describe('live annotation session', () => {
  it('rates 20 segments, survives a refresh, and blocks incomplete submits', async () => {
    let { app, root } = mount();
    await app.start();
    expect(root.querySelector('.source-text')).not.toBeNull();

    // rate the first 5 items through the buttons
    for (let item = 0; item < 5; item++) {
      for (let criterion = 0; criterion < 10; criterion++) {
        clickRating(root, criterion, (item + criterion) % 5);
      }
      await submitAndSettle(app);
    }

    // mid-session "refresh": tear the page down and mount a fresh app;
    // the server re-serves the same item with nothing lost
    const beforeLabel = root.querySelector('.progress-label')?.textContent;
    const beforeSource = root.querySelector('.source-text')?.textContent;
    app.destroy();
    document.body.innerHTML = '';
    ({ app, root } = mount());
    await app.start();
    expect(root.querySelector('.progress-label')?.textContent).toBe(beforeLabel);
    expect(root.querySelector('.source-text')?.textContent).toBe(beforeSource);

    // an incomplete form cannot be submitted through the UI
    for (let criterion = 0; criterion < 9; criterion++) {
      clickRating(root, criterion, 2);
    }
    const submit = root.querySelector<HTMLButtonElement>('#submit-btn')!;
    expect(submit.disabled).toBe(true);
    submit.click();
    await app.submit();
    let progress = await (
      await fetch(`${BASE}/api/session/${JUDGE}/progress`)
    ).json();
    expect(progress).toEqual({ done: 5, total: 20 });

    // finish the remaining items (the 10th criterion completes the first)
    clickRating(root, 9, 4);
    await submitAndSettle(app);
    for (let item = 6; item < 20; item++) {
      for (let criterion = 0; criterion < 10; criterion++) {
        clickRating(root, criterion, (item + 2 * criterion) % 5);
      }
      await submitAndSettle(app);
    }

    expect(root.querySelector('.completion-screen')).not.toBeNull();
    progress = await (
      await fetch(`${BASE}/api/session/${JUDGE}/progress`)
    ).json();
    expect(progress).toEqual({ done: 20, total: 20 });

    // the log holds exactly 20 valid records
    const logLines = readFileSync(join(workDir, 'ratings.jsonl'), 'utf-8')
      .trim()
      .split('\n');
    expect(logLines).toHaveLength(20);
    const seen = new Set<string>();
    for (const line of logLines) {
      const record = JSON.parse(line);
      expect(record.judge_id).toBe(JUDGE);
      expect(record.system_id).toBe('mt');
      expect(record.ratings).toHaveLength(10);
      for (const value of record.ratings) {
        expect(Number.isInteger(value)).toBe(true);
        expect(value).toBeGreaterThanOrEqual(0);
        expect(value).toBeLessThanOrEqual(4);
      }
      seen.add(`${record.doc_id}/${record.seg_id}`);
    }
    expect(seen.size).toBe(20);
  }, 120000);
});
