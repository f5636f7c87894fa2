// End-to-end review loop against the real backend: serve a 20-candidate
// session, submit 8 accepts + 1 reject + 1 edit through the UI controller,
// restart the service, confirm the replayed progress, and check that the
// exported corpus changes exactly 9 records.

import { ChildProcess, execFileSync, spawn } from 'node:child_process';
import { mkdtempSync, readFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ReviewApi } from '../src/api.js';
import { ReviewController } from '../src/controller.js';
import { focused } from '../src/state.js';

const PYTHON = process.env.TAGMEND_PYTHON ?? 'python3';
const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

const work = mkdtempSync(join(tmpdir(), 'tagmend-e2e-'));
const corpusPath = join(work, 'review.corpus');
const candidatePath = join(work, 'cands.tsv');
const sessionPath = join(work, 'session.log');
const exportPath = join(work, 'corrected.corpus');

let service: ChildProcess | null = null;

function python(args: string[], input?: string): string {
  return execFileSync(PYTHON, args, {
    input,
    encoding: 'utf-8',
    env: { ...process.env, PYTHONWARNINGS: 'ignore' },
  });
}

function startService(): ChildProcess {
  const child = spawn(
    PYTHON,
    [
      '-m', 'tagmend', 'serve', candidatePath, corpusPath,
      '--session', sessionPath, '--bind', `127.0.0.1:${PORT}`,
    ],
    { stdio: 'ignore', env: { ...process.env, PYTHONWARNINGS: 'ignore' } },
  );
  return child;
}

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/v1/progress`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error('review service did not come up');
}

async function stopService(child: ChildProcess): Promise<void> {
  await new Promise<void>((resolve) => {
    child.once('exit', () => resolve());
    child.kill('SIGTERM');
  });
}

beforeAll(async () => {
  // Build a noisy corpus and a 20-candidate session file with the backend CLI.
  python([
    '-c',
    [
      'from tagmend.corpus import Taxonomy, write_corpus',
      'from tagmend.evaluation import inject_errors',
      'from tagmend.synthesis import GeneratorSpec, generate_synthetic_corpus',
      'tax = Taxonomy.default()',
      'corpus = generate_synthetic_corpus(GeneratorSpec(500, 88), tax)',
      'noisy, _ = inject_errors(corpus, 0.06, 89, tax)',
      `write_corpus(noisy, ${JSON.stringify(corpusPath)})`,
    ].join('\n'),
  ]);
  python([
    '-m', 'tagmend', 'correct', corpusPath,
    '--learner', 'maxent', '--cutoff', '2', '--iterations', '60',
    '--out', candidatePath,
  ]);
  const lines = readFileSync(candidatePath, 'utf-8').trimEnd().split('\n');
  expect(lines.length).toBeGreaterThan(20);
  const truncated = lines.slice(0, 21).join('\n') + '\n';
  python(
    ['-c', `import sys; open(${JSON.stringify(candidatePath)}, 'w').write(sys.stdin.read())`],
    truncated,
  );
  service = startService();
  await waitForService();
}, 120_000);

afterAll(async () => {
  if (service) await stopService(service);
});

describe('review loop against the live service', () => {
  it('submits 10 verdicts through the UI controller, survives a restart, and exports 9 changes', async () => {
    const controller = new ReviewController(new ReviewApi(BASE), 'e2e-annotator');
    await controller.start();
    expect(controller.state.total).toBe(20);

    // 8 accepts; the controller advances focus after each acknowledgment
    for (let i = 0; i < 8; i++) {
      expect(await controller.submit('accept')).toBe(true);
    }
    expect(controller.state.focus).toBe(8);
    expect(await controller.submit('reject')).toBe(true);

    const editTarget = focused(controller.state);
    expect(editTarget).toBeDefined();
    const editLabel = controller.taxonomy
      .map((label) => label.id)
      .find((id) => id !== editTarget!.originalId && id !== editTarget!.proposedId);
    expect(await controller.submit('edit', editLabel)).toBe(true);
    expect(controller.state.progress?.reviewed).toBe(10);

    // restart: verdicts must survive via the session log replay
    await stopService(service!);
    service = startService();
    await waitForService();

    const reborn = new ReviewController(new ReviewApi(BASE), 'e2e-annotator');
    await reborn.start();
    expect(reborn.state.progress?.reviewed).toBe(10);
    expect(reborn.state.progress?.accepted).toBe(8);
    expect(reborn.state.progress?.rejected).toBe(1);
    expect(reborn.state.progress?.edited).toBe(1);
    expect(reborn.state.focus).toBe(10); // cursor lands after the reviewed block
    expect(reborn.state.byRank.get(0)?.verdict?.decision).toBe('accept');
    expect(reborn.state.byRank.get(9)?.verdict?.decision).toBe('edit');

    // export and count changed records: 8 accepts + 1 edit, reject untouched
    python([
      '-m', 'tagmend', 'export', corpusPath, candidatePath,
      '--session', sessionPath, '--out', exportPath,
    ]);
    const before = readFileSync(corpusPath, 'utf-8').split('\n');
    const after = readFileSync(exportPath, 'utf-8').split('\n');
    expect(after.length).toBe(before.length);
    const changed = before.filter((line, index) => line !== after[index]);
    expect(changed.length).toBe(9);
  }, 120_000);
});
