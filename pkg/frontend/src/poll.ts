import { api } from './api.js';
import type { JobSnapshot } from './types.js';

const TERMINAL = new Set(['Done', 'Cancelled']);

function sleep(ms: number, signal?: AbortSignal): Promise<void> {
  return new Promise((resolve, reject) => {
    const timer = setTimeout(resolve, ms);
    if (!signal) return;
    const onAbort = () => {
      clearTimeout(timer);
      reject(new DOMException('polling aborted', 'AbortError'));
    };
    if (signal.aborted) {
      onAbort();
      return;
    }
    signal.addEventListener('abort', onAbort, { once: true });
  });
}

/**
 * Poll a search job until it reaches Done or Cancelled, reporting each
 * snapshot.  Resolves with the terminal snapshot; aborting the signal
 * stops polling without cancelling the job itself.
 */
export async function pollJob(
  jobId: string,
  onSnapshot: (snap: JobSnapshot) => void,
  intervalMs = 500,
  signal?: AbortSignal
): Promise<JobSnapshot> {
  while (true) {
    const snap = await api.jobStatus(jobId);
    onSnapshot(snap);
    if (TERMINAL.has(snap.state)) return snap;
    await sleep(intervalMs, signal);
  }
}
