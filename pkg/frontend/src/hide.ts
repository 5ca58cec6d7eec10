/**
 * "Deleting bad examples" without deleting anything: the store is
 * append-only, so hiding is a browser-side preference keyed by record
 * id and kept in localStorage.
 */

const STORAGE_KEY = 'carpets.hidden';

function load(): Set<string> {
  try {
    const raw = localStorage.getItem(STORAGE_KEY);
    if (!raw) return new Set();
    const parsed = JSON.parse(raw);
    return new Set(Array.isArray(parsed) ? parsed.map(String) : []);
  } catch {
    return new Set();
  }
}

function save(ids: Set<string>): void {
  try {
    localStorage.setItem(STORAGE_KEY, JSON.stringify([...ids].sort()));
  } catch {
    // storage full or unavailable; hiding then lasts only for the page
  }
}

let hidden = load();

export function isHidden(id: string): boolean {
  return hidden.has(id);
}

export function hide(id: string): void {
  hidden.add(id);
  save(hidden);
}

export function unhide(id: string): void {
  hidden.delete(id);
  save(hidden);
}

export function hiddenCount(): number {
  return hidden.size;
}

export function clearHidden(): void {
  hidden = new Set();
  save(hidden);
}
