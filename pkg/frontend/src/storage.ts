/** Browser-local autosave of the spec buffer. */

export interface TextStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export const AUTOSAVE_KEY = "tactilechart.editor.spec";

export function loadAutosave(store: TextStore): string | null {
  try {
    return store.getItem(AUTOSAVE_KEY);
  } catch {
    return null; // storage disabled: start fresh
  }
}

export function saveAutosave(store: TextStore, text: string): void {
  try {
    store.setItem(AUTOSAVE_KEY, text);
  } catch {
    // storage full or disabled: autosave is best-effort
  }
}
