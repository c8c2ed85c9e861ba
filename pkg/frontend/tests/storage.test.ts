import { describe, expect, it } from "vitest";

import { AUTOSAVE_KEY, loadAutosave, saveAutosave } from "../src/storage.js";

function memoryStore() {
  const data = new Map<string, string>();
  return {
    getItem: (k: string) => data.get(k) ?? null,
    setItem: (k: string, v: string) => void data.set(k, v),
  };
}

describe("autosave", () => {
  it("round-trips the buffer text", () => {
    const store = memoryStore();
    saveAutosave(store, '{"mark": "bar"}');
    expect(loadAutosave(store)).toBe('{"mark": "bar"}');
  });

  it("uses a stable storage key", () => {
    const store = memoryStore();
    saveAutosave(store, "x");
    expect(store.getItem(AUTOSAVE_KEY)).toBe("x");
  });

  it("returns null when nothing was saved", () => {
    expect(loadAutosave(memoryStore())).toBeNull();
  });

  it("swallows storage failures", () => {
    const broken = {
      getItem: () => {
        throw new Error("denied");
      },
      setItem: () => {
        throw new Error("full");
      },
    };
    expect(loadAutosave(broken)).toBeNull();
    expect(() => saveAutosave(broken, "x")).not.toThrow();
  });
});
