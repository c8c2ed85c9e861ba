/** Trailing-edge debounce: the wrapped call runs once the caller has been
 * quiet for `waitMs`. Rapid keystrokes therefore cost one compile, and the
 * preview still lands well inside the editing loop's latency budget. */
export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  /** Run a pending call immediately. */
  flush(): void;
  /** Drop a pending call without running it. */
  cancel(): void;
  pending(): boolean;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let lastArgs: A | null = null;

  const run = () => {
    timer = null;
    if (lastArgs !== null) {
      const args = lastArgs;
      lastArgs = null;
      fn(...args);
    }
  };

  const wrapped = (...args: A) => {
    lastArgs = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(run, waitMs);
  };
  wrapped.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      run();
    }
  };
  wrapped.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    lastArgs = null;
  };
  wrapped.pending = () => timer !== null;
  return wrapped;
}
