/** Editor state machine.
 *
 * Policies, all of them observable in the UI:
 *  - compiles are debounced; one compile is in flight at most, and while it
 *    runs only the newest buffer is queued to follow it;
 *  - the preview keeps the last good SVG when a compile yields none (for
 *    example mid-edit syntax errors), flagged as stale;
 *  - diagnostics shown are exactly the diagnostics returned, unfiltered;
 *  - an unreachable compile service raises a banner and editing continues.
 */

import { CompileResponse, Diagnostic } from "./api.js";
import { debounce, Debounced } from "./debounce.js";

export interface EditorState {
  specText: string;
  /** Last successfully rendered SVG; survives failed recompiles. */
  svg: string | null;
  /** True when the preview no longer matches the buffer. */
  stale: boolean;
  diagnostics: Diagnostic[];
  /** Connectivity problem, or null when the service answers. */
  banner: string | null;
  compiling: boolean;
  lastDurationMs: number | null;
}

export type CompileFn = (specText: string) => Promise<CompileResponse>;
export type Listener = (state: Readonly<EditorState>) => void;

export const DEBOUNCE_MS = 300;

export class EditorStore {
  private readonly state: EditorState = {
    specText: "",
    svg: null,
    stale: false,
    diagnostics: [],
    banner: null,
    compiling: false,
    lastDurationMs: null,
  };

  private readonly listeners = new Set<Listener>();
  private readonly scheduled: Debounced<[string]>;
  private inFlight = false;
  private queued: string | null = null;

  constructor(
    private readonly compileFn: CompileFn,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.scheduled = debounce((text: string) => this.trigger(text), debounceMs);
  }

  get snapshot(): Readonly<EditorState> {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  /** Buffer edit: marks the preview stale and schedules a recompile. */
  setSpecText(text: string): void {
    if (text === this.state.specText) return;
    this.state.specText = text;
    this.state.stale = true;
    this.emit();
    this.scheduled(text);
  }

  /** Compile the current buffer immediately (initial load, gallery load). */
  compileNow(): void {
    this.scheduled.cancel();
    this.trigger(this.state.specText);
  }

  /** Run a pending debounced compile right away, if any. */
  flush(): void {
    this.scheduled.flush();
  }

  private trigger(text: string): void {
    if (this.inFlight) {
      this.queued = text; // newest supersedes anything waiting
      return;
    }
    void this.run(text);
  }

  private async run(text: string): Promise<void> {
    this.inFlight = true;
    this.state.compiling = true;
    this.emit();
    try {
      const resp = await this.compileFn(text);
      this.apply(resp, text);
    } catch (err) {
      this.state.banner =
        err instanceof Error ? err.message : "compile request failed";
    } finally {
      this.inFlight = false;
      this.state.compiling = this.queued !== null;
      this.emit();
      if (this.queued !== null) {
        const next = this.queued;
        this.queued = null;
        void this.run(next);
      }
    }
  }

  private apply(resp: CompileResponse, requestedText: string): void {
    this.state.banner = null;
    this.state.diagnostics = resp.diagnostics;
    this.state.lastDurationMs = resp.durationMs;
    if (resp.svg !== null) {
      this.state.svg = resp.svg;
      // Fresh only if the buffer has not moved on since this request.
      this.state.stale = requestedText !== this.state.specText;
    } else {
      // Keep the previous preview visible; it is now known to be stale.
      this.state.stale = this.state.svg !== null;
    }
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }
}
