/** HTTP client for the compile service. The editor talks to the compiler
 * exclusively through these endpoints, so the preview can never drift from
 * what the command line produces for the same spec text. */

export interface Diagnostic {
  severity: "error" | "warning" | "info";
  ruleId: string;
  message: string;
  citation: string;
  nodePath: string;
  fix?: string;
}

export interface CompileResponse {
  svg: string | null;
  diagnostics: Diagnostic[];
  durationMs: number;
  ok: boolean;
}

export interface CompileOptions {
  grade?: 1 | 2;
  brailleTable?: string;
  mode?: "dots" | "font";
  dpi?: number;
}

export interface PaletteEntry {
  id: string;
  swatch: string;
}

export interface PaletteResponse {
  textures: PaletteEntry[];
  lineStyles: PaletteEntry[];
  shapes: PaletteEntry[];
}

export interface GalleryEntry {
  name: string;
  title: string;
}

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function requestJson<T>(input: string, init?: RequestInit): Promise<T> {
  let resp: Response;
  try {
    resp = await fetch(input, init);
  } catch (err) {
    throw new ApiError(
      `compile service unreachable: ${err instanceof Error ? err.message : err}`);
  }
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    // fall through: handled by the status check below
  }
  if (!resp.ok && resp.status !== 422) {
    // 422 carries a structured diagnostics body the caller understands.
    throw new ApiError(`request failed with status ${resp.status}`, resp.status);
  }
  if (body === null) {
    throw new ApiError("compile service returned a non-JSON response",
      resp.status);
  }
  return body as T;
}

/** Compile raw spec text. The text is sent exactly as typed — the editor
 * never reformats or normalizes it — so exporting the buffer and compiling
 * it with the CLI yields byte-identical SVG. */
export function compileSpec(
  specText: string,
  options: CompileOptions = {},
): Promise<CompileResponse> {
  return requestJson<CompileResponse>("/compile", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ spec: specText, options }),
  });
}

export function fetchPalette(): Promise<PaletteResponse> {
  return requestJson<PaletteResponse>("/palette");
}

export function fetchGallery(): Promise<GalleryEntry[]> {
  return requestJson<GalleryEntry[]>("/gallery");
}

export async function fetchGallerySpec(name: string): Promise<string> {
  const spec = await requestJson<unknown>(`/gallery/${encodeURIComponent(name)}`);
  return JSON.stringify(spec, null, 2);
}
