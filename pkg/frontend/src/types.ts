/** Wire types for the transliteration service (UTF-8 JSON over HTTP). */

export interface WireCandidate {
  text: string;
  count: number;
  source: string;
}

export interface WireSlot {
  surface: string;
  kind: "word" | "passthrough";
  candidates: WireCandidate[];
  chosen_index: number;
  /** Present (and true) only on the trailing word of a prefix-mode request. */
  incomplete?: boolean;
}

export interface TransliterateResponse {
  output: string;
  slots: WireSlot[];
  latency_ms: number;
}

export interface HealthResponse {
  status: string;
  resources: {
    rules: boolean;
    lexicon: boolean;
    lm: boolean;
  };
}
