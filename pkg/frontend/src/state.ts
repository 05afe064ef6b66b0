/** Pure editor state machine for the typing pad.
 *
 * The raw roman input buffer is the source of truth: every committed piece
 * keeps the surface it was typed from, so `rawInput` always equals the
 * committed surfaces plus the caret word, and the native line always equals
 * the committed outputs plus the caret preview.  Responses are stamped with
 * the edit sequence number they were requested at and are dropped unless
 * they match the current one, so a slow (stale) response can never
 * overwrite state produced by newer keystrokes.
 */

export type Status = "idle" | "pending" | "error";

export interface Candidate {
  text: string;
  count: number;
  source: string;
}

export interface CommittedPiece {
  /** Roman characters this piece consumed. */
  surface: string;
  /** Native rendering shown for it (equals surface for passthrough). */
  chosen: string;
}

export interface EditorState {
  rawInput: string;
  committed: CommittedPiece[];
  caretWord: string;
  candidates: Candidate[];
  /** Index into candidates, or -1 when there are none. */
  selectionIndex: number;
  status: Status;
  /** Bumped by every edit; stamps outgoing requests for staleness checks. */
  editSeq: number;
  latencyMs: number | null;
}

export interface KeystrokeResult {
  state: EditorState;
  /** True when the edit calls for a (debounced) prefix-mode request. */
  requestNeeded: boolean;
}

/** Response shape the reducer needs (structurally matches the wire type). */
export interface ResponseLike {
  slots: Array<{
    kind: string;
    incomplete?: boolean;
    candidates: Candidate[];
  }>;
  latency_ms: number;
}

export function initialState(): EditorState {
  return {
    rawInput: "",
    committed: [],
    caretWord: "",
    candidates: [],
    selectionIndex: -1,
    status: "idle",
    editSeq: 0,
    latencyMs: null,
  };
}

/** Word characters follow the service tokenizer: letters, combining marks,
 * zero-width (non-)joiners and the apostrophe; everything else passes
 * through. */
export function isWordChar(char: string): boolean {
  return /^[\p{L}\p{M}‌‍']$/u.test(char);
}

/** Native text committed so far (passthrough included). */
export function committedNative(state: EditorState): string {
  return state.committed.map((piece) => piece.chosen).join("");
}

/** What the caret word currently displays: the highlighted candidate, or
 * the raw caret word itself while no candidate is known. */
export function caretPreview(state: EditorState): string {
  if (state.caretWord === "") return "";
  const selected = state.candidates[state.selectionIndex];
  return selected ? selected.text : state.caretWord;
}

/** The full native line: committed outputs plus the caret preview. */
export function nativeText(state: EditorState): string {
  return committedNative(state) + caretPreview(state);
}

function highlightedOrSurface(state: EditorState): string {
  const selected = state.candidates[state.selectionIndex];
  return selected ? selected.text : state.caretWord;
}

function withCaretCommitted(state: EditorState): EditorState {
  // only reachable with a non-empty caret word, and it empties the caret,
  // so the same word can never be committed twice
  const piece: CommittedPiece = {
    surface: state.caretWord,
    chosen: highlightedOrSurface(state),
  };
  return {
    ...state,
    committed: [...state.committed, piece],
    caretWord: "",
    candidates: [],
    selectionIndex: -1,
  };
}

function appendPassthrough(state: EditorState, char: string): EditorState {
  return {
    ...state,
    committed: [...state.committed, { surface: char, chosen: char }],
  };
}

function moveSelection(state: EditorState, delta: number): EditorState {
  if (state.candidates.length === 0) return state;
  const bounded = Math.min(
    state.candidates.length - 1,
    Math.max(0, state.selectionIndex + delta),
  );
  return { ...state, selectionIndex: bounded };
}

function backspace(state: EditorState): KeystrokeResult {
  if (state.caretWord !== "") {
    const caretWord = state.caretWord.slice(0, -1);
    const next: EditorState = {
      ...state,
      rawInput: state.rawInput.slice(0, -1),
      caretWord,
      editSeq: state.editSeq + 1,
      status: caretWord === "" ? "idle" : "pending",
      candidates: caretWord === "" ? [] : state.candidates,
      selectionIndex: caretWord === "" ? -1 : state.selectionIndex,
    };
    return { state: next, requestNeeded: caretWord !== "" };
  }
  if (state.committed.length === 0) {
    return { state, requestNeeded: false };
  }
  const last = state.committed[state.committed.length - 1];
  const rest = state.committed.slice(0, -1);
  if (last.surface === last.chosen && !isWordChar(last.surface[0])) {
    // passthrough piece: shave one character
    const shaved = last.surface.slice(0, -1);
    const committed = shaved === "" ? rest : [...rest, { surface: shaved, chosen: shaved }];
    const next: EditorState = {
      ...state,
      rawInput: state.rawInput.slice(0, -1),
      committed,
      editSeq: state.editSeq + 1,
    };
    return { state: next, requestNeeded: false };
  }
  // word piece: undo the commit and reopen it as the caret word, minus the
  // deleted character
  const caretWord = last.surface.slice(0, -1);
  const next: EditorState = {
    ...state,
    rawInput: state.rawInput.slice(0, -1),
    committed: rest,
    caretWord,
    candidates: [],
    selectionIndex: -1,
    editSeq: state.editSeq + 1,
    status: caretWord === "" ? "idle" : "pending",
  };
  return { state: next, requestNeeded: caretWord !== "" };
}

export function applyKeystroke(state: EditorState, key: string): KeystrokeResult {
  if (key === "ArrowDown") {
    return { state: moveSelection(state, +1), requestNeeded: false };
  }
  if (key === "ArrowUp") {
    return { state: moveSelection(state, -1), requestNeeded: false };
  }
  if (key === "Backspace") {
    return backspace(state);
  }
  if (key === "Enter") {
    if (state.caretWord === "") {
      return { state, requestNeeded: false };
    }
    // commit the highlighted candidate; the word is finished, so a space
    // goes into the buffer to keep the sentence boundaries the service
    // sees in step with what the user committed
    let next = withCaretCommitted(state);
    next = appendPassthrough(next, " ");
    next = {
      ...next,
      rawInput: state.rawInput + " ",
      editSeq: state.editSeq + 1,
      status: "idle",
    };
    return { state: next, requestNeeded: false };
  }
  if (key.length !== 1) {
    return { state, requestNeeded: false }; // Shift, Tab, F5, ...
  }
  if (isWordChar(key)) {
    const next: EditorState = {
      ...state,
      rawInput: state.rawInput + key,
      caretWord: state.caretWord + key,
      editSeq: state.editSeq + 1,
      status: "pending",
      // keep the previous list until the fresh one lands; reset the
      // highlight to the top
      selectionIndex: state.candidates.length > 0 ? 0 : -1,
    };
    return { state: next, requestNeeded: true };
  }
  // passthrough character: commits the highlighted candidate first
  let next = state.caretWord !== "" ? withCaretCommitted(state) : state;
  next = appendPassthrough(next, key);
  next = {
    ...next,
    rawInput: state.rawInput + key,
    editSeq: state.editSeq + 1,
    status: "idle",
  };
  return { state: next, requestNeeded: false };
}

/** Fold a service response in; stale responses leave the state untouched. */
export function applyResponse(
  state: EditorState,
  requestSeq: number,
  response: ResponseLike,
): EditorState {
  if (requestSeq !== state.editSeq) {
    return state; // answer to an input the user has already left behind
  }
  let candidates: Candidate[] = [];
  if (state.caretWord !== "") {
    const last = response.slots[response.slots.length - 1];
    if (last && last.kind === "word" && last.incomplete) {
      candidates = last.candidates;
    }
  }
  // keep the user's highlight if the same text is still offered
  const previous = state.candidates[state.selectionIndex];
  let selectionIndex = candidates.length > 0 ? 0 : -1;
  if (previous) {
    const kept = candidates.findIndex((c) => c.text === previous.text);
    if (kept >= 0) selectionIndex = kept;
  }
  return {
    ...state,
    candidates,
    selectionIndex,
    status: "idle",
    latencyMs: response.latency_ms,
  };
}

/** Mark a failed request; stale failures are ignored the same way. */
export function applyError(state: EditorState, requestSeq: number): EditorState {
  if (requestSeq !== state.editSeq) {
    return state;
  }
  return {
    ...state,
    candidates: [],
    selectionIndex: -1,
    status: "error",
  };
}
