/** Controller tying the state machine to the service client.
 *
 * One debounced request per keystroke burst; the whole current sentence is
 * sent each time (the server is stateless).  Each request carries the edit
 * sequence it was issued at, and the reducers drop anything stale, so
 * overlapping responses are safe regardless of arrival order.
 */

import type { TransliterateOptions } from "./client.js";
import { debounce, type Debounced } from "./debounce.js";
import {
  applyError,
  applyKeystroke,
  applyResponse,
  initialState,
  type EditorState,
  type ResponseLike,
} from "./state.js";

export const DEFAULT_DEBOUNCE_MS = 75;

export type PadListener = (state: EditorState) => void;

/** The one service call the pad needs; satisfied by TransliterationClient. */
export interface PadClient {
  transliterate(text: string, options?: TransliterateOptions): Promise<ResponseLike>;
}

export class TypingPad {
  private state: EditorState = initialState();
  private readonly listeners = new Set<PadListener>();
  private readonly requestSoon: Debounced<[]>;

  constructor(
    private readonly client: PadClient,
    debounceMs: number = DEFAULT_DEBOUNCE_MS,
  ) {
    this.requestSoon = debounce(() => void this.send(), debounceMs);
  }

  getState(): EditorState {
    return this.state;
  }

  subscribe(listener: PadListener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  /** Feed one key (KeyboardEvent.key semantics). */
  keystroke(key: string): void {
    const { state, requestNeeded } = applyKeystroke(this.state, key);
    this.setState(state);
    if (requestNeeded) {
      this.requestSoon();
    }
  }

  /** Feed a whole string, character by character. */
  type(text: string): void {
    for (const char of text) {
      this.keystroke(char);
    }
  }

  /** Fire the pending debounced request immediately (used on blur and in
   * tests; harmless when nothing is pending). */
  flushPendingRequest(): void {
    this.requestSoon.flush();
  }

  private async send(): Promise<void> {
    const requestSeq = this.state.editSeq;
    const text = this.state.rawInput;
    try {
      const response = await this.client.transliterate(text, { prefixMode: true });
      this.setState(applyResponse(this.state, requestSeq, response));
    } catch {
      this.setState(applyError(this.state, requestSeq));
    }
  }

  private setState(state: EditorState): void {
    if (state === this.state) return;
    this.state = state;
    for (const listener of this.listeners) {
      listener(state);
    }
  }
}
