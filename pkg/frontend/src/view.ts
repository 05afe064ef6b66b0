/** Derive what the page should show from the editor state. */

import type { EditorState } from "./state.js";
import { nativeText } from "./state.js";

export interface DropdownItem {
  text: string;
  count: number;
  source: string;
  selected: boolean;
}

export interface ViewModel {
  romanLine: string;
  nativeLine: string;
  dropdown: {
    /** Shown only while a word is being typed. */
    visible: boolean;
    items: DropdownItem[];
    /** True while a request is in flight (spinner). */
    pending: boolean;
  };
  errorBanner: boolean;
  latencyMs: number | null;
}

export function render(state: EditorState): ViewModel {
  const typing = state.caretWord !== "";
  return {
    romanLine: state.rawInput,
    nativeLine: nativeText(state),
    dropdown: {
      visible: typing && (state.candidates.length > 0 || state.status === "pending"),
      items: state.candidates.map((candidate, index) => ({
        text: candidate.text,
        count: candidate.count,
        source: candidate.source,
        selected: index === state.selectionIndex,
      })),
      pending: state.status === "pending",
    },
    errorBanner: state.status === "error",
    latencyMs: state.latencyMs,
  };
}
