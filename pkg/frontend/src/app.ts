/** DOM wiring: one input line, one output line, a dropdown, a status row. */

import { TransliterationClient } from "./client.js";
import { TypingPad } from "./pad.js";
import { render } from "./view.js";

function serviceBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? "http://127.0.0.1:8040";
}

const HANDLED_KEYS = new Set(["ArrowDown", "ArrowUp", "Backspace", "Enter"]);

export function main(): void {
  const input = document.getElementById("roman") as HTMLInputElement;
  const native = document.getElementById("native") as HTMLDivElement;
  const dropdown = document.getElementById("dropdown") as HTMLUListElement;
  const banner = document.getElementById("status-banner") as HTMLDivElement;
  const latency = document.getElementById("latency") as HTMLSpanElement;

  const client = new TransliterationClient(serviceBaseUrl());
  const pad = new TypingPad(client);

  pad.subscribe((state) => {
    const view = render(state);
    input.value = view.romanLine;
    native.textContent = view.nativeLine;
    banner.hidden = !view.errorBanner;
    latency.textContent =
      view.latencyMs === null ? "" : `${view.latencyMs.toFixed(1)} ms`;

    dropdown.hidden = !view.dropdown.visible;
    dropdown.innerHTML = "";
    if (view.dropdown.pending && view.dropdown.items.length === 0) {
      const item = document.createElement("li");
      item.className = "spinner";
      item.textContent = "…";
      dropdown.appendChild(item);
    }
    for (const candidate of view.dropdown.items) {
      const item = document.createElement("li");
      item.textContent = candidate.text;
      if (candidate.selected) {
        item.className = "selected";
      }
      dropdown.appendChild(item);
    }
  });

  input.addEventListener("keydown", (event) => {
    if (event.key.length === 1 || HANDLED_KEYS.has(event.key)) {
      event.preventDefault();
      pad.keystroke(event.key);
    }
  });
  input.addEventListener("blur", () => pad.flushPendingRequest());

  client
    .health()
    .then((health) => {
      banner.hidden = health.status === "ok";
    })
    .catch(() => {
      banner.hidden = false;
    });

  input.focus();
}

main();
