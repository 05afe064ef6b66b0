import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { TransliterationClient } from "../src/client.js";
import { TypingPad, type PadClient } from "../src/pad.js";
import { committedNative, type EditorState } from "../src/state.js";
import { render } from "../src/view.js";

const PORT = 8741;
const BASE_URL = `http://127.0.0.1:${PORT}`;
const RULES = fileURLToPath(new URL("../../data/rules.si.tsv", import.meta.url));
const LEXICON = fileURLToPath(new URL("../../data/lexicon.si.tsv", import.meta.url));

let server: ChildProcess;
let serverOutput = "";

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (server.exitCode !== null) {
      throw new Error(`service exited early (code ${server.exitCode}):\n${serverOutput}`);
    }
    try {
      const response = await fetch(`${BASE_URL}/v1/health`);
      if (response.ok) {
        return;
      }
    } catch {
      // not listening yet
    }
    await sleep(100);
  }
  throw new Error(`service not healthy after ${timeoutMs}ms:\n${serverOutput}`);
}

function candidateTexts(state: EditorState): string[] {
  return state.candidates.map((candidate) => candidate.text);
}

/** Resolves with performance.now() at the moment candidates first appear. */
function onceCandidates(pad: TypingPad, timeoutMs: number): Promise<number> {
  return new Promise((resolve, reject) => {
    const timer = setTimeout(() => {
      unsubscribe();
      reject(new Error(`no candidates after ${timeoutMs}ms`));
    }, timeoutMs);
    const unsubscribe = pad.subscribe((state) => {
      if (state.candidates.length > 0) {
        clearTimeout(timer);
        unsubscribe();
        resolve(performance.now());
      }
    });
  });
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "xlit.cli", "serve", "--rules", RULES, "--lexicon", LEXICON, "--port", String(PORT)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stdout?.on("data", (chunk: Buffer) => {
    serverOutput += chunk.toString();
  });
  server.stderr?.on("data", (chunk: Buffer) => {
    serverOutput += chunk.toString();
  });
  await waitForHealth(20_000);
}, 30_000);

afterAll(async () => {
  if (!server) {
    return;
  }
  const exited = new Promise<void>((resolve) => {
    server.once("exit", () => resolve());
  });
  server.kill("SIGTERM");
  await Promise.race([exited, sleep(5_000)]);
  server.kill("SIGKILL");
});

describe("typing pad against the live service", () => {
  it(
    "renders a dropdown within 200ms of the last keystroke",
    async () => {
      const pad = new TypingPad(new TransliterationClient(BASE_URL));
      pad.type("ne");
      const started = performance.now();
      const arrived = await onceCandidates(pad, 5_000);
      expect(arrived - started).toBeLessThan(200);
      const view = render(pad.getState());
      expect(view.dropdown.visible).toBe(true);
      expect(view.dropdown.items.length).toBeGreaterThan(0);
    },
    15_000,
  );

  it(
    "ArrowDown then space commits the highlighted candidate",
    async () => {
      const pad = new TypingPad(new TransliterationClient(BASE_URL));
      pad.type("ne");
      await onceCandidates(pad, 5_000);
      expect(candidateTexts(pad.getState())).toEqual(["නේ", "නැ"]);
      pad.keystroke("ArrowDown");
      expect(pad.getState().selectionIndex).toBe(1);
      pad.keystroke(" ");
      expect(committedNative(pad.getState())).toBe("නැ ");
      expect(pad.getState().caretWord).toBe("");
    },
    15_000,
  );

  it(
    "an artificially delayed response never overwrites newer input",
    async () => {
      const direct = new TransliterationClient(BASE_URL);
      let callIndex = 0;
      const slowFirstCall: PadClient = {
        async transliterate(text, options) {
          const index = callIndex;
          callIndex += 1;
          const response = await direct.transliterate(text, options);
          if (index === 0) {
            await sleep(300); // hold the first answer back past the second
          }
          return response;
        },
      };

      const pad = new TypingPad(slowFirstCall);
      pad.keystroke("m");
      pad.flushPendingRequest();
      pad.keystroke("a");
      pad.flushPendingRequest();
      await sleep(800); // both responses have landed by now

      const expected = await direct.transliterate("ma", { prefixMode: true });
      const lastSlot = expected.slots[expected.slots.length - 1];
      const expectedTexts = lastSlot.candidates.map((candidate) => candidate.text);

      // "මේක" completes "m" but not "ma"; seeing it would mean the stale
      // first response clobbered the newer one.
      expect(expectedTexts).not.toContain("මේක");
      expect(candidateTexts(pad.getState())).toEqual(expectedTexts);
      expect(candidateTexts(pad.getState())).not.toContain("මේක");
      expect(pad.getState().rawInput).toBe("ma");
      expect(pad.getState().status).toBe("idle");
    },
    15_000,
  );
});
