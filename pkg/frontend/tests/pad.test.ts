import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { TypingPad, type PadClient } from "../src/pad.js";
import type { ResponseLike } from "../src/state.js";

function wordResponse(texts: string[], latencyMs = 1.0): ResponseLike {
  return {
    slots: [
      {
        kind: "word",
        incomplete: true,
        candidates: texts.map((text, i) => ({ text, count: 9 - i, source: "prefix" })),
      },
    ],
    latency_ms: latencyMs,
  };
}

interface Deferred {
  text: string;
  resolve(response: ResponseLike): void;
  reject(error: Error): void;
}

/** Client whose responses the test resolves by hand, in any order. */
function manualClient(): { client: PadClient; calls: Deferred[] } {
  const calls: Deferred[] = [];
  const client: PadClient = {
    transliterate(text) {
      return new Promise<ResponseLike>((resolve, reject) => {
        calls.push({ text, resolve, reject });
      });
    },
  };
  return { client, calls };
}

describe("TypingPad", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it("a keystroke burst costs exactly one request with the whole sentence", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);
    pad.type("mama");
    expect(calls).toHaveLength(0); // still inside the debounce window
    await vi.advanceTimersByTimeAsync(75);
    expect(calls).toHaveLength(1);
    expect(calls[0].text).toBe("mama");
  });

  it("sends prefix-mode requests", async () => {
    const seen: unknown[] = [];
    const client: PadClient = {
      async transliterate(_text, options) {
        seen.push(options);
        return wordResponse(["x"]);
      },
    };
    const pad = new TypingPad(client);
    pad.keystroke("m");
    await vi.advanceTimersByTimeAsync(75);
    expect(seen).toEqual([{ prefixMode: true }]);
    expect(pad.getState().candidates.map((c) => c.text)).toEqual(["x"]);
  });

  it("a slow stale response never overwrites newer input", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);

    pad.keystroke("m");
    await vi.advanceTimersByTimeAsync(75); // request #1 for "m" in flight
    pad.keystroke("a");
    await vi.advanceTimersByTimeAsync(75); // request #2 for "ma" in flight
    expect(calls.map((c) => c.text)).toEqual(["m", "ma"]);

    calls[1].resolve(wordResponse(["මං", "මට"], 2.0));
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().candidates.map((c) => c.text)).toEqual(["මං", "මට"]);

    calls[0].resolve(wordResponse(["මම"], 9.0)); // stale answer arrives late
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().candidates.map((c) => c.text)).toEqual(["මං", "මට"]);
    expect(pad.getState().latencyMs).toBe(2.0);
    expect(pad.getState().rawInput).toBe("ma");
  });

  it("responses in flight are also discarded when typing continues", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);

    pad.keystroke("m");
    await vi.advanceTimersByTimeAsync(75);
    pad.keystroke("a"); // newer edit, request #2 not sent yet
    calls[0].resolve(wordResponse(["මම"]));
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().candidates).toEqual([]); // stale response ignored
    expect(pad.getState().status).toBe("pending");
  });

  it("request failures set the error status and typing recovers", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);

    pad.keystroke("m");
    await vi.advanceTimersByTimeAsync(75);
    calls[0].reject(new Error("down"));
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().status).toBe("error");
    expect(pad.getState().rawInput).toBe("m");

    pad.keystroke("a");
    await vi.advanceTimersByTimeAsync(75);
    calls[1].resolve(wordResponse(["මට"]));
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().status).toBe("idle");
    expect(pad.getState().candidates.map((c) => c.text)).toEqual(["මට"]);
  });

  it("no keystroke is lost while requests are in flight", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);
    for (const key of "mama gedara") {
      pad.keystroke(key);
      await vi.advanceTimersByTimeAsync(20);
    }
    expect(pad.getState().rawInput).toBe("mama gedara");
    // resolve everything that was ever sent, newest last; buffer unchanged
    for (const call of calls) {
      call.resolve(wordResponse(["x"]));
    }
    await vi.advanceTimersByTimeAsync(0);
    expect(pad.getState().rawInput).toBe("mama gedara");
  });

  it("flushPendingRequest sends immediately", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);
    pad.keystroke("m");
    pad.flushPendingRequest();
    expect(calls).toHaveLength(1);
    await vi.advanceTimersByTimeAsync(200);
    expect(calls).toHaveLength(1); // debounce timer was consumed by the flush
  });

  it("notifies subscribers on every state change", async () => {
    const { client, calls } = manualClient();
    const pad = new TypingPad(client);
    const seen: string[] = [];
    const unsubscribe = pad.subscribe((state) => seen.push(state.rawInput));
    pad.type("ne");
    expect(seen).toEqual(["n", "ne"]);
    await vi.advanceTimersByTimeAsync(75);
    calls[0].resolve(wordResponse(["නේ"]));
    await vi.advanceTimersByTimeAsync(0);
    expect(seen).toHaveLength(3);
    unsubscribe();
    pad.keystroke("!");
    expect(seen).toHaveLength(3);
  });
});
