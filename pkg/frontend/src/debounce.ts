/** Trailing-edge debounce so a keystroke burst costs one request. */

export interface Debounced<Args extends unknown[]> {
  (...args: Args): void;
  /** Drop any pending invocation. */
  cancel(): void;
  /** Run a pending invocation immediately (no-op when idle). */
  flush(): void;
}

export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  delayMs: number,
): Debounced<Args> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pendingArgs: Args | null = null;

  const debounced = ((...args: Args) => {
    pendingArgs = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const callArgs = pendingArgs as Args;
      pendingArgs = null;
      fn(...callArgs);
    }, delayMs);
  }) as Debounced<Args>;

  debounced.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    pendingArgs = null;
  };

  debounced.flush = () => {
    if (timer === null) return;
    clearTimeout(timer);
    timer = null;
    const callArgs = pendingArgs as Args;
    pendingArgs = null;
    fn(...callArgs);
  };

  return debounced;
}
