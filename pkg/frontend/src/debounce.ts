type TimerId = ReturnType<typeof setTimeout>;

export interface Clock {
  set(fn: () => void, ms: number): TimerId;
  clear(id: TimerId): void;
}

const realClock: Clock = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (id) => clearTimeout(id),
};

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
}

/**
 * Trailing-edge debounce: `fn` runs once, `ms` after the most recent call,
 * with that call's arguments. The clock is injectable for tests.
 */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
  clock: Clock = realClock,
): Debounced<A> {
  let timer: TimerId | null = null;
  const wrapped = (...args: A): void => {
    if (timer !== null) clock.clear(timer);
    timer = clock.set(() => {
      timer = null;
      fn(...args);
    }, ms);
  };
  wrapped.cancel = () => {
    if (timer !== null) {
      clock.clear(timer);
      timer = null;
    }
  };
  return wrapped;
}
