/**
 * Debounced, latest-wins request scheduling for the what-if panel.
 *
 * At most one request is in flight; edits made meanwhile coalesce into one
 * trailing request, and responses to superseded requests are dropped.
 */

export interface LatestWinsOptions<A, R> {
  run: (args: A) => Promise<R>;
  onResult: (args: A, result: R) => void;
  onError: (args: A, error: unknown) => void;
  delayMs?: number;
}

export class LatestWins<A, R> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private queued: { args: A } | null = null;
  private generation = 0;

  constructor(private readonly options: LatestWinsOptions<A, R>) {}

  submit(args: A): void {
    this.queued = { args };
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.drain();
    }, this.options.delayMs ?? 250);
  }

  /** Issue the queued request now, bypassing the debounce delay. */
  flush(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    void this.drain();
  }

  private async drain(): Promise<void> {
    if (this.inFlight || this.queued === null) return;
    const { args } = this.queued;
    this.queued = null;
    const generation = ++this.generation;
    this.inFlight = true;
    try {
      const result = await this.options.run(args);
      if (generation === this.generation) {
        this.options.onResult(args, result);
      }
    } catch (error) {
      if (generation === this.generation) {
        this.options.onError(args, error);
      }
    } finally {
      this.inFlight = false;
      if (this.queued !== null) {
        void this.drain();
      }
    }
  }
}
