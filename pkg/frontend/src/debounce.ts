/**
 * Trailing-edge debounce plus a single-flight gate.
 *
 * The explorer keeps at most one raster request in flight: calls made
 * while busy just mark the gate dirty, and the latest work runs again
 * once the current request settles.
 */

export function debounce(fn: () => void, delayMs: number): () => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return () => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn();
    }, delayMs);
  };
}

export class SingleFlight {
  private busy = false;
  private dirty = false;

  /** Run `work` now, or remember to rerun the latest request after. */
  async run(work: () => Promise<void>): Promise<void> {
    if (this.busy) {
      this.dirty = true;
      return;
    }
    this.busy = true;
    try {
      await work();
    } finally {
      this.busy = false;
      if (this.dirty) {
        this.dirty = false;
        await this.run(work);
      }
    }
  }

  get inFlight(): boolean {
    return this.busy;
  }
}
