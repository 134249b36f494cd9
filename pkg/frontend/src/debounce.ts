import { isRetryable } from "./api.js";

// Throttled request channel between the edit loop and the service.
//
// Contract: at most one request in flight, dispatches spaced so slider drags
// stay at or under 30 requests per second, the latest scheduled state wins,
// responses for superseded states are discarded, and re-scheduling the state
// whose response is already displayed sends nothing.

export const MIN_INTERVAL_MS = 34; // ceil(1000 / 30): hard cap of 30 requests/s

export type ChannelStatus = "idle" | "waiting" | "loading" | "retrying" | "failed";

export interface ChannelOptions<Req, Res> {
  send: (req: Req) => Promise<Res>;
  onResult: (res: Res, req: Req) => void;
  onError?: (err: unknown, req: Req) => void;
  onStatus?: (status: ChannelStatus) => void;
  intervalMs?: number;
  backoffMs?: number;
  maxAttempts?: number;
}

interface Job<Req> {
  req: Req;
  key: string;
  edit: number;
}

export class RequestChannel<Req, Res> {
  private readonly intervalMs: number;
  private readonly backoffMs: number;
  private readonly maxAttempts: number;

  private pending: Job<Req> | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private retryTimer: ReturnType<typeof setTimeout> | null = null;
  private inFlight = false;
  private editSeq = 0;
  private completedKey: string | null = null;
  private nextAllowed = 0;
  private dispatched = 0;

  constructor(private readonly opts: ChannelOptions<Req, Res>) {
    this.intervalMs = opts.intervalMs ?? MIN_INTERVAL_MS;
    this.backoffMs = opts.backoffMs ?? 250;
    this.maxAttempts = opts.maxAttempts ?? 4;
  }

  // Total requests actually sent; used by tests and the status bar.
  get requestCount(): number {
    return this.dispatched;
  }

  schedule(req: Req, key: string = JSON.stringify(req)): void {
    this.editSeq++;
    if (this.retryTimer !== null) {
      clearTimeout(this.retryTimer);
      this.retryTimer = null;
    }
    if (key === this.completedKey && !this.inFlight) {
      // Displayed geometry already matches this state.
      this.pending = null;
      if (this.timer !== null) {
        clearTimeout(this.timer);
        this.timer = null;
      }
      this.setStatus("idle");
      return;
    }
    this.pending = { req, key, edit: this.editSeq };
    if (!this.inFlight && this.timer === null) this.armTimer();
    if (!this.inFlight) this.setStatus("waiting");
  }

  // Forget the displayed-state cache (e.g. after a view switch) so the next
  // schedule always reaches the server.
  invalidate(): void {
    this.editSeq++;
    this.completedKey = null;
  }

  private setStatus(status: ChannelStatus): void {
    this.opts.onStatus?.(status);
  }

  private armTimer(): void {
    const wait = Math.max(0, this.nextAllowed - Date.now());
    this.timer = setTimeout(() => {
      this.timer = null;
      this.fire();
    }, wait);
  }

  private fire(): void {
    if (this.inFlight) return;
    const job = this.pending;
    this.pending = null;
    if (job === null || job.key === this.completedKey) {
      this.setStatus("idle");
      return;
    }
    void this.dispatch(job, 1);
  }

  private async dispatch(job: Job<Req>, attempt: number): Promise<void> {
    this.inFlight = true;
    this.nextAllowed = Date.now() + this.intervalMs;
    this.dispatched++;
    this.setStatus(attempt > 1 ? "retrying" : "loading");
    try {
      const res = await this.opts.send(job.req);
      this.inFlight = false;
      if (this.editSeq === job.edit) {
        this.completedKey = job.key;
        this.opts.onResult(res, job.req);
      }
      // A response for an already-superseded edit is dropped; the pending
      // job carries the newer state to the server next.
      this.afterCompletion("idle");
    } catch (err) {
      this.inFlight = false;
      if (this.editSeq !== job.edit) {
        this.afterCompletion("idle");
        return;
      }
      if (isRetryable(err) && attempt < this.maxAttempts) {
        this.setStatus("retrying");
        const delay = this.backoffMs * 2 ** (attempt - 1);
        this.retryTimer = setTimeout(() => {
          this.retryTimer = null;
          if (this.editSeq === job.edit) {
            void this.dispatch(job, attempt + 1);
          } else {
            this.afterCompletion("idle");
          }
        }, delay);
      } else {
        this.opts.onError?.(err, job.req);
        this.afterCompletion(isRetryable(err) ? "failed" : "idle");
      }
    }
  }

  private afterCompletion(fallback: ChannelStatus): void {
    if (this.pending !== null) {
      this.armTimer();
      this.setStatus("waiting");
    } else {
      this.setStatus(fallback);
    }
  }
}
