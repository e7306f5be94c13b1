/** Session state for the explorer: append-only edit history plus the
 * request sequence counter used to discard stale responses. */

import type { Explanation } from "./api.js";

export interface HistoryEntry {
  readonly text: string;
  readonly modelIds: readonly string[];
  readonly seed: number;
  /** model_id -> explanation, or null where that model's request failed */
  readonly explanations: Readonly<Record<string, Explanation | null>>;
  readonly timestamp: number;
}

export class ExplorerSession {
  /** Default seed is randomized per session so two analysts don't silently
   * share one; the advanced drawer can pin it for reproduction. */
  seed: number;
  private readonly history: HistoryEntry[] = [];
  private seq = 0;

  constructor(seed?: number) {
    this.seed = seed ?? Math.floor(Math.random() * 2 ** 31);
  }

  /** Claim a sequence number for a new round of requests. */
  nextSeq(): number {
    this.seq += 1;
    return this.seq;
  }

  /** A response is stale when a newer edit has claimed a later sequence. */
  isCurrent(seq: number): boolean {
    return seq === this.seq;
  }

  append(entry: HistoryEntry): void {
    this.history.push(Object.freeze({ ...entry, modelIds: [...entry.modelIds] }));
  }

  get entries(): readonly HistoryEntry[] {
    return this.history;
  }

  /** Back-navigation: return a prior state without truncating history. */
  restore(index: number): HistoryEntry {
    const entry = this.history[index];
    if (entry === undefined) {
      throw new RangeError(`no history entry at index ${index}`);
    }
    return entry;
  }
}
