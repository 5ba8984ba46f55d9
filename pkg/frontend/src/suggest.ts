// Live-suggestion state machine for the compose view.
//
// Keystrokes feed update(); after the debounce window one recommend
// request fires. Responses are tagged with a query sequence number and a
// response only renders if it is the newest answered so far, so slow
// out-of-order replies never overwrite fresher suggestions.

import { ApiClient, Draft, Recommendation } from "./api.js";
import { debounce } from "./debounce.js";

export const DEFAULT_DEBOUNCE_MS = 400;
export const MAX_SUGGESTIONS = 5;

export interface Suggestion {
  postId: string;
  score: number;
  title: string;
  ageDays: number | null;
}

export type PanelState =
  | { kind: "idle" }
  | { kind: "loading" }
  | { kind: "unavailable" }
  | { kind: "suggestions"; items: Suggestion[] };

export function draftIsEmpty(draft: Draft): boolean {
  return (
    draft.title.trim() === "" &&
    draft.body.trim() === "" &&
    draft.tags.every((t) => t.trim() === "")
  );
}

export class SuggestionController {
  private seq = 0;
  private highestAnswered = 0;
  private state: PanelState = { kind: "idle" };
  private readonly schedule: ((draft: Draft) => void) & { cancel: () => void };
  private readonly postCache = new Map<string, { title: string; ageDays: number | null }>();

  constructor(
    private readonly api: ApiClient,
    private readonly classId: string,
    private readonly onChange: (state: PanelState) => void,
    debounceMs: number = DEFAULT_DEBOUNCE_MS,
  ) {
    this.schedule = debounce((draft: Draft) => void this.query(draft), debounceMs);
  }

  get panelState(): PanelState {
    return this.state;
  }

  /** Call on every draft edit. */
  update(draft: Draft): void {
    if (draftIsEmpty(draft)) {
      // empty drafts never hit the network; anything in flight is now stale
      this.schedule.cancel();
      this.seq += 1;
      this.highestAnswered = this.seq;
      this.setState({ kind: "idle" });
      return;
    }
    this.schedule(draft);
  }

  /** Resolve a rendered suggestion back to its id (for click handling). */
  suggestionAt(index: number): Suggestion | null {
    return this.state.kind === "suggestions" ? (this.state.items[index] ?? null) : null;
  }

  private setState(state: PanelState): void {
    this.state = state;
    this.onChange(state);
  }

  private async query(draft: Draft): Promise<void> {
    const id = ++this.seq;
    if (this.state.kind === "idle") {
      this.setState({ kind: "loading" });
    }
    let items: Suggestion[];
    try {
      const response = await this.api.recommend(this.classId, draft);
      const top = response.recommendations.slice(0, MAX_SUGGESTIONS);
      items = await Promise.all(top.map((r) => this.toSuggestion(r)));
    } catch {
      if (id > this.highestAnswered) {
        this.highestAnswered = id;
        this.setState({ kind: "unavailable" });
      }
      return;
    }
    if (id <= this.highestAnswered) {
      return; // a newer query already rendered
    }
    this.highestAnswered = id;
    this.setState({ kind: "suggestions", items });
  }

  private async toSuggestion(rec: Recommendation): Promise<Suggestion> {
    let meta = this.postCache.get(rec.post_id);
    if (meta === undefined) {
      try {
        const { post } = await this.api.post(this.classId, rec.post_id);
        const created = Date.parse(post.created_at);
        meta = {
          title: post.title,
          ageDays: Number.isNaN(created) ? null : (Date.now() - created) / 86_400_000,
        };
      } catch {
        meta = { title: rec.post_id, ageDays: null };
      }
      this.postCache.set(rec.post_id, meta);
    }
    return { postId: rec.post_id, score: rec.score, title: meta.title, ageDays: meta.ageDays };
  }
}
