// Home-feed loading for the two roles.

import { ApiClient, InstructorFeedItem, StudentFeedItem } from "./api.js";

export type Role = "student" | "instructor";

export type FeedState =
  | { kind: "loading" }
  | { kind: "error" }
  | { kind: "student"; items: StudentFeedItem[] }
  | { kind: "instructor"; items: InstructorFeedItem[] };

export class FeedController {
  private state: FeedState = { kind: "loading" };
  private generation = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly classId: string,
    private readonly onChange: (state: FeedState) => void,
  ) {}

  get feedState(): FeedState {
    return this.state;
  }

  async load(role: Role): Promise<void> {
    const generation = ++this.generation;
    this.setState({ kind: "loading" });
    try {
      if (role === "student") {
        const { items } = await this.api.studentFeed(this.classId);
        if (generation === this.generation) {
          this.setState({ kind: "student", items });
        }
      } else {
        const { items } = await this.api.instructorFeed(this.classId);
        if (generation === this.generation) {
          this.setState({ kind: "instructor", items });
        }
      }
    } catch {
      if (generation === this.generation) {
        this.setState({ kind: "error" });
      }
    }
  }

  private setState(state: FeedState): void {
    this.state = state;
    this.onChange(state);
  }
}
