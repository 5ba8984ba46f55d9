// Fire-and-forget click telemetry. Failures are logged to the console and
// never surface to the user or delay the UI action that triggered them.

import { ApiClient, EventType } from "./api.js";

export function newUserToken(): string {
  return `ui-${Math.random().toString(36).slice(2, 10)}${Date.now().toString(36)}`;
}

export class Telemetry {
  constructor(
    private readonly api: ApiClient,
    private readonly classId: string,
    readonly userToken: string = newUserToken(),
  ) {}

  /** recommendation_click carries the clicked post id; other kinds must not. */
  report(kind: EventType, postId?: string): void {
    void this.api
      .reportEvent(kind, this.classId, this.userToken, postId)
      .then((ok) => {
        if (!ok) {
          console.debug(`telemetry ${kind} not recorded`);
        }
      });
  }
}
