import { describe, expect, it } from "vitest";

import { FeedController, FeedState } from "../src/feeds.js";
import { FakeApi } from "./fakeApi.js";

describe("FeedController", () => {
  it("loads the feed matching the role", async () => {
    const api = new FakeApi();
    const states: FeedState[] = [];
    const feeds = new FeedController(api, "ai", (s) => states.push(s));
    await feeds.load("student");
    expect(feeds.feedState.kind).toBe("student");
    await feeds.load("instructor");
    expect(feeds.feedState.kind).toBe("instructor");
    expect(states[0]).toEqual({ kind: "loading" });
  });

  it("reports an error state for retry when the service is unreachable", async () => {
    const api = new FakeApi();
    api.behavior.failFeeds = true;
    const feeds = new FeedController(api, "ai", () => {});
    await feeds.load("student");
    expect(feeds.feedState.kind).toBe("error");
    api.behavior.failFeeds = false;
    await feeds.load("student");
    expect(feeds.feedState.kind).toBe("student");
  });
});
