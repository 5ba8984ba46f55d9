// DOM wiring for the single-page client: compose view with live
// suggestions, role-switched home feeds, and a read-only post dialog.

import { ApiClient, Draft, PostRecord } from "./api.js";
import { FeedController, FeedState, Role } from "./feeds.js";
import { formatAge, formatScore } from "./format.js";
import { PanelState, SuggestionController, DEFAULT_DEBOUNCE_MS } from "./suggest.js";
import { Telemetry } from "./telemetry.js";

export interface AppOptions {
  classId?: string;
  debounceMs?: number;
  userToken?: string;
}

export interface AppHandle {
  classId: string;
  suggest: SuggestionController;
  feeds: FeedController;
  telemetry: Telemetry;
}

function el<T extends HTMLElement>(doc: Document, id: string): T {
  const found = doc.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found as T;
}

function readDraft(doc: Document): Draft {
  const title = el<HTMLInputElement>(doc, "draft-title").value;
  const body = el<HTMLTextAreaElement>(doc, "draft-body").value;
  const tags = el<HTMLInputElement>(doc, "draft-tags").value
    .split(",")
    .map((t) => t.trim())
    .filter((t) => t !== "");
  return { title, body, tags };
}

function renderSuggestions(doc: Document, state: PanelState): void {
  const status = el(doc, "suggestions-status");
  const list = el<HTMLUListElement>(doc, "suggestions-list");
  list.textContent = "";
  switch (state.kind) {
    case "idle":
      status.textContent = "Start typing to see related posts.";
      return;
    case "loading":
      status.textContent = "Searching…";
      return;
    case "unavailable":
      status.textContent = "Suggestions unavailable — you can keep writing.";
      return;
    case "suggestions": {
      status.textContent = state.items.length === 0 ? "No related posts found yet." : "";
      for (const item of state.items) {
        const li = doc.createElement("li");
        const button = doc.createElement("button");
        button.type = "button";
        button.className = "suggestion";
        button.dataset.postId = item.postId;
        const title = doc.createElement("span");
        title.className = "suggestion-title";
        title.textContent = item.title;
        const meta = doc.createElement("span");
        meta.className = "suggestion-meta";
        meta.textContent = `${formatScore(item.score)} match · ${formatAge(item.ageDays)}`;
        button.append(title, meta);
        li.appendChild(button);
        list.appendChild(li);
      }
    }
  }
}

function renderFeed(doc: Document, state: FeedState): void {
  const status = el(doc, "feed-status");
  const retry = el<HTMLButtonElement>(doc, "feed-retry");
  const list = el<HTMLUListElement>(doc, "feed-list");
  list.textContent = "";
  retry.hidden = state.kind !== "error";
  if (state.kind === "loading") {
    status.textContent = "Loading feed…";
    return;
  }
  if (state.kind === "error") {
    status.textContent = "Could not reach the service.";
    return;
  }
  const rows =
    state.kind === "student"
      ? state.items.map((item) => ({ item, lead: `score ${item.importance.toFixed(3)}` }))
      : state.items.map((item) => ({ item, lead: `${item.unresolved_followups} unresolved` }));
  status.textContent = rows.length === 0 ? "Nothing needs attention right now." : "";
  for (const { item, lead } of rows) {
    const li = doc.createElement("li");
    const button = doc.createElement("button");
    button.type = "button";
    button.className = "feed-item";
    button.dataset.postId = item.post_id;
    const headline = doc.createElement("span");
    headline.className = "feed-id";
    headline.textContent = item.post_id;
    const meta = doc.createElement("span");
    meta.className = "feed-meta";
    meta.textContent =
      `${lead} · ${item.views} views · ${item.followups} followups · ${formatAge(item.age_days)}`;
    button.append(headline, meta);
    li.appendChild(button);
    list.appendChild(li);
  }
}

function renderPostModal(doc: Document, post: PostRecord): void {
  el(doc, "modal-title").textContent = post.title;
  el(doc, "modal-meta").textContent =
    `${post.views} views · ${post.followups.length} followups · tags: ${post.tags.join(", ") || "none"}`;
  el(doc, "modal-body").textContent = post.body;
  const answers = el(doc, "modal-answers");
  answers.textContent = "";
  const addBlock = (label: string, text: string) => {
    const heading = doc.createElement("h3");
    heading.textContent = label;
    const paragraph = doc.createElement("p");
    paragraph.textContent = text;
    answers.append(heading, paragraph);
  };
  if (post.instructor_answer) {
    addBlock("Instructor answer", post.instructor_answer);
  }
  if (post.student_answer) {
    addBlock("Student answer", post.student_answer);
  }
  for (const followup of post.followups) {
    addBlock(
      followup.resolved ? "Followup (resolved)" : "Followup (unresolved)",
      [followup.text, ...followup.contributions].join(" — "),
    );
  }
  el(doc, "post-modal").hidden = false;
}

export async function initApp(
  doc: Document,
  api: ApiClient,
  options: AppOptions = {},
): Promise<AppHandle> {
  let classId = options.classId;
  if (!classId) {
    const { classes } = await api.health();
    classId = classes[0]?.class_id ?? "";
  }
  el(doc, "class-label").textContent = classId ? `class: ${classId}` : "no classes registered";

  const telemetry = new Telemetry(api, classId, options.userToken);
  const suggest = new SuggestionController(
    api,
    classId,
    (state) => renderSuggestions(doc, state),
    options.debounceMs ?? DEFAULT_DEBOUNCE_MS,
  );
  const feeds = new FeedController(api, classId, (state) => renderFeed(doc, state));
  renderSuggestions(doc, suggest.panelState);

  const composeView = el(doc, "compose-view");
  const feedView = el(doc, "feed-view");
  const composeForm = el<HTMLFormElement>(doc, "compose-form");
  let currentRole: Role = "student";

  const showCompose = () => {
    composeView.hidden = false;
    feedView.hidden = true;
  };
  const showFeed = (role: Role) => {
    currentRole = role;
    composeView.hidden = true;
    feedView.hidden = false;
    void feeds.load(role);
  };

  el(doc, "nav-compose").addEventListener("click", showCompose);
  el(doc, "nav-student").addEventListener("click", () => showFeed("student"));
  el(doc, "nav-instructor").addEventListener("click", () => showFeed("instructor"));
  el(doc, "feed-retry").addEventListener("click", () => void feeds.load(currentRole));

  el(doc, "new-post").addEventListener("click", () => {
    telemetry.report("new_post_click");
    composeForm.hidden = false;
    el<HTMLInputElement>(doc, "draft-title").focus();
  });

  for (const id of ["draft-title", "draft-body", "draft-tags"]) {
    el(doc, id).addEventListener("input", () => suggest.update(readDraft(doc)));
  }

  composeForm.addEventListener("submit", (event) => {
    event.preventDefault();
    telemetry.report("submit_post_click");
    el<HTMLInputElement>(doc, "draft-title").value = "";
    el<HTMLTextAreaElement>(doc, "draft-body").value = "";
    el<HTMLInputElement>(doc, "draft-tags").value = "";
    suggest.update({ title: "", body: "", tags: [] });
  });

  const openPost = async (postId: string) => {
    try {
      const { post } = await api.post(classId, postId);
      renderPostModal(doc, post);
    } catch {
      // the suggestion stays useful even if the detail view fails
    }
  };

  el(doc, "suggestions-list").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("button.suggestion");
    if (target?.dataset.postId) {
      telemetry.report("recommendation_click", target.dataset.postId);
      void openPost(target.dataset.postId);
    }
  });

  el(doc, "feed-list").addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("button.feed-item");
    if (target?.dataset.postId) {
      void openPost(target.dataset.postId);
    }
  });

  el(doc, "modal-close").addEventListener("click", () => {
    el(doc, "post-modal").hidden = true;
  });

  return { classId, suggest, feeds, telemetry };
}
