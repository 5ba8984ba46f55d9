// Typed client for the dupwatch HTTP API.

export interface Draft {
  title: string;
  body: string;
  tags: string[];
}

export interface Recommendation {
  post_id: string;
  score: number;
  per_field_scores: Record<string, number>;
}

export interface RecommendResponse {
  class_id: string;
  trained_at: string;
  n_posts: number;
  recommendations: Recommendation[];
}

export interface StudentFeedItem {
  post_id: string;
  importance: number;
  views: number;
  followups: number;
  age_days: number;
}

export interface InstructorFeedItem {
  post_id: string;
  unresolved_followups: number;
  views: number;
  followups: number;
  age_days: number;
}

export interface PostRecord {
  id: string;
  class_id: string;
  title: string;
  body: string;
  created_at: string;
  tags: string[];
  views: number;
  instructor_answer: string | null;
  student_answer: string | null;
  followups: { text: string; resolved: boolean; contributions: string[] }[];
  unresolved_followups: number;
}

export type EventType = "new_post_click" | "recommendation_click" | "submit_post_click";

export interface HealthClass {
  class_id: string;
  trained_at: string;
  n_posts: number;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      throw new Error(`${init?.method ?? "GET"} ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  recommend(classId: string, draft: Draft): Promise<RecommendResponse> {
    return this.request(`/classes/${encodeURIComponent(classId)}/recommend`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(draft),
    });
  }

  studentFeed(classId: string): Promise<{ items: StudentFeedItem[] }> {
    return this.request(`/classes/${encodeURIComponent(classId)}/feed/student`);
  }

  instructorFeed(classId: string): Promise<{ items: InstructorFeedItem[] }> {
    return this.request(`/classes/${encodeURIComponent(classId)}/feed/instructor`);
  }

  post(classId: string, postId: string): Promise<{ post: PostRecord }> {
    return this.request(
      `/classes/${encodeURIComponent(classId)}/posts/${encodeURIComponent(postId)}`,
    );
  }

  health(): Promise<{ classes: HealthClass[] }> {
    return this.request("/health");
  }

  /** Fire an interaction event; resolves false on any failure. */
  async reportEvent(
    type: EventType,
    classId: string,
    userToken: string,
    postId?: string,
  ): Promise<boolean> {
    try {
      const body: Record<string, string> = {
        event_type: type,
        class_id: classId,
        user_token: userToken,
      };
      if (postId !== undefined) {
        body.post_id = postId;
      }
      const response = await this.fetchFn(`${this.baseUrl}/events`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
      return response.ok;
    } catch {
      return false;
    }
  }
}
