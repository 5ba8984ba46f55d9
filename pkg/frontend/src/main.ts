import { ApiClient } from "./api.js";
import { initApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
void initApp(document, new ApiClient(""), {
  classId: params.get("class") ?? undefined,
});
