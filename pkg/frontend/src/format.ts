export function formatScore(score: number): string {
  return `${Math.round(100 * score)}%`;
}

export function formatAge(ageDays: number | null): string {
  if (ageDays === null) {
    return "";
  }
  if (ageDays < 1 / 24) {
    return "just now";
  }
  if (ageDays < 1) {
    return `${Math.round(ageDays * 24)}h ago`;
  }
  return `${Math.round(ageDays)}d ago`;
}
