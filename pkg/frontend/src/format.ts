// Input parsing and display formatting. The UI does no probability math
// beyond turning the API's fractions into display percents.

/** Parse "1,3,4" or "1 3 4" (or a mix) into page ids; null when invalid. */
export function parsePrefixText(text: string): number[] | null {
  const tokens = text.trim().split(/[\s,]+/).filter((t) => t.length > 0);
  if (tokens.length === 0) return null;
  const pages: number[] = [];
  for (const token of tokens) {
    if (!/^\d+$/.test(token)) return null;
    const page = parseInt(token, 10);
    if (page < 1) return null;
    pages.push(page);
  }
  return pages;
}

/** Half-up integer percent: 0.565 -> "57%". */
export function pct(p: number): string {
  // The tiny nudge keeps true halves (count ratios like 113/200) rounding
  // up despite binary float representation (0.565*100 === 56.4999...).
  return `${Math.round(p * 100 + 1e-9)}%`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
