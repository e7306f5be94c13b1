/** Token-highlight rendering for explanation payloads.
 *
 * Orange marks weight toward class 1 (sarcastic), blue toward class 0;
 * opacity is |weight| / max|weight| within the explanation, so shading is
 * always relative to the current example. Produces HTML strings so the
 * logic is testable without a DOM.
 */

import type { Explanation } from "./api.js";

export const POSITIVE_RGB = "255,140,0";
export const NEGATIVE_RGB = "60,110,220";

export class RenderError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "RenderError";
  }
}

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function checkPayload(e: unknown): asserts e is Pick<Explanation, "tokens" | "weights"> {
  const obj = e as { tokens?: unknown; weights?: unknown };
  if (
    !obj ||
    !Array.isArray(obj.tokens) ||
    !Array.isArray(obj.weights) ||
    obj.tokens.length !== obj.weights.length ||
    obj.tokens.length === 0 ||
    !obj.tokens.every((t) => typeof t === "string") ||
    !obj.weights.every((w) => typeof w === "number" && Number.isFinite(w))
  ) {
    throw new RenderError("malformed explanation payload: need equal-length tokens and finite weights");
  }
}

/** One span per token; tokens with zero weight stay plain text. */
export function renderExplanation(e: Explanation): string {
  checkPayload(e);
  const maxAbs = Math.max(...e.weights.map(Math.abs));
  const parts = e.tokens.map((token, i) => {
    const w = e.weights[i]!;
    if (maxAbs === 0 || w === 0) return escapeHtml(token);
    const rgb = w > 0 ? POSITIVE_RGB : NEGATIVE_RGB;
    const opacity = (Math.abs(w) / maxAbs).toFixed(3);
    const title = `weight ${w.toPrecision(4)}`;
    return (
      `<span class="hl" style="background: rgba(${rgb},${opacity})" ` +
      `title="${title}">${escapeHtml(token)}</span>`
    );
  });
  return `<p class="explanation">${parts.join(" ")}</p>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner" role="alert">${escapeHtml(message)}</div>`;
}

/** Render or fall back to a banner; the explorer never crashes on bad payloads. */
export function renderExplanationSafe(e: Explanation): string {
  try {
    return renderExplanation(e);
  } catch (err) {
    return renderErrorBanner(err instanceof Error ? err.message : String(err));
  }
}
