/** Side-by-side model comparison: one /predict + /explain per model, with
 * per-model failures isolated to that model's panel. */

import type { ApiClient, Explanation } from "./api.js";
import { renderErrorBanner, renderExplanationSafe, escapeHtml } from "./render.js";

export type PanelResult =
  | {
      modelId: string;
      ok: true;
      probs: number[];
      predictedClass: number;
      explanation: Explanation;
    }
  | { modelId: string; ok: false; error: string };

export interface Comparison {
  text: string;
  panels: PanelResult[];
  /** true when the healthy panels disagree on the predicted class */
  disagreement: boolean;
}

async function fetchPanel(
  api: ApiClient,
  text: string,
  modelId: string,
  seed: number,
): Promise<PanelResult> {
  try {
    const [prediction, explanation] = await Promise.all([
      api.predict([text], modelId),
      api.explain(text, { modelId, seed }),
    ]);
    const row = prediction.probs[0];
    if (!row || row.length !== 2) {
      return { modelId, ok: false, error: "service returned no probability row" };
    }
    return {
      modelId,
      ok: true,
      probs: row,
      predictedClass: row[1]! > row[0]! ? 1 : 0,
      explanation,
    };
  } catch (e) {
    return { modelId, ok: false, error: e instanceof Error ? e.message : String(e) };
  }
}

export async function compareModels(
  api: ApiClient,
  text: string,
  modelIds: string[],
  seed: number,
): Promise<Comparison> {
  if (modelIds.length < 2) {
    throw new RangeError("compareModels needs at least two model ids");
  }
  const panels = await Promise.all(modelIds.map((id) => fetchPanel(api, text, id, seed)));
  const classes = new Set(
    panels.filter((p): p is Extract<PanelResult, { ok: true }> => p.ok).map((p) => p.predictedClass),
  );
  return { text, panels, disagreement: classes.size > 1 };
}

export function renderComparison(c: Comparison): string {
  const flag = c.disagreement
    ? '<div class="disagreement-flag" role="status">models disagree on the predicted class</div>'
    : "";
  const panels = c.panels
    .map((p) => {
      if (!p.ok) {
        return (
          `<section class="panel panel-error" data-model="${escapeHtml(p.modelId)}">` +
          `<h3>${escapeHtml(p.modelId)}</h3>${renderErrorBanner(p.error)}</section>`
        );
      }
      const label = p.predictedClass === 1 ? "sarcastic" : "not sarcastic";
      return (
        `<section class="panel" data-model="${escapeHtml(p.modelId)}">` +
        `<h3>${escapeHtml(p.modelId)}</h3>` +
        `<p class="verdict">${label} (p=${p.probs[p.predictedClass]!.toFixed(3)})</p>` +
        renderExplanationSafe(p.explanation) +
        `</section>`
      );
    })
    .join("");
  return `${flag}<div class="panels">${panels}</div>`;
}
