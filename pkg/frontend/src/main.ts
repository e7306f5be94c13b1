/** Browser entry point: wires the session, API client, and renderers to the
 * static page in index.html. All analysis happens server-side. */

import { ApiClient } from "./api.js";
import { compareModels, renderComparison } from "./compare.js";
import { renderErrorBanner } from "./render.js";
import { ExplorerSession, type HistoryEntry } from "./session.js";

const api = new ApiClient("");
const session = new ExplorerSession();

const textInput = document.getElementById("comment") as HTMLTextAreaElement;
const modelList = document.getElementById("model-list") as HTMLElement;
const seedInput = document.getElementById("seed") as HTMLInputElement;
const output = document.getElementById("output") as HTMLElement;
const historyList = document.getElementById("history") as HTMLUListElement;
const form = document.getElementById("explore-form") as HTMLFormElement;

seedInput.value = String(session.seed);

async function loadModels(): Promise<void> {
  const { models } = await api.models();
  modelList.innerHTML = models
    .map(
      (m, i) =>
        `<label><input type="checkbox" name="model" value="${m.model_id}"` +
        `${i === 0 ? " checked" : ""}> ${m.model_id} (${m.type})</label>`,
    )
    .join("");
}

function selectedModels(): string[] {
  return Array.from(
    modelList.querySelectorAll<HTMLInputElement>("input[name=model]:checked"),
  ).map((el) => el.value);
}

function renderHistory(): void {
  historyList.innerHTML = session.entries
    .map(
      (e, i) =>
        `<li><button type="button" data-index="${i}">` +
        `${new Date(e.timestamp).toLocaleTimeString()} — ${e.text.slice(0, 60)}</button></li>`,
    )
    .join("");
}

async function runOnce(text: string, modelIds: string[], seed: number): Promise<void> {
  const seq = session.nextSeq();
  output.innerHTML = '<p class="pending">running…</p>';
  try {
    const comparison =
      modelIds.length >= 2
        ? await compareModels(api, text, modelIds, seed)
        : await compareModels(api, text, [modelIds[0]!, modelIds[0]!], seed).then((c) => ({
            ...c,
            panels: c.panels.slice(0, 1),
            disagreement: false,
          }));
    if (!session.isCurrent(seq)) return; // superseded by a newer edit
    output.innerHTML = renderComparison(comparison);
    const explanations: Record<string, import("./api.js").Explanation | null> = {};
    for (const p of comparison.panels) explanations[p.modelId] = p.ok ? p.explanation : null;
    session.append({ text, modelIds, seed, explanations, timestamp: Date.now() });
    renderHistory();
  } catch (e) {
    if (!session.isCurrent(seq)) return;
    output.innerHTML = renderErrorBanner(e instanceof Error ? e.message : String(e));
  }
}

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const text = textInput.value.trim();
  const modelIds = selectedModels();
  if (!text || modelIds.length === 0) {
    output.innerHTML = renderErrorBanner("enter a comment and pick at least one model");
    return;
  }
  void runOnce(text, modelIds, Number(seedInput.value) || session.seed);
});

historyList.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest("button[data-index]");
  if (!button) return;
  const entry: HistoryEntry = session.restore(Number(button.getAttribute("data-index")));
  textInput.value = entry.text;
  seedInput.value = String(entry.seed);
  // replaying re-issues identical requests (same seed), so panels match
  void runOnce(entry.text, [...entry.modelIds], entry.seed);
});

void loadModels().catch((e) => {
  output.innerHTML = renderErrorBanner(`could not list models: ${String(e)}`);
});
