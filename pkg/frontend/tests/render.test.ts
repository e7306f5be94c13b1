import { describe, expect, it } from "vitest";

import type { Explanation } from "../src/api.js";
import {
  NEGATIVE_RGB,
  POSITIVE_RGB,
  RenderError,
  renderErrorBanner,
  renderExplanation,
  renderExplanationSafe,
} from "../src/render.js";

function explanation(tokens: string[], weights: number[]): Explanation {
  return {
    tokens,
    weights,
    intercept: 0.5,
    r2: 0.9,
    predicted_class: 1,
    probs: [0.3, 0.7],
    target_class: 1,
    degenerate: false,
    config: {},
  };
}

describe("renderExplanation", () => {
  it("renders zero-weight explanations with no highlight spans", () => {
    const html = renderExplanation(explanation(["eta", "khub", "bhalo"], [0, 0, 0]));
    expect(html).not.toContain("<span");
    expect(html).toContain("eta khub bhalo");
  });

  it("renders a single positive token as exactly one orange span at full opacity", () => {
    const html = renderExplanation(explanation(["eta", "obviously", "bhalo"], [0, 0.8, 0]));
    expect(html.match(/<span/g)).toHaveLength(1);
    expect(html).toContain(`rgba(${POSITIVE_RGB},1.000)`);
    expect(html).not.toContain(NEGATIVE_RGB);
  });

  it("uses both colors for mixed signs with max-|weight| at full opacity", () => {
    const html = renderExplanation(explanation(["a", "b", "c"], [0.4, -0.8, 0.2]));
    expect(html).toContain(POSITIVE_RGB);
    expect(html).toContain(`rgba(${NEGATIVE_RGB},1.000)`);
    expect(html).toContain(`rgba(${POSITIVE_RGB},0.500)`);
  });

  it("shows the numeric weight on hover via the title attribute", () => {
    const html = renderExplanation(explanation(["x", "y"], [0.1234, 0]));
    expect(html).toContain('title="weight 0.1234"');
  });

  it("escapes markup in tokens", () => {
    const html = renderExplanation(explanation(["<img>", "ok"], [0.5, 0]));
    expect(html).toContain("&lt;img&gt;");
    expect(html).not.toContain("<img>");
  });

  it("rejects malformed payloads", () => {
    const bad = explanation(["a", "b"], [0.1]); // length mismatch
    expect(() => renderExplanation(bad)).toThrow(RenderError);
    expect(() => renderExplanation({ ...bad, weights: [0.1, NaN] })).toThrow(RenderError);
  });

  it("falls back to an error banner instead of crashing", () => {
    const html = renderExplanationSafe(explanation(["a"], []));
    expect(html).toContain("error-banner");
  });
});

describe("renderErrorBanner", () => {
  it("escapes the message", () => {
    expect(renderErrorBanner("<script>")).toContain("&lt;script&gt;");
  });
});
