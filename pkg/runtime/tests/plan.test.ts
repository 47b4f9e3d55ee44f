import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { FeatureCatalog, featureKey, parseCatalog } from "../src/catalog.js";
import { HARNESS_DESCRIPTOR } from "../src/harness.js";
import { compilePlan, PlanError } from "../src/plan.js";
import { parsePolicy } from "../src/policy.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");
const read = (rel: string) => readFileSync(join(FIXTURES, rel), "utf8");

const wireCatalog = parseCatalog(read("wire/catalog.json"));

// Catalog shaped like the wrapped-factory scenario: the product's standard
// is blocked while the factory's own standard stays enabled.
const AUDIO_CATALOG: FeatureCatalog = {
  standards: [
    { name: "Web Audio API", abbrev: "WEBA" },
    { name: "Audio Context Core", abbrev: "AC" },
  ],
  features: [
    { interface: "GainNode", member: "channelCount", kind: "attribute_get", standard_abbrev: "WEBA" },
    { interface: "GainNode", member: "channelCount", kind: "attribute_set", standard_abbrev: "WEBA" },
    { interface: "AudioContext", member: "createGain", kind: "method", standard_abbrev: "AC" },
    { interface: "AudioContext", member: "constructor", kind: "constructor", standard_abbrev: "AC" },
  ],
};

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

describe("strategy selection", () => {
  it("method features become replace_member", () => {
    const policy = parsePolicy('{"name": "f1", "blocked": ["DOM1"]}');
    const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR);
    const entry = plan.entries.find(
      (e) => e.feature.interface === "Document" && e.feature.member === "getElementsByTagName",
    );
    expect(entry).toBeDefined();
    expect(entry!.strategy).toBe("replace_member");
  });

  it("singleton attribute setters become singleton_setter", () => {
    const policy = parsePolicy('{"name": "f1", "blocked": ["DOM1"]}');
    const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR);
    const entry = plan.entries.find(
      (e) =>
        e.feature.interface === "Document" &&
        e.feature.member === "title" &&
        e.feature.kind === "attribute_set",
    );
    expect(entry!.strategy).toBe("singleton_setter");
  });

  it("setters on factory products wrap the producing factory", () => {
    const policy = parsePolicy('{"name": "f2", "blocked": ["WEBA"]}');
    const plan = compilePlan(policy, AUDIO_CATALOG, HARNESS_DESCRIPTOR);
    const setter = plan.entries.find((e) => e.feature.kind === "attribute_set");
    expect(setter!.strategy).toBe("wrap_factory_return");
    expect(setter!.factory).toEqual({ interface: "AudioContext", member: "createGain" });
    // The factory's own standard is not blocked, so no replace entry names it.
    expect(
      plan.entries.some((e) => e.feature.member === "createGain"),
    ).toBe(false);
  });

  it("empty blocked set compiles to an empty plan", () => {
    const policy = parsePolicy('{"name": "empty", "blocked": []}');
    expect(compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR).entries).toEqual([]);
  });

  it("rejects a policy blocking a standard absent from the catalog", () => {
    const policy = parsePolicy('{"name": "x", "blocked": ["NOPE"]}');
    expect(() => compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR)).toThrow(PlanError);
  });
});

describe("plan coverage", () => {
  it("covers exactly the features of blocked, non-whitelisted standards", () => {
    const policy = parsePolicy(read("policies/conservative.json"));
    const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR);
    const expected = new Set(
      wireCatalog.features
        .filter((f) => policy.blocked.has(f.standard_abbrev))
        .map((f) => featureKey(f)),
    );
    const planned = new Set(plan.entries.map((e) => featureKey(e.feature)));
    expect(planned).toEqual(expected);
    expect(plan.entries.length).toBe(expected.size);
  });

  it("whitelisted standards never contribute features, under random policies", () => {
    const rand = mulberry32(0xfee1);
    const abbrevs = wireCatalog.standards.map((s) => s.abbrev);
    const whitelisted = new Set(["WCR", "GEO"]);
    for (let i = 0; i < 50; i++) {
      const blocked = abbrevs.filter((a) => !whitelisted.has(a) && rand() < 0.3);
      const policy = parsePolicy({
        name: `random-${i}`,
        blocked,
        whitelist: [...whitelisted],
        per_origin: { "https://a.example": { block: ["WCR", "GEO"] } },
      });
      const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR, "https://a.example");
      for (const entry of plan.entries) {
        expect(whitelisted.has(entry.standard)).toBe(false);
      }
    }
  });

  it("per-origin allow removes exactly that standard's features for that origin", () => {
    const policy = parsePolicy({
      name: "origin",
      blocked: ["WEBGL", "SVG", "WEBA"],
      per_origin: { "https://media.example": { allow: ["WEBA"] } },
    });
    const globalPlan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR);
    const mediaPlan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR, "https://media.example");
    const otherPlan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR, "https://other.example");

    const keys = (entries: { feature: any }[]) => new Set(entries.map((e) => featureKey(e.feature)));
    const globalKeys = keys(globalPlan.entries);
    const mediaKeys = keys(mediaPlan.entries);
    expect(keys(otherPlan.entries)).toEqual(globalKeys);

    const removed = [...globalKeys].filter((k) => !mediaKeys.has(k));
    const webaKeys = wireCatalog.features
      .filter((f) => f.standard_abbrev === "WEBA")
      .map((f) => featureKey(f));
    expect(new Set(removed)).toEqual(new Set(webaKeys));
    expect([...mediaKeys].every((k) => globalKeys.has(k))).toBe(true);
  });

  it("carries debug and origin through for logging", () => {
    const policy = parsePolicy(read("policies/per_origin_demo.json"));
    const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR, "https://media.example");
    expect(plan.debug).toBe(true);
    expect(plan.origin).toBe("https://media.example");
  });
});
