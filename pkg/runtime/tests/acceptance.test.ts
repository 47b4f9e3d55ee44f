/** Release criteria for the enforcement runtime, one test per criterion. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { FeatureCatalog, featureKey, parseCatalog } from "../src/catalog.js";
import {
  buildEnvironment,
  figureOneProgram,
  figureTwoProgram,
  HARNESS_DESCRIPTOR,
} from "../src/harness.js";
import { install } from "../src/install.js";
import { compilePlan } from "../src/plan.js";
import { parsePolicy } from "../src/policy.js";
import { makePlaceholder } from "../src/placeholder.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");
const read = (rel: string) => readFileSync(join(FIXTURES, rel), "utf8");

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

describe("acceptance: graceful degradation", () => {
  it("figure-one completes with its success signal and figure-two suppresses the set", () => {
    const started = performance.now();

    const env1 = buildEnvironment();
    const dom1 = parsePolicy('{"name": "fig1", "blocked": ["DOM1"]}');
    install(compilePlan(dom1, parseCatalog(read("wire/catalog.json")), HARNESS_DESCRIPTOR), env1, HARNESS_DESCRIPTOR);
    expect(() => figureOneProgram(env1)).not.toThrow();
    expect(env1.__outputs__).toEqual(["alert:Success!"]);

    const env2 = buildEnvironment();
    const audioCatalog: FeatureCatalog = {
      standards: [
        { name: "Web Audio API", abbrev: "WEBA" },
        { name: "Audio Context Core", abbrev: "AC" },
      ],
      features: [
        { interface: "GainNode", member: "channelCount", kind: "attribute_get", standard_abbrev: "WEBA" },
        { interface: "GainNode", member: "channelCount", kind: "attribute_set", standard_abbrev: "WEBA" },
        { interface: "AudioContext", member: "createGain", kind: "method", standard_abbrev: "AC" },
      ],
    };
    const weba = parsePolicy('{"name": "fig2", "blocked": ["WEBA"]}');
    install(compilePlan(weba, audioCatalog, HARNESS_DESCRIPTOR), env2, HARNESS_DESCRIPTOR);
    const { gainNode } = figureTwoProgram(env2);
    expect(gainNode.gain.value).toBe(1); // unblocked operation forwards
    expect(env2.__gainNodes__[0].channelCount).toBe(2); // set never landed

    expect(performance.now() - started).toBeLessThan(1000);
  });
});

describe("acceptance: placeholder closure", () => {
  it("1000 random call/get/index chains stay on the placeholder; coercions are neutral", () => {
    const placeholder = makePlaceholder();
    const rand = mulberry32(0xc10c);
    const reserved = new Set(["toString", "valueOf", "then"]);
    for (let chain = 0; chain < 1000; chain++) {
      let value: any = placeholder;
      const depth = 1 + Math.floor(rand() * 8);
      for (let step = 0; step < depth; step++) {
        const op = Math.floor(rand() * 3);
        if (op === 0) value = value(step, "arg");
        else if (op === 1) {
          let name = `prop${Math.floor(rand() * 40)}`;
          if (reserved.has(name)) name += "_x";
          value = value[name];
        } else value = value[Math.floor(rand() * 12)];
      }
      expect(value).toBe(placeholder);
    }
    expect(Number(placeholder)).toBe(0);
    expect(placeholder + 1).toBe(1);
    expect(String(placeholder)).toBe("");
    expect("".concat(placeholder as any)).toBe("");
    expect(JSON.stringify({ v: placeholder })).toBe("{}"); // undefined-equivalent
  });
});

describe("acceptance: wire contract round trip", () => {
  it("an analyzer-serialized policy compiles to a plan covering exactly the blocked features", () => {
    const catalog = parseCatalog(read("wire/catalog.json"));
    for (const preset of ["conservative", "aggressive"]) {
      const policy = parsePolicy(read(`policies/${preset}.json`));
      const plan = compilePlan(policy, catalog, HARNESS_DESCRIPTOR);
      const expected = new Set(
        catalog.features
          .filter((f) => policy.blocked.has(f.standard_abbrev) && !policy.whitelist.has(f.standard_abbrev))
          .map((f) => featureKey(f)),
      );
      expect(new Set(plan.entries.map((e) => featureKey(e.feature)))).toEqual(expected);
      expect(plan.entries.length).toBe(expected.size);
      for (const entry of plan.entries) {
        expect(policy.whitelist.has(entry.standard)).toBe(false);
      }
    }
  });
});
