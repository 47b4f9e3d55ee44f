import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { FeatureCatalog, parseCatalog } from "../src/catalog.js";
import {
  buildEnvironment,
  exerciseEnvironment,
  figureOneProgram,
  figureTwoProgram,
  HARNESS_DESCRIPTOR,
  HarnessGainNode,
} from "../src/harness.js";
import { install, InstallError } from "../src/install.js";
import { AccessLogEntry, collectingSink } from "../src/log.js";
import { compilePlan } from "../src/plan.js";
import { parsePolicy } from "../src/policy.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "fixtures");
const read = (rel: string) => readFileSync(join(FIXTURES, rel), "utf8");
const wireCatalog = parseCatalog(read("wire/catalog.json"));

const AUDIO_CATALOG: FeatureCatalog = {
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

function planFor(blocked: string[], catalog = wireCatalog, debug = false) {
  const policy = parsePolicy({ name: "test", blocked, debug });
  return compilePlan(policy, catalog, HARNESS_DESCRIPTOR);
}

describe("graceful degradation", () => {
  it("figure-one program completes and signals success with its lookup blocked", () => {
    const env = buildEnvironment();
    const handle = install(planFor(["DOM1"]), env, HARNESS_DESCRIPTOR);
    expect(() => figureOneProgram(env)).not.toThrow();
    expect(env.__outputs__).toEqual(["alert:Success!"]);
    // Fail-closed: the blocked lookup never handed out genuine elements.
    for (const element of env.__elements__) {
      expect(element.getAttribute("style")).toBeNull();
    }
    expect(env.document.getElementsByTagName("p")).toBe(handle.placeholder);
  });

  it("control run without a plan styles the genuine element", () => {
    const env = buildEnvironment();
    figureOneProgram(env);
    expect(env.__outputs__).toEqual(["alert:Success!"]);
    expect(env.__elements__[4].getAttribute("style")).toBe("color: red");
  });

  it("figure-two set is suppressed while unblocked operations forward", () => {
    const env = buildEnvironment();
    install(planFor(["WEBA"], AUDIO_CATALOG), env, HARNESS_DESCRIPTOR);
    const { gainNode } = figureTwoProgram(env);

    // The wrapped node is genuine underneath: unblocked reads forward.
    expect(gainNode.gain.value).toBe(1);
    expect(gainNode.connect("speaker")).toBe("speaker");
    // The suppressed set never reached the genuine instance.
    const genuine: HarnessGainNode = env.__gainNodes__[0];
    expect(genuine.channelCount).toBe(2);
    expect(genuine.connections).toEqual(["speaker"]);
    // Blocked read yields only the placeholder, never genuine data.
    expect(Number(gainNode.channelCount)).toBe(0);
    expect(String(gainNode.channelCount)).toBe("");
  });

  it("fully blocked audio standard replaces the factory outright", () => {
    const env = buildEnvironment();
    const catalog: FeatureCatalog = {
      standards: [{ name: "Web Audio API", abbrev: "WEBA" }],
      features: [
        { interface: "AudioContext", member: "constructor", kind: "constructor", standard_abbrev: "WEBA" },
        { interface: "AudioContext", member: "createGain", kind: "method", standard_abbrev: "WEBA" },
        { interface: "GainNode", member: "channelCount", kind: "attribute_get", standard_abbrev: "WEBA" },
        { interface: "GainNode", member: "channelCount", kind: "attribute_set", standard_abbrev: "WEBA" },
      ],
    };
    const handle = install(planFor(["WEBA"], catalog), env, HARNESS_DESCRIPTOR);
    expect(() => figureTwoProgram(env)).not.toThrow();
    const { context, gainNode } = figureTwoProgram(env);
    expect(context).toBe(handle.placeholder);
    expect(gainNode).toBe(handle.placeholder);
  });

  it("singleton title setter becomes a logged no-op", () => {
    const env = buildEnvironment();
    install(planFor(["DOM1"]), env, HARNESS_DESCRIPTOR);
    expect(() => {
      env.document.title = "changed";
    }).not.toThrow();
    expect(Number(env.document.title)).toBe(0);
  });
});

describe("non-interference", () => {
  it("an empty plan leaves harness behavior identical", () => {
    const control = exerciseEnvironment(buildEnvironment());
    const treated = buildEnvironment();
    const handle = install(planFor([]), treated, HARNESS_DESCRIPTOR);
    expect(handle.installedFeatures).toBe(0);
    expect(exerciseEnvironment(treated)).toEqual(control);
  });
});

describe("install mechanics", () => {
  it("is idempotent per environment", () => {
    const env = buildEnvironment();
    const first = install(planFor(["DOM1"]), env, HARNESS_DESCRIPTOR);
    const second = install(planFor(["DOM1", "WEBA"]), env, HARNESS_DESCRIPTOR);
    expect(second).toBe(first);
  });

  it("skips unresolved interfaces in lenient mode and records them", () => {
    const env = buildEnvironment();
    const handle = install(planFor(["SVG"]), env, HARNESS_DESCRIPTOR);
    expect(handle.installedFeatures).toBe(0);
    expect(handle.skipped.length).toBeGreaterThan(0);
  });

  it("is fatal on unresolved interfaces in strict mode", () => {
    const env = buildEnvironment();
    expect(() =>
      install(planFor(["SVG"]), env, HARNESS_DESCRIPTOR, { strict: true }),
    ).toThrow(InstallError);
  });
});

describe("debug access log", () => {
  it("emits JSON-lines-able entries only when the policy sets debug", () => {
    const entries: AccessLogEntry[] = [];
    const env = buildEnvironment();
    const policy = parsePolicy({ name: "dbg", blocked: ["DOM1"], debug: true });
    const plan = compilePlan(policy, wireCatalog, HARNESS_DESCRIPTOR, "https://page.example");
    install(plan, env, HARNESS_DESCRIPTOR, { sink: collectingSink(entries), now: () => 1234 });
    figureOneProgram(env);

    const outcomes = entries.map((e) => e.outcome);
    expect(outcomes).toContain("blocked_call");
    env.document.title = "x";
    expect(entries.at(-1)!.outcome).toBe("suppressed_set");
    expect(entries.at(-1)!.feature).toEqual({
      interface: "Document",
      member: "title",
      kind: "attribute_set",
    });
    expect(entries.every((e) => e.origin === "https://page.example" && e.timestamp === 1234)).toBe(
      true,
    );
  });

  it("stays silent when debug is off", () => {
    const entries: AccessLogEntry[] = [];
    const env = buildEnvironment();
    install(planFor(["DOM1"]), env, HARNESS_DESCRIPTOR, { sink: collectingSink(entries) });
    figureOneProgram(env);
    env.document.title = "x";
    expect(entries).toEqual([]);
  });

  it("blocked results share one placeholder identity when debug is off", () => {
    const env = buildEnvironment();
    const handle = install(planFor(["DOM1"]), env, HARNESS_DESCRIPTOR);
    const a = env.document.getElementsByTagName("p");
    const b = env.document.createElement("div");
    expect(a).toBe(b);
    expect(a).toBe(handle.placeholder);
  });
});
