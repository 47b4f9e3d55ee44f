/**
 * Blocking-policy wire format (the bit-exact contract with the analyzer):
 *
 *   {"version": 1, "name": ..., "blocked": [...], "whitelist": [...],
 *    "per_origin": {"<origin-pattern>": {"allow": [...], "block": [...]}},
 *    "debug": false}
 *
 * Unknown fields are rejected; documents with a higher major version are
 * refused.  Origin patterns are an exact scheme://host[:port] or a *.host
 * suffix.  The whitelist can never be blocked, globally or per origin.
 */

export class PolicyError extends Error {}

export interface OriginRule {
  allow: ReadonlySet<string>;
  block: ReadonlySet<string>;
}

export interface BlockPolicy {
  version: number;
  name: string;
  blocked: ReadonlySet<string>;
  whitelist: ReadonlySet<string>;
  perOrigin: ReadonlyMap<string, OriginRule>;
  debug: boolean;
}

export const POLICY_VERSION = 1;
export const DEFAULT_WHITELIST: readonly string[] = ["WCR"];

const POLICY_FIELDS = new Set(["version", "name", "blocked", "whitelist", "per_origin", "debug"]);
const ORIGIN_FIELDS = new Set(["allow", "block"]);
const EXACT_ORIGIN = /^[a-z][a-z0-9+.-]*:\/\/[A-Za-z0-9._-]+(:\d+)?$/;
const SUFFIX_ORIGIN = /^\*\.[A-Za-z0-9._-]+$/;

export function parsePolicy(doc: unknown): BlockPolicy {
  const obj = typeof doc === "string" ? parseJson(doc) : doc;
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new PolicyError("policy document must be a JSON object");
  }
  const record = obj as Record<string, unknown>;
  for (const key of Object.keys(record)) {
    if (!POLICY_FIELDS.has(key)) throw new PolicyError(`unknown policy field: ${key}`);
  }
  const version = record.version ?? POLICY_VERSION;
  if (typeof version !== "number" || !Number.isInteger(version) || version < 1) {
    throw new PolicyError(`invalid version ${String(version)}`);
  }
  if (version > POLICY_VERSION) {
    throw new PolicyError(`unsupported policy version ${version}`);
  }
  if (typeof record.name !== "string" || !("blocked" in record)) {
    throw new PolicyError("policy requires 'name' and 'blocked'");
  }
  const blocked = new Set(stringList(record.blocked, "blocked"));
  const whitelist = new Set(
    "whitelist" in record ? stringList(record.whitelist, "whitelist") : DEFAULT_WHITELIST,
  );
  for (const abbrev of blocked) {
    if (whitelist.has(abbrev)) {
      throw new PolicyError(`blocked and whitelist overlap: ${abbrev}`);
    }
  }
  const perOrigin = new Map<string, OriginRule>();
  const rawOrigins = (record.per_origin ?? {}) as Record<string, unknown>;
  if (typeof rawOrigins !== "object" || rawOrigins === null || Array.isArray(rawOrigins)) {
    throw new PolicyError("per_origin must be an object");
  }
  for (const [pattern, rule] of Object.entries(rawOrigins)) {
    if (!EXACT_ORIGIN.test(pattern) && !SUFFIX_ORIGIN.test(pattern)) {
      throw new PolicyError(`invalid origin pattern ${pattern}`);
    }
    const ruleRecord = rule as Record<string, unknown>;
    for (const key of Object.keys(ruleRecord)) {
      if (!ORIGIN_FIELDS.has(key)) throw new PolicyError(`unknown per-origin field: ${key}`);
    }
    const allow = new Set(stringList(ruleRecord.allow ?? [], "allow"));
    const block = new Set(stringList(ruleRecord.block ?? [], "block"));
    for (const abbrev of allow) {
      if (block.has(abbrev)) {
        throw new PolicyError(`origin rule both allows and blocks ${abbrev}`);
      }
    }
    perOrigin.set(pattern, { allow, block });
  }
  return {
    version,
    name: record.name,
    blocked,
    whitelist,
    perOrigin,
    debug: Boolean(record.debug ?? false),
  };
}

function parseJson(text: string): unknown {
  try {
    return JSON.parse(text);
  } catch (error) {
    throw new PolicyError(`policy is not valid JSON: ${String(error)}`);
  }
}

function stringList(value: unknown, label: string): string[] {
  if (!Array.isArray(value) || !value.every((v) => typeof v === "string")) {
    throw new PolicyError(`${label} must be a list of strings`);
  }
  return value as string[];
}

export function originMatches(pattern: string, origin: string): boolean {
  if (pattern === origin) return true;
  if (pattern.startsWith("*.")) {
    const host = origin.split("://").pop()!.split(":")[0];
    const suffix = pattern.slice(2);
    return host === suffix || host.endsWith("." + suffix);
  }
  return false;
}

/** Effective blocked set after per-origin overrides; whitelist always wins. */
export function blockedForOrigin(policy: BlockPolicy, origin?: string | null): Set<string> {
  const blocked = new Set(policy.blocked);
  if (origin) {
    for (const [pattern, rule] of policy.perOrigin) {
      if (originMatches(pattern, origin)) {
        for (const abbrev of rule.block) blocked.add(abbrev);
        for (const abbrev of rule.allow) blocked.delete(abbrev);
      }
    }
  }
  for (const abbrev of policy.whitelist) blocked.delete(abbrev);
  return blocked;
}
