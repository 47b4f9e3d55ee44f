/**
 * Plan compilation: policy + catalog + environment knowledge -> one entry
 * per blocked feature.
 *
 * Strategy selection: methods, constructors, and attribute getters become
 * `replace_member`; attribute setters on singleton objects become
 * `singleton_setter`; attribute setters on instances produced by an
 * in-scope factory become `wrap_factory_return` and name the factory whose
 * result is wrapped.  Setters with no anchor fall back to `replace_member`
 * (resolution may still skip them at install time in lenient mode).
 */

import { FeatureCatalog, FeatureRef, featureKey, parseCatalog } from "./catalog.js";
import { BlockPolicy, blockedForOrigin } from "./policy.js";

export class PlanError extends Error {}

export type Strategy = "replace_member" | "singleton_setter" | "wrap_factory_return";

export interface FactoryDescriptor {
  interface: string;
  member: string;
  produces: string;
}

export interface EnvironmentDescriptor {
  /** interface -> dotted path of its singleton instance under the root */
  singletons: Record<string, string>;
  /** interface -> dotted path of its constructor under the root */
  globals: Record<string, string>;
  factories: FactoryDescriptor[];
}

export interface PlanEntry {
  feature: FeatureRef;
  standard: string;
  strategy: Strategy;
  factory?: { interface: string; member: string };
}

export interface InterpositionPlan {
  entries: PlanEntry[];
  debug: boolean;
  origin: string | null;
}

export function compilePlan(
  policy: BlockPolicy,
  catalog: FeatureCatalog | string,
  descriptor: EnvironmentDescriptor,
  origin?: string | null,
): InterpositionPlan {
  const parsed = typeof catalog === "string" ? parseCatalog(catalog) : parseCatalog(catalog);
  const blocked = blockedForOrigin(policy, origin);
  const known = new Set(parsed.standards.map((s) => s.abbrev));
  for (const abbrev of blocked) {
    if (!known.has(abbrev)) {
      throw new PlanError(`policy blocks a standard missing from the catalog: ${abbrev}`);
    }
  }

  const producedBy = new Map<string, FactoryDescriptor>();
  for (const factory of descriptor.factories) {
    if (!producedBy.has(factory.produces)) producedBy.set(factory.produces, factory);
  }

  const features = parsed.features
    .filter((f) => blocked.has(f.standard_abbrev))
    .sort((a, b) => featureKey(a).localeCompare(featureKey(b)));

  const seen = new Set<string>();
  const entries: PlanEntry[] = [];
  for (const feature of features) {
    const key = featureKey(feature);
    if (seen.has(key)) {
      throw new PlanError(`catalog lists feature twice: ${key}`);
    }
    seen.add(key);
    const ref: FeatureRef = {
      interface: feature.interface,
      member: feature.member,
      kind: feature.kind,
    };
    if (feature.kind === "attribute_set") {
      if (feature.interface in descriptor.singletons) {
        entries.push({ feature: ref, standard: feature.standard_abbrev, strategy: "singleton_setter" });
        continue;
      }
      const factory = producedBy.get(feature.interface);
      if (factory) {
        entries.push({
          feature: ref,
          standard: feature.standard_abbrev,
          strategy: "wrap_factory_return",
          factory: { interface: factory.interface, member: factory.member },
        });
        continue;
      }
    }
    entries.push({ feature: ref, standard: feature.standard_abbrev, strategy: "replace_member" });
  }
  return { entries, debug: policy.debug, origin: origin ?? null };
}
