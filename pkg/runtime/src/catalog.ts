/** Feature-catalog export consumed verbatim from the analyzer. */

export type MemberKind = "method" | "attribute_get" | "attribute_set" | "constructor";

export interface FeatureRef {
  interface: string;
  member: string;
  kind: MemberKind;
}

export interface CatalogStandard {
  name: string;
  abbrev: string;
}

export interface CatalogFeature extends FeatureRef {
  standard_abbrev: string;
}

export interface FeatureCatalog {
  standards: CatalogStandard[];
  features: CatalogFeature[];
}

const MEMBER_KINDS: ReadonlySet<string> = new Set([
  "method",
  "attribute_get",
  "attribute_set",
  "constructor",
]);

export class CatalogError extends Error {}

export function parseCatalog(doc: unknown): FeatureCatalog {
  const obj = typeof doc === "string" ? JSON.parse(doc) : doc;
  if (typeof obj !== "object" || obj === null) {
    throw new CatalogError("catalog must be a JSON object");
  }
  const { standards, features } = obj as Record<string, unknown>;
  if (!Array.isArray(standards) || !Array.isArray(features)) {
    throw new CatalogError("catalog requires 'standards' and 'features' arrays");
  }
  const known = new Set<string>();
  for (const entry of standards) {
    const { name, abbrev } = entry as Record<string, unknown>;
    if (typeof name !== "string" || typeof abbrev !== "string" || !name || !abbrev) {
      throw new CatalogError(`malformed standard entry: ${JSON.stringify(entry)}`);
    }
    if (known.has(abbrev)) throw new CatalogError(`duplicate standard ${abbrev}`);
    known.add(abbrev);
  }
  for (const entry of features) {
    const f = entry as Record<string, unknown>;
    if (
      typeof f.interface !== "string" ||
      typeof f.member !== "string" ||
      typeof f.standard_abbrev !== "string" ||
      !MEMBER_KINDS.has(String(f.kind))
    ) {
      throw new CatalogError(`malformed feature entry: ${JSON.stringify(entry)}`);
    }
    if (!known.has(f.standard_abbrev)) {
      throw new CatalogError(`feature references unknown standard ${f.standard_abbrev}`);
    }
  }
  return obj as FeatureCatalog;
}

export function featureKey(feature: FeatureRef): string {
  return `${feature.interface}.${feature.member}#${feature.kind}`;
}
