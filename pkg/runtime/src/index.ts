export {
  makePlaceholder,
  isPlaceholderLike,
  type PlaceholderAccess,
  type PlaceholderOperation,
} from "./placeholder.js";
export {
  parseCatalog,
  featureKey,
  CatalogError,
  type FeatureCatalog,
  type CatalogFeature,
  type CatalogStandard,
  type FeatureRef,
  type MemberKind,
} from "./catalog.js";
export {
  parsePolicy,
  blockedForOrigin,
  originMatches,
  PolicyError,
  POLICY_VERSION,
  DEFAULT_WHITELIST,
  type BlockPolicy,
  type OriginRule,
} from "./policy.js";
export {
  compilePlan,
  PlanError,
  type InterpositionPlan,
  type PlanEntry,
  type Strategy,
  type EnvironmentDescriptor,
  type FactoryDescriptor,
} from "./plan.js";
export { install, InstallError, type InstalledHandle, type InstallOptions } from "./install.js";
export { jsonLinesSink, collectingSink, type AccessLogEntry, type AccessOutcome, type LogSink } from "./log.js";
export {
  buildEnvironment,
  figureOneProgram,
  figureTwoProgram,
  exerciseEnvironment,
  HARNESS_DESCRIPTOR,
  HarnessAudioContext,
  HarnessGainNode,
  type HarnessEnvironment,
  type HarnessElement,
} from "./harness.js";
