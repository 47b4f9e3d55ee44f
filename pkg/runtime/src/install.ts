/**
 * Plan installation: rewrite an environment root so every planned feature
 * is intercepted before any page script runs.
 *
 * Replaced members are the placeholder itself (or, in debug mode, a
 * logging trap whose every operation funnels back to the one shared
 * placeholder, so identity comparisons between two blocked results still
 * succeed).  Singleton attribute setters become discarding accessors.
 * Factories whose products carry suppressed setters are wrapped so the
 * genuine instance is produced, blocked reads return the placeholder,
 * suppressed writes are discarded, and everything else forwards.
 *
 * A factory that is itself blocked is replaced outright (fail-closed: a
 * blocked factory must not run genuine construction); wrap entries naming
 * it are subsumed by the replacement.
 */

import { AccessOutcome, LogSink } from "./log.js";
import { EnvironmentDescriptor, InterpositionPlan, PlanEntry } from "./plan.js";
import { makePlaceholder } from "./placeholder.js";

export class InstallError extends Error {}

export interface InstallOptions {
  /** Fatal on unresolvable paths when true; skip-and-record otherwise. */
  strict?: boolean;
  sink?: LogSink;
  now?: () => number;
}

export interface InstalledHandle {
  placeholder: any;
  installedFeatures: number;
  skipped: PlanEntry[];
}

const INSTALLED = Symbol.for("surface-firewall-runtime.installed");

interface MemberPlan {
  get?: PlanEntry;
  set?: PlanEntry;
  callable?: PlanEntry; // method or constructor
}

export function install(
  plan: InterpositionPlan,
  root: Record<string, any>,
  descriptor: EnvironmentDescriptor,
  options: InstallOptions = {},
): InstalledHandle {
  const existing = (root as any)[INSTALLED];
  if (existing) return existing as InstalledHandle;

  const strict = options.strict ?? false;
  const now = options.now ?? Date.now;
  const shared = makePlaceholder();
  const skipped: PlanEntry[] = [];

  const emit = (entry: PlanEntry, outcome: AccessOutcome) => {
    if (plan.debug && options.sink) {
      options.sink({
        timestamp: now(),
        origin: plan.origin,
        feature: entry.feature,
        strategy: entry.strategy,
        outcome,
      });
    }
  };

  const trapFor = (entry: PlanEntry): any => {
    if (!plan.debug) return shared;
    return makePlaceholder((access) => {
      const outcome: AccessOutcome =
        access.operation === "get"
          ? "blocked_get"
          : access.operation === "set"
            ? "suppressed_set"
            : "blocked_call";
      emit(entry, outcome);
    }, shared);
  };

  // Group entries by interface and member.
  const byInterface = new Map<string, Map<string, MemberPlan>>();
  for (const entry of plan.entries) {
    const members =
      byInterface.get(entry.feature.interface) ??
      byInterface.set(entry.feature.interface, new Map()).get(entry.feature.interface)!;
    const member = members.get(entry.feature.member) ?? {};
    if (entry.feature.kind === "attribute_get") member.get = entry;
    else if (entry.feature.kind === "attribute_set") member.set = entry;
    else member.callable = entry;
    members.set(entry.feature.member, member);
  }

  const blockedCallables = new Set(
    plan.entries
      .filter((e) => e.feature.kind === "method" || e.feature.kind === "constructor")
      .map((e) => `${e.feature.interface}.${e.feature.member}`),
  );
  const producedBy = new Map(descriptor.factories.map((f) => [f.produces, f]));

  let installedFeatures = 0;
  const wrapJobs: {
    productInterface: string;
    members: Map<string, MemberPlan>;
  }[] = [];

  const skipInterface = (iface: string, members: Map<string, MemberPlan>) => {
    const entries = [...members.values()].flatMap((m) =>
      [m.get, m.set, m.callable].filter((e): e is PlanEntry => e !== undefined),
    );
    if (strict) {
      throw new InstallError(`no environment path for interface ${iface}`);
    }
    skipped.push(...entries);
  };

  for (const [iface, members] of [...byInterface.entries()].sort()) {
    const singletonPath = descriptor.singletons[iface];
    if (singletonPath !== undefined) {
      const target = resolvePath(root, singletonPath);
      if (target == null) {
        skipInterface(iface, members);
        continue;
      }
      installedFeatures += patchMembers(target, members, trapFor, emit, shared);
      continue;
    }
    if (producedBy.has(iface)) {
      wrapJobs.push({ productInterface: iface, members });
      continue;
    }
    const globalPath = descriptor.globals[iface];
    if (globalPath !== undefined) {
      const located = locate(root, globalPath);
      const ctor = located?.parent?.[located.key];
      if (located == null || typeof ctor !== "function") {
        skipInterface(iface, members);
        continue;
      }
      const instanceMembers = new Map(
        [...members.entries()].filter(([name]) => name !== "constructor"),
      );
      installedFeatures += patchMembers(ctor.prototype, instanceMembers, trapFor, emit, shared);
      const ctorPlan = members.get("constructor");
      if (ctorPlan?.callable) {
        located.parent[located.key] = trapFor(ctorPlan.callable);
        installedFeatures += 1;
      }
      continue;
    }
    skipInterface(iface, members);
  }

  // Factory wrapping runs after member replacement so a replaced factory
  // is visible and its wrap job can be subsumed.
  for (const job of wrapJobs) {
    const factory = producedBy.get(job.productInterface)!;
    if (blockedCallables.has(`${factory.interface}.${factory.member}`)) {
      // Fail-closed: the factory itself is blocked and already replaced.
      installedFeatures += countEntries(job.members);
      continue;
    }
    const owner = factoryOwner(root, descriptor, factory.interface);
    const original = owner?.[factory.member];
    if (owner == null || typeof original !== "function") {
      skipInterface(job.productInterface, job.members);
      continue;
    }
    const members = job.members;
    owner[factory.member] = function (this: any, ...args: any[]) {
      const product = original.apply(this, args);
      return wrapProduct(product, members, trapFor, emit);
    };
    installedFeatures += countEntries(members);
  }

  const handle: InstalledHandle = { placeholder: shared, installedFeatures, skipped };
  Object.defineProperty(root, INSTALLED, { value: handle, configurable: true });
  return handle;
}

function countEntries(members: Map<string, MemberPlan>): number {
  let count = 0;
  for (const member of members.values()) {
    count += [member.get, member.set, member.callable].filter(Boolean).length;
  }
  return count;
}

function resolvePath(root: Record<string, any>, path: string): any {
  let current: any = root;
  for (const part of path.split(".")) {
    if (current == null) return undefined;
    current = current[part];
  }
  return current;
}

function locate(
  root: Record<string, any>,
  path: string,
): { parent: Record<string, any>; key: string } | undefined {
  const parts = path.split(".");
  let parent: any = root;
  for (const part of parts.slice(0, -1)) {
    if (parent == null) return undefined;
    parent = parent[part];
  }
  const key = parts[parts.length - 1];
  if (parent == null || !(key in parent)) return undefined;
  return { parent, key };
}

function factoryOwner(
  root: Record<string, any>,
  descriptor: EnvironmentDescriptor,
  iface: string,
): any {
  const singletonPath = descriptor.singletons[iface];
  if (singletonPath !== undefined) return resolvePath(root, singletonPath);
  const globalPath = descriptor.globals[iface];
  if (globalPath !== undefined) {
    const ctor = resolvePath(root, globalPath);
    return typeof ctor === "function" ? ctor.prototype : undefined;
  }
  return undefined;
}

function patchMembers(
  target: any,
  members: Map<string, MemberPlan>,
  trapFor: (entry: PlanEntry) => any,
  emit: (entry: PlanEntry, outcome: AccessOutcome) => void,
  shared: any,
): number {
  let count = 0;
  for (const [name, member] of [...members.entries()].sort()) {
    if (member.callable) {
      Object.defineProperty(target, name, {
        value: trapFor(member.callable),
        writable: true,
        configurable: true,
      });
      count += 1;
    }
    if (member.get || member.set) {
      const getEntry = member.get;
      const setEntry = member.set;
      const trap = getEntry ? trapFor(getEntry) : shared;
      Object.defineProperty(target, name, {
        configurable: true,
        enumerable: true,
        get() {
          if (getEntry) emit(getEntry, "blocked_get");
          return trap;
        },
        set(_value: unknown) {
          if (setEntry) emit(setEntry, "suppressed_set");
          // Discarded either way: with the getter blocked there is no
          // genuine slot left to write through to.
        },
      });
      count += (getEntry ? 1 : 0) + (setEntry ? 1 : 0);
    }
  }
  return count;
}

function wrapProduct(
  product: any,
  members: Map<string, MemberPlan>,
  trapFor: (entry: PlanEntry) => any,
  emit: (entry: PlanEntry, outcome: AccessOutcome) => void,
): any {
  if (product === null || (typeof product !== "object" && typeof product !== "function")) {
    return product;
  }
  return new Proxy(product, {
    get(target, prop, _receiver) {
      const name = typeof prop === "string" ? prop : undefined;
      const member = name !== undefined ? members.get(name) : undefined;
      const blocked = member?.get ?? member?.callable;
      if (blocked) {
        emit(blocked, "blocked_get");
        return trapFor(blocked);
      }
      const value = Reflect.get(target, prop);
      return typeof value === "function" ? value.bind(target) : value;
    },
    set(target, prop, value) {
      const name = typeof prop === "string" ? prop : undefined;
      const member = name !== undefined ? members.get(name) : undefined;
      if (member?.set) {
        emit(member.set, "suppressed_set");
        return true;
      }
      return Reflect.set(target, prop, value);
    },
  });
}
