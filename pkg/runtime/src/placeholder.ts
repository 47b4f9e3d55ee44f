/**
 * The intercepting placeholder: a proxy that can stand in for any value a
 * blocked feature would have produced, so downstream page code keeps
 * running instead of throwing.
 *
 * Behavioral contract:
 *  - calling it (or `new`-ing it) returns the placeholder;
 *  - reading any property, including numeric indexing, returns the
 *    placeholder;
 *  - property writes are accepted and discarded;
 *  - coercions yield neutral values: 0 in numeric and arithmetic-default
 *    contexts, "" in string contexts; under JSON serialization the
 *    placeholder vanishes like `undefined` (it is function-valued);
 *  - deleting a property succeeds vacuously and enumeration yields no keys.
 *
 * Carve-outs (the language forces a choice): `toString`/`valueOf`/
 * `Symbol.toPrimitive` implement the coercion contract rather than
 * returning the placeholder; `then` reads as undefined so `await` settles
 * immediately instead of hanging; `Symbol.iterator` yields an empty
 * iteration.
 */

export type PlaceholderOperation = "call" | "construct" | "get" | "set";

export interface PlaceholderAccess {
  operation: PlaceholderOperation;
  member?: string;
}

export type AccessCallback = (access: PlaceholderAccess) => void;

/* Chained operations funnel back to `result` (the shared placeholder when
 * installed); a feature-level trap passes itself callbacks for logging. */
export function makePlaceholder(onAccess?: AccessCallback, result?: unknown): any {
  const target = function () {} as any;
  const proxy: any = new Proxy(target, {
    apply(_target, _thisArg, _args) {
      onAccess?.({ operation: "call" });
      return result ?? proxy;
    },
    construct(_target, _args) {
      onAccess?.({ operation: "construct" });
      return (result ?? proxy) as object;
    },
    get(_target, prop, _receiver) {
      if (prop === Symbol.toPrimitive) {
        return (hint: string) => (hint === "string" ? "" : 0);
      }
      if (prop === "toString") return () => "";
      if (prop === "valueOf") return () => 0;
      if (prop === "then") return undefined; // non-thenable: await settles
      if (prop === Symbol.iterator) return () => [][Symbol.iterator]();
      onAccess?.({ operation: "get", member: String(prop) });
      return result ?? proxy;
    },
    set(_target, prop, _value) {
      onAccess?.({ operation: "set", member: String(prop) });
      return true;
    },
    deleteProperty(target, prop) {
      const descriptor = Reflect.getOwnPropertyDescriptor(target, prop);
      if (descriptor && !descriptor.configurable) return false;
      return true;
    },
  });
  return proxy;
}

export function isPlaceholderLike(value: unknown): boolean {
  return typeof value === "function" && Number(value) === 0 && String(value) === "";
}
