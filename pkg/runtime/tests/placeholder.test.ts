import { describe, expect, it } from "vitest";

import { makePlaceholder } from "../src/placeholder.js";

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

// Names carved out for coercion and async-absorption semantics.
const RESERVED = new Set(["toString", "valueOf", "then"]);

describe("placeholder closure", () => {
  it("any chain of call/get/index operations yields the placeholder", () => {
    const placeholder = makePlaceholder();
    const rand = mulberry32(0xa11ce);
    for (let chain = 0; chain < 1000; chain++) {
      let value: any = placeholder;
      const depth = 1 + Math.floor(rand() * 8);
      for (let step = 0; step < depth; step++) {
        const op = Math.floor(rand() * 3);
        if (op === 0) {
          const argCount = Math.floor(rand() * 3);
          value = value(...Array.from({ length: argCount }, () => Math.floor(rand() * 100)));
        } else if (op === 1) {
          let name = `m${Math.floor(rand() * 50)}`;
          if (RESERVED.has(name)) name = `${name}_x`;
          value = value[name];
        } else {
          value = value[Math.floor(rand() * 10)];
        }
        expect(value).toBe(placeholder);
      }
    }
  });

  it("spec example chain: placeholder.a.b.c(1,2)(3)[0]", () => {
    const p = makePlaceholder();
    expect(p.a.b.c(1, 2)(3)[0]).toBe(p);
  });

  it("construction returns the placeholder", () => {
    const p = makePlaceholder();
    expect(new p()).toBe(p);
    expect(new (p.a.b)()).toBe(p);
  });
});

describe("placeholder coercion", () => {
  it("numeric context coerces to 0", () => {
    const p = makePlaceholder();
    expect(Number(p)).toBe(0);
    expect(+p).toBe(0);
    expect(p * 3).toBe(0);
  });

  it("placeholder + 1 === 1", () => {
    const p = makePlaceholder();
    expect(p + 1).toBe(1);
  });

  it("string context coerces to empty string", () => {
    const p = makePlaceholder();
    expect(String(p)).toBe("");
    expect(`${p}`).toBe("");
    expect("".concat(p as any)).toBe("");
  });

  it("is undefined-equivalent in bare serialization contexts", () => {
    const p = makePlaceholder();
    expect(JSON.stringify({ value: p })).toBe("{}");
    expect(JSON.stringify(p)).toBeUndefined();
  });

  it("absorbs await without hanging", async () => {
    const p = makePlaceholder();
    expect(await p).toBe(p);
  });
});

describe("placeholder writes, deletes, enumeration", () => {
  it("property writes are accepted and discarded", () => {
    const p = makePlaceholder();
    expect(() => {
      p.someProp = 42;
    }).not.toThrow();
    expect(p.someProp).toBe(p);
  });

  it("deletion succeeds vacuously", () => {
    const p = makePlaceholder();
    expect(delete p.anything).toBe(true);
  });

  it("enumeration yields no keys", () => {
    const p = makePlaceholder();
    expect(Object.keys(p)).toEqual([]);
    const seen: string[] = [];
    for (const key in p) seen.push(key);
    expect(seen).toEqual([]);
  });

  it("iteration is empty instead of throwing", () => {
    const p = makePlaceholder();
    expect([...p]).toEqual([]);
  });
});

describe("access callback", () => {
  it("reports boundary operations and funnels results to the shared instance", () => {
    const shared = makePlaceholder();
    const accesses: string[] = [];
    const trap = makePlaceholder((a) => accesses.push(a.operation), shared);
    expect(trap("x")).toBe(shared);
    expect(trap.someMember).toBe(shared);
    trap.other = 1;
    expect(accesses).toEqual(["call", "get", "set"]);
  });
});
