/**
 * Headless harness: a synthetic environment with just enough surface to
 * exercise the interposition strategies (a document singleton, a console,
 * and an audio graph built through a factory method), plus the two
 * reference programs the degradation contract is validated against.
 */

import { EnvironmentDescriptor } from "./plan.js";

export interface HarnessElement {
  tagName: string;
  index: number;
  attributes: Record<string, string>;
  setAttribute(name: string, value: string): void;
  getAttribute(name: string): string | null;
}

function makeElement(tag: string, index: number): HarnessElement {
  return {
    tagName: tag.toUpperCase(),
    index,
    attributes: {},
    setAttribute(name: string, value: string) {
      this.attributes[name] = value;
    },
    getAttribute(name: string) {
      return this.attributes[name] ?? null;
    },
  };
}

export class HarnessGainNode {
  channelCount = 2;
  gain = { value: 1 };
  connections: unknown[] = [];
  connect(node: unknown): unknown {
    this.connections.push(node);
    return node;
  }
}

export class HarnessAudioContext {
  destination = { tag: "destination" };
  sampleRate = 44100;
  createGain(): HarnessGainNode {
    return new HarnessGainNode();
  }
}

export interface HarnessEnvironment {
  document: {
    title: string;
    getElementsByTagName(tag: string): HarnessElement[];
    createElement(tag: string): HarnessElement;
  };
  console: { log(...args: unknown[]): void };
  AudioContext: typeof HarnessAudioContext;
  GainNode: typeof HarnessGainNode;
  alert(message: string): void;
  __outputs__: string[];
  __elements__: HarnessElement[];
  /** Genuine instances, recorded at construction, before any wrapping. */
  __gainNodes__: HarnessGainNode[];
  [key: string]: any;
}

export function buildEnvironment(): HarnessEnvironment {
  const outputs: string[] = [];
  const elements = Array.from({ length: 6 }, (_, i) => makeElement("p", i));
  const gainNodes: HarnessGainNode[] = [];
  class GainNode extends HarnessGainNode {
    constructor() {
      super();
      gainNodes.push(this);
    }
  }
  class AudioContext extends HarnessAudioContext {
    override createGain(): HarnessGainNode {
      return new GainNode();
    }
  }
  return {
    document: {
      title: "harness",
      getElementsByTagName(tag: string) {
        return tag === "p" ? elements : [];
      },
      createElement(tag: string) {
        return makeElement(tag, -1);
      },
    },
    console: {
      log(...args: unknown[]) {
        outputs.push(`log:${args.join(" ")}`);
      },
    },
    AudioContext,
    GainNode,
    alert(message: string) {
      outputs.push(`alert:${message}`);
    },
    __outputs__: outputs,
    __elements__: elements,
    __gainNodes__: gainNodes,
  };
}

export const HARNESS_DESCRIPTOR: EnvironmentDescriptor = {
  singletons: {
    Document: "document",
    Console: "console",
  },
  globals: {
    AudioContext: "AudioContext",
    GainNode: "GainNode",
  },
  factories: [{ interface: "AudioContext", member: "createGain", produces: "GainNode" }],
};

/** Look up paragraphs, restyle the fifth, then signal success. */
export function figureOneProgram(env: HarnessEnvironment): void {
  let ps: any, p5: any;
  ps = env.document.getElementsByTagName("p");
  p5 = ps[4];
  p5.setAttribute("style", "color: red");
  env.alert("Success!");
}

/** Build an audio graph and set a property on the factory-produced node. */
export function figureTwoProgram(env: HarnessEnvironment): { context: any; gainNode: any } {
  const context = new env.AudioContext();
  const gainNode = context.createGain();
  gainNode.channelCount = 1;
  return { context, gainNode };
}

/** A small behavioral suite used by the non-interference check. */
export function exerciseEnvironment(env: HarnessEnvironment): string[] {
  figureOneProgram(env);
  const { gainNode } = figureTwoProgram(env);
  env.console.log("channels", gainNode.channelCount);
  env.console.log("gain", gainNode.gain.value);
  env.console.log("styled", env.__elements__[4].getAttribute("style"));
  env.console.log("title", env.document.title);
  return env.__outputs__;
}
