/** Debug access log: JSON-lines records on a configurable sink. */

import { FeatureRef } from "./catalog.js";
import { Strategy } from "./plan.js";

export type AccessOutcome = "blocked_call" | "blocked_get" | "suppressed_set";

export interface AccessLogEntry {
  timestamp: number;
  origin: string | null;
  feature: FeatureRef;
  strategy: Strategy;
  outcome: AccessOutcome;
}

export type LogSink = (entry: AccessLogEntry) => void;

/** Adapt a line writer (stdout, file append, buffer) into a sink. */
export function jsonLinesSink(write: (line: string) => void): LogSink {
  return (entry) => write(JSON.stringify(entry));
}

export function collectingSink(entries: AccessLogEntry[]): LogSink {
  return (entry) => entries.push(entry);
}
