import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { ReportPayload } from "../src/api.js";

const HERE = dirname(fileURLToPath(import.meta.url));

export function fixtureReport(): ReportPayload {
  const raw = readFileSync(join(HERE, "fixtures", "report.json"), "utf-8");
  return JSON.parse(raw) as ReportPayload;
}

export function ideaTextOne(): string {
  return readFileSync(join(HERE, "fixtures", "idea_text_1.txt"), "utf-8");
}

/** Key-order-insensitive byte form: JSON with keys sorted, no spacing. */
export function canonicalJson(value: unknown): string {
  return JSON.stringify(sortKeys(value));
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortKeys);
  }
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as Record<string, unknown>).sort()) {
      out[key] = sortKeys((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  return value;
}
