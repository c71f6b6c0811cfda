// Shared test utilities: fixture loading and extraction of rendered
// values from view markup. Fixtures are recorded API responses; see
// scripts/record_fixtures.py for how to regenerate them.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

export function loadFixture<T>(name: string): T {
  const path = fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
  return JSON.parse(readFileSync(path, "utf-8")) as T;
}

export function unescapeHtml(text: string): string {
  return text
    .replace(/&#39;/g, "'")
    .replace(/&quot;/g, '"')
    .replace(/&gt;/g, ">")
    .replace(/&lt;/g, "<")
    .replace(/&amp;/g, "&");
}

// Renderers wrap every payload-derived datum in an element whose class
// list starts with "v"; pull those back out as plain strings.
export function extractValues(html: string): string[] {
  const values: string[] = [];
  const pattern = /<(span|a) class="v[^"]*"[^>]*>([^<]*)<\/\1>/g;
  for (const match of html.matchAll(pattern)) {
    values.push(unescapeHtml(match[2]));
  }
  return values;
}

export function extractNodeHrefs(html: string): string[] {
  const ids: string[] = [];
  for (const match of html.matchAll(/href="#\/node\/([^"]*)"/g)) {
    ids.push(unescapeHtml(match[1]));
  }
  return ids;
}

// Every primitive in the payload, stringified, plus the relation names
// keying the neighbors map (they are payload fields the views render).
export function payloadStrings(payload: unknown): Set<string> {
  const out = new Set<string>();
  const walk = (value: unknown): void => {
    if (value === null || value === undefined) return;
    if (Array.isArray(value)) {
      value.forEach(walk);
      return;
    }
    if (typeof value === "object") {
      const record = value as Record<string, unknown>;
      const neighbors = record["neighbors"];
      if (neighbors && typeof neighbors === "object" && !Array.isArray(neighbors)) {
        for (const relation of Object.keys(neighbors)) out.add(relation);
      }
      Object.values(record).forEach(walk);
      return;
    }
    out.add(String(value));
  };
  walk(payload);
  return out;
}
