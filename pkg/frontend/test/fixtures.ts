import { readFileSync } from "node:fs";
import { resolve } from "node:path";

/**
 * Raw fixture text. The files are verbatim CLI output, byte-identical to the
 * API responses, so tests compare against real documents.
 */
export function fixtureText(name: string): string {
  // vitest runs with the package root as cwd; import.meta.url is not a
  // file: URL under the happy-dom environment
  return readFileSync(resolve(process.cwd(), "test", "fixtures", name), "utf8");
}
