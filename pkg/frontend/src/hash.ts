import type { Pair } from "./types.js";

export interface HashState {
  physical: Pair;
  probe: Pair | null;
}

// #sp=6&ap=8 or #sp=6&ap=8&sv=6.5&av=10 — same parameter names as the API.
export function encodeHash(state: HashState): string {
  let hash = `#sp=${state.physical.size}&ap=${state.physical.angle}`;
  if (state.probe !== null) {
    hash += `&sv=${state.probe.size}&av=${state.probe.angle}`;
  }
  return hash;
}

// Number(null) and Number("") are both 0, so missing or empty parameters
// have to be rejected before coercion.
function numberParam(params: URLSearchParams, name: string): number | null {
  const raw = params.get(name);
  if (raw === null || raw.trim() === "") return null;
  const value = Number(raw);
  return Number.isFinite(value) ? value : null;
}

export function decodeHash(hash: string): HashState | null {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const sp = numberParam(params, "sp");
  const ap = numberParam(params, "ap");
  if (sp === null || ap === null) {
    return null;
  }
  const sv = numberParam(params, "sv");
  const av = numberParam(params, "av");
  const probe: Pair | null = sv !== null && av !== null ? { size: sv, angle: av } : null;
  return { physical: { size: sp, angle: ap }, probe };
}
