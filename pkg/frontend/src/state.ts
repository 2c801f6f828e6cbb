import type { CheckDocument, InverseDocument, Pair, SpaceDocument } from "./types.js";

export type QueryKind = "space" | "check" | "inverse";

/**
 * Hands out per-kind request tokens and lets only the newest one write back.
 * Applied tokens are strictly increasing, so a slow response from an older
 * request can never clobber a newer result.
 */
export class RequestGate {
  private issued: Record<QueryKind, number> = { space: 0, check: 0, inverse: 0 };
  private applied: Record<QueryKind, number> = { space: 0, check: 0, inverse: 0 };

  issue(kind: QueryKind): number {
    return ++this.issued[kind];
  }

  /** True (and records the token) only if this is still the newest request. */
  tryApply(kind: QueryKind, token: number): boolean {
    if (token !== this.issued[kind] || token <= this.applied[kind]) {
      return false;
    }
    this.applied[kind] = token;
    return true;
  }

  inFlight(kind: QueryKind): boolean {
    return this.issued[kind] > this.applied[kind];
  }
}

export interface ExplorerState {
  physical: Pair;
  probe: Pair | null;
  inverseTarget: Pair | null;
  space: SpaceDocument | null;
  check: CheckDocument | null;
  inverse: InverseDocument | null;
  absoluteUnits: boolean;
}

export function initialState(): ExplorerState {
  return {
    physical: { size: 6, angle: 8 },
    probe: null,
    inverseTarget: null,
    space: null,
    check: null,
    inverse: null,
    absoluteUnits: false,
  };
}
