import type {
  CheckDocument,
  ErrorDocument,
  GridOptions,
  InverseDocument,
  SpaceDocument,
} from "./types.js";

// Narrow view of fetch so tests can hand in a scripted double.
export interface FetchResponse {
  ok: boolean;
  status: number;
  text(): Promise<string>;
}
export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export function spaceUrl(sizeCm: number, angleDeg: number): string {
  return `/api/v1/space?sp=${sizeCm}&ap=${angleDeg}`;
}

export function checkUrl(sp: number, ap: number, sv: number, av: number): string {
  return `/api/v1/check?sp=${sp}&ap=${ap}&sv=${sv}&av=${av}`;
}

export function inverseUrl(sv: number, av: number, grid?: GridOptions): string {
  let url = `/api/v1/inverse?sv=${sv}&av=${av}`;
  if (grid) {
    url +=
      `&size_min=${grid.sizeMin}&size_max=${grid.sizeMax}&size_step=${grid.sizeStep}` +
      `&angle_min=${grid.angleMin}&angle_max=${grid.angleMax}&angle_step=${grid.angleStep}`;
  }
  return url;
}

async function getJson(fetcher: FetchLike, url: string): Promise<unknown> {
  let res: FetchResponse;
  try {
    res = await fetcher(url);
  } catch (err) {
    throw new ApiError(0, "network_error", err instanceof Error ? err.message : String(err));
  }
  const text = await res.text();
  let body: unknown;
  try {
    body = JSON.parse(text);
  } catch {
    throw new ApiError(res.status, "bad_response", "response body was not JSON");
  }
  if (!res.ok) {
    const doc = body as Partial<ErrorDocument>;
    throw new ApiError(
      res.status,
      doc.error?.code ?? "http_error",
      doc.error?.message ?? `request failed with status ${res.status}`,
    );
  }
  return body;
}

function expectKind(doc: unknown, kind: string): void {
  if (typeof doc !== "object" || doc === null || (doc as { kind?: string }).kind !== kind) {
    throw new ApiError(200, "bad_response", `expected a ${kind} document`);
  }
}

export async function fetchSpace(
  fetcher: FetchLike,
  sizeCm: number,
  angleDeg: number,
): Promise<SpaceDocument> {
  const doc = await getJson(fetcher, spaceUrl(sizeCm, angleDeg));
  expectKind(doc, "illusion_space");
  return doc as SpaceDocument;
}

export async function fetchCheck(
  fetcher: FetchLike,
  sp: number,
  ap: number,
  sv: number,
  av: number,
): Promise<CheckDocument> {
  const doc = await getJson(fetcher, checkUrl(sp, ap, sv, av));
  expectKind(doc, "containment_check");
  return doc as CheckDocument;
}

export async function fetchInverse(
  fetcher: FetchLike,
  sv: number,
  av: number,
  grid?: GridOptions,
): Promise<InverseDocument> {
  const doc = await getJson(fetcher, inverseUrl(sv, av, grid));
  expectKind(doc, "inverse_region");
  return doc as InverseDocument;
}
