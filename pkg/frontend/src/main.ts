import { ApiError, fetchCheck, fetchInverse, fetchSpace } from "./api.js";
import type { FetchLike } from "./api.js";
import { debounce } from "./debounce.js";
import type { Clock, Debounced } from "./debounce.js";
import { decodeHash, encodeHash } from "./hash.js";
import {
  clearBanner,
  renderHeatmap,
  renderMargins,
  renderSpace,
  showBanner,
} from "./render.js";
import { initialState, RequestGate } from "./state.js";
import type { ExplorerState } from "./state.js";
import type { GridOptions } from "./types.js";

export const DEBOUNCE_MS = 120;

// server-side grid defaults; sent only when the user changes a step
const DEFAULT_GRID: GridOptions = {
  sizeMin: 3,
  sizeMax: 9,
  sizeStep: 0.1,
  angleMin: 0,
  angleMax: 16,
  angleStep: 0.25,
};

export interface SetupOptions {
  debounceMs?: number;
  clock?: Clock;
}

export interface ExplorerHandles {
  state: ExplorerState;
  gate: RequestGate;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return `${err.code}: ${err.message}`;
  }
  return err instanceof Error ? err.message : String(err);
}

/**
 * Wires the explorer controls to the API. All responses pass through a
 * request gate, so a late response from an abandoned query never overwrites
 * newer state; on errors the banner appears and the previous view stays.
 */
export function setupExplorer(
  docRoot: Document,
  fetcher: FetchLike,
  opts: SetupOptions = {},
): ExplorerHandles {
  const ms = opts.debounceMs ?? DEBOUNCE_MS;
  const state = initialState();
  const gate = new RequestGate();

  const byId = <T extends HTMLElement>(id: string): T => {
    const node = docRoot.getElementById(id);
    if (node === null) throw new Error(`explorer markup is missing #${id}`);
    return node as T;
  };

  const sizeSlider = byId<HTMLInputElement>("size-slider");
  const angleSlider = byId<HTMLInputElement>("angle-slider");
  const sizeValue = byId<HTMLElement>("size-value");
  const angleValue = byId<HTMLElement>("angle-value");
  const absoluteToggle = byId<HTMLInputElement>("absolute-toggle");
  const probeSize = byId<HTMLInputElement>("probe-size");
  const probeAngle = byId<HTMLInputElement>("probe-angle");
  const inverseSize = byId<HTMLInputElement>("inverse-size");
  const inverseAngle = byId<HTMLInputElement>("inverse-angle");
  const inverseSizeStep = byId<HTMLInputElement>("inverse-size-step");
  const inverseAngleStep = byId<HTMLInputElement>("inverse-angle-step");
  const inverseRun = byId<HTMLButtonElement>("inverse-run");
  const checkPanel = byId<HTMLElement>("check-panel");
  const banner = byId<HTMLElement>("banner");
  const spaceSvg = byId<HTMLElement>("space-svg") as unknown as SVGSVGElement;
  const inverseSvg = byId<HTMLElement>("inverse-svg") as unknown as SVGSVGElement;

  const restored = decodeHash(docRoot.defaultView?.location.hash ?? "");
  if (restored !== null) {
    state.physical = restored.physical;
    state.probe = restored.probe;
  }
  sizeSlider.value = String(state.physical.size);
  angleSlider.value = String(state.physical.angle);
  if (state.probe !== null) {
    probeSize.value = String(state.probe.size);
    probeAngle.value = String(state.probe.angle);
  }

  function updateHash(): void {
    const view = docRoot.defaultView;
    if (view) {
      view.location.hash = encodeHash({ physical: state.physical, probe: state.probe });
    }
  }

  function updateLabels(): void {
    sizeValue.textContent = `${state.physical.size} cm`;
    angleValue.textContent = `${state.physical.angle} deg`;
  }

  function redrawSpace(): void {
    if (state.space === null) return;
    const probe = state.check !== null ? { check: state.check } : null;
    renderSpace(spaceSvg, state.space, state.absoluteUnits, probe);
  }

  async function loadSpace(): Promise<void> {
    const token = gate.issue("space");
    const { size, angle } = state.physical;
    try {
      const doc = await fetchSpace(fetcher, size, angle);
      if (!gate.tryApply("space", token)) return;
      state.space = doc;
      clearBanner(banner);
      if (doc.extrapolation_warning) {
        showBanner(banner, "outside the studied domain: values are extrapolated");
      }
      redrawSpace();
    } catch (err) {
      if (!gate.tryApply("space", token)) return;
      showBanner(banner, describe(err));
    }
  }

  async function loadCheck(): Promise<void> {
    if (state.probe === null) return;
    const token = gate.issue("check");
    const { size: sv, angle: av } = state.probe;
    const { size: sp, angle: ap } = state.physical;
    try {
      const doc = await fetchCheck(fetcher, sp, ap, sv, av);
      if (!gate.tryApply("check", token)) return;
      state.check = doc;
      renderMargins(checkPanel, doc);
      redrawSpace();
    } catch (err) {
      if (!gate.tryApply("check", token)) return;
      showBanner(banner, describe(err));
    }
  }

  async function loadInverse(): Promise<void> {
    if (state.inverseTarget === null) return;
    const token = gate.issue("inverse");
    const { size: sv, angle: av } = state.inverseTarget;
    const sizeStep = Number(inverseSizeStep.value) || DEFAULT_GRID.sizeStep;
    const angleStep = Number(inverseAngleStep.value) || DEFAULT_GRID.angleStep;
    const custom = sizeStep !== DEFAULT_GRID.sizeStep || angleStep !== DEFAULT_GRID.angleStep;
    const grid = custom ? { ...DEFAULT_GRID, sizeStep, angleStep } : undefined;
    try {
      const doc = await fetchInverse(fetcher, sv, av, grid);
      if (!gate.tryApply("inverse", token)) return;
      state.inverse = doc;
      clearBanner(banner);
      renderHeatmap(inverseSvg, doc);
    } catch (err) {
      if (!gate.tryApply("inverse", token)) return;
      showBanner(banner, describe(err));
    }
  }

  const scheduleSpace: Debounced<[]> = debounce(() => void loadSpace(), ms, opts.clock);
  const scheduleCheck: Debounced<[]> = debounce(() => void loadCheck(), ms, opts.clock);

  function onPhysicalInput(): void {
    state.physical = {
      size: Number(sizeSlider.value),
      angle: Number(angleSlider.value),
    };
    updateLabels();
    updateHash();
    scheduleSpace();
    if (state.probe !== null) scheduleCheck();
  }

  function onProbeInput(): void {
    const sv = probeSize.value.trim();
    const av = probeAngle.value.trim();
    if (sv === "" || av === "") {
      state.probe = null;
      state.check = null;
      checkPanel.innerHTML = "";
      updateHash();
      redrawSpace();
      return;
    }
    state.probe = { size: Number(sv), angle: Number(av) };
    updateHash();
    scheduleCheck();
  }

  sizeSlider.addEventListener("input", onPhysicalInput);
  angleSlider.addEventListener("input", onPhysicalInput);
  probeSize.addEventListener("input", onProbeInput);
  probeAngle.addEventListener("input", onProbeInput);

  absoluteToggle.addEventListener("change", () => {
    state.absoluteUnits = absoluteToggle.checked;
    redrawSpace();
  });

  inverseRun.addEventListener("click", () => {
    // empty inputs coerce to 0, so check for them explicitly
    if (inverseSize.value.trim() === "" || inverseAngle.value.trim() === "") {
      showBanner(banner, "inverse query needs a virtual size and angle");
      return;
    }
    const sv = Number(inverseSize.value);
    const av = Number(inverseAngle.value);
    if (!Number.isFinite(sv) || !Number.isFinite(av)) {
      showBanner(banner, "inverse query needs a virtual size and angle");
      return;
    }
    state.inverseTarget = { size: sv, angle: av };
    void loadInverse();
  });

  updateLabels();
  scheduleSpace();
  if (state.probe !== null) scheduleCheck();

  return { state, gate };
}
