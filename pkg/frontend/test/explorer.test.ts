import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { beforeEach, describe, expect, it } from "vitest";

import type { FetchLike, FetchResponse } from "../src/api.js";
import type { Clock } from "../src/debounce.js";
import { DEBOUNCE_MS, setupExplorer } from "../src/main.js";
import type { SpaceDocument, VertexName } from "../src/types.js";
import { fixtureText } from "./fixtures.js";

const SPACE_6_8 = fixtureText("space_6_8.json");
const SPACE_7_8 = fixtureText("space_7_8.json");
const CHECK_INSIDE = fixtureText("check_inside.json");
const INVERSE_SMALL = fixtureText("inverse_small.json");

const spaceDoc68: SpaceDocument = JSON.parse(SPACE_6_8);
const spaceDoc78: SpaceDocument = JSON.parse(SPACE_7_8);

// the test drives the real page markup, not a hand-built stand-in
const page = readFileSync(resolve(process.cwd(), "index.html"), "utf8");
const bodyHtml = /<body>([\s\S]*)<\/body>/.exec(page)![1]!;

/** Deterministic replacement for setTimeout, advanced by hand. */
class ManualClock implements Clock {
  private nextId = 1;
  private timers = new Map<number, { at: number; fn: () => void }>();
  private now = 0;

  set(fn: () => void, ms: number): ReturnType<typeof setTimeout> {
    const id = this.nextId++;
    this.timers.set(id, { at: this.now + ms, fn });
    return id as unknown as ReturnType<typeof setTimeout>;
  }

  clear(id: ReturnType<typeof setTimeout>): void {
    this.timers.delete(id as unknown as number);
  }

  advance(ms: number): void {
    const target = this.now + ms;
    for (;;) {
      let dueId: number | null = null;
      let dueAt = Infinity;
      for (const [id, timer] of this.timers) {
        if (timer.at <= target && timer.at < dueAt) {
          dueAt = timer.at;
          dueId = id;
        }
      }
      if (dueId === null) break;
      const timer = this.timers.get(dueId)!;
      this.timers.delete(dueId);
      this.now = timer.at;
      timer.fn();
    }
    this.now = target;
  }
}

interface PendingRequest {
  url: string;
  respond(body: string): void;
  fail(message: string): void;
}

function scriptedFetch(): { fetcher: FetchLike; urls: string[]; pending: PendingRequest[] } {
  const urls: string[] = [];
  const pending: PendingRequest[] = [];
  const fetcher: FetchLike = (url) =>
    new Promise<FetchResponse>((resolve, reject) => {
      urls.push(url);
      pending.push({
        url,
        respond: (body) => resolve({ ok: true, status: 200, text: () => Promise.resolve(body) }),
        fail: (message) => reject(new Error(message)),
      });
    });
  return { fetcher, urls, pending };
}

// lets the promise chain behind a resolved fetch finish
const flush = (): Promise<void> => new Promise((resolve) => setTimeout(resolve, 0));

function mount() {
  const clock = new ManualClock();
  const net = scriptedFetch();
  const handles = setupExplorer(document, net.fetcher, { clock });
  return { clock, handles, ...net };
}

function input(id: string): HTMLInputElement {
  return document.getElementById(id) as HTMLInputElement;
}

function drag(el: HTMLInputElement, value: string): void {
  el.value = value;
  el.dispatchEvent(new Event("input"));
}

beforeEach(() => {
  document.body.innerHTML = bodyHtml;
  window.location.hash = "";
});

describe("slider gestures", () => {
  it("one gesture yields exactly one trailing request and an exact render", async () => {
    const { clock, urls, pending } = mount();
    const size = input("size-slider");
    const angle = input("angle-slider");

    // a drag: several intermediate positions, all inside the debounce window
    for (const v of ["4", "5.2", "6.8"]) {
      drag(size, v);
      clock.advance(30);
    }
    drag(angle, "12");
    clock.advance(30);
    drag(size, "6");
    clock.advance(30);
    drag(angle, "8");

    clock.advance(DEBOUNCE_MS - 1);
    expect(urls).toEqual([]); // trailing edge: nothing fires until the gesture settles
    clock.advance(1);
    expect(urls).toEqual(["/api/v1/space?sp=6&ap=8"]);

    pending[0]!.respond(SPACE_6_8);
    await flush();

    const dots = document.querySelectorAll("#space-svg circle.vertex");
    expect(dots.length).toBe(4);
    for (const dot of dots) {
      const name = dot.getAttribute("data-name") as VertexName;
      const v = spaceDoc68.vertices[name];
      expect(Number(dot.getAttribute("data-size-incongruence"))).toBe(v.size_incongruence);
      expect(Number(dot.getAttribute("data-angle-incongruence"))).toBe(v.angle_incongruence);
      expect(Number(dot.getAttribute("data-virtual-size-cm"))).toBe(v.virtual_size_cm);
      expect(Number(dot.getAttribute("data-virtual-angle-deg"))).toBe(v.virtual_angle_deg);
      expect(Number(dot.getAttribute("data-x"))).toBe(v.size_incongruence);
      expect(Number(dot.getAttribute("data-y"))).toBe(v.angle_incongruence);
    }
    expect(urls.length).toBe(1); // the whole gesture cost one request
  });

  it("two separated gestures produce two requests", () => {
    const { clock, urls } = mount();
    const size = input("size-slider");
    drag(size, "5");
    clock.advance(DEBOUNCE_MS);
    drag(size, "4");
    clock.advance(DEBOUNCE_MS);
    expect(urls).toEqual(["/api/v1/space?sp=5&ap=8", "/api/v1/space?sp=4&ap=8"]);
  });

  it("a stale response never overwrites newer state", async () => {
    const { clock, urls, pending, handles } = mount();
    clock.advance(DEBOUNCE_MS); // initial load for (6, 8)
    expect(urls).toEqual(["/api/v1/space?sp=6&ap=8"]);

    drag(input("size-slider"), "7");
    clock.advance(DEBOUNCE_MS);
    expect(urls[1]).toBe("/api/v1/space?sp=7&ap=8");

    pending[1]!.respond(SPACE_7_8); // the newer answer lands first
    await flush();
    expect(handles.state.space?.physical.size_cm).toBe(7);

    pending[0]!.respond(SPACE_6_8); // the older one limps in afterwards
    await flush();
    expect(handles.state.space?.physical.size_cm).toBe(7);
    const dot = document.querySelector(
      "#space-svg circle.vertex[data-name='largest_least_tilted']",
    )!;
    expect(Number(dot.getAttribute("data-x"))).toBe(
      spaceDoc78.vertices.largest_least_tilted.size_incongruence,
    );
    expect(handles.gate.inFlight("space")).toBe(false);
  });
});

describe("location hash", () => {
  it("slider input rewrites the hash", () => {
    mount();
    drag(input("size-slider"), "7");
    expect(window.location.hash).toBe("#sp=7&ap=8");
  });

  it("restores sliders and probe on startup", () => {
    window.location.hash = "#sp=5&ap=4&sv=6&av=10";
    const { clock, urls } = mount();
    expect(input("size-slider").value).toBe("5");
    expect(input("angle-slider").value).toBe("4");
    expect(input("probe-size").value).toBe("6");
    expect(input("probe-angle").value).toBe("10");
    clock.advance(DEBOUNCE_MS);
    expect(urls).toEqual(["/api/v1/space?sp=5&ap=4", "/api/v1/check?sp=5&ap=4&sv=6&av=10"]);
  });
});

describe("error handling", () => {
  it("a malformed document raises the banner and keeps the previous view", async () => {
    const { clock, urls, pending } = mount();
    clock.advance(DEBOUNCE_MS);
    pending[0]!.respond(SPACE_6_8);
    await flush();

    drag(input("size-slider"), "5");
    clock.advance(DEBOUNCE_MS);
    expect(urls.length).toBe(2);
    pending[1]!.respond("<!doctype html><p>gateway timeout</p>");
    await flush();

    const banner = document.getElementById("banner")!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("bad_response");
    // the earlier document is still on screen
    const dot = document.querySelector(
      "#space-svg circle.vertex[data-name='smallest_least_tilted']",
    )!;
    expect(Number(dot.getAttribute("data-x"))).toBe(
      spaceDoc68.vertices.smallest_least_tilted.size_incongruence,
    );
  });

  it("an extrapolated document raises the warning banner", async () => {
    const { clock, pending } = mount();
    clock.advance(DEBOUNCE_MS);
    pending[0]!.respond(JSON.stringify({ ...spaceDoc68, extrapolation_warning: true }));
    await flush();
    const banner = document.getElementById("banner")!;
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toContain("extrapolated");
  });
});

describe("probe and inverse panels", () => {
  it("the probe drives a check and the verdict colors the marker", async () => {
    const { clock, urls, pending } = mount();
    clock.advance(DEBOUNCE_MS);
    pending[0]!.respond(SPACE_6_8);
    await flush();

    drag(input("probe-size"), "6.5");
    drag(input("probe-angle"), "10");
    clock.advance(DEBOUNCE_MS);
    expect(urls[1]).toBe("/api/v1/check?sp=6&ap=8&sv=6.5&av=10");

    pending[1]!.respond(CHECK_INSIDE);
    await flush();
    expect(document.querySelector("#check-panel .verdict.inside")).not.toBeNull();
    const probe = document.querySelector("#space-svg circle.probe")!;
    expect(probe.classList.contains("probe-inside")).toBe(true);

    drag(input("probe-size"), "");
    expect(document.querySelector("#space-svg circle.probe")).toBeNull();
    expect(document.getElementById("check-panel")!.innerHTML).toBe("");
  });

  it("the inverse button queries immediately and renders the mask", async () => {
    const { clock, urls, pending } = mount();
    clock.advance(DEBOUNCE_MS);
    pending[0]!.respond(SPACE_6_8);
    await flush();

    input("inverse-size").value = "6";
    input("inverse-angle").value = "8";
    document.getElementById("inverse-run")!.click();
    expect(urls[1]).toBe("/api/v1/inverse?sv=6&av=8"); // no debounce on an explicit click

    pending[1]!.respond(INVERSE_SMALL);
    await flush();
    expect(document.querySelectorAll("#inverse-svg rect.cell").length).toBe(15);
    expect(document.querySelectorAll("#inverse-svg rect.cell-true").length).toBe(10);
  });

  it("the inverse button without a target only warns", () => {
    const { urls } = mount();
    document.getElementById("inverse-run")!.click();
    expect(document.getElementById("banner")!.classList.contains("hidden")).toBe(false);
    expect(urls.length).toBe(0);
  });
});

describe("absolute units toggle", () => {
  it("replots from document fields without a new request", async () => {
    const { clock, urls, pending } = mount();
    clock.advance(DEBOUNCE_MS);
    pending[0]!.respond(SPACE_6_8);
    await flush();

    const toggle = input("absolute-toggle");
    toggle.checked = true;
    toggle.dispatchEvent(new Event("change"));
    const dot = document.querySelector(
      "#space-svg circle.vertex[data-name='largest_most_tilted']",
    )!;
    const v = spaceDoc68.vertices.largest_most_tilted;
    expect(Number(dot.getAttribute("data-x"))).toBe(v.virtual_size_cm);
    expect(Number(dot.getAttribute("data-y"))).toBe(v.virtual_angle_deg);
    expect(urls.length).toBe(1);
  });
});
