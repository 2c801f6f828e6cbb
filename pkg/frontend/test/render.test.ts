import { beforeEach, describe, expect, it } from "vitest";

import {
  clearBanner,
  renderHeatmap,
  renderMargins,
  renderSpace,
  showBanner,
} from "../src/render.js";
import type { CheckDocument, InverseDocument, SpaceDocument } from "../src/types.js";
import { fixtureText } from "./fixtures.js";

const spaceDoc: SpaceDocument = JSON.parse(fixtureText("space_6_8.json"));
const checkInside: CheckDocument = JSON.parse(fixtureText("check_inside.json"));
const checkOutside: CheckDocument = JSON.parse(fixtureText("check_outside.json"));
const inverseDoc: InverseDocument = JSON.parse(fixtureText("inverse_small.json"));

function freshSvg(): SVGSVGElement {
  document.body.innerHTML = "<svg id='s'></svg>";
  return document.getElementById("s") as unknown as SVGSVGElement;
}

describe("renderSpace", () => {
  let svg: SVGSVGElement;
  beforeEach(() => {
    svg = freshSvg();
  });

  it("vertex dots carry the document values exactly", () => {
    renderSpace(svg, spaceDoc, false);
    const dots = svg.querySelectorAll("circle.vertex");
    expect(dots.length).toBe(4);
    for (const dot of dots) {
      const name = dot.getAttribute("data-name") as keyof SpaceDocument["vertices"];
      const v = spaceDoc.vertices[name];
      expect(Number(dot.getAttribute("data-size-incongruence"))).toBe(v.size_incongruence);
      expect(Number(dot.getAttribute("data-angle-incongruence"))).toBe(v.angle_incongruence);
      expect(Number(dot.getAttribute("data-virtual-size-cm"))).toBe(v.virtual_size_cm);
      expect(Number(dot.getAttribute("data-virtual-angle-deg"))).toBe(v.virtual_angle_deg);
    }
  });

  it("draws one quadrilateral and labels all four vertices", () => {
    renderSpace(svg, spaceDoc, false);
    expect(svg.querySelectorAll("polygon.space-quad").length).toBe(1);
    const labels = [...svg.querySelectorAll("text.vertex-label")].map((t) => t.textContent);
    expect(labels.sort()).toEqual(["L/LT", "L/MT", "S/LT", "S/MT"]);
    const points = svg.querySelector("polygon.space-quad")!.getAttribute("points")!;
    expect(points.split(" ").length).toBe(4);
  });

  it("congruent marker sits inside the polygon's bounding box", () => {
    renderSpace(svg, spaceDoc, false);
    const marker = svg.querySelector("circle.congruent-marker")!;
    const cx = Number(marker.getAttribute("cx"));
    const cy = Number(marker.getAttribute("cy"));
    const coords = svg
      .querySelector("polygon.space-quad")!
      .getAttribute("points")!
      .split(" ")
      .map((p) => p.split(",").map(Number));
    const xs = coords.map((c) => c[0]!);
    const ys = coords.map((c) => c[1]!);
    expect(cx).toBeGreaterThan(Math.min(...xs));
    expect(cx).toBeLessThan(Math.max(...xs));
    expect(cy).toBeGreaterThan(Math.min(...ys));
    expect(cy).toBeLessThan(Math.max(...ys));
  });

  it("absolute toggle plots the document's absolute fields", () => {
    const v = spaceDoc.vertices.largest_least_tilted;

    renderSpace(svg, spaceDoc, true);
    const dot = svg.querySelector("circle.vertex[data-name='largest_least_tilted']")!;
    expect(Number(dot.getAttribute("data-x"))).toBe(v.virtual_size_cm);
    expect(Number(dot.getAttribute("data-y"))).toBe(v.virtual_angle_deg);
    const marker = svg.querySelector("circle.congruent-marker")!;
    expect(Number(marker.getAttribute("data-x"))).toBe(spaceDoc.physical.size_cm);
    expect(Number(marker.getAttribute("data-y"))).toBe(spaceDoc.physical.angle_deg);

    renderSpace(svg, spaceDoc, false);
    const relDot = svg.querySelector("circle.vertex[data-name='largest_least_tilted']")!;
    expect(Number(relDot.getAttribute("data-x"))).toBe(v.size_incongruence);
    expect(Number(relDot.getAttribute("data-y"))).toBe(v.angle_incongruence);
  });

  it("probe marker class follows the server verdict", () => {
    renderSpace(svg, spaceDoc, false, { check: checkInside });
    expect(svg.querySelector("circle.probe-inside")).not.toBeNull();
    expect(svg.querySelector("circle.probe-outside")).toBeNull();

    renderSpace(svg, spaceDoc, false, { check: checkOutside });
    expect(svg.querySelector("circle.probe-outside")).not.toBeNull();
    expect(svg.querySelector("circle.probe-inside")).toBeNull();
  });

  it("rerendering replaces, not accumulates", () => {
    renderSpace(svg, spaceDoc, false);
    renderSpace(svg, spaceDoc, true);
    expect(svg.querySelectorAll("polygon").length).toBe(1);
    expect(svg.querySelectorAll("circle.vertex").length).toBe(4);
  });
});

describe("renderMargins", () => {
  it("verdict text and per-bound rows", () => {
    const host = document.createElement("div");
    renderMargins(host, checkInside);
    expect(host.querySelector(".verdict")!.classList.contains("inside")).toBe(true);
    expect(host.querySelectorAll("tbody tr").length).toBe(4);

    renderMargins(host, checkOutside);
    expect(host.querySelector(".verdict")!.classList.contains("outside")).toBe(true);
    const violated = host.querySelectorAll("tr.margin-violated");
    expect(violated.length).toBe(1); // only size_ut is negative for the 9 cm probe
    expect(violated[0]!.textContent).toContain("size_ut");
  });

  it("margin cells keep the exact value in a data attribute", () => {
    const host = document.createElement("div");
    renderMargins(host, checkOutside);
    const cells = [...host.querySelectorAll("td[data-value]")];
    const values = cells.map((c) => Number(c.getAttribute("data-value"))).sort((a, b) => a - b);
    const expected = Object.values(checkOutside.margins).sort((a, b) => a - b);
    expect(values).toEqual(expected);
  });
});

describe("renderHeatmap", () => {
  it("one rect per grid cell, true cells marked", () => {
    const svg = freshSvg();
    renderHeatmap(svg, inverseDoc);
    const cells = svg.querySelectorAll("rect.cell");
    expect(cells.length).toBe(inverseDoc.sizes_cm.length * inverseDoc.angles_deg.length);
    expect(svg.querySelectorAll("rect.cell-true").length).toBe(inverseDoc.true_cell_count);
  });

  it("the virtual object's own cell is true when congruent is contained", () => {
    const svg = freshSvg();
    renderHeatmap(svg, inverseDoc);
    const own = [...svg.querySelectorAll("rect.cell-true")].find(
      (r) =>
        Number(r.getAttribute("data-size-cm")) === 6 &&
        Number(r.getAttribute("data-angle-deg")) === 8,
    );
    expect(own).toBeDefined();
  });

  it("draws the bounding box when present", () => {
    const svg = freshSvg();
    renderHeatmap(svg, inverseDoc);
    expect(svg.querySelectorAll("rect.bounding-box").length).toBe(1);
  });
});

describe("banner", () => {
  it("shows and clears", () => {
    const banner = document.createElement("div");
    banner.classList.add("hidden");
    showBanner(banner, "network down");
    expect(banner.classList.contains("hidden")).toBe(false);
    expect(banner.textContent).toBe("network down");
    clearBanner(banner);
    expect(banner.classList.contains("hidden")).toBe(true);
  });
});
