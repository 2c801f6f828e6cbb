import type {
  CheckDocument,
  InverseDocument,
  SpaceDocument,
  Vertex,
  VertexName,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = 48;

// Perimeter order of the quadrilateral; size incongruence is the horizontal
// axis, angle incongruence the vertical one.
const PERIMETER: VertexName[] = [
  "smallest_least_tilted",
  "largest_least_tilted",
  "largest_most_tilted",
  "smallest_most_tilted",
];

const VERTEX_SHORT: Record<VertexName, string> = {
  smallest_least_tilted: "S/LT",
  smallest_most_tilted: "S/MT",
  largest_least_tilted: "L/LT",
  largest_most_tilted: "L/MT",
};

function el<K extends string>(tag: K): SVGElement {
  return document.createElementNS(SVG_NS, tag) as SVGElement;
}

interface Scale {
  x(v: number): number;
  y(v: number): number;
}

function makeScale(xs: number[], ys: number[]): Scale {
  const pad = (lo: number, hi: number): [number, number] => {
    const span = hi - lo || 1;
    return [lo - 0.1 * span, hi + 0.1 * span];
  };
  const [x0, x1] = pad(Math.min(...xs), Math.max(...xs));
  const [y0, y1] = pad(Math.min(...ys), Math.max(...ys));
  return {
    x: (v) => MARGIN + ((v - x0) / (x1 - x0)) * (WIDTH - 2 * MARGIN),
    // SVG y grows downward
    y: (v) => HEIGHT - MARGIN - ((v - y0) / (y1 - y0)) * (HEIGHT - 2 * MARGIN),
  };
}

function vertexCoords(v: Vertex, absolute: boolean): [number, number] {
  // absolute values come straight from the document, never recomputed here
  return absolute
    ? [v.virtual_size_cm, v.virtual_angle_deg]
    : [v.size_incongruence, v.angle_incongruence];
}

export interface ProbeView {
  check: CheckDocument;
}

/**
 * Draws the illusion-space quadrilateral. Every vertex dot carries the
 * document's exact numbers in data attributes; the pixel projection is only
 * for display.
 */
export function renderSpace(
  svg: SVGSVGElement,
  doc: SpaceDocument,
  absolute: boolean,
  probe: ProbeView | null = null,
): void {
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const congruent: [number, number] = absolute
    ? [doc.physical.size_cm, doc.physical.angle_deg]
    : [1, 1];
  const pts = PERIMETER.map((name) => vertexCoords(doc.vertices[name], absolute));
  const xs = pts.map((p) => p[0]).concat([congruent[0]]);
  const ys = pts.map((p) => p[1]).concat([congruent[1]]);
  if (probe) {
    const c = probe.check;
    xs.push(absolute ? c.virtual.size_cm : c.incongruence.size);
    ys.push(absolute ? c.virtual.angle_deg : c.incongruence.angle);
  }
  const scale = makeScale(xs, ys);

  const polygon = el("polygon");
  polygon.setAttribute(
    "points",
    pts.map(([x, y]) => `${scale.x(x)},${scale.y(y)}`).join(" "),
  );
  polygon.setAttribute("class", "space-quad");
  svg.appendChild(polygon);

  for (const name of PERIMETER) {
    const v = doc.vertices[name];
    const [x, y] = vertexCoords(v, absolute);
    const dot = el("circle");
    dot.setAttribute("class", "vertex");
    dot.setAttribute("data-name", name);
    dot.setAttribute("data-size-incongruence", String(v.size_incongruence));
    dot.setAttribute("data-angle-incongruence", String(v.angle_incongruence));
    dot.setAttribute("data-virtual-size-cm", String(v.virtual_size_cm));
    dot.setAttribute("data-virtual-angle-deg", String(v.virtual_angle_deg));
    // plotted domain coordinates, before pixel projection
    dot.setAttribute("data-x", String(x));
    dot.setAttribute("data-y", String(y));
    dot.setAttribute("cx", String(scale.x(x)));
    dot.setAttribute("cy", String(scale.y(y)));
    dot.setAttribute("r", "5");
    svg.appendChild(dot);

    const label = el("text");
    label.setAttribute("class", "vertex-label");
    label.setAttribute("x", String(scale.x(x) + 8));
    label.setAttribute("y", String(scale.y(y) - 8));
    label.textContent = VERTEX_SHORT[name];
    svg.appendChild(label);
  }

  const marker = el("circle");
  marker.setAttribute("class", "congruent-marker");
  marker.setAttribute("data-x", String(congruent[0]));
  marker.setAttribute("data-y", String(congruent[1]));
  marker.setAttribute("cx", String(scale.x(congruent[0])));
  marker.setAttribute("cy", String(scale.y(congruent[1])));
  marker.setAttribute("r", "4");
  svg.appendChild(marker);

  if (probe) {
    const c = probe.check;
    const [px, py] = absolute
      ? [c.virtual.size_cm, c.virtual.angle_deg]
      : [c.incongruence.size, c.incongruence.angle];
    const probeDot = el("circle");
    // color class follows the server verdict, not any local test
    probeDot.setAttribute("class", c.inside ? "probe probe-inside" : "probe probe-outside");
    probeDot.setAttribute("data-inside", String(c.inside));
    probeDot.setAttribute("data-x", String(px));
    probeDot.setAttribute("data-y", String(py));
    probeDot.setAttribute("cx", String(scale.x(px)));
    probeDot.setAttribute("cy", String(scale.y(py)));
    probeDot.setAttribute("r", "6");
    svg.appendChild(probeDot);
  }
}

export function renderMargins(container: HTMLElement, doc: CheckDocument): void {
  const rows = (Object.entries(doc.margins) as [string, number][])
    .map(([name, value]) => {
      const cls = value >= 0 ? "margin-ok" : "margin-violated";
      return `<tr class="${cls}"><td>${name}</td><td data-value="${value}">${value.toFixed(4)}</td></tr>`;
    })
    .join("");
  container.innerHTML =
    `<p class="verdict ${doc.inside ? "inside" : "outside"}">` +
    `${doc.inside ? "inside" : "outside"} the illusion space</p>` +
    `<table class="margins"><thead><tr><th>bound</th><th>margin</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`;
}

/** Grid of cells; filled cells are physical objects that can impersonate the target. */
export function renderHeatmap(svg: SVGSVGElement, doc: InverseDocument): void {
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  while (svg.firstChild) svg.removeChild(svg.firstChild);

  const scale = makeScale(doc.sizes_cm, doc.angles_deg);
  const cellW = doc.sizes_cm.length > 1
    ? Math.abs(scale.x(doc.sizes_cm[1]!) - scale.x(doc.sizes_cm[0]!))
    : 16;
  const cellH = doc.angles_deg.length > 1
    ? Math.abs(scale.y(doc.angles_deg[1]!) - scale.y(doc.angles_deg[0]!))
    : 16;

  doc.sizes_cm.forEach((size, i) => {
    doc.angles_deg.forEach((angle, j) => {
      const cell = el("rect");
      cell.setAttribute("class", doc.mask[i]![j] ? "cell cell-true" : "cell cell-false");
      cell.setAttribute("data-size-cm", String(size));
      cell.setAttribute("data-angle-deg", String(angle));
      cell.setAttribute("x", String(scale.x(size) - cellW / 2));
      cell.setAttribute("y", String(scale.y(angle) - cellH / 2));
      cell.setAttribute("width", String(cellW));
      cell.setAttribute("height", String(cellH));
      svg.appendChild(cell);
    });
  });

  if (doc.bounding_box) {
    const b = doc.bounding_box;
    const box = el("rect");
    box.setAttribute("class", "bounding-box");
    box.setAttribute("x", String(scale.x(b.size_min_cm) - cellW / 2));
    box.setAttribute("y", String(scale.y(b.angle_max_deg) - cellH / 2));
    box.setAttribute("width", String(scale.x(b.size_max_cm) - scale.x(b.size_min_cm) + cellW));
    box.setAttribute("height", String(scale.y(b.angle_min_deg) - scale.y(b.angle_max_deg) + cellH));
    svg.appendChild(box);
  }
}

export function showBanner(banner: HTMLElement, message: string): void {
  banner.textContent = message;
  banner.classList.remove("hidden");
}

export function clearBanner(banner: HTMLElement): void {
  banner.textContent = "";
  banner.classList.add("hidden");
}
