// Shapes of the /api/v1 documents. The server is the single source of all
// numbers; nothing in the client recomputes them.

export type VertexName =
  | "smallest_least_tilted"
  | "smallest_most_tilted"
  | "largest_least_tilted"
  | "largest_most_tilted";

export interface Vertex {
  size_incongruence: number;
  angle_incongruence: number;
  virtual_size_cm: number;
  virtual_angle_deg: number;
}

export interface Bound {
  input: "size_incongruence" | "angle_incongruence";
  slope: number;
  intercept: number;
}

export interface SpaceDocument {
  format_version: number;
  kind: "illusion_space";
  physical: { size_cm: number; angle_deg: number };
  bounds: { sdt: Bound; sut: Bound; adt: Bound; aut: Bound };
  vertices: Record<VertexName, Vertex>;
  congruent_inside: boolean;
  extrapolation_warning: boolean;
}

export interface CheckDocument {
  format_version: number;
  kind: "containment_check";
  physical: { size_cm: number; angle_deg: number };
  virtual: { size_cm: number; angle_deg: number };
  incongruence: { size: number; angle: number };
  inside: boolean;
  margins: { size_dt: number; size_ut: number; angle_dt: number; angle_ut: number };
  extrapolation_warning: boolean;
}

export interface InverseDocument {
  format_version: number;
  kind: "inverse_region";
  virtual: { size_cm: number; angle_deg: number };
  grid: {
    size_min_cm: number;
    size_max_cm: number;
    size_step_cm: number;
    angle_min_deg: number;
    angle_max_deg: number;
    angle_step_deg: number;
  };
  sizes_cm: number[];
  angles_deg: number[];
  /** mask[i][j] pairs sizes_cm[i] with angles_deg[j]; 1 = can impersonate. */
  mask: number[][];
  bounding_box: {
    size_min_cm: number;
    size_max_cm: number;
    angle_min_deg: number;
    angle_max_deg: number;
  } | null;
  true_cell_count: number;
}

export interface ErrorDocument {
  error: { code: string; message: string };
}

export interface Pair {
  size: number;
  angle: number;
}

export interface GridOptions {
  sizeMin: number;
  sizeMax: number;
  sizeStep: number;
  angleMin: number;
  angleMax: number;
  angleStep: number;
}
