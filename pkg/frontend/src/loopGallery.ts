import { CsvTable, SchemaError, column, expectColumns } from "./csv";
import { fmt, linearScale, polylinePoints, svgDocument, tag } from "./svg";

export const LOOP_COLUMNS = ["k", "x", "y"];

export interface LoopSummary {
  kind: string;
  p: number;
  winding: number;
  boundary: boolean;
  xs: number[];
  ys: number[];
}

export function summarizeLoop(table: CsvTable): LoopSummary {
  expectColumns(table, LOOP_COLUMNS);
  if (table.rows.length === 0) throw new SchemaError("loop CSV has no data rows");
  const kind = table.meta.kind;
  if (kind !== "real" && kind !== "complex") {
    throw new SchemaError(`loop CSV must carry kind=real or kind=complex, got ${kind}`);
  }
  if (!("winding" in table.footer)) throw new SchemaError("loop CSV footer is missing winding");
  return {
    kind,
    p: Number(table.meta.p),
    winding: Number(table.footer.winding),
    boundary: table.footer.boundary === "1",
    xs: column(table, "x"),
    ys: column(table, "y"),
  };
}

/** Even-odd ray casting; zero-length edges are skipped by the y-straddle test. */
export function pointInPolygon(px: number, py: number, xs: number[], ys: number[]): boolean {
  let inside = false;
  for (let i = 0, j = xs.length - 1; i < xs.length; j = i++) {
    const straddles = ys[i] > py !== ys[j] > py;
    if (straddles && px < ((xs[j] - xs[i]) * (py - ys[i])) / (ys[j] - ys[i]) + xs[i]) {
      inside = !inside;
    }
  }
  return inside;
}

export function enclosesOrigin(table: CsvTable): boolean {
  const loop = summarizeLoop(table);
  return pointInPolygon(0, 0, loop.xs, loop.ys);
}

function windingLabel(winding: number): string {
  const twice = Math.round(2 * winding);
  if (twice % 2 === 0) return String(twice / 2);
  return twice === 1 ? "1/2" : `${twice}/2`;
}

function shortNumber(value: number): string {
  return String(parseFloat(value.toPrecision(3)));
}

function renderPanel(loop: LoopSummary, x0: number, y0: number, size: number): string {
  let extent = 0;
  for (let i = 0; i < loop.xs.length; i++) {
    extent = Math.max(extent, Math.abs(loop.xs[i]), Math.abs(loop.ys[i]));
  }
  if (extent === 0) extent = 1;
  extent *= 1.08;
  const sx = linearScale({ min: -extent, max: extent }, { min: x0, max: x0 + size });
  const sy = linearScale({ min: -extent, max: extent }, { min: y0 + size, max: y0 });

  const parts: string[] = [
    `<g class="loop-panel" data-kind="${loop.kind}" data-winding="${loop.winding}" data-boundary="${loop.boundary ? 1 : 0}">`,
    tag("rect", { x: x0, y: y0, width: size, height: size, fill: "none", stroke: "#cccccc" }),
    tag("polyline", {
      class: "loop-curve",
      points: polylinePoints(loop.xs, loop.ys, sx, sy),
      fill: "none",
      stroke: "#2a6f97",
      "stroke-width": 1.2,
    }),
    tag("circle", {
      class: "origin-dot",
      cx: fmt(sx(0)),
      cy: fmt(sy(0)),
      r: 3,
      fill: "#e15759",
    }),
    tag("text", { x: x0 + size / 2, y: y0 - 6, "text-anchor": "middle", "font-size": 11 },
      `${loop.kind}  p = ${shortNumber(loop.p)}`),
    tag("text", { x: x0 + size / 2, y: y0 + size + 14, "text-anchor": "middle", "font-size": 11 },
      `w = ${windingLabel(loop.winding)}`),
    "</g>",
  ];
  return parts.join("\n");
}

/** Panel-per-loop gallery in row-major order. */
export function renderLoopGallery(tables: CsvTable[], columns = 6): string {
  if (tables.length === 0) throw new SchemaError("loop gallery needs at least one CSV");
  const loops = tables.map(summarizeLoop);
  const size = 150;
  const cellW = size + 34;
  const cellH = size + 52;
  const margin = 24;
  const cols = Math.min(columns, loops.length);
  const rowCount = Math.ceil(loops.length / cols);
  const width = 2 * margin + cols * cellW;
  const height = 2 * margin + rowCount * cellH;
  const parts: string[] = [];
  loops.forEach((loop, i) => {
    const x0 = margin + (i % cols) * cellW + 17;
    const y0 = margin + Math.floor(i / cols) * cellH + 22;
    parts.push(renderPanel(loop, x0, y0, size));
  });
  return svgDocument(width, height, parts.join("\n"));
}
