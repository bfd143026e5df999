import { CsvTable, SchemaError, column, expectColumns } from "./csv";
import { Scale, fmt, linearScale, polylinePoints, svgDocument, tag } from "./svg";

export const PHASE_COLUMNS = ["a", "b", "p", "chern"];

/** Default palette; documented in the README. */
export const CHERN_COLORS = {
  topological: "#4e79a7",
  trivial: "#f1eee7",
  boundary: "#e15759",
};

export function colorForChern(chern: number): string {
  if (Math.abs(chern - 0.5) < 0.25) return CHERN_COLORS.boundary;
  return chern >= 0.75 ? CHERN_COLORS.topological : CHERN_COLORS.trivial;
}

function uniqueSorted(values: number[]): number[] {
  return Array.from(new Set(values)).sort((p, q) => p - q);
}

function spacing(values: number[]): number {
  return values.length > 1 ? values[1] - values[0] : 1;
}

/** Sampled |ab| = 1 hyperbola branches clipped to the axis box. */
function hyperbolaBranches(aMax: number, bMax: number): Array<{ xs: number[]; ys: number[] }> {
  const branches: Array<{ xs: number[]; ys: number[] }> = [];
  const aMin = 1 / bMax;
  for (const signA of [1, -1]) {
    for (const signB of [1, -1]) {
      const xs: number[] = [];
      const ys: number[] = [];
      for (let i = 0; i <= 200; i++) {
        const a = aMin * Math.pow(aMax / aMin, i / 200);
        xs.push(signA * a);
        ys.push(signB / a);
      }
      branches.push({ xs, ys });
    }
  }
  return branches;
}

function renderPanel(table: CsvTable, x0: number, y0: number, size: number, title: string): string {
  expectColumns(table, PHASE_COLUMNS);
  if (table.rows.length === 0) throw new SchemaError("phase grid CSV has no data rows");
  const kind = table.meta.kind;
  if (kind !== "real" && kind !== "complex") {
    throw new SchemaError(`phase grid CSV must carry kind=real or kind=complex, got ${kind}`);
  }

  const aValues = uniqueSorted(column(table, "a"));
  const bValues = uniqueSorted(column(table, "b"));
  const da = spacing(aValues);
  const db = spacing(bValues);
  const sx = linearScale({ min: aValues[0] - da / 2, max: aValues[aValues.length - 1] + da / 2 }, { min: x0, max: x0 + size });
  const sy = linearScale({ min: bValues[0] - db / 2, max: bValues[bValues.length - 1] + db / 2 }, { min: y0 + size, max: y0 });

  const parts: string[] = [`<g class="phase-panel" data-kind="${kind}">`];
  const cellW = Math.abs(sx(da) - sx(0));
  const cellH = Math.abs(sy(db) - sy(0));
  for (const row of table.rows) {
    const [a, b, , chern] = row;
    parts.push(
      tag("rect", {
        x: fmt(sx(a) - cellW / 2),
        y: fmt(sy(b) - cellH / 2),
        width: fmt(cellW),
        height: fmt(cellH),
        fill: colorForChern(chern),
      }),
    );
  }

  if (kind === "real") {
    for (const branch of hyperbolaBranches(Math.abs(aValues[aValues.length - 1]), Math.abs(bValues[bValues.length - 1]))) {
      parts.push(
        tag("polyline", {
          class: "boundary-curve",
          points: polylinePoints(branch.xs, branch.ys, sx, sy),
          fill: "none",
          stroke: "#222222",
          "stroke-width": 1.5,
          "stroke-dasharray": "5,3",
        }),
      );
    }
  } else {
    parts.push(
      tag("circle", {
        class: "boundary-curve",
        cx: fmt(sx(0)),
        cy: fmt(sy(0)),
        r: fmt(Math.abs(sx(1) - sx(0))),
        fill: "none",
        stroke: "#222222",
        "stroke-width": 1.5,
        "stroke-dasharray": "5,3",
      }),
    );
  }

  parts.push(tag("rect", { x: x0, y: y0, width: size, height: size, fill: "none", stroke: "#555555" }));
  parts.push(tag("text", { x: x0 + size / 2, y: y0 - 10, "text-anchor": "middle", "font-size": 14 }, title));
  const [axisX, axisY] = kind === "real" ? ["g1", "g2"] : ["eta", "xi"];
  parts.push(tag("text", { x: x0 + size / 2, y: y0 + size + 30, "text-anchor": "middle", "font-size": 12 }, axisX));
  parts.push(
    tag("text", {
      x: x0 - 30,
      y: y0 + size / 2,
      "text-anchor": "middle",
      "font-size": 12,
      transform: `rotate(-90 ${x0 - 30} ${y0 + size / 2})`,
    }, axisY),
  );
  for (const a of [aValues[0], 0, aValues[aValues.length - 1]]) {
    parts.push(tag("text", { x: fmt(sx(a)), y: y0 + size + 14, "text-anchor": "middle", "font-size": 10 }, String(a)));
  }
  for (const b of [bValues[0], 0, bValues[bValues.length - 1]]) {
    parts.push(tag("text", { x: x0 - 6, y: fmt(sy(b) + 3), "text-anchor": "end", "font-size": 10 }, String(b)));
  }
  parts.push("</g>");
  return parts.join("\n");
}

function renderLegend(x0: number, y0: number): string {
  const entries: Array<[string, string]> = [
    [CHERN_COLORS.topological, "C = 1"],
    [CHERN_COLORS.trivial, "C = 0"],
    [CHERN_COLORS.boundary, "C = 1/2"],
  ];
  const parts: string[] = ['<g class="legend">'];
  entries.forEach(([color, label], i) => {
    const x = x0 + i * 90;
    parts.push(tag("rect", { x, y: y0, width: 14, height: 14, fill: color, stroke: "#555555" }));
    parts.push(tag("text", { x: x + 20, y: y0 + 12, "font-size": 12 }, label));
  });
  parts.push("</g>");
  return parts.join("\n");
}

/** Two-panel phase diagram: real-field grid left, complex-field grid right. */
export function renderPhaseDiagram(real: CsvTable, complex: CsvTable): string {
  if (real.meta.kind !== "real") throw new SchemaError("first CSV must be a real-field grid");
  if (complex.meta.kind !== "complex") throw new SchemaError("second CSV must be a complex-field grid");
  const size = 320;
  const margin = 56;
  const gap = 70;
  const width = margin + size + gap + size + 30;
  const height = margin + size + 90;
  const body = [
    renderPanel(real, margin, margin, size, "real field"),
    renderPanel(complex, margin + size + gap, margin, size, "complex field"),
    renderLegend(margin, margin + size + 52),
  ].join("\n");
  return svgDocument(width, height, body);
}
