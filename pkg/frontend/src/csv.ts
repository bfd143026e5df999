/** Parser for the isingtop CLI CSV dialect: '# key=value' metadata lines
 *  above the header, numeric rows, optional '# key=value' footer below. */

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface CsvTable {
  meta: Record<string, string>;
  columns: string[];
  rows: number[][];
  footer: Record<string, string>;
}

function parseKeyValue(line: string, target: Record<string, string>): void {
  const body = line.slice(1).trim();
  const eq = body.indexOf("=");
  if (eq > 0) target[body.slice(0, eq)] = body.slice(eq + 1);
}

function parseCell(cell: string, row: number): number {
  const t = cell.trim();
  if (t === "nan") return NaN;
  if (t === "inf") return Infinity;
  if (t === "-inf") return -Infinity;
  const v = Number(t);
  if (t === "" || Number.isNaN(v)) {
    throw new SchemaError(`non-numeric cell ${JSON.stringify(cell)} in row ${row}`);
  }
  return v;
}

export function parseCsv(text: string): CsvTable {
  const meta: Record<string, string> = {};
  const footer: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: number[][] = [];

  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "") continue;
    if (line.startsWith("#")) {
      parseKeyValue(line, columns === null ? meta : footer);
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const cells = line.split(",").map((c) => parseCell(c, rows.length + 1));
    if (cells.length !== columns.length) {
      throw new SchemaError(`row has ${cells.length} cells, header has ${columns.length}`);
    }
    rows.push(cells);
  }
  if (columns === null) throw new SchemaError("empty CSV: no header line found");
  return { meta, columns, rows, footer };
}

export function expectColumns(table: CsvTable, columns: string[]): void {
  const got = table.columns.join(",");
  const want = columns.join(",");
  if (got !== want) throw new SchemaError(`expected columns ${want}, got ${got}`);
}

export function column(table: CsvTable, name: string): number[] {
  const i = table.columns.indexOf(name);
  if (i < 0) throw new SchemaError(`missing column ${name}`);
  return table.rows.map((row) => row[i]);
}
