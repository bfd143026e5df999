import { readFileSync, writeFileSync } from "fs";
import { SchemaError, parseCsv } from "./csv";
import { renderLoopGallery } from "./loopGallery";
import { renderPhaseDiagram } from "./phaseDiagram";

const USAGE = `usage:
  isingtop-plots phase <real_grid.csv> <complex_grid.csv> [-o out.svg]
  isingtop-plots loops <loop.csv> [more.csv ...] [-o out.svg]`;

function splitArgs(argv: string[]): { files: string[]; output: string | null } {
  const files: string[] = [];
  let output: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "-o" || argv[i] === "--output") {
      output = argv[++i] ?? null;
      if (output === null) throw new SchemaError("-o needs a path");
    } else {
      files.push(argv[i]);
    }
  }
  return { files, output };
}

function load(path: string) {
  return parseCsv(readFileSync(path, "utf-8"));
}

export function main(argv: string[]): number {
  const command = argv[0];
  let svg: string;
  try {
    const { files, output } = splitArgs(argv.slice(1));
    if (command === "phase") {
      if (files.length !== 2) throw new SchemaError("phase needs exactly two CSV paths");
      svg = renderPhaseDiagram(load(files[0]), load(files[1]));
    } else if (command === "loops") {
      if (files.length === 0) throw new SchemaError("loops needs at least one CSV path");
      svg = renderLoopGallery(files.map(load));
    } else {
      console.error(USAGE);
      return 2;
    }
    if (output !== null) {
      writeFileSync(output, svg);
    } else {
      process.stdout.write(svg);
    }
  } catch (err) {
    if (err instanceof SchemaError || (err as NodeJS.ErrnoException).code === "ENOENT") {
      console.error(`${(err as Error).name}: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
