/** plot <kind> --in <dir> --out <file> */

import { writeFileSync } from "fs";
import { KINDS } from "./plots.js";
import { SchemaError } from "./schema.js";

function usage(): never {
  const kinds = Object.keys(KINDS).join(" | ");
  console.error(`usage: plot <${kinds}> --in <dir> --out <file.svg>`);
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length === 0) usage();
  const kind = argv[0];
  const renderer = KINDS[kind];
  if (!renderer) usage();
  let inDir: string | undefined;
  let outFile: string | undefined;
  for (let i = 1; i < argv.length; i += 2) {
    if (argv[i] === "--in") inDir = argv[i + 1];
    else if (argv[i] === "--out") outFile = argv[i + 1];
    else usage();
  }
  if (!inDir || !outFile) usage();
  try {
    const svg = renderer(inDir);
    writeFileSync(outFile, svg);
  } catch (e) {
    if (e instanceof SchemaError) {
      console.error(`schema error: ${e.message}`);
      return 1;
    }
    throw e;
  }
  console.log(`wrote ${outFile}`);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
