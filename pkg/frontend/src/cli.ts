#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { CsvFormatError } from "./csv";
import { defaultPlotSpec } from "./figures";
import { render } from "./render";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .usage("$0 <csv> [options]", "Render the experiment CSV as four SVG figures")
    .positional("csv", {
      describe: "experiment results CSV written by the simulation CLI",
      type: "string",
      demandOption: true,
    })
    .option("out-dir", {
      alias: "o",
      describe: "directory for the figures and sidecar tables",
      type: "string",
      default: "figures",
    })
    .strict()
    .exitProcess(false)
    .parseSync();

  try {
    const result = render(defaultPlotSpec(args.csv as string, args.outDir));
    for (const warning of result.warnings) {
      console.error(`warning: ${warning}`);
    }
    for (const file of result.files) {
      console.log(file);
    }
    return 0;
  } catch (err) {
    if (err instanceof CsvFormatError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
