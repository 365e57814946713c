import fs from "node:fs";
import path from "node:path";

import { readExperimentCsv } from "./csv";
import { PlotSpec, buildFigureData } from "./figures";
import { renderFigureSvg, sidecarCsv } from "./svg";

export interface RenderResult {
  /** Written files, figure images and sidecar tables, in emit order. */
  files: string[];
  warnings: string[];
}

/**
 * Render every figure listed in the plot spec from the experiment CSV.
 *
 * Pure function of the input file: the same CSV always yields byte-identical
 * images and sidecar tables.  Each figure <name> emits <name>.svg and
 * <name>.csv into the output directory.
 */
export function render(spec: PlotSpec): RenderResult {
  if (spec.imageFormat !== "svg") {
    throw new Error(`unsupported image format "${spec.imageFormat}" (only svg)`);
  }
  const rows = readExperimentCsv(spec.inputCsv);
  fs.mkdirSync(spec.outputDir, { recursive: true });
  const files: string[] = [];
  const warnings: string[] = [];
  for (const figure of spec.figures) {
    const data = buildFigureData(rows, figure);
    warnings.push(...data.warnings);
    const svgPath = path.join(spec.outputDir, `${figure.name}.svg`);
    const tablePath = path.join(spec.outputDir, `${figure.name}.csv`);
    fs.writeFileSync(svgPath, renderFigureSvg(data), "utf8");
    fs.writeFileSync(tablePath, sidecarCsv(data), "utf8");
    files.push(svgPath, tablePath);
  }
  return { files, warnings };
}
