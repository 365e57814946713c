import { ExperimentRow, METRIC_COLUMNS, MetricColumn } from "./csv";
import { SCHEME_ORDER, SchemeSeries, schemeSeries } from "./stats";

export interface FigureSpec {
  /** Basename of the emitted files (<name>.svg and <name>.csv). */
  name: string;
  metric: MetricColumn;
  title: string;
  yLabel: string;
}

/** The four standard figures: follower utility, operator revenue, rate, price. */
export const DEFAULT_FIGURES: FigureSpec[] = [
  {
    name: "bs-utility",
    metric: "U_relaxed",
    title: "Base-station utility vs transmit power budget",
    yLabel: "utility (bit/s/Hz)",
  },
  {
    name: "irs-utility",
    metric: "V_relaxed",
    title: "Surface-operator revenue vs transmit power budget",
    yLabel: "revenue",
  },
  {
    name: "sum-rate",
    metric: "sum_rate",
    title: "Sum rate vs transmit power budget",
    yLabel: "sum rate (bit/s/Hz)",
  },
  {
    name: "price",
    metric: "r",
    title: "Module price vs transmit power budget",
    yLabel: "price per module",
  },
];

export interface PlotSpec {
  inputCsv: string;
  outputDir: string;
  figures: FigureSpec[];
  imageFormat: "svg";
}

export function defaultPlotSpec(inputCsv: string, outputDir: string): PlotSpec {
  return { inputCsv, outputDir, figures: DEFAULT_FIGURES, imageFormat: "svg" };
}

export interface FigureData {
  spec: FigureSpec;
  series: SchemeSeries[];
  warnings: string[];
}

/**
 * Statistics behind one figure: per-scheme mean/standard-error lines.
 *
 * Schemes from the standard trio that are absent from the CSV are omitted
 * with a warning; schemes whose series lost every point to flagged failures
 * are likewise omitted with a warning.
 */
export function buildFigureData(
  rows: ExperimentRow[],
  spec: FigureSpec
): FigureData {
  if (!(METRIC_COLUMNS as readonly string[]).includes(spec.metric)) {
    throw new Error(
      `figure "${spec.name}" references unknown metric column "${spec.metric}"`
    );
  }
  const warnings: string[] = [];
  const present = new Set(rows.map((row) => row.scheme));
  for (const scheme of SCHEME_ORDER) {
    if (!present.has(scheme)) {
      warnings.push(`figure "${spec.name}": scheme "${scheme}" absent from input; omitted`);
    }
  }
  const series = schemeSeries(rows, spec.metric).filter((s) => {
    if (s.points.length === 0) {
      warnings.push(
        `figure "${spec.name}": scheme "${s.scheme}" has no successful trials; omitted`
      );
      return false;
    }
    return true;
  });
  return { spec, series, warnings };
}
