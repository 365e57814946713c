import { ExperimentRow, MetricColumn } from "./csv";

/** Plot order for the known schemes; unknown ones follow alphabetically. */
export const SCHEME_ORDER = ["game", "random_pricing", "direct_only"] as const;

export interface SeriesPoint {
  p_max_dbm: number;
  /** Trials whose metric value was finite and entered the statistics. */
  n: number;
  mean: number;
  /** Sample standard deviation over sqrt(n); 0 when n < 2. */
  sem: number;
  /** Flagged failure trials (non-finite metric) excluded from the statistics. */
  dropped: number;
}

export interface SchemeSeries {
  scheme: string;
  points: SeriesPoint[];
}

export function mean(values: number[]): number {
  return values.reduce((acc, x) => acc + x, 0) / values.length;
}

export function standardError(values: number[]): number {
  const n = values.length;
  if (n < 2) {
    return 0;
  }
  const m = mean(values);
  const variance = values.reduce((acc, x) => acc + (x - m) ** 2, 0) / (n - 1);
  return Math.sqrt(variance) / Math.sqrt(n);
}

export function schemesInPlotOrder(rows: ExperimentRow[]): string[] {
  const present = [...new Set(rows.map((row) => row.scheme))];
  const known = SCHEME_ORDER.filter((s) => present.includes(s));
  const extra = present.filter((s) => !(SCHEME_ORDER as readonly string[]).includes(s)).sort();
  return [...known, ...extra];
}

/**
 * Per-scheme mean/standard-error series of one metric over the p_max grid.
 *
 * Points are sorted by p_max.  Rows with a non-finite metric value (flagged
 * failures) are excluded from the statistics and counted in `dropped`; a
 * grid point where every trial failed is omitted from the series.
 */
export function schemeSeries(
  rows: ExperimentRow[],
  metric: MetricColumn
): SchemeSeries[] {
  return schemesInPlotOrder(rows).map((scheme) => {
    const mine = rows.filter((row) => row.scheme === scheme);
    const grid = [...new Set(mine.map((row) => row.p_max_dbm))].sort((a, b) => a - b);
    const points: SeriesPoint[] = [];
    for (const p of grid) {
      const values = mine
        .filter((row) => row.p_max_dbm === p)
        .map((row) => row[metric]);
      const finite = values.filter((v) => Number.isFinite(v));
      const dropped = values.length - finite.length;
      if (finite.length === 0) {
        continue;
      }
      points.push({
        p_max_dbm: p,
        n: finite.length,
        mean: mean(finite),
        sem: standardError(finite),
        dropped,
      });
    }
    return { scheme, points };
  });
}
