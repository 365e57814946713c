import fs from "node:fs";
import Papa from "papaparse";

/** Column set of the experiment CSV, in file order. */
export const CSV_COLUMNS = [
  "scheme",
  "p_max_dbm",
  "trial",
  "seed",
  "U_relaxed",
  "U_discrete",
  "V_relaxed",
  "V_discrete",
  "sum_rate",
  "r",
  "active_modules",
  "inner_iters",
  "outer_iters",
  "wall_ms",
] as const;

export type CsvColumn = (typeof CSV_COLUMNS)[number];

/** Metric columns that can be plotted against p_max_dbm. */
export const METRIC_COLUMNS = [
  "U_relaxed",
  "U_discrete",
  "V_relaxed",
  "V_discrete",
  "sum_rate",
  "r",
  "active_modules",
  "inner_iters",
  "outer_iters",
  "wall_ms",
] as const;

export type MetricColumn = (typeof METRIC_COLUMNS)[number];

export interface ExperimentRow {
  scheme: string;
  p_max_dbm: number;
  trial: number;
  seed: number;
  U_relaxed: number;
  U_discrete: number;
  V_relaxed: number;
  V_discrete: number;
  sum_rate: number;
  r: number;
  active_modules: number;
  inner_iters: number;
  outer_iters: number;
  wall_ms: number;
}

/** Raised for any structural problem in the input; names row and column. */
export class CsvFormatError extends Error {}

function parseNumber(
  raw: string,
  column: string,
  dataRow: number,
  source: string
): number {
  const trimmed = raw.trim();
  // Failure rows are flagged with nan metrics; keep them parseable.
  if (/^nan$/i.test(trimmed)) {
    return NaN;
  }
  const value = Number(trimmed);
  if (trimmed === "" || Number.isNaN(value)) {
    throw new CsvFormatError(
      `malformed value ${JSON.stringify(raw)} in column "${column}" at data row ${dataRow} of ${source}`
    );
  }
  return value;
}

/**
 * Parse the experiment CSV text into typed rows.
 *
 * The header must contain every expected column; every data row must have a
 * value for each of them, numeric except for "scheme".  Metric fields of
 * flagged failure rows hold the literal string "nan" and come back as NaN.
 */
export function parseExperimentCsv(
  text: string,
  source = "csv input"
): ExperimentRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    const where = e.row === undefined ? "" : ` at data row ${e.row + 1}`;
    throw new CsvFormatError(`${e.message}${where} of ${source}`);
  }
  const header = parsed.meta.fields ?? [];
  for (const column of CSV_COLUMNS) {
    if (!header.includes(column)) {
      throw new CsvFormatError(`missing column "${column}" in header of ${source}`);
    }
  }
  return parsed.data.map((record, i) => {
    const dataRow = i + 1;
    const scheme = (record.scheme ?? "").trim();
    if (scheme === "") {
      throw new CsvFormatError(
        `malformed value "" in column "scheme" at data row ${dataRow} of ${source}`
      );
    }
    const row: Record<string, string | number> = { scheme };
    for (const column of CSV_COLUMNS) {
      if (column === "scheme") continue;
      const raw = record[column];
      if (raw === undefined) {
        throw new CsvFormatError(
          `missing value in column "${column}" at data row ${dataRow} of ${source}`
        );
      }
      row[column] = parseNumber(raw, column, dataRow, source);
    }
    return row as unknown as ExperimentRow;
  });
}

export function readExperimentCsv(path: string): ExperimentRow[] {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf8");
  } catch (err) {
    throw new CsvFormatError(`cannot read ${path}: ${(err as Error).message}`);
  }
  return parseExperimentCsv(text, path);
}
