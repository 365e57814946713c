import fs from "node:fs";
import path from "node:path";
import { describe, expect, it } from "vitest";

import { CSV_COLUMNS, CsvFormatError, parseExperimentCsv, readExperimentCsv } from "../src/csv";

const FIXTURE = path.join(__dirname, "fixtures", "sample.csv");

const HEADER = CSV_COLUMNS.join(",");

function rowText(overrides: Partial<Record<string, string>> = {}): string {
  const defaults: Record<string, string> = {
    scheme: "game",
    p_max_dbm: "0.0",
    trial: "0",
    seed: "123",
    U_relaxed: "1.5",
    U_discrete: "1.0",
    V_relaxed: "0.25",
    V_discrete: "0.5",
    sum_rate: "1.75",
    r: "0.5",
    active_modules: "2",
    inner_iters: "40",
    outer_iters: "3",
    wall_ms: "12.5",
  };
  return CSV_COLUMNS.map((c) => overrides[c] ?? defaults[c]).join(",");
}

describe("parseExperimentCsv", () => {
  it("reads the sample fixture with typed fields", () => {
    const rows = readExperimentCsv(FIXTURE);
    expect(rows).toHaveLength(27);
    for (const row of rows) {
      expect(typeof row.scheme).toBe("string");
      expect(Number.isFinite(row.p_max_dbm)).toBe(true);
      expect(Number.isFinite(row.sum_rate)).toBe(true);
    }
    expect(new Set(rows.map((r) => r.scheme))).toEqual(
      new Set(["game", "random_pricing", "direct_only"])
    );
  });

  it("names a missing header column", () => {
    const header = CSV_COLUMNS.filter((c) => c !== "sum_rate").join(",");
    expect(() => parseExperimentCsv(`${header}\n`, "x.csv")).toThrowError(
      /missing column "sum_rate" in header of x\.csv/
    );
  });

  it("names row and column of a malformed value", () => {
    const text = [HEADER, rowText(), rowText({ sum_rate: "oops" })].join("\n");
    expect(() => parseExperimentCsv(text, "x.csv")).toThrowError(CsvFormatError);
    expect(() => parseExperimentCsv(text, "x.csv")).toThrowError(
      /malformed value "oops" in column "sum_rate" at data row 2 of x\.csv/
    );
  });

  it("rejects an empty scheme", () => {
    const text = [HEADER, rowText({ scheme: "" })].join("\n");
    expect(() => parseExperimentCsv(text)).toThrowError(
      /column "scheme" at data row 1/
    );
  });

  it("keeps flagged failure rows as NaN metrics", () => {
    const text = [
      HEADER,
      rowText({ U_relaxed: "nan", sum_rate: "nan", wall_ms: "3.0" }),
    ].join("\n");
    const rows = parseExperimentCsv(text);
    expect(rows).toHaveLength(1);
    expect(Number.isNaN(rows[0].U_relaxed)).toBe(true);
    expect(Number.isNaN(rows[0].sum_rate)).toBe(true);
    expect(rows[0].wall_ms).toBe(3.0);
  });

  it("reports unreadable files", () => {
    expect(() => readExperimentCsv("/nonexistent/results.csv")).toThrowError(
      /cannot read \/nonexistent\/results\.csv/
    );
  });
});

describe("fixture format", () => {
  it("is the simulation CLI output format", () => {
    const firstLine = fs.readFileSync(FIXTURE, "utf8").split(/\r?\n/, 1)[0];
    expect(firstLine).toBe(HEADER);
  });
});
