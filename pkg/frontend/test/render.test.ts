import fs from "node:fs";
import os from "node:os";
import path from "node:path";
import { describe, expect, it } from "vitest";

import { defaultPlotSpec } from "../src/figures";
import { render } from "../src/render";

const FIXTURE = path.join(__dirname, "fixtures", "sample.csv");

function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "irsgame-plots-"));
}

/**
 * Group the fixture's metric values by (scheme, p_max) with a split-based
 * parser, independent of the production CSV code path.
 */
function fixtureMeans(metric: string): Map<string, number> {
  const lines = fs.readFileSync(FIXTURE, "utf8").trim().split(/\r?\n/);
  const header = lines[0].split(",");
  const schemeIdx = header.indexOf("scheme");
  const pIdx = header.indexOf("p_max_dbm");
  const metricIdx = header.indexOf(metric);
  const groups = new Map<string, number[]>();
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const value = Number(cells[metricIdx]);
    if (!Number.isFinite(value)) continue;
    const key = `${cells[schemeIdx]}|${Number(cells[pIdx])}`;
    groups.set(key, [...(groups.get(key) ?? []), value]);
  }
  const means = new Map<string, number>();
  for (const [key, values] of groups) {
    means.set(key, values.reduce((a, b) => a + b, 0) / values.length);
  }
  return means;
}

describe("render", () => {
  it("emits four figures with sidecar tables from the sample run", () => {
    const out = tmpDir();
    const result = render(defaultPlotSpec(FIXTURE, out));
    expect(result.warnings).toEqual([]);
    const names = ["bs-utility", "irs-utility", "sum-rate", "price"];
    expect(result.files).toEqual(
      names.flatMap((n) => [path.join(out, `${n}.svg`), path.join(out, `${n}.csv`)])
    );
    for (const file of result.files) {
      expect(fs.statSync(file).size).toBeGreaterThan(0);
    }
    const svg = fs.readFileSync(path.join(out, "sum-rate.svg"), "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.match(/<polyline/g)).toHaveLength(3);
  });

  it("writes sidecar means that match independently computed CSV means", () => {
    const out = tmpDir();
    render(defaultPlotSpec(FIXTURE, out));
    const figures: Array<[string, string]> = [
      ["bs-utility", "U_relaxed"],
      ["irs-utility", "V_relaxed"],
      ["sum-rate", "sum_rate"],
      ["price", "r"],
    ];
    let checked = 0;
    for (const [name, metric] of figures) {
      const expected = fixtureMeans(metric);
      const lines = fs
        .readFileSync(path.join(out, `${name}.csv`), "utf8")
        .trim()
        .split("\n");
      expect(lines[0]).toBe(
        "figure,metric,scheme,p_max_dbm,n_trials,mean,standard_error,dropped_rows"
      );
      for (const line of lines.slice(1)) {
        const [figure, metricCol, scheme, p, n, mean] = line.split(",");
        expect(figure).toBe(name);
        expect(metricCol).toBe(metric);
        const want = expected.get(`${scheme}|${Number(p)}`);
        expect(want).toBeDefined();
        expect(Math.abs(Number(mean) - (want as number))).toBeLessThanOrEqual(1e-9);
        expect(Number(n)).toBeGreaterThan(0);
        checked += 1;
      }
      // every (scheme, p_max) group must appear in the table
      expect(lines.length - 1).toBe(expected.size);
    }
    // 3 schemes x 3 grid points x 4 figures
    expect(checked).toBe(36);
  });

  it("is deterministic: two renders give byte-identical files", () => {
    const out1 = tmpDir();
    const out2 = tmpDir();
    const first = render(defaultPlotSpec(FIXTURE, out1));
    const second = render(defaultPlotSpec(FIXTURE, out2));
    expect(first.files.length).toBe(second.files.length);
    for (let i = 0; i < first.files.length; i++) {
      const a = fs.readFileSync(first.files[i]);
      const b = fs.readFileSync(second.files[i]);
      expect(a.equals(b)).toBe(true);
    }
  });

  it("warns when a standard scheme is absent but still renders", () => {
    const out = tmpDir();
    const lines = fs.readFileSync(FIXTURE, "utf8").trim().split(/\r?\n/);
    const filtered = [
      lines[0],
      ...lines.slice(1).filter((l) => !l.startsWith("direct_only,")),
    ].join("\n");
    const csvPath = path.join(out, "partial.csv");
    fs.writeFileSync(csvPath, filtered + "\n", "utf8");
    const result = render(defaultPlotSpec(csvPath, path.join(out, "figs")));
    expect(result.warnings).toHaveLength(4);
    for (const warning of result.warnings) {
      expect(warning).toMatch(/scheme "direct_only" absent from input/);
    }
    expect(result.files).toHaveLength(8);
    const table = fs.readFileSync(path.join(out, "figs", "price.csv"), "utf8");
    expect(table).not.toContain("direct_only");
  });

  it("rejects image formats other than svg", () => {
    const spec = { ...defaultPlotSpec(FIXTURE, tmpDir()), imageFormat: "png" };
    expect(() => render(spec as never)).toThrowError(/unsupported image format "png"/);
  });
});
