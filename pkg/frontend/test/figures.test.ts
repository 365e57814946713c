import { describe, expect, it } from "vitest";

import { ExperimentRow } from "../src/csv";
import { DEFAULT_FIGURES, FigureSpec, buildFigureData } from "../src/figures";
import { renderFigureSvg, sidecarCsv } from "../src/svg";

function row(
  scheme: string,
  p_max_dbm: number,
  value: number,
  trial = 0
): ExperimentRow {
  return {
    scheme,
    p_max_dbm,
    trial,
    seed: 0,
    U_relaxed: value,
    U_discrete: value,
    V_relaxed: value / 2,
    V_discrete: value / 2,
    sum_rate: value,
    r: 1,
    active_modules: 0,
    inner_iters: 1,
    outer_iters: 1,
    wall_ms: 1,
  };
}

const FULL_TRIO = [
  row("game", 0, 3),
  row("random_pricing", 0, 2),
  row("direct_only", 0, 1),
];

describe("buildFigureData", () => {
  it("builds all four standard figures without warnings on full input", () => {
    for (const spec of DEFAULT_FIGURES) {
      const data = buildFigureData(FULL_TRIO, spec);
      expect(data.warnings).toEqual([]);
      expect(data.series.map((s) => s.scheme)).toEqual([
        "game",
        "random_pricing",
        "direct_only",
      ]);
    }
  });

  it("warns about absent standard schemes", () => {
    const data = buildFigureData(
      FULL_TRIO.filter((r) => r.scheme !== "direct_only"),
      DEFAULT_FIGURES[0]
    );
    expect(data.warnings).toHaveLength(1);
    expect(data.warnings[0]).toMatch(/scheme "direct_only" absent from input/);
    expect(data.series.map((s) => s.scheme)).toEqual(["game", "random_pricing"]);
  });

  it("omits a scheme whose trials all failed, with a warning", () => {
    const rows = [...FULL_TRIO, row("game", 0, NaN, 1)];
    rows[0] = row("game", 0, NaN, 0);
    const data = buildFigureData(rows, DEFAULT_FIGURES[0]);
    expect(data.warnings).toHaveLength(1);
    expect(data.warnings[0]).toMatch(/scheme "game" has no successful trials/);
    expect(data.series.map((s) => s.scheme)).toEqual(["random_pricing", "direct_only"]);
  });

  it("rejects an unknown metric and names figure and column", () => {
    const bad = { ...DEFAULT_FIGURES[0], metric: "throughput" } as unknown as FigureSpec;
    expect(() => buildFigureData(FULL_TRIO, bad)).toThrowError(
      /figure "bs-utility" references unknown metric column "throughput"/
    );
  });
});

describe("renderFigureSvg", () => {
  it("renders a single scheme / single point / single trial without crashing", () => {
    const data = buildFigureData([row("game", 0, 1.5)], DEFAULT_FIGURES[2]);
    const svg = renderFigureSvg(data);
    expect(svg).toContain("<svg");
    expect(svg).toContain("</svg>");
    expect(svg).toContain("circle");
    expect(svg).toContain("Sum rate vs transmit power budget");
  });

  it("draws one polyline and a legend entry per scheme", () => {
    const rows = [
      ...FULL_TRIO,
      row("game", 5, 4),
      row("random_pricing", 5, 3),
      row("direct_only", 5, 2),
    ];
    const svg = renderFigureSvg(buildFigureData(rows, DEFAULT_FIGURES[0]));
    expect(svg.match(/<polyline/g)).toHaveLength(3);
    for (const scheme of ["game", "random_pricing", "direct_only"]) {
      expect(svg).toContain(`>${scheme}</text>`);
    }
  });
});

describe("sidecarCsv", () => {
  it("tabulates every point of every series", () => {
    const rows = [
      row("game", -5, 1, 0),
      row("game", -5, 3, 1),
      row("game", 5, 5, 0),
      row("direct_only", -5, 0.5, 0),
    ];
    const text = sidecarCsv(buildFigureData(rows, DEFAULT_FIGURES[2]));
    const lines = text.trim().split("\n");
    expect(lines[0]).toBe(
      "figure,metric,scheme,p_max_dbm,n_trials,mean,standard_error,dropped_rows"
    );
    expect(lines).toHaveLength(4);
    expect(lines[1]).toBe("sum-rate,sum_rate,game,-5,2,2,1,0");
    expect(lines[2]).toBe("sum-rate,sum_rate,game,5,1,5,0,0");
    expect(lines[3]).toBe("sum-rate,sum_rate,direct_only,-5,1,0.5,0,0");
  });
});
