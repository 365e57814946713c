import { FigureData } from "./figures";
import { SchemeSeries } from "./stats";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 44, right: 24, bottom: 54, left: 76 };

const SCHEME_COLORS: Record<string, string> = {
  game: "#1f77b4",
  random_pricing: "#ff7f0e",
  direct_only: "#2ca02c",
};
const EXTRA_COLORS = ["#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

function colorFor(scheme: string, index: number): string {
  return SCHEME_COLORS[scheme] ?? EXTRA_COLORS[index % EXTRA_COLORS.length];
}

function fmt(x: number): string {
  return x.toFixed(2);
}

function tickLabel(x: number): string {
  const label = Number(x.toPrecision(4));
  return String(label);
}

interface Scale {
  (value: number): number;
  domain: [number, number];
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const scale = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

function padDomain(lo: number, hi: number): [number, number] {
  if (lo === hi) {
    const pad = Math.abs(lo) * 0.1 || 1;
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * 0.06;
  return [lo - pad, hi + pad];
}

function extent(series: SchemeSeries[], pick: (p: { mean: number; sem: number; p_max_dbm: number }) => number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const point of s.points) {
      for (const v of pick(point)) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!Number.isFinite(lo)) {
    // empty figure: arbitrary fixed domain
    return [0, 1];
  }
  return [lo, hi];
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function ticks(domain: [number, number], count: number): number[] {
  const [lo, hi] = domain;
  return Array.from({ length: count }, (_, i) => lo + ((hi - lo) * i) / (count - 1));
}

/** Deterministic standalone SVG: per-scheme mean lines with ±1 SEM bands. */
export function renderFigureSvg(data: FigureData): string {
  const { spec, series } = data;
  const xDomain = padDomain(...extent(series, (p) => [p.p_max_dbm]));
  const yDomain = padDomain(...extent(series, (p) => [p.mean - p.sem, p.mean + p.sem]));
  const x = linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`
  );

  // axes with ticks and grid lines
  const xTickValues =
    new Set(series.flatMap((s) => s.points.map((p) => p.p_max_dbm))).size <= 8
      ? [...new Set(series.flatMap((s) => s.points.map((p) => p.p_max_dbm)))].sort(
          (a, b) => a - b
        )
      : ticks(xDomain, 6);
  const yTickValues = ticks(yDomain, 5);
  for (const t of yTickValues) {
    const py = y(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(py)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(py)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${tickLabel(t)}</text>`
    );
  }
  for (const t of xTickValues) {
    const px = x(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${HEIGHT - MARGIN.bottom}" x2="${fmt(px)}" y2="${HEIGHT - MARGIN.bottom + 5}" stroke="#333333"/>`,
      `<text x="${fmt(px)}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${tickLabel(t)}</text>`
    );
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${HEIGHT - MARGIN.bottom}" x2="${WIDTH - MARGIN.right}" y2="${HEIGHT - MARGIN.bottom}" stroke="#333333"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${HEIGHT - MARGIN.bottom}" stroke="#333333"/>`,
    `<text x="${WIDTH / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="12">transmit power budget p_max (dBm)</text>`,
    `<text x="20" y="${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 20 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})">${esc(spec.yLabel)}</text>`
  );

  series.forEach((s, i) => {
    const color = colorFor(s.scheme, i);
    if (s.points.length > 1) {
      const upper = s.points.map((p) => `${fmt(x(p.p_max_dbm))},${fmt(y(p.mean + p.sem))}`);
      const lower = [...s.points]
        .reverse()
        .map((p) => `${fmt(x(p.p_max_dbm))},${fmt(y(p.mean - p.sem))}`);
      parts.push(
        `<polygon points="${[...upper, ...lower].join(" ")}" fill="${color}" fill-opacity="0.15" stroke="none"/>`
      );
      const line = s.points.map((p) => `${fmt(x(p.p_max_dbm))},${fmt(y(p.mean))}`);
      parts.push(
        `<polyline points="${line.join(" ")}" fill="none" stroke="${color}" stroke-width="1.8"/>`
      );
    }
    for (const p of s.points) {
      parts.push(
        `<circle cx="${fmt(x(p.p_max_dbm))}" cy="${fmt(y(p.mean))}" r="3" fill="${color}"/>`
      );
      if (s.points.length === 1 && p.sem > 0) {
        // lone point: vertical error bar instead of a band
        parts.push(
          `<line x1="${fmt(x(p.p_max_dbm))}" y1="${fmt(y(p.mean - p.sem))}" x2="${fmt(x(p.p_max_dbm))}" y2="${fmt(y(p.mean + p.sem))}" stroke="${color}" stroke-width="1.5"/>`
        );
      }
    }
  });

  // legend, top-left inside the plot area
  series.forEach((s, i) => {
    const ly = MARGIN.top + 14 + 18 * i;
    const color = colorFor(s.scheme, i);
    parts.push(
      `<line x1="${MARGIN.left + 10}" y1="${ly - 4}" x2="${MARGIN.left + 34}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${MARGIN.left + 40}" y="${ly}" font-size="11">${esc(s.scheme)}</text>`
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Numeric table of exactly what the figure shows.  Means and standard errors
 * carry full precision (shortest round-trip decimal), so correctness checks
 * read this file instead of diffing images.
 */
export function sidecarCsv(data: FigureData): string {
  const lines = ["figure,metric,scheme,p_max_dbm,n_trials,mean,standard_error,dropped_rows"];
  for (const s of data.series) {
    for (const p of s.points) {
      lines.push(
        [
          data.spec.name,
          data.spec.metric,
          s.scheme,
          String(p.p_max_dbm),
          String(p.n),
          String(p.mean),
          String(p.sem),
          String(p.dropped),
        ].join(",")
      );
    }
  }
  return lines.join("\n") + "\n";
}
