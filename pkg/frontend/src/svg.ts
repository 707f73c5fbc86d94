/**
 * Minimal hand-rolled SVG chart primitives shared by the plot module.
 * No chart library: the figures here are simple enough that a few
 * helpers for scales, axes and polylines cover everything.
 */

export const W = 640;
export const H = 400;
export const MARGIN = { left: 60, right: 20, top: 36, bottom: 56 };

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function niceTicks(min: number, max: number, count = 5): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(Number(v.toFixed(10)));
  }
  return ticks;
}

/** Symmetric-log forward transform; linear near zero, log10 beyond. */
export function symlog(v: number): number {
  return Math.sign(v) * Math.log10(1 + Math.abs(v));
}

export interface Scale {
  (v: number): number;
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

// ---------------------------------------------------------------------------
// Document assembly
// ---------------------------------------------------------------------------

export class SvgDoc {
  private parts: string[] = [];

  constructor(title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
        `viewBox="0 0 ${W} ${H}" font-family="sans-serif" font-size="11">`,
      `<rect width="${W}" height="${H}" fill="white"/>`,
      `<text x="${W / 2}" y="20" text-anchor="middle" font-size="14">${esc(title)}</text>`,
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): void {
    this.parts.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" ` +
        `y2="${y2.toFixed(1)}" stroke="${stroke}" ${extra}/>`,
    );
  }

  text(x: number, y: number, s: string, extra = ""): void {
    this.parts.push(`<text x="${x.toFixed(1)}" y="${y.toFixed(1)}" ${extra}>${esc(s)}</text>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.parts.push(
      `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${w.toFixed(1)}" ` +
        `height="${h.toFixed(1)}" fill="${fill}" ${extra}/>`,
    );
  }

  /** Polyline with circle markers; tagged with a class for structural tests. */
  series(pts: [number, number][], color: string, label: string): void {
    const attrs = `class="series" data-label="${esc(label)}"`;
    if (pts.length === 0) {
      this.parts.push(`<g ${attrs}></g>`);
      return;
    }
    const d = pts.map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`).join(" ");
    const dots = pts
      .map(([x, y]) => `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="2.5" fill="${color}"/>`)
      .join("");
    this.parts.push(
      `<g ${attrs}><polyline points="${d}" fill="none" stroke="${color}" stroke-width="1.5"/>${dots}</g>`,
    );
  }

  finish(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

// ---------------------------------------------------------------------------
// Axes
// ---------------------------------------------------------------------------

export function drawAxes(
  doc: SvgDoc,
  xLabel: string,
  yLabel: string,
  xTicks: { pos: number; label: string }[],
  yTicks: { pos: number; label: string }[],
): void {
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = H - MARGIN.bottom;
  const y1 = MARGIN.top;
  doc.line(x0, y0, x1, y0, "#333");
  doc.line(x0, y0, x0, y1, "#333");
  for (const t of xTicks) {
    doc.line(t.pos, y0, t.pos, y0 + 4, "#333");
    doc.text(t.pos, y0 + 16, t.label, 'text-anchor="middle"');
  }
  for (const t of yTicks) {
    doc.line(x0 - 4, t.pos, x0, t.pos, "#333");
    doc.line(x0, t.pos, x1, t.pos, "#eee");
    doc.text(x0 - 7, t.pos + 3, t.label, 'text-anchor="end"');
  }
  doc.text((x0 + x1) / 2, H - 8, xLabel, 'text-anchor="middle"');
  doc.raw(
    `<text x="14" y="${(y0 + y1) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${(y0 + y1) / 2})">${esc(yLabel)}</text>`,
  );
}

export function drawLegend(doc: SvgDoc, entries: { color: string; label: string }[]): void {
  let y = MARGIN.top + 6;
  for (const e of entries) {
    doc.rect(W - MARGIN.right - 150, y - 8, 10, 10, e.color);
    doc.text(W - MARGIN.right - 136, y, e.label);
    y += 16;
  }
}
