/** Vector backend: serializes a Layout as a standalone SVG document. */

import { Layout } from "./figure";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const FONT = 'font-family="Helvetica, Arial, sans-serif"';

export function renderSvg(layout: Layout): string {
  const { plot } = layout;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${layout.width}" ` +
      `height="${layout.height}" viewBox="0 0 ${layout.width} ${layout.height}">`,
  );
  parts.push(`<rect width="${layout.width}" height="${layout.height}" fill="white"/>`);
  parts.push(
    `<text x="${layout.width / 2}" y="24" text-anchor="middle" ${FONT} ` +
      `font-size="15">${esc(layout.title)}</text>`,
  );

  for (const tick of layout.xTicks) {
    parts.push(
      `<line x1="${tick.pixel}" y1="${plot.y0}" x2="${tick.pixel}" y2="${plot.y1}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${tick.pixel}" y="${plot.y1 + 18}" text-anchor="middle" ${FONT} ` +
        `font-size="11">${esc(tick.label)}</text>`,
    );
  }
  for (const tick of layout.yTicks) {
    parts.push(
      `<line x1="${plot.x0}" y1="${tick.pixel}" x2="${plot.x1}" y2="${tick.pixel}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${plot.x0 - 6}" y="${tick.pixel + 4}" text-anchor="end" ${FONT} ` +
        `font-size="11">${esc(tick.label)}</text>`,
    );
  }
  parts.push(
    `<rect x="${plot.x0}" y="${plot.y0}" width="${plot.x1 - plot.x0}" ` +
      `height="${plot.y1 - plot.y0}" fill="none" stroke="#333333" stroke-width="1"/>`,
    `<text x="${(plot.x0 + plot.x1) / 2}" y="${layout.height - 10}" ` +
      `text-anchor="middle" ${FONT} font-size="12">${esc(layout.xLabel)}</text>`,
  );

  for (const s of layout.series) {
    const pts = s.points.map((p) => `${p.px.toFixed(2)},${p.py.toFixed(2)}`).join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${s.color}" stroke-width="2"/>`,
    );
  }

  // legend, one row per curve, named after its CSV column
  layout.series.forEach((s, i) => {
    const lx = plot.x0 + 12;
    const ly = plot.y0 + 14 + 18 * i;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 24}" y2="${ly}" stroke="${s.color}" ` +
        `stroke-width="3"/>`,
      `<text x="${lx + 30}" y="${ly + 4}" ${FONT} font-size="12">${esc(s.name)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
