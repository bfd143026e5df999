/** Minimal string-based SVG helpers; no DOM required. */

export interface Extent {
  min: number;
  max: number;
}

export type Scale = (value: number) => number;

export function linearScale(domain: Extent, range: Extent): Scale {
  const span = domain.max - domain.min;
  const slope = span === 0 ? 0 : (range.max - range.min) / span;
  return (value: number) => range.min + (value - domain.min) * slope;
}

export function fmt(value: number): string {
  const s = value.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function polylinePoints(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${fmt(sx(xs[i]))},${fmt(sy(ys[i]))}`);
  }
  return parts.join(" ");
}

export function tag(name: string, attrs: Record<string, string | number>, body = ""): string {
  const pairs = Object.entries(attrs)
    .map(([k, v]) => `${k}="${v}"`)
    .join(" ");
  return body === "" && name !== "text"
    ? `<${name} ${pairs}/>`
    : `<${name} ${pairs}>${body}</${name}>`;
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    "\n</svg>\n"
  );
}
