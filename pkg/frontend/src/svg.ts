export type Attrs = Record<string, string | number>;

export const fmt = (value: number): string => {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? '0' : String(rounded);
};

const escapeText = (text: string): string =>
  text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');

export function el(tag: string, attrs: Attrs, body = ''): string {
  const parts = Object.entries(attrs)
    .map(([key, value]) => `${key}="${typeof value === 'number' ? fmt(value) : value}"`)
    .join(' ');
  if (body === '') return `<${tag} ${parts}/>`;
  return `<${tag} ${parts}>${body}</${tag}>`;
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return el(
    'text',
    { x, y, 'font-size': 11, fill: '#222222', ...attrs },
    escapeText(content),
  );
}

export function polyline(xs: number[], ys: number[], attrs: Attrs): string {
  const points = xs.map((x, i) => `${fmt(x)},${fmt(ys[i])}`).join(' ');
  return el('polyline', { points, fill: 'none', ...attrs });
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    '<?xml version="1.0" encoding="UTF-8"?>',
    el(
      'svg',
      {
        xmlns: 'http://www.w3.org/2000/svg',
        width,
        height,
        viewBox: `0 0 ${width} ${height}`,
        'font-family': 'Helvetica, Arial, sans-serif',
      },
      el('rect', { x: 0, y: 0, width, height, fill: '#ffffff' }) + body,
    ),
    '',
  ].join('\n');
}
