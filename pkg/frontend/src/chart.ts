import { LinearScale, niceTicks, scaleValue, tickLabel } from './scale.js';
import { Attrs, el, polyline, text } from './svg.js';
import { viridisHex } from './viridis.js';

export interface Box {
  left: number;
  top: number;
  width: number;
  height: number;
}

export interface Frame {
  box: Box;
  x: LinearScale;
  y: LinearScale;
}

export function makeFrame(box: Box, xDomain: [number, number], yDomain: [number, number]): Frame {
  return {
    box,
    x: { domain: xDomain, range: [box.left, box.left + box.width] },
    // SVG y grows downward, so the y range is inverted.
    y: { domain: yDomain, range: [box.top + box.height, box.top] },
  };
}

export function frameAxes(frame: Frame, xLabel: string, yLabel: string, title: string): string {
  const { box, x, y } = frame;
  const pieces: string[] = [];
  pieces.push(
    el('rect', {
      x: box.left,
      y: box.top,
      width: box.width,
      height: box.height,
      fill: 'none',
      stroke: '#444444',
      'stroke-width': 1,
    }),
  );
  for (const tick of niceTicks(x.domain[0], x.domain[1], 6)) {
    const px = scaleValue(x, tick);
    pieces.push(
      el('line', {
        x1: px,
        y1: box.top + box.height,
        x2: px,
        y2: box.top + box.height + 4,
        stroke: '#444444',
      }),
    );
    pieces.push(
      text(px, box.top + box.height + 16, tickLabel(tick), { 'text-anchor': 'middle' }),
    );
  }
  for (const tick of niceTicks(y.domain[0], y.domain[1], 5)) {
    const py = scaleValue(y, tick);
    pieces.push(el('line', { x1: box.left - 4, y1: py, x2: box.left, y2: py, stroke: '#444444' }));
    pieces.push(
      text(box.left - 7, py + 3.5, tickLabel(tick), { 'text-anchor': 'end' }),
    );
  }
  pieces.push(
    text(box.left + box.width / 2, box.top + box.height + 32, xLabel, {
      'text-anchor': 'middle',
      'font-size': 12,
    }),
  );
  pieces.push(
    text(box.left - 36, box.top + box.height / 2, yLabel, {
      'text-anchor': 'middle',
      'font-size': 12,
      transform: `rotate(-90 ${box.left - 36} ${box.top + box.height / 2})`,
    }),
  );
  pieces.push(
    text(box.left + box.width / 2, box.top - 10, title, {
      'text-anchor': 'middle',
      'font-size': 13,
      'font-weight': 'bold',
    }),
  );
  return pieces.join('');
}

export interface LegendEntry {
  label: string;
  stroke: string;
  dash: string;
}

export function legend(frame: Frame, entries: LegendEntry[], anchor: 'left' | 'right'): string {
  const lineLength = 22;
  const rowHeight = 15;
  const widest = Math.max(...entries.map((entry) => entry.label.length));
  const boxWidth = lineLength + 10 + widest * 6.4;
  const left =
    anchor === 'left'
      ? frame.box.left + 10
      : frame.box.left + frame.box.width - boxWidth - 10;
  const top = frame.box.top + 8;
  const pieces: string[] = [
    el('rect', {
      x: left,
      y: top,
      width: boxWidth,
      height: entries.length * rowHeight + 8,
      fill: '#ffffff',
      'fill-opacity': 0.85,
      stroke: '#bbbbbb',
    }),
  ];
  entries.forEach((entry, i) => {
    const y = top + 12 + i * rowHeight;
    const lineAttrs: Attrs = { stroke: entry.stroke, 'stroke-width': 1.6 };
    if (entry.dash !== '') lineAttrs['stroke-dasharray'] = entry.dash;
    pieces.push(polyline([left + 5, left + 5 + lineLength], [y, y], lineAttrs));
    pieces.push(text(left + lineLength + 10, y + 3.5, entry.label));
  });
  return pieces.join('');
}

/** Vertical color strip mapping the given fidelity domain through viridis. */
export function colorBar(box: Box, domain: [number, number], label: string): string {
  const strips = 48;
  const pieces: string[] = [];
  for (let i = 0; i < strips; i++) {
    const t = i / (strips - 1);
    const stripHeight = box.height / strips;
    pieces.push(
      el('rect', {
        x: box.left,
        y: box.top + box.height - (i + 1) * stripHeight,
        width: box.width,
        height: stripHeight + 0.5,
        fill: viridisHex(t),
      }),
    );
  }
  pieces.push(
    el('rect', {
      x: box.left,
      y: box.top,
      width: box.width,
      height: box.height,
      fill: 'none',
      stroke: '#444444',
    }),
  );
  const scale: LinearScale = {
    domain,
    range: [box.top + box.height, box.top],
  };
  for (const tick of niceTicks(domain[0], domain[1], 4)) {
    const py = scaleValue(scale, tick);
    pieces.push(
      el('line', {
        x1: box.left + box.width,
        y1: py,
        x2: box.left + box.width + 4,
        y2: py,
        stroke: '#444444',
      }),
    );
    pieces.push(text(box.left + box.width + 7, py + 3.5, tickLabel(tick)));
  }
  pieces.push(
    text(box.left + box.width / 2, box.top - 8, label, { 'text-anchor': 'middle', 'font-size': 12 }),
  );
  return pieces.join('');
}
