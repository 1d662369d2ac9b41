export type Rgb = [number, number, number];

// 32 evenly spaced anchors of the viridis map (perceptually uniform and
// colorblind-safe). Linear interpolation between anchors stays within
// 0.01 per channel of the full 256-entry reference table.
const ANCHORS: readonly Rgb[] = [
  [0.267, 0.0049, 0.3294],
  [0.277, 0.0503, 0.3757],
  [0.2823, 0.095, 0.4173],
  [0.2826, 0.1409, 0.4575],
  [0.278, 0.1804, 0.4867],
  [0.2693, 0.2188, 0.5096],
  [0.2573, 0.2561, 0.5266],
  [0.2412, 0.2965, 0.5397],
  [0.2259, 0.3308, 0.5473],
  [0.2105, 0.3637, 0.5522],
  [0.1959, 0.3954, 0.5553],
  [0.1823, 0.4262, 0.5571],
  [0.1681, 0.46, 0.5581],
  [0.1563, 0.4896, 0.5579],
  [0.1448, 0.5191, 0.5566],
  [0.1337, 0.5485, 0.5535],
  [0.1235, 0.5817, 0.5474],
  [0.1194, 0.6111, 0.539],
  [0.1248, 0.6405, 0.5271],
  [0.1433, 0.6695, 0.5112],
  [0.1807, 0.7014, 0.4882],
  [0.2264, 0.7289, 0.4628],
  [0.2815, 0.7552, 0.4326],
  [0.3441, 0.78, 0.3974],
  [0.4129, 0.803, 0.3573],
  [0.4966, 0.8264, 0.3064],
  [0.5756, 0.8446, 0.2564],
  [0.6576, 0.8602, 0.2031],
  [0.7414, 0.8734, 0.1496],
  [0.8353, 0.886, 0.1026],
  [0.9162, 0.8961, 0.1007],
  [0.9932, 0.9062, 0.1439],
];

export function viridis(t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const position = clamped * (ANCHORS.length - 1);
  const lower = Math.floor(position);
  const upper = Math.min(lower + 1, ANCHORS.length - 1);
  const frac = position - lower;
  const a = ANCHORS[lower];
  const b = ANCHORS[upper];
  return [
    a[0] + (b[0] - a[0]) * frac,
    a[1] + (b[1] - a[1]) * frac,
    a[2] + (b[2] - a[2]) * frac,
  ];
}

export function rgbToHex([r, g, b]: Rgb): string {
  const channel = (v: number) =>
    Math.round(Math.min(1, Math.max(0, v)) * 255)
      .toString(16)
      .padStart(2, '0');
  return `#${channel(r)}${channel(g)}${channel(b)}`;
}

export const viridisHex = (t: number): string => rgbToHex(viridis(t));
