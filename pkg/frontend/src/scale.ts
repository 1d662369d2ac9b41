export interface LinearScale {
  domain: [number, number];
  range: [number, number];
}

export function scaleValue(scale: LinearScale, value: number): number {
  const [d0, d1] = scale.domain;
  const [r0, r1] = scale.range;
  if (d1 === d0) return (r0 + r1) / 2;
  return r0 + ((value - d0) / (d1 - d0)) * (r1 - r0);
}

/** Round tick positions covering [lo, hi] with steps from the 1-2-5 ladder. */
export function niceTicks(lo: number, hi: number, want = 5): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, want);
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const error = rawStep / magnitude;
  let factor = 1;
  if (error >= Math.sqrt(50)) factor = 10;
  else if (error >= Math.sqrt(10)) factor = 5;
  else if (error >= Math.SQRT2) factor = 2;
  const step = factor * magnitude;
  const ticks: number[] = [];
  const first = Math.ceil(lo / step - 1e-9) * step;
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function tickLabel(value: number): string {
  return Number(value.toPrecision(10)).toString();
}
