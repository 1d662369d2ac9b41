import { expect, test } from 'vitest';

import { niceTicks, scaleValue, tickLabel } from '../src/scale.js';

test('scaleValue maps domain ends onto range ends', () => {
  const scale = { domain: [0, 10] as [number, number], range: [50, 450] as [number, number] };
  expect(scaleValue(scale, 0)).toBe(50);
  expect(scaleValue(scale, 10)).toBe(450);
  expect(scaleValue(scale, 5)).toBe(250);
});

test('inverted ranges work for SVG y axes', () => {
  const scale = { domain: [0, 1] as [number, number], range: [300, 20] as [number, number] };
  expect(scaleValue(scale, 0)).toBe(300);
  expect(scaleValue(scale, 1)).toBe(20);
});

test('degenerate domain lands mid-range', () => {
  const scale = { domain: [2, 2] as [number, number], range: [0, 100] as [number, number] };
  expect(scaleValue(scale, 2)).toBe(50);
});

test('ticks come from the 1-2-5 ladder and cover the span', () => {
  expect(niceTicks(0, 1, 5)).toEqual([0, 0.2, 0.4, 0.6, 0.8, 1]);
  expect(niceTicks(0, 12, 6)).toEqual([0, 2, 4, 6, 8, 10, 12]);
  expect(niceTicks(0.75, 1, 4)).toEqual([0.75, 0.8, 0.85, 0.9, 0.95, 1]);
});

test('tick labels have no float noise', () => {
  expect(tickLabel(0.30000000000000004)).toBe('0.3');
  expect(tickLabel(12)).toBe('12');
});
