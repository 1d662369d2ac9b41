export type PlotKind = 'bloch_surface' | 'dynamics' | 'heatmap' | 'lines';

export class UsageError extends Error {}

/**
 * One shipped figure panel. `presets` names the simulator preset (under
 * presets/ in the repository root) whose CSV output feeds each input slot,
 * in `--csv` order. Panels that overlay several sweeps list several presets.
 */
export interface FigureDef {
  id: string;
  kind: PlotKind;
  title: string;
  presets: readonly string[];
  /** Fidelity range of the color scale; fixed per panel family so sibling panels share it. */
  colorDomain?: [number, number];
  /** Cells below this fidelity are not drawn (heatmaps only). */
  maskBelow?: number;
  /** Legend prefix per input CSV (multi-input panels only). */
  seriesLabels?: readonly string[];
}

export interface FigureSpec extends FigureDef {
  csvPaths: string[];
}

export const CSV_SCHEMAS: Record<PlotKind, readonly string[]> = {
  dynamics: ['t_us', 'fidelity', 'n_mean', 'p_g', 'p_e', 'p_r', 'p_s'],
  bloch_surface: ['theta_rad', 'phi_rad', 'fidelity'],
  heatmap: ['lambda_over_kappa', 'omega_over_kappa', 'fidelity'],
  lines: ['lambda_over_kappa', 'nbar', 'fidelity'],
};

export const MASK_THRESHOLD = 0.75;

const RESONANT_SURFACE_DOMAIN: [number, number] = [0.55, 1];
const DISPERSIVE_SURFACE_DOMAIN: [number, number] = [0.95, 1];
const HEATMAP_DOMAIN: [number, number] = [MASK_THRESHOLD, 1];

const bloch = (id: string, title: string, colorDomain: [number, number]): FigureDef => ({
  id,
  kind: 'bloch_surface',
  title,
  presets: [id],
  colorDomain,
});

const dynamics = (id: string, title: string): FigureDef => ({
  id,
  kind: 'dynamics',
  title,
  presets: [id],
});

const heatmap = (id: string, title: string): FigureDef => ({
  id,
  kind: 'heatmap',
  title,
  presets: [id],
  colorDomain: HEATMAP_DOMAIN,
  maskBelow: MASK_THRESHOLD,
});

const thermal = (id: string, title: string, presets: readonly string[]): FigureDef => ({
  id,
  kind: 'lines',
  title,
  presets,
  seriesLabels: ['resonant', 'dispersive'],
});

export const FIGURES: readonly FigureDef[] = [
  bloch('bloch-resonant-om0p6', 'Resonant transfer fidelity, Ω = 0.6λ', RESONANT_SURFACE_DOMAIN),
  bloch('bloch-resonant-om1', 'Resonant transfer fidelity, Ω = λ', RESONANT_SURFACE_DOMAIN),
  bloch('bloch-dispersive-d6', 'Dispersive transfer fidelity, δ = 6λ', DISPERSIVE_SURFACE_DOMAIN),
  bloch('bloch-dispersive-d12', 'Dispersive transfer fidelity, δ = 12λ', DISPERSIVE_SURFACE_DOMAIN),
  dynamics('dynamics-resonant-north-om0p6', 'Resonant dynamics, θ = 0, Ω = 0.6λ'),
  dynamics('dynamics-resonant-north-om3', 'Resonant dynamics, θ = 0, Ω = 3λ'),
  dynamics('dynamics-resonant-equator-om0p6', 'Resonant dynamics, θ = π/2, Ω = 0.6λ'),
  dynamics('dynamics-resonant-equator-om3', 'Resonant dynamics, θ = π/2, Ω = 3λ'),
  dynamics('dynamics-dispersive-north-d6', 'Dispersive dynamics, θ = 0, δ = 6λ'),
  dynamics('dynamics-dispersive-north-d12', 'Dispersive dynamics, θ = 0, δ = 12λ'),
  dynamics('dynamics-dispersive-equator-d6', 'Dispersive dynamics, θ = π/2, δ = 6λ'),
  dynamics('dynamics-dispersive-equator-d12', 'Dispersive dynamics, θ = π/2, δ = 12λ'),
  heatmap('heatmap-resonant-north', 'Noisy resonant fidelity, θ = 0'),
  heatmap('heatmap-dispersive-north', 'Noisy dispersive fidelity, θ = 0, δ = 12λ'),
  heatmap('heatmap-resonant-equator', 'Noisy resonant fidelity, θ = π/2'),
  heatmap('heatmap-dispersive-equator', 'Noisy dispersive fidelity, θ = π/2, δ = 12λ'),
  thermal('thermal-north', 'Thermal resonator, θ = 0', [
    'thermal-resonant-north',
    'thermal-dispersive-north',
  ]),
  thermal('thermal-equator', 'Thermal resonator, θ = π/2', [
    'thermal-resonant-equator',
    'thermal-dispersive-equator',
  ]),
];

export function figureIds(): string[] {
  return FIGURES.map((def) => def.id);
}

export function makeFigureSpec(id: string, csvPaths: string[]): FigureSpec {
  const def = FIGURES.find((candidate) => candidate.id === id);
  if (def === undefined) {
    throw new UsageError(`unknown figure '${id}'; known figures: ${figureIds().join(', ')}`);
  }
  if (csvPaths.length !== def.presets.length) {
    const sources = def.presets.join(', ');
    throw new UsageError(
      `figure '${id}' takes ${def.presets.length} csv input(s) (from ${sources}), got ${csvPaths.length}`,
    );
  }
  return { ...def, csvPaths };
}
