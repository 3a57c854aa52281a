// View-model derivation. Every numeric field on these views is copied
// verbatim from the last service response; the only local work is display
// formatting (toFixed, percentages for bar widths). No ratio, weight or
// inconsistency arithmetic happens in the frontend.

import type { Analysis, SessionState, StepResponse } from "./api.js";

export interface CellView {
  i: number;
  j: number;
  value: number; // verbatim matrix entry from the service
  display: string;
  editable: boolean; // upper-triangle judgments only; reciprocals are tied
  judged: boolean;
  highlighted: boolean; // cell belongs to the worst triad
  diagonal: boolean;
}

export interface WeightBar {
  label: string;
  value: number; // verbatim analysis weight
  percent: number; // formatting-only: value * 100 for the bar width
  display: string;
}

export interface TriadHighlight {
  i: number;
  j: number;
  k: number;
  deviation: number; // verbatim worst-triad deviation
  orthoK: number | null; // verbatim k of the triad's cyclic factor
}

export interface SessionView {
  sessionId: string;
  labels: string[];
  revision: number;
  matrix: number[][];
  cells: CellView[][];
  gauge: number; // verbatim analysis.inconsistency
  gaugeDisplay: string;
  highlight: TriadHighlight | null;
  weights: number[]; // verbatim analysis.weights
  weightBars: WeightBar[];
  ranking: string[];
  reconstructionError: number;
  unjudged: Array<[number, number]>;
  selected: { i: number; j: number } | null;
}

export interface StepComparison {
  revision: number;
  beforeMatrix: number[][]; // the matrix the view held before the step
  afterMatrix: number[][]; // verbatim step-response matrix
  beforeWeights: number[];
  afterWeights: number[];
  beforeInconsistency: number; // verbatim step.inconsistency_before
  afterInconsistency: number; // verbatim step.inconsistency_after
  maxChange: number;
  analysis: Analysis;
}

export function formatValue(value: number): string {
  if (value === Math.round(value) && Math.abs(value) < 1e6) {
    return String(value);
  }
  return value.toPrecision(4);
}

function unjudgedPairs(analysis: Analysis, session: SessionState): Array<[number, number]> {
  const source = analysis.unjudged ?? session.unjudged ?? [];
  return source.map((pair) => [pair[0] ?? 0, pair[1] ?? 0]);
}

function triadCells(triad: TriadHighlight | null): Set<string> {
  if (triad === null) {
    return new Set();
  }
  const { i, j, k } = triad;
  return new Set([`${i},${j}`, `${i},${k}`, `${j},${k}`, `${j},${i}`, `${k},${i}`, `${k},${j}`]);
}

export function deriveSessionView(
  session: SessionState,
  analysis: Analysis,
  selected: { i: number; j: number } | null = null,
): SessionView {
  const highlight: TriadHighlight | null =
    analysis.worst_triad === null
      ? null
      : {
          i: analysis.worst_triad.i,
          j: analysis.worst_triad.j,
          k: analysis.worst_triad.k,
          deviation: analysis.worst_triad.deviation,
          orthoK: analysis.decomposition === null ? null : analysis.decomposition.k,
        };

  const unjudged = unjudgedPairs(analysis, session);
  const unjudgedKeys = new Set(unjudged.map(([i, j]) => `${i},${j}`));
  const highlighted = triadCells(highlight);

  const cells = session.matrix.map((row, i) =>
    row.map((value, j): CellView => {
      const upper: [number, number] = i < j ? [i, j] : [j, i];
      return {
        i,
        j,
        value,
        display: formatValue(value),
        editable: i !== j,
        judged: i !== j && !unjudgedKeys.has(`${upper[0]},${upper[1]}`),
        highlighted: highlighted.has(`${i},${j}`),
        diagonal: i === j,
      };
    }),
  );

  const weightBars = analysis.weights.map(
    (value, index): WeightBar => ({
      label: session.labels[index] ?? `#${index}`,
      value,
      percent: value * 100,
      display: value.toFixed(2),
    }),
  );

  return {
    sessionId: session.id,
    labels: session.labels,
    revision: session.revision,
    matrix: session.matrix,
    cells,
    gauge: analysis.inconsistency,
    gaugeDisplay: analysis.inconsistency.toFixed(4),
    highlight,
    weights: analysis.weights,
    weightBars,
    ranking: analysis.ranking,
    reconstructionError: analysis.reconstruction_error,
    unjudged,
    selected,
  };
}

export function deriveStepComparison(previous: SessionView, step: StepResponse): StepComparison {
  return {
    revision: step.revision,
    beforeMatrix: previous.matrix,
    afterMatrix: step.matrix,
    beforeWeights: previous.weights,
    afterWeights: step.analysis.weights,
    beforeInconsistency: step.step.inconsistency_before,
    afterInconsistency: step.step.inconsistency_after,
    maxChange: step.step.max_change,
    analysis: step.analysis,
  };
}

export function viewAfterEntry(
  previous: SessionView,
  response: { revision: number; matrix: number[][]; analysis: Analysis },
): SessionView {
  const session: SessionState = {
    id: previous.sessionId,
    labels: previous.labels,
    matrix: response.matrix,
    revision: response.revision,
    history: [],
  };
  return deriveSessionView(session, response.analysis, previous.selected);
}

// Judgment slider: positions 0..1 map onto ratios in [min, max] on a log
// scale. This converts user input; it never produces displayed analysis.
export const SLIDER_MIN = 1 / 9;
export const SLIDER_MAX = 9;

export function sliderToValue(position: number, min = SLIDER_MIN, max = SLIDER_MAX): number {
  const clamped = Math.min(1, Math.max(0, position));
  return Math.exp(Math.log(min) + clamped * (Math.log(max) - Math.log(min)));
}

export function valueToSlider(value: number, min = SLIDER_MIN, max = SLIDER_MAX): number {
  const clamped = Math.min(max, Math.max(min, value));
  return (Math.log(clamped) - Math.log(min)) / (Math.log(max) - Math.log(min));
}
