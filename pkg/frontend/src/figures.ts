/** Figure analogues built from the simulation CSV and snapshot outputs. */

import { column, crossingTime, CsvFormatError, parseCsv } from "./csv.js";
import { readSnapshot } from "./snapshot.js";
import { heatMap, linePlot, Series } from "./svg.js";

export interface LabeledText {
  label: string;
  text: string;
}

/** Solitary-wave profiles Q(x), one curve per input profile CSV. */
export function renderProfiles(inputs: LabeledText[]): string {
  const series: Series[] = inputs.map(({ label, text }) => {
    const table = parseCsv(text);
    return { label, x: column(table, "x"), y: column(table, "Q") };
  });
  return linePlot(series, {
    title: "Line solitary wave profiles",
    xLabel: "x",
    yLabel: "Q(x)",
  });
}

/** A named diagnostics column against time, one curve per run. */
export function renderTimeSeries(inputs: LabeledText[], columnName: string): string {
  const series: Series[] = inputs.map(({ label, text }) => {
    const table = parseCsv(text);
    return { label, x: column(table, "t"), y: column(table, columnName) };
  });
  return linePlot(series, {
    title: `${columnName} over time`,
    xLabel: "t",
    yLabel: columnName,
  });
}

export interface CrossingInput {
  /** Value of the swept parameter (e.g. dispersion exponent or speed). */
  param: number;
  text: string;
}

/** Time for the sup norm to reach factor x its initial value, against a
 * swept parameter; runs that never cross are reported at 0 height. */
export function renderCrossingTimes(
  inputs: CrossingInput[],
  factor: number,
  paramLabel: string,
): string {
  if (inputs.length === 0) {
    throw new CsvFormatError("no input runs");
  }
  const sorted = [...inputs].sort((a, b) => a.param - b.param);
  const x: number[] = [];
  const y: number[] = [];
  for (const { param, text } of sorted) {
    const table = parseCsv(text);
    const t = column(table, "t");
    const sup = column(table, "sup_norm");
    const crossing = crossingTime(t, sup, sup[0], factor);
    x.push(param);
    y.push(crossing ?? 0);
  }
  return linePlot([{ label: `time to ${factor}x`, x, y }], {
    title: `Sup-norm crossing times (factor ${factor})`,
    xLabel: paramLabel,
    yLabel: "t",
  });
}

/** Heat map of a field snapshot u(x, y). */
export function renderFieldSurface(raw: Uint8Array): string {
  const snap = readSnapshot(raw);
  return heatMap(snap.at, snap.nx, snap.ny, {
    title: `u(x, y) at t=${snap.t} (alpha=${snap.alpha}, sigma=${snap.sigma}, c=${snap.c})`,
    xLabel: "x",
    yLabel: "y",
  });
}

/** Transverse growth rate against the transverse wavenumber. */
export function renderGrowthRate(inputs: LabeledText[]): string {
  const series: Series[] = inputs.map(({ label, text }) => {
    const table = parseCsv(text);
    return { label, x: column(table, "k"), y: column(table, "sigma_max") };
  });
  return linePlot(series, {
    title: "Transverse growth rate",
    xLabel: "k",
    yLabel: "growth rate",
  });
}

/** Periodic-wave frequency along the bifurcation branch. */
export function renderBranchOmega(inputs: LabeledText[]): string {
  const series: Series[] = inputs.map(({ label, text }) => {
    const table = parseCsv(text);
    return { label, x: column(table, "s"), y: column(table, "omega") };
  });
  return linePlot(series, {
    title: "Dimension-breaking branch",
    xLabel: "s",
    yLabel: "omega",
  });
}
