/** Per-kind figure renderers over the serialized outputs. */

import { join } from "path";
import {
  column,
  Json,
  readCsv,
  readReport,
  requireNumberArray,
  SchemaError,
} from "./schema.js";
import { renderFigure, Series } from "./svg.js";

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

export function plotSmoothingScan(inDir: string): string {
  const report = readReport(join(inDir, "report.json"), "smoothing_scan");
  const table = readCsv(join(inDir, "norms.csv"),
    ["a", "rel_change", "stable", "norm_t_last", "a_max"]);
  const a = column(table, "a");
  const rel = column(table, "rel_change");
  const aMax = column(table, "a_max")[0];
  const alpha = report["alpha"];
  const series: Series[] = [
    { x: a, y: rel.map((v) => Math.max(v, 1e-12)), label: "rel change of remainder norm", color: PALETTE[0] },
  ];
  return renderFigure(series, {
    title: `smoothing stability scan (alpha=${String(alpha)}, s=${String(report["s"])})`,
    xLabel: "gain exponent a",
    yLabel: "relative norm change under refinement",
    vlines: Number.isFinite(aMax) ? [{ x: aMax, label: "window edge" }] : [],
  });
}

export function plotKernel(inDir: string): string {
  const table = readCsv(join(inDir, "kernel_table.csv"), ["x", "re_b", "im_b"]);
  const x = column(table, "x");
  const series: Series[] = [
    { x, y: column(table, "re_b"), label: "Re B", color: PALETTE[0] },
    { x, y: column(table, "im_b"), label: "Im B", color: PALETTE[1] },
  ];
  return renderFigure(series, {
    title: "oscillatory kernel table",
    xLabel: "x",
    yLabel: "B(x)",
  });
}

export function plotContraction(inDir: string): string {
  const report = readReport(join(inDir, "report.json"));
  const factors = requireNumberArray(report, "contraction_factors");
  if (factors.length === 0) throw new SchemaError("no contraction factors recorded");
  return renderFigure(
    [{
      x: factors.map((_, i) => i + 1),
      y: factors,
      label: "step ratio",
      color: PALETTE[0],
    }],
    {
      title: "fixed-point contraction history",
      xLabel: "iteration",
      yLabel: "successive difference ratio",
      logY: true,
    },
  );
}

export function plotConvergence(inDir: string): string {
  const report = readReport(join(inDir, "report.json"), "convergence_study");
  const residuals = requireNumberArray(report, "residuals");
  const diffs = requireNumberArray(report, "solution_diffs");
  const levels = residuals.map((_, i) => i);
  const series: Series[] = [
    { x: levels, y: residuals.map((v) => Math.max(v, 1e-16)), label: "interior residual", color: PALETTE[0] },
    { x: diffs.map((_, i) => i + 0.5), y: diffs.map((v) => Math.max(v, 1e-16)), label: "level-to-level diff", color: PALETTE[1], dashed: true },
  ];
  return renderFigure(series, {
    title: "refinement convergence study",
    xLabel: "refinement level",
    yLabel: "error measure",
    logY: true,
  });
}

export function plotEstimates(inDir: string): string {
  const report = readReport(join(inDir, "report.json"));
  if (report["kind"] !== "estimates") {
    throw new SchemaError(`expected an estimates report, got '${String(report["kind"])}'`);
  }
  const reports = report["reports"];
  if (!Array.isArray(reports) || reports.length === 0) {
    throw new SchemaError("no probe reports present");
  }
  const slopes: number[] = [];
  const tols: number[] = [];
  reports.forEach((r) => {
    const rr = r as Json;
    const s = rr["trend_slope"];
    const t = rr["slope_tol"];
    if (typeof s !== "number" || typeof t !== "number") {
      throw new SchemaError("probe report missing slope fields");
    }
    slopes.push(s);
    tols.push(t);
  });
  const idx = slopes.map((_, i) => i + 1);
  return renderFigure(
    [
      { x: idx, y: slopes, label: "fitted growth slope", color: PALETTE[0] },
      { x: idx, y: tols, label: "pass threshold", color: PALETTE[1], dashed: true },
    ],
    {
      title: "inequality probes: growth slopes",
      xLabel: "probe index",
      yLabel: "log-log slope",
    },
  );
}

export function plotNorms(inDir: string): string {
  const table = readCsv(join(inDir, "norms.csv"), ["t", "hs_norm", "l2_norm"]);
  const t = column(table, "t");
  return renderFigure(
    [
      { x: t, y: column(table, "hs_norm"), label: "H^s norm", color: PALETTE[0] },
      { x: t, y: column(table, "l2_norm"), label: "L^2 norm", color: PALETTE[1] },
    ],
    {
      title: "solution norms over time",
      xLabel: "t",
      yLabel: "norm",
    },
  );
}

export const KINDS: Record<string, (inDir: string) => string> = {
  "smoothing-scan": plotSmoothingScan,
  kernel: plotKernel,
  contraction: plotContraction,
  convergence: plotConvergence,
  estimates: plotEstimates,
  norms: plotNorms,
};
