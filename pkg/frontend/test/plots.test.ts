import { mkdtempSync, readFileSync, writeFileSync, cpSync, rmSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { afterAll, describe, expect, it } from "vitest";

import { KINDS } from "../src/plots.js";
import { SchemaError, readCsv, readReport } from "../src/schema.js";
import { main } from "../src/cli.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const scratch = mkdtempSync(join(tmpdir(), "plotkit-"));

afterAll(() => rmSync(scratch, { recursive: true, force: true }));

const CASES: [kind: string, dir: string][] = [
  ["smoothing-scan", join(FIXTURES, "scan")],
  ["kernel", join(FIXTURES, "kernel")],
  ["contraction", join(FIXTURES, "solve")],
  ["convergence", join(FIXTURES, "convergence")],
  ["estimates", join(FIXTURES, "estimates")],
  ["norms", join(FIXTURES, "solve")],
];

describe("renderers", () => {
  it.each(CASES)("renders %s without error", (kind, dir) => {
    const svg = KINDS[kind](dir);
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("polyline");
    expect(svg.endsWith("</svg>\n")).toBe(true);
  });

  it.each(CASES)("byte-identical across two runs: %s", (kind, dir) => {
    const a = KINDS[kind](dir);
    const b = KINDS[kind](dir);
    expect(a).toBe(b);
  });
});

describe("schema validation fails loudly", () => {
  it("rejects a corrupted schema version", () => {
    const dir = join(scratch, "bad-schema");
    cpSync(join(FIXTURES, "solve"), dir, { recursive: true });
    const report = JSON.parse(readFileSync(join(dir, "report.json"), "utf8"));
    report.schema = "fracnls-report-v999";
    writeFileSync(join(dir, "report.json"), JSON.stringify(report));
    expect(() => KINDS["contraction"](dir)).toThrow(SchemaError);
  });

  it("rejects unknown columns", () => {
    const dir = join(scratch, "bad-cols");
    cpSync(join(FIXTURES, "solve"), dir, { recursive: true });
    const text = readFileSync(join(dir, "norms.csv"), "utf8");
    writeFileSync(join(dir, "norms.csv"),
      text.replace("t,hs_norm,l2_norm", "t,hs_norm,l2_norm,surprise"));
    expect(() => KINDS["norms"](dir)).toThrow(/columns/);
  });

  it("rejects an empty norms file", () => {
    const dir = join(scratch, "empty");
    cpSync(join(FIXTURES, "solve"), dir, { recursive: true });
    writeFileSync(join(dir, "norms.csv"), "# fracnls-report-v1\nt,hs_norm,l2_norm\n");
    expect(() => KINDS["norms"](dir)).toThrow(/no data rows/);
  });

  it("rejects non-numeric fields", () => {
    const dir = join(scratch, "nan");
    cpSync(join(FIXTURES, "kernel"), dir, { recursive: true });
    const text = readFileSync(join(dir, "kernel_table.csv"), "utf8");
    const lines = text.split("\n");
    lines[3] = lines[3].replace(/^([^,]*),([^,]*)/, "$1,oops");
    writeFileSync(join(dir, "kernel_table.csv"), lines.join("\n"));
    expect(() => KINDS["kernel"](dir)).toThrow(/non-numeric/);
  });

  it("rejects kind mismatches", () => {
    expect(() => readReport(join(FIXTURES, "scan", "report.json"), "convergence_study"))
      .toThrow(/kind/);
  });

  it("readCsv demands the versioned header it knows", () => {
    const p = join(scratch, "weird.csv");
    writeFileSync(p, "# some-other-tool v7\na,b\n1,2\n");
    expect(() => readCsv(p, ["a", "b"])).toThrow(/unrecognized header/);
  });
});

describe("cli", () => {
  it("writes an svg and returns 0", () => {
    const out = join(scratch, "out.svg");
    const rc = main(["kernel", "--in", join(FIXTURES, "kernel"), "--out", out]);
    expect(rc).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("</svg>");
  });

  it("returns nonzero on schema errors", () => {
    const dir = join(scratch, "cli-bad");
    cpSync(join(FIXTURES, "solve"), dir, { recursive: true });
    writeFileSync(join(dir, "report.json"), "{\"schema\": \"nope\"}");
    const rc = main(["contraction", "--in", dir, "--out", join(scratch, "x.svg")]);
    expect(rc).toBe(1);
  });
});
