/**
 * Readers for the fracnls serialized outputs. Every reader validates the
 * versioned header / schema field and the exact column set, and throws a
 * SchemaError naming the offender: silent acceptance of unknown data is how
 * plots lie.
 */

import { readFileSync } from "fs";

export const SUPPORTED_SCHEMA = "fracnls-report-v1";
export const KERNEL_HEADER = "# fracnls-kernel-table v1";

export class SchemaError extends Error {}

export interface CsvTable {
  columns: string[];
  rows: number[][];
}

export function readCsv(path: string, expectedColumns: string[]): CsvTable {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n").filter((l) => l.length > 0);
  let i = 0;
  // comment headers carry the schema version
  const headerComments: string[] = [];
  while (i < lines.length && lines[i].startsWith("#")) {
    headerComments.push(lines[i]);
    i += 1;
  }
  if (headerComments.length > 0) {
    const versioned = headerComments.some(
      (h) => h.includes(SUPPORTED_SCHEMA) || h.startsWith(KERNEL_HEADER),
    );
    if (!versioned) {
      throw new SchemaError(`${path}: unrecognized header ${headerComments[0]}`);
    }
  }
  if (i >= lines.length) throw new SchemaError(`${path}: no column row`);
  const columns = lines[i].split(",").map((c) => c.trim());
  i += 1;
  const expected = [...expectedColumns].sort().join(",");
  const got = [...columns].sort().join(",");
  if (expected !== got) {
    throw new SchemaError(
      `${path}: columns [${columns.join(", ")}] do not match expected [${expectedColumns.join(", ")}]`,
    );
  }
  const rows: number[][] = [];
  for (; i < lines.length; i += 1) {
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new SchemaError(`${path}: row ${i + 1} has ${parts.length} fields`);
    }
    rows.push(parts.map((p) => {
      const v = Number(p);
      if (!Number.isFinite(v)) throw new SchemaError(`${path}: non-numeric field '${p}'`);
      return v;
    }));
  }
  if (rows.length === 0) throw new SchemaError(`${path}: no data rows`);
  return { columns, rows };
}

export function column(table: CsvTable, name: string): number[] {
  const k = table.columns.indexOf(name);
  if (k < 0) throw new SchemaError(`missing column ${name}`);
  return table.rows.map((r) => r[k]);
}

export type Json = Record<string, unknown>;

export function readReport(path: string, expectedKind?: string): Json {
  let data: Json;
  try {
    data = JSON.parse(readFileSync(path, "utf8")) as Json;
  } catch (e) {
    throw new SchemaError(`${path}: not valid JSON (${String(e)})`);
  }
  if (data["schema"] !== SUPPORTED_SCHEMA) {
    throw new SchemaError(`${path}: schema '${String(data["schema"])}' unsupported`);
  }
  if (expectedKind !== undefined && data["kind"] !== expectedKind) {
    throw new SchemaError(
      `${path}: kind '${String(data["kind"])}' but expected '${expectedKind}'`,
    );
  }
  return data;
}

export function requireNumberArray(data: Json, key: string): number[] {
  const v = data[key];
  if (!Array.isArray(v) || v.some((x) => typeof x !== "number" || !Number.isFinite(x))) {
    throw new SchemaError(`field '${key}' is not a finite number array`);
  }
  return v as number[];
}
