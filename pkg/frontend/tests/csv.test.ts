import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { column, crossingTime, CsvFormatError, parseCsv } from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures");

describe("parseCsv", () => {
  it("parses the diagnostics CSV produced by the simulator", () => {
    const text = readFileSync(join(FIXTURES, "diagnostics.csv"), "utf8");
    const table = parseCsv(text);
    expect(table.header).toEqual([
      "t",
      "sup_norm",
      "mass",
      "mass_rel_err",
      "perturbation_sup",
      "energy",
    ]);
    expect(table.rows.length).toBeGreaterThan(0);
    const t = column(table, "t");
    expect(t[0]).toBe(0);
    expect(t[t.length - 1]).toBeCloseTo(0.05, 9);
    // the benchmark control run keeps the sup norm near the soliton peak
    const sup = column(table, "sup_norm");
    for (const v of sup) {
      expect(v).toBeGreaterThan(5.9);
      expect(v).toBeLessThan(6.1);
    }
  });

  it("round-trips 17-significant-digit values exactly", () => {
    const value = 0.12345678901234567;
    const table = parseCsv(`a,b\n${value.toPrecision(17)},1\n`);
    expect(table.rows[0][0]).toBe(value);
  });

  it("maps empty fields to null", () => {
    const table = parseCsv("t,sup_norm,energy\n0,6,\n");
    expect(table.rows[0]).toEqual([0, 6, null]);
    expect(() => column(table, "energy")).toThrow(CsvFormatError);
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("")).toThrow(CsvFormatError);
  });

  it("rejects a missing header row", () => {
    expect(() => parseCsv("0,1,2\n3,4,5\n")).toThrow(CsvFormatError);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(CsvFormatError);
  });

  it("rejects non-numeric fields", () => {
    expect(() => parseCsv("a,b\n1,fast\n")).toThrow(CsvFormatError);
  });

  it("rejects a missing column by name", () => {
    const table = parseCsv("a,b\n1,2\n");
    expect(() => column(table, "c")).toThrow(CsvFormatError);
  });
});

describe("crossingTime", () => {
  it("interpolates a rising crossing", () => {
    expect(crossingTime([0, 1, 2], [1, 1.5, 2.5], 1, 2)).toBeCloseTo(1.5, 12);
  });

  it("interpolates a falling crossing", () => {
    expect(crossingTime([0, 1, 2], [1, 0.6, 0.4], 1, 0.5)).toBeCloseTo(1.5, 12);
  });

  it("returns null when never crossing", () => {
    expect(crossingTime([0, 1], [1, 1.1], 1, 2)).toBeNull();
  });

  it("reports the first sample when already at the target", () => {
    expect(crossingTime([0.5, 1], [2, 4], 1, 2)).toBe(0.5);
  });

  it("rejects mismatched inputs", () => {
    expect(() => crossingTime([], [], 1, 2)).toThrow(CsvFormatError);
    expect(() => crossingTime([0, 1], [1], 1, 2)).toThrow(CsvFormatError);
  });
});
