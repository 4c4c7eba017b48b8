/** Strict parser for the simulation CSV outputs.
 *
 * Format: mandatory header row of column names, then numeric rows.
 * Empty fields (optional diagnostics that were not recorded) become null.
 */

export class CsvFormatError extends Error {}

export interface CsvTable {
  header: string[];
  rows: (number | null)[][];
}

export function parseCsv(text: string): CsvTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("empty CSV");
  }
  const header = lines[0].split(",");
  if (header.some((name) => name.length === 0)) {
    throw new CsvFormatError("header has an empty column name");
  }
  if (header.some((name) => /^[-+0-9.]/.test(name))) {
    throw new CsvFormatError("first row does not look like a header");
  }
  const rows: (number | null)[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== header.length) {
      throw new CsvFormatError(
        `row ${i} has ${fields.length} fields, header has ${header.length}`,
      );
    }
    rows.push(
      fields.map((field) => {
        if (field === "") {
          return null;
        }
        const value = Number(field);
        if (!Number.isFinite(value)) {
          throw new CsvFormatError(`row ${i}: bad numeric field ${JSON.stringify(field)}`);
        }
        return value;
      }),
    );
  }
  return { header, rows };
}

/** Extract a named column, requiring every entry to be present. */
export function column(table: CsvTable, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`missing column ${JSON.stringify(name)}`);
  }
  return table.rows.map((row, i) => {
    const v = row[idx];
    if (v === null) {
      throw new CsvFormatError(`column ${name} is empty at row ${i}`);
    }
    return v;
  });
}

/**
 * First time a signal reaches factor * reference, linearly interpolated
 * between samples; null when it never does. A crossing at the first
 * sample reports the first time directly.
 */
export function crossingTime(
  times: number[],
  signal: number[],
  reference: number,
  factor: number,
): number | null {
  if (times.length !== signal.length || times.length === 0) {
    throw new CsvFormatError("times and signal must be equal-length and non-empty");
  }
  const target = factor * reference;
  const rising = factor >= 1;
  const hit = (v: number) => (rising ? v >= target : v <= target);
  if (signal[0] === target || (times.length === 1 && hit(signal[0]))) {
    return hit(signal[0]) ? times[0] : null;
  }
  if (hit(signal[0])) {
    return times[0];
  }
  for (let i = 1; i < signal.length; i++) {
    if (hit(signal[i])) {
      const f = (target - signal[i - 1]) / (signal[i] - signal[i - 1]);
      return times[i - 1] + f * (times[i] - times[i - 1]);
    }
  }
  return null;
}
