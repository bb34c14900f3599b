/** Strict CSV parsing against the demodlab column contracts. */

export class SchemaMismatchError extends Error {
  constructor(
    message: string,
    public readonly column?: string,
  ) {
    super(message);
    this.name = "SchemaMismatchError";
  }
}

export type Row = Record<string, number>;

/**
 * Parse CSV text whose header must match `columns` exactly; unknown or
 * missing columns are rejected by name, and every cell must be numeric.
 */
export function parseCsv(text: string, columns: readonly string[]): Row[] {
  const lines = text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatchError("empty CSV input");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  for (const name of header) {
    if (!columns.includes(name)) {
      throw new SchemaMismatchError(`unknown column "${name}"`, name);
    }
  }
  for (const name of columns) {
    if (!header.includes(name)) {
      throw new SchemaMismatchError(`missing column "${name}"`, name);
    }
  }
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatchError(`row ${i} has ${cells.length} cells, expected ${header.length}`);
    }
    const row: Row = {};
    header.forEach((name, j) => {
      const value = Number(cells[j]);
      if (!Number.isFinite(value)) {
        throw new SchemaMismatchError(`non-numeric value "${cells[j]}" in column "${name}"`, name);
      }
      row[name] = value;
    });
    rows.push(row);
  }
  return rows;
}
