/**
 * Reader for the analysis CLI's CSV contract: one header row, comma
 * separators, '\n' line endings, '.' decimal points, no quoting and no
 * thousands grouping.
 */

export interface CsvTable {
  header: string[];
  /** Raw cell text, one array per data row. */
  rows: string[][];
}

export class CsvFormatError extends Error {}

export function parseCsv(text: string): CsvTable {
  if (text.includes("\r")) {
    throw new CsvFormatError("CSV must use \\n line endings (found \\r)");
  }
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("CSV is empty");
  }
  const header = lines[0].split(",");
  const rows: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new CsvFormatError(
        `row ${i} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    rows.push(cells);
  }
  return { header, rows };
}

/** Numeric column extraction; the cell text must be a plain float literal. */
export function numericColumn(table: CsvTable, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`column not found: ${name}`);
  }
  return table.rows.map((row, i) => {
    const cell = row[idx];
    if (!/^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$/.test(cell)) {
      throw new CsvFormatError(`row ${i} column ${name}: not a number: '${cell}'`);
    }
    return Number(cell);
  });
}
