import assert from "node:assert/strict";
import { test } from "node:test";

import { CsvFormatError, numericColumn, parseCsv } from "../src/csv";

test("parses header and rows", () => {
  const table = parseCsv("a,b\n1,2\n3.5,4e2\n");
  assert.deepEqual(table.header, ["a", "b"]);
  assert.deepEqual(table.rows, [["1", "2"], ["3.5", "4e2"]]);
});

test("header-only file has zero rows", () => {
  const table = parseCsv("a,b\n");
  assert.equal(table.rows.length, 0);
});

test("rejects carriage returns", () => {
  assert.throws(() => parseCsv("a,b\r\n1,2\n"), CsvFormatError);
});

test("rejects ragged rows", () => {
  assert.throws(() => parseCsv("a,b\n1,2,3\n"), CsvFormatError);
});

test("numeric column extraction round-trips floats", () => {
  const table = parseCsv("x,y\n0.5,20.857431248012904\n2,3\n");
  assert.deepEqual(numericColumn(table, "y"), [20.857431248012904, 3]);
});

test("missing column error names the column", () => {
  const table = parseCsv("x,y\n1,2\n");
  assert.throws(() => numericColumn(table, "zap"), /zap/);
});

test("rejects non-numeric cells", () => {
  const table = parseCsv("x,y\n1,two\n");
  assert.throws(() => numericColumn(table, "y"), /not a number/);
});

test("rejects locale-grouped numbers", () => {
  const table = parseCsv("x,y\n1,'1 000'\n".replace(/'/g, ""));
  assert.throws(() => numericColumn(table, "y"), CsvFormatError);
});
