import { describe, expect, it } from "vitest";

import { parseCsv, SchemaMismatchError } from "../src/csv.js";
import { COLUMNS } from "../src/schemas.js";

const GRID = COLUMNS["phase-grid"];

describe("parseCsv", () => {
  it("parses a well-formed grid file", () => {
    const rows = parseCsv("w,k,r,trials,successes\n512,5,64,100,99\n512,5,72,100,100\n", GRID);
    expect(rows).toHaveLength(2);
    expect(rows[0]).toEqual({ w: 512, k: 5, r: 64, trials: 100, successes: 99 });
  });

  it("rejects unknown columns by name", () => {
    const text = "w,k,r,trials,successes,extra\n1,2,3,4,5,6\n";
    expect(() => parseCsv(text, GRID)).toThrowError(/unknown column "extra"/);
  });

  it("rejects missing columns by name", () => {
    const text = "w,k,r,trials\n1,2,3,4\n";
    try {
      parseCsv(text, GRID);
      expect.unreachable();
    } catch (error) {
      expect(error).toBeInstanceOf(SchemaMismatchError);
      expect((error as SchemaMismatchError).column).toBe("successes");
    }
  });

  it("rejects non-numeric cells", () => {
    const text = "w,k,r,trials,successes\n512,5,sixty,100,99\n";
    expect(() => parseCsv(text, GRID)).toThrowError(/non-numeric value "sixty" in column "r"/);
  });

  it("rejects ragged rows", () => {
    const text = "w,k,r,trials,successes\n512,5,64\n";
    expect(() => parseCsv(text, GRID)).toThrowError(/row 1 has 3 cells/);
  });
});
