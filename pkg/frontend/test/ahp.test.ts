import { describe, expect, it } from "vitest";

import {
  allJudgedEqual,
  buildComparison,
  getJudgment,
  newGrid,
  setJudgment,
} from "../src/ahp";

describe("judgment grid", () => {
  it("starts with every pair judged equal", () => {
    const grid = newGrid(["Memory", "Cpu"]);
    expect(grid.criteria).toEqual(["Memory", "Cpu", "communication"]);
    expect(buildComparison(grid)).toEqual([
      [1, 1, 1],
      [1, 1, 1],
      [1, 1, 1],
    ]);
    expect(allJudgedEqual(grid)).toBe(true);
  });

  it("auto-fills reciprocals in the full matrix", () => {
    const grid = newGrid(["Memory"]); // criteria: Memory, communication
    setJudgment(grid, 0, 1, 3); // memory three times as important
    const m = buildComparison(grid);
    expect(m[0][1]).toBe(3);
    expect(m[1][0]).toBeCloseTo(1 / 3, 12);
    expect(m[0][0]).toBe(1);
    expect(allJudgedEqual(grid)).toBe(false);
  });

  it("negative judgments favour the second criterion", () => {
    const grid = newGrid(["Memory"]);
    setJudgment(grid, 0, 1, -5); // communication five times as important
    const m = buildComparison(grid);
    expect(m[0][1]).toBeCloseTo(1 / 5, 12);
    expect(m[1][0]).toBe(5);
  });

  it("judgments entered in either pair order agree", () => {
    const a = newGrid(["Memory", "Cpu"]);
    setJudgment(a, 2, 0, 4); // communication vs memory
    expect(getJudgment(a, 0, 2)).toBe(-4);
    expect(getJudgment(a, 2, 0)).toBe(4);
    const m = buildComparison(a);
    expect(m[2][0]).toBe(4);
    expect(m[0][2]).toBeCloseTo(1 / 4, 12);
  });

  it("rejects out-of-scale judgments", () => {
    const grid = newGrid(["Memory"]);
    expect(() => setJudgment(grid, 0, 1, 0)).toThrow();
    expect(() => setJudgment(grid, 0, 1, 10)).toThrow();
    expect(() => setJudgment(grid, 0, 1, 2.5)).toThrow();
    expect(() => setJudgment(grid, 0, 1, -1)).toThrow();
  });

  it("matrix cells pair up as exact reciprocals for the server check", () => {
    const grid = newGrid(["a", "b", "c"]);
    setJudgment(grid, 0, 1, 7);
    setJudgment(grid, 0, 2, -2);
    setJudgment(grid, 1, 3, 9);
    setJudgment(grid, 2, 3, -9);
    const m = buildComparison(grid);
    for (let i = 0; i < m.length; i++) {
      for (let j = 0; j < m.length; j++) {
        expect(Math.abs(m[i][j] * m[j][i] - 1)).toBeLessThanOrEqual(1e-9);
      }
    }
  });
});
