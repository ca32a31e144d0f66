// Pairwise judgment grid. The architect fills the upper triangle on the
// 1..9 scale (sign picks which criterion of the pair is favoured);
// reciprocals are derived, never entered. The grid only shapes the matrix —
// weights and the consistency ratio always come from the server.

export const SAATY_STEPS = [9, 8, 7, 6, 5, 4, 3, 2, 1, -2, -3, -4, -5, -6, -7, -8, -9] as const;

export interface JudgmentGrid {
  criteria: string[]; // resource names followed by "communication"
  // key "a:b" with a < b; value in -9..-2 or 1..9 (positive favours a)
  values: Record<string, number>;
}

export function newGrid(resourceNames: string[]): JudgmentGrid {
  return { criteria: [...resourceNames, "communication"], values: {} };
}

export function pairKey(a: number, b: number): string {
  return a < b ? `${a}:${b}` : `${b}:${a}`;
}

export function setJudgment(grid: JudgmentGrid, a: number, b: number, value: number): void {
  if (a === b) return;
  if (value === 0 || value === -1 || value < -9 || value > 9 || !Number.isInteger(value)) {
    throw new Error(`judgment must be an integer in 2..9, -2..-9 or 1, got ${value}`);
  }
  grid.values[pairKey(a, b)] = a < b ? value : invert(value);
}

export function getJudgment(grid: JudgmentGrid, a: number, b: number): number {
  const stored = grid.values[pairKey(a, b)] ?? 1;
  return a < b ? stored : invert(stored);
}

function invert(value: number): number {
  if (value === 1) return 1;
  return -value;
}

function cellValue(judgment: number): number {
  return judgment > 0 ? judgment : 1 / -judgment;
}

/** Full reciprocal matrix for the server's weight endpoint. */
export function buildComparison(grid: JudgmentGrid): number[][] {
  const q = grid.criteria.length;
  const rows: number[][] = [];
  for (let a = 0; a < q; a++) {
    const row: number[] = [];
    for (let b = 0; b < q; b++) {
      row.push(a === b ? 1 : cellValue(getJudgment(grid, a, b)));
    }
    rows.push(row);
  }
  return rows;
}

export function allJudgedEqual(grid: JudgmentGrid): boolean {
  return Object.values(grid.values).every((v) => v === 1);
}
