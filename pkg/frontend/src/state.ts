// Application state and the pure transition helpers behind the views.
// One allocation request is in flight at most; results are kept as a history
// the architect can compare side by side, sorted by cost and de-duplicated
// by allocation vector.

import { buildComparison, newGrid, type JudgmentGrid } from "./ahp";
import { exportDoc, importDoc, newDraft, type UiModelDraft } from "./draft";
import type { ModelDoc, SearchReportWire, ValidationIssue, WeightsResponse } from "./types";

export const CR_LIMIT = 0.1;

export interface RunEntry {
  allocation: string[]; // unit id per component
  w: number;
  seed: number | null;
  exact: boolean;
  report: SearchReportWire;
}

export interface Banner {
  kind: "info" | "warning" | "error";
  text: string;
}

export interface AppState {
  draft: UiModelDraft;
  grid: JudgmentGrid;
  weights: WeightsResponse | null; // latest server answer for the grid
  weightsError: { cr: number } | null; // 422: judgments rejected
  validation: ValidationIssue[] | null; // last server report, null = not checked
  runs: RunEntry[];
  overlay: string[] | null; // allocation currently painted on the hardware pane
  busy: boolean;
  banner: Banner | null;
  nextSeed: number;
}

export function initialState(): AppState {
  return {
    draft: newDraft(),
    grid: newGrid([]),
    weights: null,
    weightsError: null,
    validation: null,
    runs: [],
    overlay: null,
    busy: false,
    banner: null,
    nextSeed: 1,
  };
}

export function resetModel(state: AppState, doc?: ModelDoc): void {
  state.draft = doc ? importDoc(doc) : newDraft();
  syncGrid(state);
  state.weights = null;
  state.weightsError = null;
  state.validation = null;
  state.runs = [];
  state.overlay = null;
  state.banner = null;
}

/** Keep the judgment grid aligned with the draft's resource list. */
export function syncGrid(state: AppState): void {
  const names = state.draft.doc.resources.map((r) => r.name || r.id);
  const wanted = [...names, "communication"];
  if (JSON.stringify(wanted) !== JSON.stringify(state.grid.criteria)) {
    state.grid = newGrid(names);
    state.weights = null;
    state.weightsError = null;
  }
}

/** Called after any model edit: previous answers may no longer apply. */
export function markModelEdited(state: AppState): void {
  state.validation = null;
  syncGrid(state);
}

export function removeUnitEverywhere(state: AppState, unitId: string): void {
  if (state.overlay?.includes(unitId)) {
    state.overlay = null;
    state.banner = {
      kind: "warning",
      text: `unit "${unitId}" was removed; the allocation overlay referenced it and was cleared`,
    };
  }
  state.runs = state.runs.filter((r) => !r.allocation.includes(unitId));
}

export function weightsAccepted(state: AppState): boolean {
  return state.weights !== null && state.weights.cr < CR_LIMIT;
}

/** The allocate action is available only with accepted judgments and an idle
 * connection; a draft that fails validation surfaces the report instead. */
export function canAllocate(state: AppState): boolean {
  return (
    !state.busy &&
    state.draft.doc.components.length > 0 &&
    state.draft.doc.units.length > 0 &&
    weightsAccepted(state)
  );
}

export function comparisonForExport(state: AppState): number[][] | undefined {
  if (state.grid.criteria.length < 2) return undefined;
  return buildComparison(state.grid);
}

/** Document sent to the service: the draft plus the current judgments. */
export function requestModel(state: AppState): ModelDoc {
  const doc = exportDoc(state.draft);
  const comparison = comparisonForExport(state);
  if (comparison) {
    doc.comparison = comparison;
  }
  return doc;
}

export function recordRun(state: AppState, report: SearchReportWire): RunEntry {
  const entry: RunEntry = {
    allocation: report.best,
    w: report.bestResult.w,
    seed: report.seed,
    exact: report.exact,
    report,
  };
  const key = JSON.stringify(entry.allocation);
  if (!state.runs.some((r) => JSON.stringify(r.allocation) === key)) {
    state.runs.push(entry);
    state.runs.sort((a, b) => a.w - b.w);
  }
  state.overlay = entry.allocation;
  return entry;
}

export function nextRunSeed(state: AppState): number {
  const seed = state.nextSeed;
  state.nextSeed += 1;
  return seed;
}
