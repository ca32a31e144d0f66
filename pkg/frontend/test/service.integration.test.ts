// End-to-end flows against a live allocation service: the editor-built
// reference model validates and allocates to the hand-checked cost, and the
// inconsistent-judgment path blocks allocation with the server's CR.

import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError, actionableMessage } from "../src/api";
import { setJudgment } from "../src/ahp";
import { setAvailability } from "../src/draft";
import {
  canAllocate,
  initialState,
  recordRun,
  requestModel,
  resetModel,
  type AppState,
} from "../src/state";
import type { ModelDoc } from "../src/types";
import { buildReferenceDraft } from "./helpers";

const PORT = 8734;
const BASE = `http://127.0.0.1:${PORT}`;
const AUV_PATH = join(__dirname, "..", "..", "src", "scall", "data", "auv.json");

let server: ChildProcess;
const api = new ApiClient(BASE);

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      await api.deriveWeights([
        [1, 1],
        [1, 1],
      ]);
      return;
    } catch (err) {
      if (err instanceof ApiError && err.status > 0) return; // up, any HTTP answer counts
      await new Promise((resolve) => setTimeout(resolve, 150));
    }
  }
  throw new Error("allocation service did not come up");
}

beforeAll(async () => {
  server = spawn("scall", ["serve", "--port", String(PORT)], { stdio: "ignore" });
  await waitForService();
});

afterAll(() => {
  server?.kill();
});

function editorState(): AppState {
  const state = initialState();
  resetModel(state, undefined);
  state.draft = buildReferenceDraft();
  resetModel(state, requestModel(state)); // re-import to sync the grid
  return state;
}

describe("editor to service round trip", () => {
  it("an editor-built model validates and allocates to the hand-checked cost", async () => {
    const state = editorState();
    const doc = requestModel(state);

    const validation = await api.validateModel(doc);
    expect(validation.valid).toBe(true);
    expect(validation.report).toEqual([]);

    // equal judgments: server answers CR 0 and the allocate gate opens
    state.weights = await api.deriveWeights(doc.comparison as number[][]);
    expect(state.weights.cr).toBeCloseTo(0, 9);
    expect(state.weights.weights).toEqual([0.5]);
    expect(state.weights.fc).toBeCloseTo(0.5, 12);
    expect(canAllocate(state)).toBe(true);

    const report = await api.allocate({ model: doc, method: "exhaustive" });
    expect(report.bestResult.w).toBeCloseTo(2.5, 12);
    expect(report.best).toEqual(["h1", "h1"]);
    recordRun(state, report);
    expect(state.overlay).toEqual(["h1", "h1"]);
  });

  it("inconsistent judgments disable allocation and surface the CR", async () => {
    const state = editorState();
    // a third criterion is needed for inconsistency to be possible
    state.draft.doc.resources.push({ id: "cpu", name: "Cpu", unit: "us" });
    state.draft.doc.T = [
      [[2, 1], [4, 1]],
      [[3, 1], [1, 1]],
    ];
    state.draft.doc.R = [
      [5, 9],
      [5, 9],
    ];
    resetModel(state, requestModel(state));
    setJudgment(state.grid, 0, 1, 9);
    setJudgment(state.grid, 1, 2, 9);
    setJudgment(state.grid, 0, 2, -9); // the classic contradictory cycle

    const doc = requestModel(state);
    let cr: number | undefined;
    try {
      await api.deriveWeights(doc.comparison as number[][]);
      expect.unreachable("cycle judgments must be rejected");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      const apiErr = err as ApiError;
      expect(apiErr.status).toBe(422);
      expect(apiErr.code).toBe("INCONSISTENT");
      cr = apiErr.cr;
      state.weightsError = { cr: apiErr.cr ?? NaN };
      state.weights = null;
    }
    expect(cr).toBeGreaterThanOrEqual(0.1);
    expect(canAllocate(state)).toBe(false);
    expect(actionableMessage(new ApiError(422, "INCONSISTENT", "x", { cr }))).toContain(
      "inconsistent judgments",
    );
  });

  it("re-running with fresh seeds builds a sorted alternatives history", async () => {
    const doc = JSON.parse(readFileSync(AUV_PATH, "utf-8")) as ModelDoc;
    const state = initialState();
    resetModel(state, doc);
    state.weights = { weights: [], fc: 0, lambdaMax: 0, cr: 0 }; // accepted (embedded judgments)

    for (const seed of [1, 2, 3]) {
      const report = await api.allocate({ model: requestModel(state), method: "ga", seed });
      recordRun(state, report);
    }
    const ws = state.runs.map((r) => r.w);
    expect(ws).toEqual([...ws].sort((a, b) => a - b));
    const keys = new Set(state.runs.map((r) => JSON.stringify(r.allocation)));
    expect(keys.size).toBe(state.runs.length);
    expect(state.runs[0].report.bestResult.feasible).toBe(true);
  });

  it("an infeasible model produces an actionable message, not a crash", async () => {
    const state = editorState();
    setAvailability(state.draft, 0, 0, 1);
    setAvailability(state.draft, 1, 0, 1);
    try {
      await api.allocate({ model: requestModel(state), method: "exhaustive" });
      expect.unreachable("infeasible model must be rejected");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
      expect(actionableMessage(err)).toContain("no feasible allocation");
    }
  });

  it("oversized exhaustive requests surface the space guidance", async () => {
    const doc = JSON.parse(readFileSync(AUV_PATH, "utf-8")) as ModelDoc;
    // the bundled model is comfortably enumerable, so impose the cap via GA guidance instead:
    // 3^11 is fine exhaustively; grow the unit list to push past the cap
    const big = structuredClone(doc);
    const addUnits = 12;
    for (let i = 0; i < addUnits; i++) {
      big.units.push({ id: `x${i}`, name: `Extra ${i}`, kind: "CPU" });
      for (const row of big.T) row.push(row[0].map(() => 5));
      big.R.push(big.R[0].map(() => 1000));
    }
    const m = big.units.length;
    big.C = Array.from({ length: m }, (_, a) =>
      Array.from({ length: m }, (_, b) => (a === b ? 0 : 1)),
    );
    big.B = Array.from({ length: m }, (_, a) =>
      Array.from({ length: m }, (_, b) => (a === b ? 0 : 1000)),
    );
    try {
      await api.allocate({ model: big, method: "exhaustive" });
      expect.unreachable("15^11 must exceed the enumeration cap");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(413);
      expect(actionableMessage(err)).toContain("genetic");
    }
  });
});
