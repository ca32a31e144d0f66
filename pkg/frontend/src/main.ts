// Entry point: owns the state instance, wires user actions to the API
// client, and re-renders after every transition.

import { ApiClient, ApiError, actionableMessage } from "./api";
import { setJudgment } from "./ahp";
import * as draft from "./draft";
import {
  initialState,
  markModelEdited,
  nextRunSeed,
  recordRun,
  removeUnitEverywhere,
  requestModel,
  resetModel,
  syncGrid,
  type AppState,
} from "./state";
import type { Handlers } from "./render";
import {
  renderBanner,
  renderHardwarePane,
  renderJudgments,
  renderResources,
  renderResults,
  renderSoftwarePane,
  renderValidation,
} from "./render";
import type { ModelDoc } from "./types";

const api = new ApiClient("");
const state: AppState = initialState();
let selectedComponent = 0;

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function render(): void {
  renderBanner(state, byId("banner"));
  renderValidation(state, byId("validation"));
  renderResources(state, byId("resources"), handlers);
  renderSoftwarePane(state, byId("software"), handlers, selectedComponent);
  renderHardwarePane(state, byId("hardware"), handlers);
  renderJudgments(state, byId("judgments"), handlers);
  renderResults(state, byId("results"), handlers);
}

async function refreshWeights(): Promise<void> {
  if (state.grid.criteria.length < 2) return;
  const comparison = state.grid.criteria.length >= 2 ? requestModel(state).comparison : undefined;
  if (!comparison) return;
  try {
    state.weights = await api.deriveWeights(comparison as number[][]);
    state.weightsError = null;
  } catch (err) {
    state.weights = null;
    state.weightsError = err instanceof ApiError && err.cr !== undefined ? { cr: err.cr } : null;
    if (!state.weightsError) {
      state.banner = { kind: "error", text: actionableMessage(err) };
    }
  }
}

async function runAllocation(method: "ga" | "exhaustive", seed: number): Promise<void> {
  state.busy = true;
  state.banner = null;
  render();
  try {
    const report = await api.allocate({ model: requestModel(state), method, seed });
    recordRun(state, report);
    state.validation = [];
  } catch (err) {
    if (err instanceof ApiError && err.code === "INVALID_MODEL") {
      const report = err.detail["report"];
      if (Array.isArray(report)) {
        state.validation = report as never;
      }
    }
    state.banner = { kind: "error", text: actionableMessage(err) };
  } finally {
    state.busy = false;
    render();
  }
}

const handlers: Handlers = {
  addResource() {
    const id = draft.freshId("r", state.draft.doc.resources);
    draft.addResource(state.draft, { id, name: `Resource ${id}`, unit: "" });
    markModelEdited(state);
    void refreshWeights().then(render);
    render();
  },
  removeResource(index) {
    draft.removeResource(state.draft, index);
    markModelEdited(state);
    void refreshWeights().then(render);
    render();
  },
  editResource(index, field, value) {
    state.draft.doc.resources[index][field] = value;
    state.draft.dirty = true;
    markModelEdited(state);
    render();
  },
  addUnit() {
    const id = draft.freshId("u", state.draft.doc.units);
    draft.addUnit(state.draft, { id, name: `Unit ${id}`, kind: "CPU" });
    markModelEdited(state);
    render();
  },
  removeUnit(index) {
    const unitId = state.draft.doc.units[index].id;
    draft.removeUnit(state.draft, index);
    removeUnitEverywhere(state, unitId);
    markModelEdited(state);
    render();
  },
  editUnit(index, field, value) {
    state.draft.doc.units[index][field] = value;
    state.draft.dirty = true;
    render();
  },
  setAvailability(unit, resource, value) {
    draft.setAvailability(state.draft, unit, resource, value);
    markModelEdited(state);
    render();
  },
  setLink(kind, a, b, value) {
    if (kind === "C") draft.setLinkCost(state.draft, a, b, value);
    else draft.setBandwidth(state.draft, a, b, value);
    markModelEdited(state);
    render();
  },
  addComponent() {
    const id = draft.freshId("c", state.draft.doc.components);
    draft.addComponent(state.draft, { id, name: `Component ${id}` });
    selectedComponent = state.draft.doc.components.length - 1;
    markModelEdited(state);
    render();
  },
  removeComponent(index) {
    draft.removeComponent(state.draft, index);
    selectedComponent = Math.max(0, selectedComponent - 1);
    state.overlay = null;
    state.runs = [];
    markModelEdited(state);
    render();
  },
  editComponent(index, value) {
    state.draft.doc.components[index].name = value;
    state.draft.dirty = true;
    render();
  },
  selectComponent(index) {
    selectedComponent = index;
    render();
  },
  setDemand(component, unit, resource, value) {
    draft.setDemand(state.draft, component, unit, resource, value);
    markModelEdited(state);
    render();
  },
  setIntensity(a, b, value) {
    draft.setIntensity(state.draft, a, b, value);
    markModelEdited(state);
    render();
  },
  toggleAllowed(component, unitId, allowed) {
    const comp = state.draft.doc.components[component];
    const set = new Set(comp.allowedUnits);
    if (allowed) set.add(unitId);
    else set.delete(unitId);
    draft.setAllowedUnits(state.draft, component, [...set]);
    markModelEdited(state);
    render();
  },
  setJudgment(a, b, value) {
    setJudgment(state.grid, a, b, value);
    void refreshWeights().then(render);
    render();
  },
  allocate(method) {
    void runAllocation(method, nextRunSeed(state));
  },
  rerun() {
    void runAllocation("ga", nextRunSeed(state));
  },
  newModel() {
    resetModel(state);
    selectedComponent = 0;
    render();
  },
  importFile(file) {
    file.text().then((text) => {
      try {
        const doc = JSON.parse(text) as ModelDoc;
        resetModel(state, doc);
        selectedComponent = 0;
        state.banner = {
          kind: "info",
          text: `imported ${doc.components?.length ?? 0} components and ${doc.units?.length ?? 0} units`,
        };
      } catch (err) {
        state.banner = { kind: "error", text: `import failed: ${err}` };
      }
      void refreshWeights().then(render);
      render();
    });
  },
  exportFile() {
    const doc = requestModel(state);
    const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "model.json";
    link.click();
    URL.revokeObjectURL(link.href);
    state.draft.dirty = false;
  },
  async validate() {
    try {
      const result = await api.validateModel(requestModel(state));
      state.validation = result.report;
      state.banner = null;
    } catch (err) {
      state.banner = { kind: "error", text: actionableMessage(err) };
    }
    render();
  },
};

function wireToolbar(): void {
  byId("btn-new").addEventListener("click", () => handlers.newModel());
  byId("btn-export").addEventListener("click", () => handlers.exportFile());
  byId("btn-validate").addEventListener("click", () => void handlers.validate());
  const fileInput = byId("file-input") as HTMLInputElement;
  byId("btn-import").addEventListener("click", () => fileInput.click());
  fileInput.addEventListener("change", () => {
    if (fileInput.files?.[0]) handlers.importFile(fileInput.files[0]);
    fileInput.value = "";
  });
}

wireToolbar();
syncGrid(state);
render();
