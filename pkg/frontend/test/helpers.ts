// Shared builders for tests: the two-component reference model constructed
// through the editor operations, exactly as a user would click it together.

import {
  addComponent,
  addResource,
  addUnit,
  newDraft,
  setAvailability,
  setBandwidth,
  setDemand,
  setIntensity,
  setLinkCost,
  type UiModelDraft,
} from "../src/draft";
import type { ModelDoc } from "../src/types";

export function buildReferenceDraft(): UiModelDraft {
  const d = newDraft();
  addResource(d, { id: "mem", name: "Memory", unit: "MB" });
  addUnit(d, { id: "h1", name: "Host 1", kind: "CPU" });
  addUnit(d, { id: "h2", name: "Host 2", kind: "GPU" });
  addComponent(d, { id: "s1", name: "Sensor" });
  addComponent(d, { id: "s2", name: "Filter" });
  setDemand(d, 0, 0, 0, 2);
  setDemand(d, 0, 1, 0, 4);
  setDemand(d, 1, 0, 0, 3);
  setDemand(d, 1, 1, 0, 1);
  setAvailability(d, 0, 0, 5);
  setAvailability(d, 1, 0, 5);
  setIntensity(d, 0, 1, 2);
  setLinkCost(d, 0, 1, 1);
  setBandwidth(d, 0, 1, 10);
  return d;
}

export const REFERENCE_DOC: ModelDoc = {
  resources: [{ id: "mem", name: "Memory", unit: "MB" }],
  units: [
    { id: "h1", name: "Host 1", kind: "CPU" },
    { id: "h2", name: "Host 2", kind: "GPU" },
  ],
  components: [
    { id: "s1", name: "Sensor", allowedUnits: [] },
    { id: "s2", name: "Filter", allowedUnits: [] },
  ],
  T: [
    [[2], [4]],
    [[3], [1]],
  ],
  R: [
    [5],
    [5],
  ],
  K: [
    [0, 2],
    [2, 0],
  ],
  C: [
    [0, 1],
    [1, 0],
  ],
  B: [
    [0, 10],
    [10, 0],
  ],
};
