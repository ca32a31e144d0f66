// In-memory mirror of the model document plus view-only layout positions.
// Every operation keeps the matrices dimensionally in sync with the id
// lists, so an exported draft is always a structurally well-formed document
// (semantic problems are the server's validation report to raise).

import type { ModelDoc, NodePosition } from "./types";

export interface UiModelDraft {
  doc: ModelDoc;
  layout: Record<string, NodePosition>;
  dirty: boolean;
}

export function newDraft(): UiModelDraft {
  return {
    doc: {
      resources: [],
      units: [],
      components: [],
      T: [],
      R: [],
      K: [],
      C: [],
      B: [],
    },
    layout: {},
    dirty: false,
  };
}

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export function importDoc(doc: ModelDoc): UiModelDraft {
  const copy = clone(doc);
  const layout = copy.layout ?? {};
  delete copy.layout;
  for (const comp of copy.components) {
    comp.allowedUnits = comp.allowedUnits ?? [];
  }
  return { doc: copy, layout, dirty: false };
}

export function exportDoc(draft: UiModelDraft): ModelDoc {
  const doc = clone(draft.doc);
  if (Object.keys(draft.layout).length > 0) {
    doc.layout = clone(draft.layout);
  }
  return doc;
}

export function addResource(
  draft: UiModelDraft,
  resource: { id: string; name: string; unit: string },
): void {
  draft.doc.resources.push({ ...resource });
  for (const row of draft.doc.T) {
    for (const cell of row) {
      cell.push(0);
    }
  }
  for (const row of draft.doc.R) {
    row.push(0);
  }
  draft.dirty = true;
}

export function addUnit(
  draft: UiModelDraft,
  unit: { id: string; name: string; kind: string },
): void {
  const { doc } = draft;
  doc.units.push({ ...unit });
  const l = doc.resources.length;
  for (const row of doc.T) {
    row.push(new Array(l).fill(0));
  }
  doc.R.push(new Array(l).fill(0));
  for (const row of doc.C) row.push(0);
  for (const row of doc.B) row.push(0);
  doc.C.push(new Array(doc.units.length).fill(0));
  doc.B.push(new Array(doc.units.length).fill(0));
  draft.dirty = true;
}

export function addComponent(
  draft: UiModelDraft,
  component: { id: string; name: string; allowedUnits?: string[] },
): void {
  const { doc } = draft;
  doc.components.push({
    id: component.id,
    name: component.name,
    allowedUnits: component.allowedUnits ?? [],
  });
  const l = doc.resources.length;
  doc.T.push(doc.units.map(() => new Array(l).fill(0)));
  for (const row of doc.K) row.push(0);
  doc.K.push(new Array(doc.components.length).fill(0));
  draft.dirty = true;
}

export function removeResource(draft: UiModelDraft, index: number): void {
  const { doc } = draft;
  doc.resources.splice(index, 1);
  for (const row of doc.T) {
    for (const cell of row) cell.splice(index, 1);
  }
  for (const row of doc.R) row.splice(index, 1);
  delete doc.comparison; // judgments are per-resource; they no longer apply
  draft.dirty = true;
}

export function removeUnit(draft: UiModelDraft, index: number): void {
  const { doc } = draft;
  const removed = doc.units[index].id;
  doc.units.splice(index, 1);
  for (const row of doc.T) row.splice(index, 1);
  doc.R.splice(index, 1);
  doc.C.splice(index, 1);
  doc.B.splice(index, 1);
  for (const row of doc.C) row.splice(index, 1);
  for (const row of doc.B) row.splice(index, 1);
  for (const comp of doc.components) {
    comp.allowedUnits = comp.allowedUnits.filter((u) => u !== removed);
  }
  delete draft.layout[removed];
  draft.dirty = true;
}

export function removeComponent(draft: UiModelDraft, index: number): void {
  const { doc } = draft;
  const removed = doc.components[index].id;
  doc.components.splice(index, 1);
  doc.T.splice(index, 1);
  doc.K.splice(index, 1);
  for (const row of doc.K) row.splice(index, 1);
  delete draft.layout[removed];
  draft.dirty = true;
}

export function setDemand(
  draft: UiModelDraft,
  component: number,
  unit: number,
  resource: number,
  value: number,
): void {
  draft.doc.T[component][unit][resource] = value;
  draft.dirty = true;
}

export function setAvailability(
  draft: UiModelDraft,
  unit: number,
  resource: number,
  value: number,
): void {
  draft.doc.R[unit][resource] = value;
  draft.dirty = true;
}

// K, C and B are symmetric with a structural zero diagonal; the setters
// maintain both halves so exported documents always pass the symmetry rules.

export function setIntensity(draft: UiModelDraft, a: number, b: number, value: number): void {
  if (a === b) return;
  draft.doc.K[a][b] = value;
  draft.doc.K[b][a] = value;
  draft.dirty = true;
}

export function setLinkCost(draft: UiModelDraft, a: number, b: number, value: number): void {
  if (a === b) return;
  draft.doc.C[a][b] = value;
  draft.doc.C[b][a] = value;
  draft.dirty = true;
}

export function setBandwidth(draft: UiModelDraft, a: number, b: number, value: number): void {
  if (a === b) return;
  draft.doc.B[a][b] = value;
  draft.doc.B[b][a] = value;
  draft.dirty = true;
}

export function setAllowedUnits(draft: UiModelDraft, component: number, unitIds: string[]): void {
  const known = new Set(draft.doc.units.map((u) => u.id));
  draft.doc.components[component].allowedUnits = unitIds.filter((u) => known.has(u));
  draft.dirty = true;
}

export function setPosition(draft: UiModelDraft, nodeId: string, pos: NodePosition): void {
  draft.layout[nodeId] = { ...pos };
}

export function setComparison(draft: UiModelDraft, rows: number[][] | undefined): void {
  if (rows === undefined) {
    delete draft.doc.comparison;
  } else {
    draft.doc.comparison = clone(rows);
  }
  draft.dirty = true;
}

export function freshId(prefix: string, taken: Iterable<{ id: string }>): string {
  const used = new Set(Array.from(taken, (e) => e.id));
  let i = 1;
  while (used.has(`${prefix}${i}`)) i += 1;
  return `${prefix}${i}`;
}
