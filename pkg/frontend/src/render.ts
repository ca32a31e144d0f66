// DOM construction for the three panels: model editing (software and
// hardware side by side), pairwise judgments, allocation results. Rendering
// is a full rebuild of each panel from state; at this scale that is simpler
// and safer than incremental updates.

import { SAATY_STEPS, getJudgment } from "./ahp";
import type { AppState, RunEntry } from "./state";
import { canAllocate, weightsAccepted, CR_LIMIT } from "./state";

export interface Handlers {
  addResource(): void;
  removeResource(index: number): void;
  editResource(index: number, field: "name" | "unit", value: string): void;
  addUnit(): void;
  removeUnit(index: number): void;
  editUnit(index: number, field: "name" | "kind", value: string): void;
  setAvailability(unit: number, resource: number, value: number): void;
  setLink(kind: "C" | "B", a: number, b: number, value: number): void;
  addComponent(): void;
  removeComponent(index: number): void;
  editComponent(index: number, value: string): void;
  selectComponent(index: number): void;
  setDemand(component: number, unit: number, resource: number, value: number): void;
  setIntensity(a: number, b: number, value: number): void;
  toggleAllowed(component: number, unitId: string, allowed: boolean): void;
  setJudgment(a: number, b: number, value: number): void;
  allocate(method: "ga" | "exhaustive"): void;
  rerun(): void;
  newModel(): void;
  importFile(file: File): void;
  exportFile(): void;
  validate(): void;
}

const UNIT_COLORS = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948"];

export function unitColor(state: AppState, unitId: string): string {
  const index = state.draft.doc.units.findIndex((u) => u.id === unitId);
  return index >= 0 ? UNIT_COLORS[index % UNIT_COLORS.length] : "#888";
}

type Child = Node | string;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | ((ev: Event) => void)> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key, value);
    } else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
      (node as unknown as Record<string, unknown>)[key] = value;
    } else {
      node.setAttribute(key, value);
    }
  }
  node.append(...children);
  return node;
}

function numberInput(value: number, onChange: (v: number) => void, title = ""): HTMLInputElement {
  return el("input", {
    type: "number",
    step: "any",
    min: "0",
    value: String(value),
    title,
    change: (ev) => {
      const v = Number((ev.target as HTMLInputElement).value);
      onChange(Number.isFinite(v) ? v : 0);
    },
  });
}

function clear(node: HTMLElement): void {
  node.replaceChildren();
}

export function renderBanner(state: AppState, host: HTMLElement): void {
  clear(host);
  if (!state.banner) return;
  host.append(el("div", { class: `banner ${state.banner.kind}` }, state.banner.text));
}

export function renderValidation(state: AppState, host: HTMLElement): void {
  clear(host);
  if (state.validation === null) return;
  if (state.validation.length === 0) {
    host.append(el("div", { class: "banner info" }, "model is valid"));
    return;
  }
  const list = el("ul", { class: "issues" });
  for (const issue of state.validation) {
    list.append(el("li", {}, `[${issue.code}] ${issue.path ? issue.path + ": " : ""}${issue.message}`));
  }
  host.append(el("div", { class: "banner error" }, `validation found ${state.validation.length} issue(s)`), list);
}

export function renderResources(state: AppState, host: HTMLElement, h: Handlers): void {
  clear(host);
  const { resources } = state.draft.doc;
  const table = el("table", { class: "grid" });
  table.append(
    el("tr", {}, el("th", {}, "resource"), el("th", {}, "name"), el("th", {}, "measured in"), el("th", {})),
  );
  resources.forEach((r, i) => {
    table.append(
      el(
        "tr",
        {},
        el("td", {}, el("code", {}, r.id)),
        el("td", {}, el("input", {
          value: r.name,
          change: (ev) => h.editResource(i, "name", (ev.target as HTMLInputElement).value),
        })),
        el("td", {}, el("input", {
          value: r.unit,
          change: (ev) => h.editResource(i, "unit", (ev.target as HTMLInputElement).value),
        })),
        el("td", {}, el("button", { class: "subtle", click: () => h.removeResource(i) }, "remove")),
      ),
    );
  });
  host.append(table, el("button", { click: () => h.addResource() }, "+ resource"));
}

export function renderSoftwarePane(
  state: AppState,
  host: HTMLElement,
  h: Handlers,
  selected: number,
): void {
  clear(host);
  const { doc } = state.draft;
  const list = el("ul", { class: "node-list" });
  doc.components.forEach((comp, i) => {
    const hostedOn = state.overlay?.[i];
    const swatch = el("span", { class: "swatch" });
    swatch.style.background = hostedOn ? unitColor(state, hostedOn) : "transparent";
    const item = el(
      "li",
      { class: i === selected ? "selected" : "", click: () => h.selectComponent(i) },
      swatch,
      el("span", { class: "node-name" }, comp.name || comp.id),
      hostedOn ? el("span", { class: "hosted" }, `→ ${hostedOn}`) : "",
    );
    list.append(item);
  });
  host.append(list, el("button", { click: () => h.addComponent() }, "+ component"));

  const comp = doc.components[selected];
  if (!comp) return;
  const panel = el("div", { class: "props" });
  panel.append(
    el("h4", {}, `component ${comp.id}`),
    el("label", {}, "name ", el("input", {
      value: comp.name,
      change: (ev) => h.editComponent(selected, (ev.target as HTMLInputElement).value),
    })),
    el("button", { class: "subtle", click: () => h.removeComponent(selected) }, "remove component"),
  );

  if (doc.units.length > 0) {
    const allowed = el("fieldset", {}, el("legend", {}, "may run on (none checked = anywhere)"));
    for (const unit of doc.units) {
      const checked = comp.allowedUnits.includes(unit.id);
      allowed.append(
        el(
          "label",
          { class: "inline" },
          el("input", {
            type: "checkbox",
            checked,
            change: (ev) => h.toggleAllowed(selected, unit.id, (ev.target as HTMLInputElement).checked),
          }),
          unit.name || unit.id,
        ),
      );
    }
    panel.append(allowed);

    if (doc.resources.length > 0) {
      const demand = el("table", { class: "grid" });
      demand.append(
        el("tr", {}, el("th", {}, "demand"), ...doc.resources.map((r) => el("th", {}, `${r.id} (${r.unit})`))),
      );
      doc.units.forEach((unit, hIdx) => {
        demand.append(
          el(
            "tr",
            {},
            el("th", {}, unit.id),
            ...doc.resources.map((_, k) =>
              el("td", {}, numberInput(doc.T[selected][hIdx][k], (v) => h.setDemand(selected, hIdx, k, v))),
            ),
          ),
        );
      });
      panel.append(el("p", { class: "hint" }, "consumption when hosted on each unit"), demand);
    }
  }

  if (doc.components.length > 1) {
    const comm = el("table", { class: "grid" });
    comm.append(el("tr", {}, el("th", {}, "talks to"), el("th", {}, "intensity")));
    doc.components.forEach((other, j) => {
      if (j === selected) return;
      comm.append(
        el(
          "tr",
          {},
          el("th", {}, other.name || other.id),
          el("td", {}, numberInput(doc.K[selected][j], (v) => h.setIntensity(selected, j, v))),
        ),
      );
    });
    panel.append(comm);
  }
  host.append(panel);
}

export function renderHardwarePane(state: AppState, host: HTMLElement, h: Handlers): void {
  clear(host);
  const { doc } = state.draft;
  const list = el("ul", { class: "node-list" });
  doc.units.forEach((unit, i) => {
    const swatch = el("span", { class: "swatch" });
    swatch.style.background = UNIT_COLORS[i % UNIT_COLORS.length];
    list.append(
      el(
        "li",
        {},
        swatch,
        el("input", {
          value: unit.name,
          change: (ev) => h.editUnit(i, "name", (ev.target as HTMLInputElement).value),
        }),
        el("input", {
          class: "narrow",
          value: unit.kind,
          title: "kind (CPU/GPU/FPGA/...)",
          change: (ev) => h.editUnit(i, "kind", (ev.target as HTMLInputElement).value),
        }),
        el("button", { class: "subtle", click: () => h.removeUnit(i) }, "remove"),
      ),
    );
  });
  host.append(list, el("button", { click: () => h.addUnit() }, "+ unit"));

  if (doc.units.length > 0 && doc.resources.length > 0) {
    const avail = el("table", { class: "grid" });
    avail.append(
      el("tr", {}, el("th", {}, "available"), ...doc.resources.map((r) => el("th", {}, `${r.id} (${r.unit})`))),
    );
    doc.units.forEach((unit, hIdx) => {
      avail.append(
        el(
          "tr",
          {},
          el("th", {}, unit.id),
          ...doc.resources.map((_, k) =>
            el("td", {}, numberInput(doc.R[hIdx][k], (v) => h.setAvailability(hIdx, k, v))),
          ),
        ),
      );
    });
    host.append(avail);
  }

  if (doc.units.length > 1) {
    const links = el("table", { class: "grid" });
    links.append(
      el("tr", {}, el("th", {}, "link"), el("th", {}, "comm. cost"), el("th", {}, "bandwidth (0 = none)")),
    );
    for (let a = 0; a < doc.units.length; a++) {
      for (let b = a + 1; b < doc.units.length; b++) {
        links.append(
          el(
            "tr",
            {},
            el("th", {}, `${doc.units[a].id} — ${doc.units[b].id}`),
            el("td", {}, numberInput(doc.C[a][b], (v) => h.setLink("C", a, b, v))),
            el("td", {}, numberInput(doc.B[a][b], (v) => h.setLink("B", a, b, v))),
          ),
        );
      }
    }
    host.append(links);
  }
}

export function renderJudgments(state: AppState, host: HTMLElement, h: Handlers): void {
  clear(host);
  const { criteria } = state.grid;
  if (criteria.length < 2) {
    host.append(el("p", { class: "hint" }, "add at least one resource to compare criteria"));
    return;
  }
  const table = el("table", { class: "grid" });
  for (let a = 0; a < criteria.length; a++) {
    for (let b = a + 1; b < criteria.length; b++) {
      const current = getJudgment(state.grid, a, b);
      const select = el("select", {
        change: (ev) => h.setJudgment(a, b, Number((ev.target as HTMLSelectElement).value)),
      });
      for (const step of SAATY_STEPS) {
        const label =
          step === 1 ? "equal" : step > 0 ? `${criteria[a]} × ${step}` : `${criteria[b]} × ${-step}`;
        const option = el("option", { value: String(step) }, label);
        if (step === current) option.selected = true;
        select.append(option);
      }
      table.append(
        el("tr", {}, el("th", {}, criteria[a]), el("td", {}, select), el("th", {}, criteria[b])),
      );
    }
  }
  host.append(table);

  const status = el("div", { class: "weights" });
  if (state.weightsError) {
    status.append(
      el(
        "div",
        { class: "banner error" },
        `inconsistent judgments, CR = ${state.weightsError.cr.toFixed(3)} (must be below ${CR_LIMIT}); revise and retry`,
      ),
    );
  } else if (state.weights) {
    const cr = state.weights.cr;
    const badge = el(
      "span",
      { class: `cr-badge ${cr < CR_LIMIT ? "ok" : "bad"}` },
      `CR = ${cr.toFixed(3)}`,
    );
    status.append(badge);
    const bars = el("table", { class: "grid" });
    const all = [...state.weights.weights, state.weights.fc];
    criteria.forEach((name, i) => {
      const bar = el("div", { class: "bar" });
      bar.style.width = `${Math.round(all[i] * 240)}px`;
      bars.append(
        el("tr", {}, el("th", {}, name), el("td", {}, bar, ` ${(all[i] * 100).toFixed(1)}%`)),
      );
    });
    status.append(bars);
  } else {
    status.append(el("p", { class: "hint" }, "judgments not yet checked"));
  }
  host.append(status);
}

function runRow(state: AppState, run: RunEntry, index: number): HTMLElement {
  const cells = run.allocation.map((unitId) => {
    const cell = el("td", {}, unitId);
    cell.style.color = unitColor(state, unitId);
    return cell;
  });
  return el(
    "tr",
    { class: state.overlay === run.allocation ? "selected" : "" },
    el("td", {}, `#${index + 1}`),
    el("td", {}, run.w.toFixed(4)),
    el("td", {}, run.exact ? "exact" : `seed ${run.seed}`),
    ...cells,
  );
}

export function renderResults(state: AppState, host: HTMLElement, h: Handlers): void {
  clear(host);
  const controls = el("div", { class: "controls" });
  const allocateGa = el(
    "button",
    { click: () => h.allocate("ga"), disabled: !canAllocate(state) },
    state.busy ? "searching…" : "Allocate (genetic)",
  );
  const allocateExact = el(
    "button",
    { click: () => h.allocate("exhaustive"), disabled: !canAllocate(state) },
    "Allocate (exhaustive)",
  );
  const rerun = el(
    "button",
    { click: () => h.rerun(), disabled: !canAllocate(state) || state.runs.length === 0 },
    "Re-run (new seed)",
  );
  controls.append(allocateGa, allocateExact, rerun);
  if (!weightsAccepted(state)) {
    controls.append(el("p", { class: "hint" }, "allocation is blocked until judgments pass the consistency check"));
  }
  host.append(controls);

  const current = state.runs.find((r) => r.allocation === state.overlay) ?? state.runs[0];
  if (current) {
    const res = current.report.bestResult;
    host.append(
      el(
        "p",
        {},
        `best cost w = ${res.w.toFixed(6)}, ${res.feasible ? "feasible" : "infeasible"} (ρ=${res.rho}, κ=${res.kappa}), ` +
          `${current.report.evaluated} evaluations`,
      ),
    );
    const { doc } = state.draft;
    if (doc.resources.length > 0 && res.unitLoad.length === doc.units.length) {
      const residual = el("table", { class: "grid" });
      residual.append(
        el("tr", {}, el("th", {}, "residual"), ...doc.resources.map((r) => el("th", {}, r.id))),
      );
      doc.units.forEach((unit, hIdx) => {
        residual.append(
          el(
            "tr",
            {},
            el("th", {}, unit.id),
            ...doc.resources.map((_, k) =>
              el("td", {}, (doc.R[hIdx][k] - res.unitLoad[hIdx][k]).toFixed(3)),
            ),
          ),
        );
      });
      host.append(el("h4", {}, "remaining resources"), residual);
    }
    const usedLinks: HTMLElement[] = [];
    for (let a = 0; a < doc.units.length; a++) {
      for (let b = a + 1; b < doc.units.length; b++) {
        const traffic = res.pairTraffic[a]?.[b] ?? 0;
        if (traffic > 0) {
          usedLinks.push(
            el(
              "tr",
              {},
              el("th", {}, `${doc.units[a].id} — ${doc.units[b].id}`),
              el("td", {}, `${traffic.toFixed(3)} / ${doc.B[a][b].toFixed(3)}`),
            ),
          );
        }
      }
    }
    if (usedLinks.length > 0) {
      const bw = el("table", { class: "grid" });
      bw.append(el("tr", {}, el("th", {}, "link"), el("th", {}, "traffic / bandwidth")));
      bw.append(...usedLinks);
      host.append(el("h4", {}, "bandwidth utilization"), bw);
    }
  }

  if (state.runs.length > 0) {
    const table = el("table", { class: "grid runs" });
    table.append(
      el(
        "tr",
        {},
        el("th", {}, "run"),
        el("th", {}, "w"),
        el("th", {}, "search"),
        ...state.draft.doc.components.map((c) => el("th", {}, c.id)),
      ),
    );
    state.runs.forEach((run, i) => table.append(runRow(state, run, i)));
    host.append(el("h4", {}, "alternatives (sorted by cost)"), table);
  }
}
