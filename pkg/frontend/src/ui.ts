// DOM rendering and event wiring. All numbers come from the SessionView,
// which mirrors the last service response.

import { ApiError, ServiceClient } from "./api.js";
import {
  deriveSessionView,
  deriveStepComparison,
  sliderToValue,
  valueToSlider,
  viewAfterEntry,
  type SessionView,
  type StepComparison,
} from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing element #${id}`);
  }
  return element as T;
}

export class App {
  private client: ServiceClient;
  private view: SessionView | null = null;
  private pendingStep: StepComparison | null = null;

  constructor(client: ServiceClient) {
    this.client = client;
  }

  wire(): void {
    byId<HTMLButtonElement>("create-session").addEventListener("click", () => {
      void this.createSession();
    });
    byId<HTMLButtonElement>("apply-judgment").addEventListener("click", () => {
      void this.submitJudgment();
    });
    const slider = byId<HTMLInputElement>("judgment-slider");
    slider.addEventListener("input", () => {
      const value = sliderToValue(Number(slider.value) / 100);
      byId<HTMLInputElement>("judgment-value").value = value.toPrecision(4);
    });
    byId<HTMLInputElement>("judgment-value").addEventListener("change", () => {
      const value = Number(byId<HTMLInputElement>("judgment-value").value);
      if (Number.isFinite(value) && value > 0) {
        slider.value = String(Math.round(valueToSlider(value) * 100));
      }
    });
    byId<HTMLButtonElement>("what-if-step").addEventListener("click", () => {
      void this.applyStep();
    });
    byId<HTMLButtonElement>("step-accept").addEventListener("click", () => {
      this.acceptStep();
    });
    byId<HTMLButtonElement>("step-undo").addEventListener("click", () => {
      void this.undoStep();
    });
  }

  private async createSession(): Promise<void> {
    const raw = byId<HTMLInputElement>("labels-input").value;
    const labels = raw
      .split(",")
      .map((label) => label.trim())
      .filter((label) => label.length > 0);
    if (labels.length < 2) {
      this.showError("enter at least two comma-separated entity names");
      return;
    }
    try {
      const session = await this.client.createSession(labels);
      const analysis = await this.client.getAnalysis(session.id);
      this.view = deriveSessionView(session, analysis);
      this.pendingStep = null;
      this.render();
    } catch (error) {
      this.showApiError(error);
    }
  }

  private async submitJudgment(): Promise<void> {
    if (!this.view || !this.view.selected) {
      this.showError("select a cell first");
      return;
    }
    const value = Number(byId<HTMLInputElement>("judgment-value").value);
    const { i, j } = this.view.selected;
    try {
      const response = await this.client.putEntry(this.view.sessionId, i, j, value, this.view.revision);
      this.view = viewAfterEntry(this.view, response);
      this.pendingStep = null;
      this.render();
    } catch (error) {
      this.showApiError(error);
    }
  }

  private async applyStep(): Promise<void> {
    if (!this.view) {
      return;
    }
    try {
      const response = await this.client.applyStep(this.view.sessionId, this.view.revision);
      this.pendingStep = deriveStepComparison(this.view, response);
      this.view = viewAfterEntry(this.view, response);
      this.render();
    } catch (error) {
      this.showApiError(error);
    }
  }

  private acceptStep(): void {
    this.pendingStep = null;
    this.render();
  }

  private async undoStep(): Promise<void> {
    if (!this.view || !this.pendingStep) {
      return;
    }
    try {
      const response = await this.client.undo(this.view.sessionId, this.view.revision);
      this.view = viewAfterEntry(this.view, response);
      this.pendingStep = null;
      this.render();
    } catch (error) {
      this.showApiError(error);
    }
  }

  private selectCell(i: number, j: number): void {
    if (!this.view || i === j) {
      return;
    }
    this.view = { ...this.view, selected: { i, j } };
    const current = this.view.matrix[i]?.[j];
    if (current !== undefined) {
      byId<HTMLInputElement>("judgment-value").value = String(current);
      byId<HTMLInputElement>("judgment-slider").value = String(
        Math.round(valueToSlider(current) * 100),
      );
    }
    this.render();
  }

  private showError(message: string): void {
    byId<HTMLElement>("error-box").textContent = message;
  }

  private showApiError(error: unknown): void {
    if (error instanceof ApiError && error.isRevisionConflict) {
      this.showError("someone else edited this session; refresh to continue");
      void this.refresh();
      return;
    }
    this.showError(error instanceof Error ? error.message : String(error));
  }

  private async refresh(): Promise<void> {
    if (!this.view) {
      return;
    }
    const session = await this.client.getSession(this.view.sessionId);
    const analysis = await this.client.getAnalysis(session.id);
    this.view = deriveSessionView(session, analysis, this.view.selected);
    this.render();
  }

  render(): void {
    const view = this.view;
    if (!view) {
      return;
    }
    this.showError("");
    byId<HTMLElement>("session-id").textContent = view.sessionId;
    byId<HTMLElement>("workspace").style.display = "block";

    // inconsistency gauge: the number shown is the response field
    byId<HTMLElement>("gauge-value").textContent = view.gaugeDisplay;
    byId<HTMLElement>("gauge-value").title = String(view.gauge);
    byId<HTMLElement>("gauge-fill").style.width = `${Math.min(100, view.gauge * 100)}%`;

    const highlightBox = byId<HTMLElement>("triad-box");
    if (view.highlight) {
      const { i, j, k } = view.highlight;
      const names = [view.labels[i], view.labels[j], view.labels[k]].join(", ");
      highlightBox.textContent =
        `worst triad (${names}): deviation ${view.highlight.deviation.toFixed(4)}` +
        (view.highlight.orthoK === null ? "" : `, error factor k ${view.highlight.orthoK.toFixed(4)}`);
    } else {
      highlightBox.textContent = "no triads (two entities) or nothing judged yet";
    }

    this.renderMatrix(view);
    this.renderWeights(view);
    this.renderStep();
  }

  private renderMatrix(view: SessionView): void {
    const table = byId<HTMLTableElement>("matrix");
    table.innerHTML = "";
    const header = table.insertRow();
    header.insertCell();
    for (const label of view.labels) {
      const cell = header.insertCell();
      cell.textContent = label;
      cell.className = "head";
    }
    view.cells.forEach((row, i) => {
      const tr = table.insertRow();
      const name = tr.insertCell();
      name.textContent = view.labels[i] ?? "";
      name.className = "head";
      row.forEach((cell, j) => {
        const td = tr.insertCell();
        td.textContent = cell.diagonal ? "1" : cell.judged ? cell.display : "?";
        td.title = String(cell.value);
        const classes = ["cell"];
        if (cell.highlighted) classes.push("worst");
        if (!cell.judged && !cell.diagonal) classes.push("unjudged");
        if (view.selected && view.selected.i === i && view.selected.j === j) classes.push("selected");
        if (cell.diagonal) classes.push("diag");
        td.className = classes.join(" ");
        if (cell.editable) {
          td.addEventListener("click", () => this.selectCell(i, j));
        }
      });
    });
  }

  private renderWeights(view: SessionView): void {
    const box = byId<HTMLElement>("weights");
    box.innerHTML = "";
    view.weightBars.forEach((bar) => {
      const row = document.createElement("div");
      row.className = "weight-row";
      const label = document.createElement("span");
      label.textContent = `${bar.label} ${bar.display}`;
      const track = document.createElement("div");
      track.className = "bar-track";
      const fill = document.createElement("div");
      fill.className = "bar-fill";
      fill.style.width = `${bar.percent}%`;
      fill.title = String(bar.value);
      track.appendChild(fill);
      row.appendChild(label);
      row.appendChild(track);
      box.appendChild(row);
    });
    byId<HTMLElement>("ranking").textContent = `ranking: ${view.ranking.join(" > ")}`;
  }

  private renderStep(): void {
    const panel = byId<HTMLElement>("step-panel");
    const step = this.pendingStep;
    if (!step) {
      panel.style.display = "none";
      return;
    }
    panel.style.display = "block";
    byId<HTMLElement>("step-summary").textContent =
      `inconsistency ${step.beforeInconsistency.toFixed(4)} -> ${step.afterInconsistency.toFixed(4)}`;
    const rows = step.beforeWeights.map((before, index) => {
      const after = step.afterWeights[index] ?? before;
      const label = this.view?.labels[index] ?? `#${index}`;
      return `${label}: ${before.toFixed(3)} -> ${after.toFixed(3)}`;
    });
    byId<HTMLElement>("step-weights").textContent = rows.join("   ");
  }
}
