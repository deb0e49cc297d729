/** The explorer: one live session steered from a gate panel.
 *
 * All physics lives on the server.  This module renders payloads, posts
 * rotations, and keeps at most one mutation in flight; apply and undo are
 * strict request/response with controls disabled in between.
 */

import {
  applyRotation,
  createSession,
  getCnotTrace,
  getPlanes,
  undoRotation,
} from "./api.js";
import { dragCamera } from "./projection.js";
import { renderScene } from "./scene-svg.js";
import {
  ANGLE_CHOICES,
  GENERATOR_LABELS,
  ViewState,
  absorbPayload,
  badgeFor,
  entanglingSteps,
  formatTurns,
  initialViewState,
} from "./state.js";
import type { PlanesMap, SessionPayload, TraceDoc } from "./types.js";

const TEMPLATE = `
<header>
  <h1>dualbloch explorer</h1>
  <p class="tagline">steer a two-qubit state, watch both spheres respond</p>
</header>
<section class="loader">
  <label>state
    <input id="state-input" value="psi-" spellcheck="false"
           title="alias (uu, psi-, P, ...) or four comma-separated amplitudes">
  </label>
  <button id="load-btn">load session</button>
  <span id="status" role="status"></span>
</section>
<section class="stage">
  <div id="scene" class="scene" title="drag to orbit"></div>
  <aside class="readout">
    <div class="meter">
      <span class="meter-label">concurrence</span>
      <div class="meter-track"><div id="meter-bar" class="meter-bar"></div></div>
      <span id="meter-value">&ndash;</span>
    </div>
    <dl id="measures" class="measures"></dl>
    <div class="camera-line">camera <span id="camera-readout"></span>
      <button id="camera-reset">reset</button></div>
    <ol id="history" class="history"></ol>
  </aside>
</section>
<section class="gates">
  <div id="gen-grid" class="gen-grid"></div>
  <div class="angle-row">
    <span id="angle-buttons"></span>
    <label>custom <input id="angle-custom" size="6" placeholder="0.5"
      title="angle in units of pi"></label>
    <button id="apply-btn" disabled>apply</button>
    <button id="undo-btn" disabled>undo</button>
  </div>
</section>
<section class="cnot">
  <h2>CNOT walkthrough</h2>
  <label>input <input id="cnot-input" value="1,0,1,0" spellcheck="false"></label>
  <button id="cnot-load">trace</button>
  <div id="cnot-steps" class="cnot-steps"></div>
</section>
`;

function el<T extends HTMLElement>(root: ParentNode, selector: string): T {
  const found = root.querySelector(selector);
  if (!found) throw new Error(`missing element ${selector}`);
  return found as T;
}

function messageOf(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

export class App {
  state: ViewState = initialViewState();
  private planesTable: PlanesMap = {};
  private root!: HTMLElement;

  async mount(root: HTMLElement): Promise<void> {
    this.root = root;
    root.innerHTML = TEMPLATE;
    this.buildGatePanel();
    this.wire();
    try {
      this.planesTable = await getPlanes();
      this.annotatePlanes();
    } catch (error) {
      this.setStatus(messageOf(error));
    }
  }

  private buildGatePanel(): void {
    const grid = el<HTMLDivElement>(this.root, "#gen-grid");
    grid.innerHTML = GENERATOR_LABELS.map(
      (label) => `
      <button class="gen-btn" data-gen="${label}">
        <span class="gen-label">${label}</span>
        <span class="gen-plane"></span>
        <span class="gen-badge"></span>
      </button>`,
    ).join("");
    const angles = el<HTMLSpanElement>(this.root, "#angle-buttons");
    angles.innerHTML = ANGLE_CHOICES.map(
      (a) =>
        `<button class="angle-btn${a === this.state.angle ? " selected" : ""}" ` +
        `data-angle="${a}">${formatTurns(a)}</button>`,
    ).join("");
  }

  private wire(): void {
    el<HTMLButtonElement>(this.root, "#load-btn").addEventListener("click", () => {
      void this.loadSession(el<HTMLInputElement>(this.root, "#state-input").value);
    });
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".gen-btn")) {
      button.addEventListener("click", () => {
        this.selectGenerator(button.dataset.gen ?? "XY");
      });
    }
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".angle-btn")) {
      button.addEventListener("click", () => {
        this.selectAngle(Number(button.dataset.angle));
        el<HTMLInputElement>(this.root, "#angle-custom").value = "";
      });
    }
    el<HTMLInputElement>(this.root, "#angle-custom").addEventListener("change", (e) => {
      const value = Number((e.target as HTMLInputElement).value);
      if (Number.isFinite(value) && value !== 0) this.selectAngle(value);
    });
    el<HTMLButtonElement>(this.root, "#apply-btn").addEventListener("click", () => {
      void this.apply();
    });
    el<HTMLButtonElement>(this.root, "#undo-btn").addEventListener("click", () => {
      void this.undo();
    });
    el<HTMLButtonElement>(this.root, "#cnot-load").addEventListener("click", () => {
      void this.loadTrace(el<HTMLInputElement>(this.root, "#cnot-input").value);
    });
    el<HTMLButtonElement>(this.root, "#camera-reset").addEventListener("click", () => {
      this.state = { ...this.state, camera: { elevation: 70, azimuth: 110 } };
      this.renderSceneBox();
    });
    this.wireOrbit();
  }

  private wireOrbit(): void {
    const box = el<HTMLDivElement>(this.root, "#scene");
    let last: [number, number] | null = null;
    box.addEventListener("pointerdown", (e) => {
      last = [e.clientX, e.clientY];
    });
    box.addEventListener("pointermove", (e) => {
      if (!last) return;
      const [dx, dy] = [e.clientX - last[0], e.clientY - last[1]];
      last = [e.clientX, e.clientY];
      this.state = {
        ...this.state,
        camera: dragCamera(this.state.camera, dx * 0.5, dy * 0.5),
      };
      this.renderSceneBox();
    });
    for (const kind of ["pointerup", "pointerleave"]) {
      box.addEventListener(kind, () => {
        last = null;
      });
    }
  }

  async loadSession(stateText: string): Promise<void> {
    await this.mutate(() => createSession(stateText));
  }

  async apply(): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    const { selectedGenerator, angle } = this.state;
    await this.mutate(() => applyRotation(id, selectedGenerator, angle));
  }

  async undo(): Promise<void> {
    const id = this.state.sessionId;
    if (!id) return;
    await this.mutate(() => undoRotation(id));
  }

  /** Run one mutation with the controls locked; absorb the new payload. */
  private async mutate(call: () => Promise<SessionPayload>): Promise<void> {
    if (this.state.inFlight) return;
    this.state = { ...this.state, inFlight: true };
    this.refreshControls();
    try {
      const payload = await call();
      this.state = absorbPayload({ ...this.state, inFlight: false }, payload);
      this.renderAll();
    } catch (error) {
      this.state = { ...this.state, inFlight: false, status: messageOf(error) };
      this.renderAll();
    }
  }

  selectGenerator(label: string): void {
    this.state = { ...this.state, selectedGenerator: label };
    this.refreshControls();
  }

  selectAngle(angle: number): void {
    this.state = { ...this.state, angle };
    this.refreshControls();
  }

  async loadTrace(input: string): Promise<void> {
    try {
      this.renderTrace(await getCnotTrace(input));
    } catch (error) {
      this.setStatus(messageOf(error));
    }
  }

  private renderAll(): void {
    this.renderSceneBox();
    this.renderMeter();
    this.renderMeasures();
    this.renderHistory();
    this.annotatePlanes();
    this.refreshControls();
    this.setStatus(this.state.status);
  }

  private renderSceneBox(): void {
    const box = el<HTMLDivElement>(this.root, "#scene");
    if (this.state.scene === null) {
      box.innerHTML = '<p class="hint">load a session to begin</p>';
    } else {
      box.innerHTML = renderScene(this.state.scene, this.state.camera);
    }
    el<HTMLSpanElement>(this.root, "#camera-readout").textContent =
      `${this.state.camera.elevation.toFixed(0)}° / ` +
      `${this.state.camera.azimuth.toFixed(0)}°`;
  }

  private renderMeter(): void {
    const m = this.state.measures;
    const value = el<HTMLSpanElement>(this.root, "#meter-value");
    const bar = el<HTMLDivElement>(this.root, "#meter-bar");
    if (m === null) {
      value.textContent = "–";
      bar.style.width = "0%";
      return;
    }
    value.textContent = m.concurrence.toFixed(3);
    bar.style.width = `${Math.min(100, Math.max(0, m.concurrence * 100))}%`;
  }

  private renderMeasures(): void {
    const m = this.state.measures;
    const list = el<HTMLDListElement>(this.root, "#measures");
    if (m === null) {
      list.innerHTML = "";
      return;
    }
    const rows: [string, string][] = [
      ["class", m.classification],
      ["r", m.r.toFixed(4)],
      ["r~", m.r_tilde.toFixed(4)],
      ["purity", m.purity.toFixed(4)],
    ];
    list.innerHTML = rows.map(([k, v]) => `<dt>${k}</dt><dd>${v}</dd>`).join("");
  }

  private renderHistory(): void {
    const list = el<HTMLOListElement>(this.root, "#history");
    list.innerHTML = this.state.history
      .map((h) => `<li>${h.generator} ${formatTurns(h.angle)}</li>`)
      .join("");
  }

  private annotatePlanes(): void {
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".gen-btn")) {
      const label = button.dataset.gen ?? "";
      el<HTMLSpanElement>(button, ".gen-plane").textContent =
        this.planesTable[label] ?? "";
      const planeClass = this.state.planes?.[label];
      el<HTMLSpanElement>(button, ".gen-badge").textContent = badgeFor(planeClass);
    }
  }

  private refreshControls(): void {
    const live = this.state.sessionId !== null;
    const busy = this.state.inFlight;
    el<HTMLButtonElement>(this.root, "#apply-btn").disabled = !live || busy;
    el<HTMLButtonElement>(this.root, "#undo-btn").disabled =
      !live || busy || this.state.history.length === 0;
    el<HTMLButtonElement>(this.root, "#load-btn").disabled = busy;
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".gen-btn")) {
      button.classList.toggle(
        "selected",
        button.dataset.gen === this.state.selectedGenerator,
      );
    }
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".angle-btn")) {
      button.classList.toggle(
        "selected",
        Number(button.dataset.angle) === this.state.angle,
      );
    }
  }

  private renderTrace(doc: TraceDoc): void {
    const weights = doc.steps.map((step, k) => ({
      before: (k === 0 ? doc.input.scene : doc.steps[k - 1]?.scene)?.weights.r_tilde ?? 0,
      after: step.scene.weights.r_tilde,
    }));
    const entangling = entanglingSteps(weights);
    const cells = [
      `<figure class="trace-step">
        <figcaption>0. input</figcaption>
        ${renderScene(doc.input.scene, this.state.camera, 180)}
      </figure>`,
      ...doc.steps.map(
        (step, k) => `
      <figure class="trace-step${entangling[k] ? " entangling" : ""}">
        <figcaption>${k + 1}. ${step.generator}:${formatTurns(step.angle)}
          &mdash; ${step.note}${entangling[k] ? " (entangling)" : ""}</figcaption>
        ${renderScene(step.scene, this.state.camera, 180)}
      </figure>`,
      ),
    ];
    el<HTMLDivElement>(this.root, "#cnot-steps").innerHTML = cells.join("");
  }

  private setStatus(message: string): void {
    el<HTMLSpanElement>(this.root, "#status").textContent = message;
  }
}

export function mountApp(root: HTMLElement): App {
  const app = new App();
  void app.mount(root);
  return app;
}
