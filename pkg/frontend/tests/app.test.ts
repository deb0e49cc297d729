import { beforeEach, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { renderScene } from "../src/scene-svg.js";
import type { SessionPayload, TraceDoc } from "../src/types.js";
import type { FetchCall, Route } from "./helpers.js";
import { fixture, flush, installFetch } from "./helpers.js";

const planes = fixture<Record<string, string>>("planes.json");
const singlet = fixture<SessionPayload>("session-singlet.json");
const afterXy = fixture<SessionPayload>("session-after-xy.json");
const undone = fixture<SessionPayload>("session-undo.json");
const uu = fixture<SessionPayload>("session-uu.json");
const trace = fixture<TraceDoc>("trace-plus-up.json");

function standardRoutes(): Route[] {
  return [
    { method: "GET", match: /^\/planes$/, reply: () => ({ body: planes }) },
    {
      method: "POST",
      match: /^\/sessions$/,
      reply: (call) => ({
        body: (call.body as { state?: string }).state === "uu" ? uu : singlet,
      }),
    },
    { method: "POST", match: /\/apply$/, reply: () => ({ body: afterXy }) },
    { method: "POST", match: /\/undo$/, reply: () => ({ body: undone }) },
    { method: "GET", match: /^\/gates\/cnot\/trace/, reply: () => ({ body: trace }) },
  ];
}

async function mountWith(routes: Route[]): Promise<{
  app: App;
  root: HTMLElement;
  calls: FetchCall[];
}> {
  const calls = installFetch(routes);
  document.body.innerHTML = "";
  const root = document.createElement("div");
  document.body.appendChild(root);
  const app = new App();
  await app.mount(root);
  await flush();
  return { app, root, calls };
}

function click(root: ParentNode, selector: string): void {
  const target = root.querySelector(selector) as HTMLElement | null;
  expect(target, selector).not.toBeNull();
  target!.click();
}

function textOf(root: ParentNode, selector: string): string {
  return root.querySelector(selector)?.textContent ?? "";
}

function setInput(root: ParentNode, selector: string, value: string): void {
  (root.querySelector(selector) as HTMLInputElement).value = value;
}

// The DOM serializer expands self-closing tags, so round-trip the
// expected markup through a detached node before comparing innerHTML.
function domNormalized(svg: string): string {
  const div = document.createElement("div");
  div.innerHTML = svg;
  return div.innerHTML;
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("explorer acceptance", () => {
  it("singlet, XY at +π/2, undo: server scenes verbatim, meter 1 to 0 and back", async () => {
    const { app, root } = await mountWith(standardRoutes());

    setInput(root, "#state-input", "psi-");
    click(root, "#load-btn");
    await flush();

    // The loaded singlet session: meter reads the server's concurrence.
    expect(textOf(root, "#meter-value")).toBe("1.000");
    const original = app.state.sceneJson;
    expect(original).toBe(JSON.stringify(singlet.scene));
    const sceneBox = root.querySelector("#scene")!;
    expect(sceneBox.innerHTML).toBe(domNormalized(renderScene(singlet.scene, app.state.camera)));

    // The XY quarter turn leads out of the entangled shell; apply it.
    click(root, '.gen-btn[data-gen="XY"]');
    click(root, '.angle-btn[data-angle="0.5"]');
    click(root, "#apply-btn");
    await flush();

    // The display is the scene the API returned for the up-down state.
    expect(app.state.sceneJson).toBe(JSON.stringify(afterXy.scene));
    expect(sceneBox.innerHTML).toBe(domNormalized(renderScene(afterXy.scene, app.state.camera)));
    expect(afterXy.scene.classification).toBe("separable");
    expect(textOf(root, "#meter-value")).toBe("0.000");
    expect(textOf(root, "#history")).toContain("XY +π/2");

    // Undo restores the previous scene byte for byte.
    click(root, "#undo-btn");
    await flush();
    expect(app.state.sceneJson).toBe(original);
    expect(sceneBox.innerHTML).toBe(domNormalized(renderScene(singlet.scene, app.state.camera)));
    expect(textOf(root, "#meter-value")).toBe("1.000");
    expect(textOf(root, "#history")).toBe("");
  });
});

describe("gate panel", () => {
  it("annotates all fifteen generators with their wedge planes", async () => {
    const { root } = await mountWith(standardRoutes());
    const buttons = root.querySelectorAll(".gen-btn");
    expect(buttons).toHaveLength(15);
    expect(textOf(root, '.gen-btn[data-gen="IX"] .gen-plane')).toBe("y2^z2");
    expect(textOf(root, '.gen-btn[data-gen="XY"] .gen-plane')).toBe("x1^y2");
    expect(textOf(root, '.gen-btn[data-gen="ZI"] .gen-plane')).toBe("x1^y1");
  });

  it("badges plane classes from the session payload", async () => {
    const { root } = await mountWith(standardRoutes());
    click(root, "#load-btn");
    await flush();
    // At the singlet every local plane is within the MES shell.
    expect(textOf(root, '.gen-btn[data-gen="XY"] .gen-badge')).toBe("→ separable");
    expect(textOf(root, '.gen-btn[data-gen="XI"] .gen-badge')).toBe("local");

    setInput(root, "#state-input", "uu");
    click(root, "#load-btn");
    await flush();
    expect(textOf(root, '.gen-btn[data-gen="ZZ"] .gen-badge')).toBe("eigen");
    expect(textOf(root, '.gen-btn[data-gen="XY"] .gen-badge')).toBe("→ entangled");
    expect(textOf(root, '.gen-btn[data-gen="XI"] .gen-badge')).toBe("local");
  });

  it("tracks the selected generator and angle", async () => {
    const { app, root } = await mountWith(standardRoutes());
    click(root, '.gen-btn[data-gen="ZY"]');
    click(root, '.angle-btn[data-angle="-0.25"]');
    expect(app.state.selectedGenerator).toBe("ZY");
    expect(app.state.angle).toBe(-0.25);
    expect(root.querySelector('.gen-btn[data-gen="ZY"]')!.classList.contains("selected")).toBe(true);
    expect(root.querySelector('.angle-btn[data-angle="-0.25"]')!.classList.contains("selected")).toBe(true);
  });

  it("takes a custom angle in units of pi", async () => {
    const { app, root, calls } = await mountWith(standardRoutes());
    click(root, "#load-btn");
    await flush();
    const custom = root.querySelector("#angle-custom") as HTMLInputElement;
    custom.value = "0.125";
    custom.dispatchEvent(new Event("change"));
    expect(app.state.angle).toBe(0.125);
    click(root, "#apply-btn");
    await flush();
    const apply = calls.find((c) => c.url.endsWith("/apply"));
    expect(apply?.body).toEqual({ generator: "XY", angle: 0.125 });
  });
});

describe("request discipline", () => {
  it("locks every control while a mutation is in flight", async () => {
    let release!: (value: { body: unknown }) => void;
    const gate = new Promise<{ body: unknown }>((resolve) => {
      release = resolve;
    });
    const routes = standardRoutes();
    routes.splice(
      routes.findIndex((r) => r.match.source.includes("apply")),
      1,
      { method: "POST", match: /\/apply$/, reply: () => gate },
    );
    const { app, root, calls } = await mountWith(routes);
    click(root, "#load-btn");
    await flush();

    click(root, "#apply-btn");
    const applyBtn = root.querySelector("#apply-btn") as HTMLButtonElement;
    const undoBtn = root.querySelector("#undo-btn") as HTMLButtonElement;
    const loadBtn = root.querySelector("#load-btn") as HTMLButtonElement;
    expect(app.state.inFlight).toBe(true);
    expect(applyBtn.disabled).toBe(true);
    expect(undoBtn.disabled).toBe(true);
    expect(loadBtn.disabled).toBe(true);

    // A second click while pending must not start another request.
    click(root, "#apply-btn");
    click(root, "#undo-btn");
    expect(calls.filter((c) => c.url.endsWith("/apply"))).toHaveLength(1);
    expect(calls.filter((c) => c.url.endsWith("/undo"))).toHaveLength(0);

    release({ body: afterXy });
    await flush();
    expect(app.state.inFlight).toBe(false);
    expect(applyBtn.disabled).toBe(false);
  });

  it("disables undo when the history is empty", async () => {
    const { root } = await mountWith(standardRoutes());
    const undoBtn = root.querySelector("#undo-btn") as HTMLButtonElement;
    expect(undoBtn.disabled).toBe(true);
    click(root, "#load-btn");
    await flush();
    expect(undoBtn.disabled).toBe(true);
    click(root, "#apply-btn");
    await flush();
    expect(undoBtn.disabled).toBe(false);
  });

  it("surfaces server errors in the status line and unlocks", async () => {
    const routes = standardRoutes();
    routes.splice(
      routes.findIndex((r) => r.match.source.includes("apply")),
      1,
      {
        method: "POST",
        match: /\/apply$/,
        reply: () => ({ status: 422, body: { error: "unknown generator 'QQ'" } }),
      },
    );
    const { app, root } = await mountWith(routes);
    click(root, "#load-btn");
    await flush();
    click(root, "#apply-btn");
    await flush();
    expect(textOf(root, "#status")).toBe("unknown generator 'QQ'");
    expect(app.state.inFlight).toBe(false);
    // The last good scene stays up.
    expect(app.state.sceneJson).toBe(JSON.stringify(singlet.scene));
  });

  it("shows a placeholder when the server sends a malformed scene", async () => {
    const mangled = JSON.parse(JSON.stringify(afterXy)) as SessionPayload;
    (mangled.scene as { version: number }).version = 2;
    const routes = standardRoutes();
    routes.splice(
      routes.findIndex((r) => r.match.source.includes("apply")),
      1,
      { method: "POST", match: /\/apply$/, reply: () => ({ body: mangled }) },
    );
    const { root } = await mountWith(routes);
    click(root, "#load-btn");
    await flush();
    click(root, "#apply-btn");
    await flush();
    expect(root.querySelector("#scene")!.innerHTML).toContain("malformed scene payload");
  });
});

describe("camera", () => {
  it("orbits on drag and resets to the house angles", async () => {
    const { app, root } = await mountWith(standardRoutes());
    click(root, "#load-btn");
    await flush();
    const box = root.querySelector("#scene")!;
    const before = root.querySelector("#scene")!.innerHTML;
    box.dispatchEvent(new MouseEvent("pointerdown", { clientX: 10, clientY: 10, bubbles: true }));
    box.dispatchEvent(new MouseEvent("pointermove", { clientX: 50, clientY: 10, bubbles: true }));
    box.dispatchEvent(new MouseEvent("pointerup", { bubbles: true }));
    expect(app.state.camera.azimuth).toBe(130);
    expect(app.state.camera.elevation).toBe(70);
    expect(root.querySelector("#scene")!.innerHTML).not.toBe(before);
    expect(textOf(root, "#camera-readout")).toBe("70° / 130°");

    click(root, "#camera-reset");
    expect(app.state.camera).toEqual({ elevation: 70, azimuth: 110 });
    expect(root.querySelector("#scene")!.innerHTML).toBe(before);
  });

  it("ignores moves when no drag is active", async () => {
    const { app, root } = await mountWith(standardRoutes());
    const box = root.querySelector("#scene")!;
    box.dispatchEvent(new MouseEvent("pointermove", { clientX: 50, clientY: 50, bubbles: true }));
    expect(app.state.camera).toEqual({ elevation: 70, azimuth: 110 });
  });
});

describe("CNOT walkthrough", () => {
  it("shows the input and five captioned steps, highlighting the entangling one", async () => {
    const { root } = await mountWith(standardRoutes());
    setInput(root, "#cnot-input", "1,0,1,0");
    click(root, "#cnot-load");
    await flush();

    const steps = [...root.querySelectorAll(".trace-step")];
    expect(steps).toHaveLength(6);
    expect(steps[0]!.textContent).toContain("0. input");
    expect(steps[1]!.textContent).toContain("1. YI:−π/2");
    expect(steps[2]!.textContent).toContain("2. XX:−π/2");
    expect(steps[3]!.textContent).toContain("3. IX:+π/2");
    expect(steps[4]!.textContent).toContain("4. XI:+π/2");
    expect(steps[5]!.textContent).toContain("5. YI:+π/2");
    for (const [k, step] of trace.steps.entries()) {
      expect(steps[k + 1]!.textContent).toContain(step.note);
    }

    // Only the double turn grows the MES weight on this input.
    expect(steps[2]!.className).toContain("entangling");
    expect(steps[2]!.textContent).toContain("(entangling)");
    for (const k of [0, 1, 3, 4, 5]) {
      expect(steps[k]!.className).not.toContain("entangling");
    }

    // Every cell draws the scene the server attached to that step.
    expect(steps[0]!.innerHTML).toContain("<svg");
    expect(steps[2]!.innerHTML).toContain('r="4"');
  });

  it("reports a bad trace input without breaking the page", async () => {
    const routes = standardRoutes();
    routes.splice(
      routes.findIndex((r) => r.match.source.includes("cnot")),
      1,
      {
        method: "GET",
        match: /^\/gates\/cnot\/trace/,
        reply: () => ({ status: 422, body: { error: "expected four amplitudes" } }),
      },
    );
    const { root } = await mountWith(routes);
    setInput(root, "#cnot-input", "zzz");
    click(root, "#cnot-load");
    await flush();
    expect(textOf(root, "#status")).toBe("expected four amplitudes");
    expect(root.querySelectorAll(".trace-step")).toHaveLength(0);
  });
});
