import {
  ApiError,
  StudioApi,
  apiBaseFromLocation,
  type CurveResponse,
  type InterpResponse,
  type ParamSpec,
} from "./api.js";
import { RequestChannel, type ChannelStatus } from "./debounce.js";
import { fitViewport, screenToModel, type ScreenMap } from "./mapping.js";
import {
  boundMessage,
  curveSceneSvg,
  errorMessage,
  hasViolations,
  interpSceneSvg,
  reportHtml,
} from "./render.js";
import {
  curvePayload,
  initialState,
  interpPayload,
  reduce,
  stateKey,
  type Action,
  type InterpMode,
  type Mode,
  type Strategy,
  type StudioState,
} from "./state.js";

const PLOT_WIDTH = 720;
const PLOT_HEIGHT = 520;

// Slider ranges are cosmetic; the reducer clamps to the published domains
// and the server remains the authority.
const SOFT_MAX: Record<string, number> = { lambda: 20, mu: 20 };

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

interface SliderSpec {
  label: string;
  min: number;
  max: number;
  step: number;
  value: number;
  onInput: (v: number) => void;
}

function slider(spec: SliderSpec): HTMLElement {
  const wrap = el("div", { class: "control" });
  const label = el("label", {}, `${spec.label} = ${spec.value}`);
  const input = el("input", {
    type: "range",
    min: String(spec.min),
    max: String(spec.max),
    step: String(spec.step),
    value: String(spec.value),
  });
  const note = el("span", { class: "note" });
  input.addEventListener("input", () => {
    const v = Number(input.value);
    label.textContent = `${spec.label} = ${v}`;
    spec.onInput(v);
  });
  wrap.append(label, input, note);
  return wrap;
}

function sliderForParam(spec: ParamSpec, value: number, onInput: (v: number) => void): HTMLElement {
  const step = spec.kind === "float" ? 0.01 : spec.kind === "odd_int" ? 2 : 1;
  return slider({
    label: spec.name,
    min: spec.min ?? 0,
    max: spec.max ?? SOFT_MAX[spec.name] ?? 10,
    step,
    value,
    onInput,
  });
}

class Studio {
  private state: StudioState = initialState();
  private api: StudioApi;
  private curveFrame: CurveResponse | null = null;
  private interpFrame: InterpResponse | null = null;
  private map: ScreenMap | null = null;
  private dragging: { kind: string; index: number } | null = null;

  private plot: HTMLElement;
  private sidebar: HTMLElement;
  private banner: HTMLElement;
  private status: HTMLElement;
  private report: HTMLElement;

  private curveChannel: RequestChannel<ReturnType<typeof curvePayload>, CurveResponse>;
  private interpChannel: RequestChannel<ReturnType<typeof interpPayload>, InterpResponse>;

  constructor(root: HTMLElement) {
    this.api = new StudioApi(apiBaseFromLocation(window.location));
    this.banner = el("div", { class: "banner", hidden: "" });
    this.status = el("div", { class: "status" }, "idle");
    this.plot = el("div", { class: "plot" });
    this.sidebar = el("div", { class: "sidebar" });
    this.report = el("div", { class: "report" });
    const main = el("div", { class: "main" });
    main.append(this.banner, this.plot, this.report, this.status);
    root.append(this.sidebar, main);

    this.curveChannel = new RequestChannel({
      send: (body) => this.api.postCurve(body),
      onResult: (res) => {
        this.curveFrame = res;
        this.clearBanner();
        this.render();
      },
      onError: (err) => this.showError(err),
      onStatus: (s) => this.showStatus(s),
    });
    this.interpChannel = new RequestChannel({
      send: (body) => this.api.postInterpolate(body),
      onResult: (res) => {
        this.interpFrame = res;
        this.clearBanner();
        this.render();
      },
      onError: (err) => this.showError(err),
      onStatus: (s) => this.showStatus(s),
    });

    this.plot.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    this.plot.addEventListener("pointermove", (e) => this.onPointerMove(e));
    window.addEventListener("pointerup", () => {
      this.dragging = null;
    });
  }

  async start(): Promise<void> {
    this.buildControls();
    this.render();
    try {
      const [families, aux] = await Promise.all([this.api.getBases(), this.api.getAux()]);
      this.apply({ kind: "catalog", families, aux });
    } catch (err) {
      this.showError(err);
      this.sync();
    }
  }

  private apply(action: Action): void {
    const before = this.state;
    this.state = reduce(before, action);
    if (this.state === before && action.kind !== "catalog") return;
    if (
      action.kind === "mode" ||
      action.kind === "catalog" ||
      action.kind === "family" ||
      action.kind === "aux" ||
      action.kind === "interpMode" ||
      action.kind === "strategy" ||
      action.kind === "preset" ||
      action.kind === "toggle" ||
      action.kind === "auxAuto"
    ) {
      this.buildControls();
    }
    this.render();
    this.sync();
  }

  private sync(): void {
    if (this.state.mode === "curve") {
      this.curveChannel.schedule(curvePayload(this.state), stateKey(this.state));
    } else {
      this.interpChannel.schedule(interpPayload(this.state), stateKey(this.state));
    }
  }

  private render(): void {
    if (this.state.mode === "curve") {
      const view = {
        polygon: this.state.polygon,
        sigma: this.state.sigma,
        showPolygon: this.state.display.polygon,
        showPath: this.state.display.path,
        pathT: this.state.pathT,
        width: PLOT_WIDTH,
        height: PLOT_HEIGHT,
      };
      this.plot.innerHTML = curveSceneSvg(this.curveFrame, view);
      const fit: [number, number][] = [...this.state.polygon.map((p) => [p[0], p[1]] as [number, number])];
      if (this.curveFrame) for (const c of this.curveFrame.curves) fit.push(...c.points);
      this.map = fitViewport(fit, PLOT_WIDTH, PLOT_HEIGHT);
      this.report.innerHTML = "";
    } else {
      const view = {
        dataset: this.state.dataset,
        showJumps: this.state.display.jumps,
        width: PLOT_WIDTH,
        height: PLOT_HEIGHT,
      };
      this.plot.innerHTML = interpSceneSvg(this.interpFrame, view);
      const fit: [number, number][] = [...this.state.dataset.map((p) => [p[0], p[1]] as [number, number])];
      if (this.interpFrame && !hasViolations(this.interpFrame)) {
        for (let i = 0; i < this.interpFrame.samples.x.length; i++) {
          fit.push([this.interpFrame.samples.x[i], this.interpFrame.samples.y[i]]);
        }
      }
      this.map = fitViewport(fit, PLOT_WIDTH, PLOT_HEIGHT);
      this.report.innerHTML = this.interpFrame ? reportHtml(this.interpFrame) : "";
    }
  }

  private onPointerDown(e: PointerEvent): void {
    const target = e.target as Element;
    const kind = target.getAttribute?.("data-kind");
    const index = target.getAttribute?.("data-index");
    if (kind === "vertex" || kind === "knot") {
      this.dragging = { kind, index: Number(index) };
      e.preventDefault();
    }
  }

  private onPointerMove(e: PointerEvent): void {
    if (this.dragging === null || this.map === null) return;
    const svg = this.plot.querySelector("svg");
    if (svg === null) return;
    const rect = svg.getBoundingClientRect();
    const [x, y] = screenToModel(this.map, e.clientX - rect.left, e.clientY - rect.top);
    if (this.dragging.kind === "vertex") {
      this.apply({ kind: "dragVertex", index: this.dragging.index, x, y });
    } else {
      this.apply({ kind: "dragKnot", index: this.dragging.index, x, f: y });
    }
  }

  private showStatus(s: ChannelStatus): void {
    this.status.textContent =
      `${s} | requests: ` +
      String(this.curveChannel.requestCount + this.interpChannel.requestCount);
    this.status.dataset.state = s;
  }

  private showError(err: unknown): void {
    this.banner.hidden = false;
    this.banner.textContent = err instanceof ApiError ? err.message : errorMessage(err);
    // 422 carries the violated bound: surface it next to the slider it names.
    if (err instanceof ApiError && err.status === 422) {
      const note = this.sidebar.querySelector(`[data-param="${err.field ?? ""}"] .note`);
      if (note !== null) note.textContent = boundMessage(err);
    }
  }

  private clearBanner(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
    for (const note of this.sidebar.querySelectorAll(".note")) note.textContent = "";
  }

  private buildControls(): void {
    const s = this.state;
    this.sidebar.innerHTML = "";
    const modeRow = el("div", { class: "control" });
    for (const m of ["curve", "interp"] as Mode[]) {
      const b = el("button", { class: s.mode === m ? "on" : "" }, m === "curve" ? "curve design" : "interpolation");
      b.addEventListener("click", () => this.apply({ kind: "mode", mode: m }));
      modeRow.append(b);
    }
    this.sidebar.append(modeRow);

    this.sidebar.append(
      slider({
        label: "sigma",
        min: 0,
        max: 1,
        step: 0.01,
        value: s.sigma,
        onInput: (v) => this.apply({ kind: "sigma", value: v }),
      }),
    );

    if (s.mode === "curve") {
      this.buildCurveControls();
    } else {
      this.buildInterpControls();
    }
  }

  private buildCurveControls(): void {
    const s = this.state;
    const families = s.catalog?.families ?? [];
    const famSel = el("select");
    for (const f of families) {
      const opt = el("option", { value: f.family }, f.family);
      if (f.family === s.family) opt.setAttribute("selected", "");
      famSel.append(opt);
    }
    famSel.addEventListener("change", () => this.apply({ kind: "family", family: famSel.value }));
    const famRow = el("div", { class: "control" });
    famRow.append(el("label", {}, "system"), famSel);
    this.sidebar.append(famRow);

    const famInfo = families.find((f) => f.family === s.family);
    for (const p of famInfo?.params ?? []) {
      this.sidebar.append(
        sliderForParam(p, s.systemParams[p.name] ?? p.min ?? 0, (v) =>
          this.apply({ kind: "systemParam", name: p.name, value: v }),
        ),
      );
    }

    this.buildAuxPicker();

    for (const [name, label] of [
      ["polygon", "control polygon"],
      ["ghosts", "sigma family"],
      ["path", "point path"],
    ] as const) {
      const row = el("div", { class: "control" });
      const box = el("input", { type: "checkbox" });
      box.checked = this.state.display[name];
      box.addEventListener("change", () => this.apply({ kind: "toggle", name }));
      row.append(box, el("label", {}, label));
      this.sidebar.append(row);
    }
    if (this.state.display.path) {
      this.sidebar.append(
        slider({
          label: "path t",
          min: 0,
          max: 1,
          step: 0.01,
          value: s.pathT,
          onInput: (v) => this.apply({ kind: "pathT", value: v }),
        }),
      );
    }
  }

  private buildInterpControls(): void {
    const s = this.state;
    const presetBtn = el("button", {}, "load benchmark dataset");
    presetBtn.addEventListener("click", () => this.apply({ kind: "preset", name: "benchmark" }));
    const presetRow = el("div", { class: "control" });
    presetRow.append(presetBtn);
    this.sidebar.append(presetRow);

    const modeRow = el("div", { class: "control" });
    for (const m of ["c1", "c2"] as InterpMode[]) {
      const b = el("button", { class: s.interp.mode === m ? "on" : "" }, m);
      b.addEventListener("click", () => this.apply({ kind: "interpMode", mode: m }));
      modeRow.append(b);
    }
    this.sidebar.append(modeRow);

    if (s.interp.mode === "c2") {
      const stratRow = el("div", { class: "control" });
      for (const strat of ["appendix_c", "remark"] as Strategy[]) {
        const b = el("button", { class: s.interp.strategy === strat ? "on" : "" },
          strat === "appendix_c" ? "uniform" : "spread");
        b.addEventListener("click", () => this.apply({ kind: "strategy", strategy: strat }));
        stratRow.append(b);
      }
      this.sidebar.append(stratRow);
    }

    const paramRows: ["s" | "zeta" | "eta", number][] =
      s.interp.strategy === "remark"
        ? [["zeta", s.interp.zeta], ["eta", s.interp.eta]]
        : [["s", s.interp.s]];
    for (const [name, value] of paramRows) {
      const row = el("div", { class: "control", "data-param": name });
      const label = el("label", {}, `${name} = ${value}`);
      const input = el("input", {
        type: "range",
        min: "0.001",
        max: "0.2",
        step: "0.001",
        value: String(value),
      });
      const note = el("span", { class: "note" });
      input.addEventListener("input", () => {
        const v = Number(input.value);
        label.textContent = `${name} = ${v}`;
        this.apply({ kind: "interpParam", name, value: v });
      });
      row.append(label, input, note);
      this.sidebar.append(row);
    }

    const auxRow = el("div", { class: "control" });
    const auto = el("input", { type: "checkbox" });
    auto.checked = s.interp.auxAuto;
    auto.addEventListener("change", () => this.apply({ kind: "auxAuto", value: auto.checked }));
    auxRow.append(auto, el("label", {}, "default auxiliary"));
    this.sidebar.append(auxRow);
    if (!s.interp.auxAuto) this.buildAuxPicker();

    const jumpRow = el("div", { class: "control" });
    const box = el("input", { type: "checkbox" });
    box.checked = s.display.jumps;
    box.addEventListener("change", () => this.apply({ kind: "toggle", name: "jumps" }));
    jumpRow.append(box, el("label", {}, "continuity jumps"));
    this.sidebar.append(jumpRow);
  }

  private buildAuxPicker(): void {
    const s = this.state;
    const auxes = s.catalog?.aux ?? [];
    const sel = el("select");
    for (const a of auxes) {
      const opt = el("option", { value: a.aux }, a.aux);
      if (a.aux === s.auxName) opt.setAttribute("selected", "");
      sel.append(opt);
    }
    sel.addEventListener("change", () => this.apply({ kind: "aux", name: sel.value }));
    const row = el("div", { class: "control" });
    row.append(el("label", {}, "auxiliary"), sel);
    this.sidebar.append(row);
    const info = auxes.find((a) => a.aux === s.auxName);
    for (const p of info?.params ?? []) {
      this.sidebar.append(
        sliderForParam(p, s.auxParams[p.name] ?? p.min ?? 1, (v) =>
          this.apply({ kind: "auxParam", name: p.name, value: v }),
        ),
      );
    }
  }
}

const root = document.getElementById("app");
if (root !== null) {
  void new Studio(root).start();
}
