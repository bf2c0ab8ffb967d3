/**
 * Explorer entry point: canvas, focus drag handles, radius slider, exact
 * coordinate fields, mode switch, equation panel, and legend. All
 * geometry shown comes from the backend; this file only wires events
 * and draws backend-produced pixels/polylines.
 */

import { ApiClient } from "./api.js";
import { cssColor, legendEntries } from "./color.js";
import { DEBOUNCE_MS, DEFAULT_RASTER_SIZE } from "./state.js";
import * as state from "./state.js";
import { debounce, SingleFlight } from "./debounce.js";
import {
  CoordinateSyntaxError,
  formatExactCoordinate,
  parseExactCoordinate,
} from "./exact.js";
import { decodePpm } from "./ppm.js";
import type { DecodedImage } from "./types.js";

type ViewState = state.ViewState;

const api = new ApiClient("");
const size = DEFAULT_RASTER_SIZE;

const canvas = document.getElementById("plot") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const equationText = document.getElementById("equation-text")!;
const degreeBadge = document.getElementById("degree-badge")!;
const banner = document.getElementById("banner")!;
const legendBox = document.getElementById("legend")!;
const fociBox = document.getElementById("foci")!;
const radiusSlider = document.getElementById("radius") as HTMLInputElement;
const radiusExact = document.getElementById("radius-exact") as HTMLInputElement;
const radiusLabel = document.getElementById("radius-label")!;
const modeSelect = document.getElementById("mode") as HTMLSelectElement;
const presetSelect = document.getElementById("preset") as HTMLSelectElement;

let view: ViewState = state.initialState({
  foci: [
    { x: "-1", y: "0" },
    { x: "0", y: "0" },
    { x: "1", y: "0" },
  ],
  s: "1",
});

const gate = new SingleFlight();

async function refreshRaster(): Promise<void> {
  const begun = state.beginRaster(view);
  view = begun.state;
  const seq = begun.seq;
  const scene = state.sceneOf(view);
  try {
    if (view.mode === "contour") {
      const contour = await api.contour(scene, view.window, size, size);
      if (seq > view.displayedSeq) {
        view = { ...view, displayedSeq: seq, inflightSeq: null, banner: null };
        drawContours(contour.polylines);
      }
    } else {
      const buffer = await api.rasterImage(
        scene, view.window, size, size, view.mode
      );
      view = state.completeRaster(view, seq, decodePpm(buffer));
      if (view.displayedSeq === seq && view.lastImage) {
        drawImage(view.lastImage);
      }
    }
  } catch (err) {
    view = state.failRaster(view, seq, String((err as Error).message ?? err));
  }
  renderChrome();
}

async function refreshEquation(): Promise<void> {
  try {
    const equation = await api.equation(state.sceneOf(view));
    view = state.setEquation(view, equation);
  } catch (err) {
    view = { ...view, banner: String((err as Error).message ?? err) };
  }
  renderChrome();
}

const scheduleRaster = debounce(() => {
  void gate.run(refreshRaster);
}, DEBOUNCE_MS);

const scheduleEquation = debounce(() => {
  void refreshEquation();
}, DEBOUNCE_MS);

function sceneChanged(next: ViewState): void {
  if (next === view) return; // no-op edits fire no requests
  view = next;
  renderChrome();
  scheduleRaster();
  scheduleEquation();
}

// -- drawing -------------------------------------------------------------

function drawImage(image: DecodedImage): void {
  const data = new ImageData(image.rgba, image.width, image.height);
  ctx.putImageData(data, 0, 0);
  drawFoci();
}

function drawContours(polylines: { points: [number, number][]; closed: boolean }[]): void {
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#000000";
  ctx.lineWidth = 1.25;
  for (const line of polylines) {
    ctx.beginPath();
    line.points.forEach(([x, y], i) => {
      const [px, py] = state.worldToPixel(view.window, size, size, x, y);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    if (line.closed) ctx.closePath();
    ctx.stroke();
  }
  drawFoci();
}

function drawFoci(): void {
  state.focusPositions(view).forEach(([x, y], i) => {
    const [px, py] = state.worldToPixel(view.window, size, size, x, y);
    ctx.beginPath();
    ctx.arc(px, py, 6, 0, 2 * Math.PI);
    ctx.fillStyle = "#ffffff";
    ctx.fill();
    ctx.strokeStyle = "#111111";
    ctx.lineWidth = 2;
    ctx.stroke();
    ctx.fillStyle = "#111111";
    ctx.font = "12px sans-serif";
    ctx.fillText(`A${i + 1}`, px + 8, py - 8);
  });
}

// -- chrome (panels, inputs) ----------------------------------------------

function renderChrome(): void {
  banner.textContent = view.banner ?? "";
  banner.classList.toggle("hidden", view.banner === null);
  if (view.lastEquation) {
    equationText.textContent = view.lastEquation.text;
    degreeBadge.textContent = `degree ${view.lastEquation.degree}`;
  }
  radiusLabel.textContent = `s = ${view.s}`;
  if (document.activeElement !== radiusExact) radiusExact.value = view.s;
  const slider = Number(view.s);
  if (!Number.isNaN(slider) && document.activeElement !== radiusSlider) {
    radiusSlider.value = String(Math.min(Number(radiusSlider.max), slider));
  }
  renderFocusFields();
  renderLegend();
}

function renderFocusFields(): void {
  const n = view.foci.length;
  if (fociBox.childElementCount !== n) {
    fociBox.replaceChildren(
      ...view.foci.map((_, i) => {
        const row = document.createElement("div");
        row.className = "focus-row";
        row.innerHTML =
          `<span>A${i + 1}</span>` +
          `<input class="exact" data-focus="${i}" data-axis="x">` +
          `<input class="exact" data-focus="${i}" data-axis="y">`;
        return row;
      })
    );
    fociBox.querySelectorAll<HTMLInputElement>("input.exact").forEach((input) => {
      input.addEventListener("change", () => {
        const index = Number(input.dataset.focus);
        const axis = input.dataset.axis as "x" | "y";
        try {
          const value = parseExactCoordinate(input.value);
          input.classList.remove("invalid");
          sceneChanged(state.setFocusCoordinate(view, index, axis, value));
        } catch (err) {
          if (err instanceof CoordinateSyntaxError) {
            input.classList.add("invalid");
          } else {
            throw err;
          }
        }
      });
    });
  }
  fociBox.querySelectorAll<HTMLInputElement>("input.exact").forEach((input) => {
    if (document.activeElement === input) return;
    const focus = view.foci[Number(input.dataset.focus)];
    const axis = input.dataset.axis as "x" | "y";
    input.value = formatExactCoordinate(focus[axis]);
  });
}

function renderLegend(): void {
  const entries = legendEntries(view.foci.length);
  legendBox.replaceChildren(
    ...entries.map((entry) => {
      const item = document.createElement("div");
      item.className = "legend-entry";
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.backgroundColor = cssColor(entry.color);
      const label = document.createElement("span");
      label.textContent =
        entry.formula + (entry.note ? `  (${entry.note})` : "");
      item.append(swatch, label);
      return item;
    })
  );
}

// -- interactions ---------------------------------------------------------

let dragging: number | null = null;

canvas.addEventListener("mousedown", (event) => {
  const rect = canvas.getBoundingClientRect();
  const px = ((event.clientX - rect.left) / rect.width) * size;
  const py = ((event.clientY - rect.top) / rect.height) * size;
  const positions = state.focusPositions(view);
  for (let i = 0; i < positions.length; i += 1) {
    const [fx, fy] = state.worldToPixel(
      view.window, size, size, positions[i][0], positions[i][1]
    );
    if (Math.hypot(px - fx, py - fy) <= 10) {
      dragging = i;
      return;
    }
  }
});

window.addEventListener("mousemove", (event) => {
  if (dragging === null) return;
  const rect = canvas.getBoundingClientRect();
  const px = ((event.clientX - rect.left) / rect.width) * size;
  const py = ((event.clientY - rect.top) / rect.height) * size;
  const [x, y] = state.pixelToWorld(view.window, size, size, px, py);
  const rounded: [number, number] = [
    Math.round(x * 100) / 100,
    Math.round(y * 100) / 100,
  ];
  sceneChanged(state.dragFocus(view, dragging, rounded[0], rounded[1]));
});

window.addEventListener("mouseup", () => {
  dragging = null;
});

radiusSlider.addEventListener("input", () => {
  sceneChanged(state.setRadius(view, radiusSlider.value));
});

radiusExact.addEventListener("change", () => {
  try {
    sceneChanged(state.setRadius(view, radiusExact.value.trim()));
    radiusExact.classList.remove("invalid");
  } catch {
    radiusExact.classList.add("invalid");
  }
});

modeSelect.addEventListener("change", () => {
  sceneChanged(state.setMode(view, modeSelect.value as ViewState["mode"]));
});

async function loadPresets(): Promise<void> {
  const presets = await api.presets();
  presetSelect.replaceChildren(
    ...presets.map((preset) => {
      const option = document.createElement("option");
      option.value = preset.name ?? "";
      option.textContent = preset.name ?? "";
      return option;
    })
  );
  presetSelect.addEventListener("change", () => {
    const chosen = presets.find((p) => p.name === presetSelect.value);
    if (chosen) {
      const fresh = state.initialState(chosen);
      view = { ...fresh, mode: view.mode, window: view.window };
      renderChrome();
      scheduleRaster();
      scheduleEquation();
    }
  });
  const fig4 = presets.find((p) => p.name === "fig4-almost-circles");
  if (fig4) {
    presetSelect.value = "fig4-almost-circles";
    view = { ...state.initialState(fig4), mode: view.mode, window: view.window };
  }
}

async function start(): Promise<void> {
  if (!(await api.health())) {
    view = { ...view, banner: "backend unreachable; start `nellipse serve`" };
    renderChrome();
    return;
  }
  await loadPresets();
  renderChrome();
  await refreshEquation();
  await gate.run(refreshRaster);
}

void start();
