/**
 * Explorer view state and its pure transitions.
 *
 * The UI never computes geometry: every equation and every pixel comes
 * from the backend. State changes either edit the scene (drag, exact
 * text, radius) or record the lifecycle of backend requests. Raster
 * responses carry the sequence number of their request; a response is
 * displayed only if its sequence is newer than what is already shown,
 * so stale responses are discarded.
 */

import type {
  CoordinateJson,
  DecodedImage,
  EquationResponse,
  FocusJson,
  RasterMode,
  SceneJson,
  WindowJson,
} from "./types.js";
import { coordinateToNumber } from "./exact.js";

export const MAX_FOCI = 4;
export const DEBOUNCE_MS = 150;
export const DEFAULT_RASTER_SIZE = 512;

export interface ViewState {
  foci: FocusJson[];
  s: string;
  window: WindowJson;
  mode: RasterMode;
  tol: number | null;
  /** last issued request sequence number */
  seq: number;
  /** sequence of the raster currently displayed */
  displayedSeq: number;
  /** sequence of the in-flight raster request, if any */
  inflightSeq: number | null;
  lastImage: DecodedImage | null;
  lastEquation: EquationResponse | null;
  banner: string | null;
}

export function initialState(scene: SceneJson): ViewState {
  validateScene(scene);
  return {
    foci: scene.foci.map((f) => ({ ...f })),
    s: String(scene.s),
    window: { xmin: -4, xmax: 4, ymin: -4, ymax: 4 },
    mode: "classify",
    tol: null,
    seq: 0,
    displayedSeq: 0,
    inflightSeq: null,
    lastImage: null,
    lastEquation: null,
    banner: null,
  };
}

function validateScene(scene: SceneJson): void {
  if (scene.foci.length < 1 || scene.foci.length > MAX_FOCI) {
    throw new Error(`focus count must be 1..${MAX_FOCI}`);
  }
  if (Number(scene.s) < 0) {
    throw new Error("radius must be nonnegative");
  }
}

export function sceneOf(state: ViewState): SceneJson {
  return { foci: state.foci.map((f) => ({ ...f })), s: state.s };
}

function sameCoordinate(a: CoordinateJson, b: CoordinateJson): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}

/**
 * Drag handler: returns the unchanged state object when the position is
 * identical, which the caller uses to skip the backend round trip.
 */
export function dragFocus(
  state: ViewState,
  index: number,
  x: number,
  y: number
): ViewState {
  if (index < 0 || index >= state.foci.length) {
    throw new Error(`no focus ${index}`);
  }
  const next: FocusJson = { x, y };
  if (
    sameCoordinate(state.foci[index].x, next.x) &&
    sameCoordinate(state.foci[index].y, next.y)
  ) {
    return state;
  }
  const foci = state.foci.map((f, i) => (i === index ? next : { ...f }));
  return { ...state, foci };
}

/** Exact-coordinate override from the text field. */
export function setFocusCoordinate(
  state: ViewState,
  index: number,
  axis: "x" | "y",
  value: CoordinateJson
): ViewState {
  if (index < 0 || index >= state.foci.length) {
    throw new Error(`no focus ${index}`);
  }
  if (sameCoordinate(state.foci[index][axis], value)) return state;
  const foci = state.foci.map((f, i) =>
    i === index ? { ...f, [axis]: value } : { ...f }
  );
  return { ...state, foci };
}

export function radiusToNumber(s: string): number {
  const match = /^([+-]?\d+(?:\.\d+)?)(?:\/(\d+))?$/.exec(s.trim());
  if (!match) return NaN;
  const num = Number(match[1]);
  const den = match[2] ? Number(match[2]) : 1;
  return den === 0 ? NaN : num / den;
}

export function setRadius(state: ViewState, s: string): ViewState {
  const value = radiusToNumber(s);
  if (Number.isNaN(value) || value < 0) {
    throw new Error(`radius must be a nonnegative rational, got ${s}`);
  }
  if (s === state.s) return state;
  return { ...state, s: s.trim() };
}

export function setMode(state: ViewState, mode: RasterMode): ViewState {
  return mode === state.mode ? state : { ...state, mode };
}

export function setWindow(state: ViewState, window: WindowJson): ViewState {
  if (!(window.xmin < window.xmax && window.ymin < window.ymax)) {
    throw new Error("window must have xmin < xmax and ymin < ymax");
  }
  return { ...state, window };
}

export function addFocus(state: ViewState, x: number, y: number): ViewState {
  if (state.foci.length >= MAX_FOCI) {
    throw new Error(`at most ${MAX_FOCI} foci`);
  }
  return { ...state, foci: [...state.foci, { x, y }] };
}

export function removeFocus(state: ViewState, index: number): ViewState {
  if (state.foci.length <= 1) {
    throw new Error("a scene needs at least one focus");
  }
  return { ...state, foci: state.foci.filter((_, i) => i !== index) };
}

// -- request lifecycle -------------------------------------------------

/** Issue a new sequence number; the caller sends the request with it. */
export function beginRaster(state: ViewState): { state: ViewState; seq: number } {
  const seq = state.seq + 1;
  return { state: { ...state, seq, inflightSeq: seq }, seq };
}

/** Apply a completed raster; stale sequence numbers are discarded. */
export function completeRaster(
  state: ViewState,
  seq: number,
  image: DecodedImage
): ViewState {
  const inflightSeq = state.inflightSeq === seq ? null : state.inflightSeq;
  if (seq <= state.displayedSeq) {
    return { ...state, inflightSeq };
  }
  return {
    ...state,
    inflightSeq,
    displayedSeq: seq,
    lastImage: image,
    banner: null,
  };
}

/** Record a failed request: banner appears, last image is retained. */
export function failRaster(
  state: ViewState,
  seq: number,
  message: string
): ViewState {
  const inflightSeq = state.inflightSeq === seq ? null : state.inflightSeq;
  if (seq <= state.displayedSeq) {
    return { ...state, inflightSeq };
  }
  return { ...state, inflightSeq, banner: message };
}

export function setEquation(
  state: ViewState,
  equation: EquationResponse
): ViewState {
  return { ...state, lastEquation: equation, banner: null };
}

// -- helpers for the canvas layer ---------------------------------------

export function focusPositions(state: ViewState): [number, number][] {
  return state.foci.map((f) => [
    coordinateToNumber(f.x),
    coordinateToNumber(f.y),
  ]);
}

export function worldToPixel(
  window: WindowJson,
  width: number,
  height: number,
  x: number,
  y: number
): [number, number] {
  const px = ((x - window.xmin) / (window.xmax - window.xmin)) * width;
  const py = ((window.ymax - y) / (window.ymax - window.ymin)) * height;
  return [px, py];
}

export function pixelToWorld(
  window: WindowJson,
  width: number,
  height: number,
  px: number,
  py: number
): [number, number] {
  const x = window.xmin + (px / width) * (window.xmax - window.xmin);
  const y = window.ymax - (py / height) * (window.ymax - window.ymin);
  return [x, y];
}
