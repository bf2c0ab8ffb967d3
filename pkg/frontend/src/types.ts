/** Wire types shared with the nellipse HTTP API. */

export interface SurdJson {
  a: string;
  b: string;
  d: number;
}

/** Exact coordinate as the API accepts it. */
export type CoordinateJson = string | number | SurdJson;

export interface FocusJson {
  x: CoordinateJson;
  y: CoordinateJson;
}

export interface SceneJson {
  foci: FocusJson[];
  s: string | number;
  name?: string;
}

export interface WindowJson {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

export interface EquationTerm {
  coeff: string;
  x: number;
  y: number;
}

export interface EquationResponse {
  terms: EquationTerm[];
  degree: number;
  text: string;
}

export interface PolylineJson {
  points: [number, number][];
  closed: boolean;
}

export interface ContourResponse {
  polylines: PolylineJson[];
}

export type RasterMode = "classify" | "hue" | "contour";

export type SignVector = number[]; // entries are +1 or -1

export type Rgb = [number, number, number];

export interface DecodedImage {
  width: number;
  height: number;
  /** RGBA bytes ready for ImageData. */
  rgba: Uint8ClampedArray<ArrayBuffer>;
}
