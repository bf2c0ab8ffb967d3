/**
 * Sign-vector colors, mirroring the backend's palette byte for byte:
 * a minus sign on focus i switches RGB channel i on (foci 1/2/3 are
 * red/green/blue), so the all-plus vector renders black.
 */

import type { Rgb, SignVector } from "./types.js";

export function colorOf(sigma: SignVector): Rgb {
  if (sigma.length > 3) {
    throw new Error("RGB sign colors are defined for up to three foci");
  }
  const channels: Rgb = [0, 0, 0];
  sigma.forEach((sg, i) => {
    channels[i] = sg < 0 ? 255 : 0;
  });
  return channels;
}

export function signVectors(n: number): SignVector[] {
  const out: SignVector[] = [];
  for (let index = 0; index < 1 << n; index += 1) {
    const sigma: number[] = [];
    for (let bit = n - 1; bit >= 0; bit -= 1) {
      sigma.push(index & (1 << bit) ? -1 : 1);
    }
    out.push(sigma);
  }
  return out;
}

export interface LegendEntry {
  sigma: SignVector;
  color: Rgb;
  formula: string;
  note: string | null;
}

export function legendEntries(n: number): LegendEntry[] {
  return signVectors(n).map((sigma) => {
    const formula =
      sigma
        .map((sg, i) => `${sg > 0 ? "+" : "-"} |A${i + 1}P|`)
        .join(" ")
        .replace(/^\+ /, "") + " = s";
    const unsigned = sigma.every((sg) => sg > 0);
    return {
      sigma,
      color: colorOf(sigma),
      formula,
      note: unsigned ? `unsigned ${n}-ellipse` : null,
    };
  });
}

export function cssColor([r, g, b]: Rgb): string {
  return `rgb(${r}, ${g}, ${b})`;
}
