/**
 * Exact coordinate text handling.
 *
 * The exact field accepts what the backend accepts: rational text like
 * "p/q", integers, exact decimals, and surd expressions built from
 * sqrt(d) such as "sqrt(3)", "-2/3*sqrt(5)" or "1 - sqrt(2)". Parsing
 * produces the scene-JSON coordinate value; no numeric evaluation
 * happens here beyond the decimal preview.
 */

import type { CoordinateJson, SurdJson } from "./types.js";

const RATIONAL = /^[+-]?\d+(?:\/\d+)?$/;
const DECIMAL = /^[+-]?\d+\.\d+$/;

// [a ±] [coef *] sqrt(d)
const SURD = new RegExp(
  "^(?:(?<a>[+-]?\\d+(?:/\\d+)?|[+-]?\\d+\\.\\d+)\\s*(?<join>[+-])\\s*)?" +
    "(?<coef>\\d+(?:/\\d+)?|\\d+\\.\\d+)?\\s*\\*?\\s*" +
    "(?<sign>[+-])?sqrt\\((?<d>\\d+)\\)$"
);

export class CoordinateSyntaxError extends Error {}

function decimalToRational(text: string): string {
  const negative = text.startsWith("-");
  const unsigned = text.replace(/^[+-]/, "");
  const [whole, frac] = unsigned.split(".");
  const den = 10n ** BigInt(frac.length);
  let num = BigInt(whole) * den + BigInt(frac);
  if (negative) num = -num;
  const g = gcd(num < 0n ? -num : num, den);
  return `${num / g}/${den / g}`.replace(/\/1$/, "");
}

function gcd(a: bigint, b: bigint): bigint {
  while (b) {
    [a, b] = [b, a % b];
  }
  return a;
}

function normalizeRational(text: string): string {
  if (DECIMAL.test(text)) return decimalToRational(text);
  if (RATIONAL.test(text)) return text.replace(/^\+/, "");
  throw new CoordinateSyntaxError(`not a rational: ${text}`);
}

/** Parse exact coordinate text into a scene-JSON value. */
export function parseExactCoordinate(raw: string): CoordinateJson {
  const text = raw.trim();
  if (!text) throw new CoordinateSyntaxError("empty coordinate");
  if (RATIONAL.test(text) || DECIMAL.test(text)) {
    return normalizeRational(text);
  }
  const match = SURD.exec(text.replace(/\s+/g, ""));
  if (!match || !match.groups) {
    throw new CoordinateSyntaxError(`cannot parse coordinate: ${raw}`);
  }
  const { a, join, coef, sign, d } = match.groups;
  let b = coef ? normalizeRational(coef) : "1";
  // sign on the sqrt itself ("-sqrt(3)"), or the joining sign ("1 - sqrt(3)")
  const negative = (join === "-") !== (sign === "-");
  if (negative) b = b.startsWith("-") ? b.slice(1) : `-${b}`;
  return {
    a: a ? normalizeRational(a) : "0",
    b,
    d: Number(d),
  };
}

/** Scene-JSON coordinate back to exact text for the input field. */
export function formatExactCoordinate(value: CoordinateJson): string {
  if (typeof value === "number") return String(value);
  if (typeof value === "string") return value;
  const surd = value as SurdJson;
  const bTxt = surd.b === "1" ? "" : surd.b === "-1" ? "-" : `${surd.b}*`;
  const root = `${bTxt}sqrt(${surd.d})`;
  if (surd.a === "0") return root;
  return root.startsWith("-")
    ? `${surd.a} - ${root.slice(1)}`
    : `${surd.a} + ${root}`;
}

/** Decimal preview of a coordinate for labels. */
export function coordinateToNumber(value: CoordinateJson): number {
  if (typeof value === "number") return value;
  if (typeof value === "string") return rationalToNumber(value);
  const surd = value as SurdJson;
  return (
    rationalToNumber(surd.a) + rationalToNumber(surd.b) * Math.sqrt(surd.d)
  );
}

function rationalToNumber(text: string): number {
  const [num, den] = text.split("/");
  return den === undefined ? Number(num) : Number(num) / Number(den);
}
