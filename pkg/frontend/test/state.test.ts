import { describe, expect, it } from "vitest";

import { SingleFlight, debounce } from "../src/debounce.js";
import {
  MAX_FOCI,
  addFocus,
  beginRaster,
  completeRaster,
  dragFocus,
  failRaster,
  initialState,
  pixelToWorld,
  removeFocus,
  sceneOf,
  setFocusCoordinate,
  setMode,
  setRadius,
  setWindow,
  worldToPixel,
} from "../src/state.js";
import type { DecodedImage } from "../src/types.js";

const FIG5 = {
  foci: [
    { x: "-1", y: "0" },
    { x: "1", y: "0" },
    { x: "0", y: { a: "0", b: "1", d: 3 } },
  ],
  s: "4",
};

function fakeImage(tag: number): DecodedImage {
  return { width: 1, height: 1, rgba: new Uint8ClampedArray([tag, 0, 0, 255]) };
}

describe("scene edits", () => {
  it("drag updates one focus with decimal coordinates", () => {
    const s0 = initialState(FIG5);
    const s1 = dragFocus(s0, 2, 0, -1.73);
    expect(s1.foci[2]).toEqual({ x: 0, y: -1.73 });
    expect(s1.foci[0]).toEqual({ x: "-1", y: "0" });
    expect(sceneOf(s1).s).toBe("4");
  });

  it("no-op drag returns the identical state object (no request fires)", () => {
    const s0 = dragFocus(initialState(FIG5), 2, 0, -1.73);
    const s1 = dragFocus(s0, 2, 0, -1.73);
    expect(s1).toBe(s0);
  });

  it("exact text overrides the drag value", () => {
    const s0 = dragFocus(initialState(FIG5), 2, 0, 1.73);
    const s1 = setFocusCoordinate(s0, 2, "y", { a: "0", b: "1", d: 3 });
    expect(s1.foci[2].y).toEqual({ a: "0", b: "1", d: 3 });
  });

  it("radius accepts rational text and rejects negatives", () => {
    const s0 = initialState(FIG5);
    expect(setRadius(s0, "3/2").s).toBe("3/2");
    expect(() => setRadius(s0, "-1")).toThrow();
    expect(setRadius(s0, "4")).toBe(s0); // unchanged
  });

  it("focus count stays within 1..4", () => {
    let s = initialState(FIG5);
    s = addFocus(s, 2, 2);
    expect(s.foci).toHaveLength(4);
    expect(() => addFocus(s, 3, 3)).toThrow();
    s = removeFocus(s, 3);
    s = removeFocus(s, 2);
    s = removeFocus(s, 1);
    expect(() => removeFocus(s, 0)).toThrow();
    expect(MAX_FOCI).toBe(4);
  });

  it("window must stay valid", () => {
    const s0 = initialState(FIG5);
    expect(() =>
      setWindow(s0, { xmin: 2, xmax: -2, ymin: -2, ymax: 2 })
    ).toThrow();
    const s1 = setWindow(s0, { xmin: -2, xmax: 2, ymin: -2, ymax: 2 });
    expect(s1.window.xmax).toBe(2);
  });

  it("mode switch is a plain field update", () => {
    const s0 = initialState(FIG5);
    expect(setMode(s0, "hue").mode).toBe("hue");
    expect(setMode(s0, "classify")).toBe(s0);
  });
});

describe("request sequencing", () => {
  it("stale responses are discarded", () => {
    let s = initialState(FIG5);
    const first = beginRaster(s);
    s = first.state;
    const second = beginRaster(s);
    s = second.state;
    // the newer request completes first
    s = completeRaster(s, second.seq, fakeImage(2));
    expect(s.lastImage!.rgba[0]).toBe(2);
    // the older response arrives late and must be ignored
    s = completeRaster(s, first.seq, fakeImage(1));
    expect(s.lastImage!.rgba[0]).toBe(2);
    expect(s.displayedSeq).toBe(second.seq);
  });

  it("monotone display: newer response replaces older image", () => {
    let s = initialState(FIG5);
    const a = beginRaster(s);
    s = a.state;
    s = completeRaster(s, a.seq, fakeImage(1));
    const b = beginRaster(s);
    s = b.state;
    s = completeRaster(s, b.seq, fakeImage(2));
    expect(s.lastImage!.rgba[0]).toBe(2);
  });

  it("failure sets the banner and keeps the last image", () => {
    let s = initialState(FIG5);
    const a = beginRaster(s);
    s = completeRaster(a.state, a.seq, fakeImage(7));
    const b = beginRaster(s);
    s = failRaster(b.state, b.seq, "backend unreachable");
    expect(s.banner).toContain("unreachable");
    expect(s.lastImage!.rgba[0]).toBe(7);
    expect(s.inflightSeq).toBeNull();
  });

  it("a successful response clears the banner", () => {
    let s = initialState(FIG5);
    const a = beginRaster(s);
    s = failRaster(a.state, a.seq, "oops");
    const b = beginRaster(s);
    s = completeRaster(b.state, b.seq, fakeImage(1));
    expect(s.banner).toBeNull();
  });
});

describe("coordinate transforms", () => {
  it("world/pixel round trip", () => {
    const window = { xmin: -4, xmax: 4, ymin: -4, ymax: 4 };
    const [px, py] = worldToPixel(window, 512, 512, 1, 2);
    const [x, y] = pixelToWorld(window, 512, 512, px, py);
    expect(x).toBeCloseTo(1, 12);
    expect(y).toBeCloseTo(2, 12);
    expect(worldToPixel(window, 512, 512, -4, 4)).toEqual([0, 0]);
  });
});

describe("single flight gate", () => {
  it("keeps at most one request in flight and reruns the latest", async () => {
    const gate = new SingleFlight();
    const calls: number[] = [];
    let release: (() => void) | null = null;
    const work = () =>
      new Promise<void>((resolve) => {
        calls.push(calls.length + 1);
        release = resolve;
      });
    const done = gate.run(work); // settles once the whole chain drains
    expect(gate.inFlight).toBe(true);
    void gate.run(work); // coalesced
    void gate.run(work); // coalesced
    expect(calls).toHaveLength(1);
    release!(); // finish the first request
    await new Promise((r) => setTimeout(r, 0));
    expect(calls).toHaveLength(2); // exactly one rerun for the coalesced edits
    expect(gate.inFlight).toBe(true);
    release!(); // finish the rerun
    await done;
    expect(gate.inFlight).toBe(false);
    expect(calls).toHaveLength(2);
  });
});

describe("debounce", () => {
  it("fires once on the trailing edge", async () => {
    let count = 0;
    const bump = debounce(() => {
      count += 1;
    }, 20);
    bump();
    bump();
    bump();
    expect(count).toBe(0);
    await new Promise((r) => setTimeout(r, 60));
    expect(count).toBe(1);
  });
});
