/** Fetch wrapper for the nellipse HTTP API. */

import type {
  ContourResponse,
  EquationResponse,
  RasterMode,
  SceneJson,
  WindowJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch
  ) {}

  private async post(path: string, body: unknown): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return response;
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.fetchFn(`${this.baseUrl}/api/health`);
      return response.ok;
    } catch {
      return false;
    }
  }

  async presets(): Promise<SceneJson[]> {
    const response = await this.fetchFn(`${this.baseUrl}/api/presets`);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as SceneJson[];
  }

  async equation(scene: SceneJson): Promise<EquationResponse> {
    const response = await this.post("/api/equation", { scene });
    return (await response.json()) as EquationResponse;
  }

  async rasterImage(
    scene: SceneJson,
    window: WindowJson,
    width: number,
    height: number,
    mode: Exclude<RasterMode, "contour">,
    tol: number | null = null
  ): Promise<ArrayBuffer> {
    const body: Record<string, unknown> = { scene, window, width, height, mode };
    if (tol !== null) body.tol = tol;
    const response = await this.post("/api/raster", body);
    return response.arrayBuffer();
  }

  async contour(
    scene: SceneJson,
    window: WindowJson,
    width: number,
    height: number
  ): Promise<ContourResponse> {
    const response = await this.post("/api/raster", {
      scene,
      window,
      width,
      height,
      mode: "contour",
    });
    return (await response.json()) as ContourResponse;
  }
}
