// Thin typed client for the allocation service. All numbers the UI displays
// originate from these responses; nothing is recomputed locally.

import type {
  AllocateRequest,
  ErrorBody,
  ModelDoc,
  SearchReportWire,
  ValidateResponse,
  WeightsResponse,
} from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: Record<string, unknown> = {},
  ) {
    super(message);
  }

  /** Consistency ratio attached to 422 responses, when present. */
  get cr(): number | undefined {
    const v = this.detail["cr"];
    return typeof v === "number" ? v : undefined;
  }
}

/** Actionable one-liner for the banner, per failure mode. */
export function actionableMessage(err: unknown): string {
  if (err instanceof ApiError) {
    switch (err.code) {
      case "NO_FEASIBLE_ALLOCATION":
        return "no feasible allocation exists: some budget or placement constraint blocks every assignment; raise availability or bandwidth and retry";
      case "SPACE_TOO_LARGE":
        return "the design space is too large for exhaustive search; use the genetic method instead";
      case "TIMEOUT":
        return "the search exceeded the server time cap; try the genetic method or a smaller model";
      case "INVALID_MODEL":
        return `the model was rejected by the server: ${err.message}`;
      case "INCONSISTENT":
        return `inconsistent judgments, CR = ${err.cr?.toFixed(3) ?? "?"}; revise the pairwise comparison`;
      default:
        return err.message;
    }
  }
  return String(err);
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
    } catch (err) {
      throw new ApiError(0, "UNREACHABLE", `allocation service unreachable: ${err}`);
    }
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const err = (payload ?? {}) as Partial<ErrorBody>;
      throw new ApiError(
        response.status,
        err.error ?? "HTTP_ERROR",
        err.message ?? `request failed with status ${response.status}`,
        (err.detail as Record<string, unknown>) ?? {},
      );
    }
    return payload as T;
  }

  validateModel(doc: ModelDoc): Promise<ValidateResponse> {
    return this.post("/api/v1/validate", doc);
  }

  deriveWeights(comparison: number[][]): Promise<WeightsResponse> {
    return this.post("/api/v1/ahp", { comparison });
  }

  allocate(request: AllocateRequest): Promise<SearchReportWire> {
    return this.post("/api/v1/allocate", request);
  }
}
