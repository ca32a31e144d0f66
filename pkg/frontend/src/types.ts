// Wire types shared with the allocation service. The model document is the
// same JSON exchanged by the CLI and the HTTP API.

export interface ResourceDef {
  id: string;
  name: string;
  unit: string;
}

export interface ComputingUnit {
  id: string;
  name: string;
  kind: string;
}

export interface SoftwareComponent {
  id: string;
  name: string;
  allowedUnits: string[];
}

export type ComparisonCell = number | string; // fractions may travel as "1/3"

export interface ModelDoc {
  resources: ResourceDef[];
  units: ComputingUnit[];
  components: SoftwareComponent[];
  T: number[][][]; // [component][unit][resource]
  R: number[][]; // [unit][resource]
  K: number[][]; // [component][component]
  C: number[][]; // [unit][unit]
  B: number[][]; // [unit][unit]
  comparison?: ComparisonCell[][];
  layout?: Record<string, NodePosition>;
}

export interface NodePosition {
  x: number;
  y: number;
}

export interface ValidationIssue {
  code: string;
  message: string;
  path: string;
}

export interface ValidateResponse {
  valid: boolean;
  report: ValidationIssue[];
}

export interface WeightsResponse {
  weights: number[];
  fc: number;
  lambdaMax: number;
  cr: number;
}

export interface EvaluationResultWire {
  w: number;
  rho: 0 | 1;
  kappa: 0 | 1;
  feasible: boolean;
  unitLoad: number[][];
  pairTraffic: number[][];
}

export interface AlternativeWire {
  p: string[];
  result: EvaluationResultWire;
}

export interface SearchReportWire {
  best: string[];
  bestResult: EvaluationResultWire;
  alternatives: AlternativeWire[];
  evaluated: number;
  generations: number | null;
  exact: boolean;
  seed: number | null;
  elapsed?: number;
}

export interface AllocateRequest {
  model: ModelDoc;
  method: "ga" | "exhaustive";
  seed?: number;
  alternatives?: number;
  uniformWeights?: boolean;
  gaConfig?: Record<string, number>;
}

export interface ErrorBody {
  error: string;
  message: string;
  detail?: Record<string, unknown>;
}
