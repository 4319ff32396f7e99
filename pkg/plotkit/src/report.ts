import { InputError, RunManifest, validateManifest } from "./manifest.js";

export interface ScanReport {
    source: string;
    manifest: RunManifest;
    case_id: string;
    dim: number;
    verdict: "consistent" | "violating";
    max_discrepancy: number;
    tolerance: number;
    samples: number;
    seed: number;
    discrepancies: number[];
    hasWitness: boolean;
}

/** Parse and validate a ViolationReport JSON produced by `gbit scan`. */
export function parseScanReport(text: string, source: string): ScanReport {
    let value: unknown;
    try {
        value = JSON.parse(text);
    } catch {
        throw new InputError(`${source}: not valid JSON`);
    }
    if (value === null || typeof value !== "object") {
        throw new InputError(`${source}: expected a JSON object`);
    }
    const obj = value as Record<string, unknown>;
    const manifest = validateManifest(obj.manifest, source);
    const verdict = obj.verdict;
    if (verdict !== "consistent" && verdict !== "violating") {
        throw new InputError(`${source}: unknown verdict ${JSON.stringify(verdict)}`);
    }
    const maxDiscrepancy = obj.max_discrepancy;
    const tolerance = obj.tolerance;
    if (typeof maxDiscrepancy !== "number" || typeof tolerance !== "number") {
        throw new InputError(`${source}: max_discrepancy/tolerance must be numbers`);
    }
    if (!Array.isArray(obj.discrepancies) || obj.discrepancies.some((d) => typeof d !== "number")) {
        throw new InputError(`${source}: discrepancies must be an array of numbers`);
    }
    // Report invariants: the verdict is determined by max vs tolerance, and a
    // witness is present exactly when the scan violates.
    const expectedVerdict = maxDiscrepancy > tolerance ? "violating" : "consistent";
    if (verdict !== expectedVerdict) {
        throw new InputError(`${source}: verdict ${verdict} contradicts max_discrepancy/tolerance`);
    }
    const hasWitness = obj.witness !== null && obj.witness !== undefined;
    if (verdict === "violating" && !hasWitness) {
        throw new InputError(`${source}: violating report without a witness (invariant breach)`);
    }
    if (verdict === "consistent" && hasWitness) {
        throw new InputError(`${source}: consistent report carries a witness (invariant breach)`);
    }
    return {
        source,
        manifest,
        case_id: String(obj.case),
        dim: Number(obj.dim),
        verdict,
        max_discrepancy: maxDiscrepancy,
        tolerance,
        samples: Number(obj.samples),
        seed: Number(obj.seed),
        discrepancies: obj.discrepancies as number[],
        hasWitness,
    };
}
