import { InputError, RunManifest, validateManifest } from "./manifest.js";

const MANIFEST_PREFIX = "# manifest: ";

export interface FringeCurve {
    source: string;
    manifest: RunManifest;
    thetas: number[];
    p1: number[];
    p2: number[];
}

/** Parse one fringe CSV produced by `gbit fringe` (manifest comment, theta,p1,p2). */
export function parseFringeCsv(text: string, source: string): FringeCurve {
    const lines = text.split("\n").filter((line) => line.length > 0);
    if (lines.length === 0) {
        throw new InputError(`${source}: empty CSV`);
    }
    if (!lines[0].startsWith(MANIFEST_PREFIX)) {
        throw new InputError(`${source}: missing run manifest header comment`);
    }
    let manifestValue: unknown;
    try {
        manifestValue = JSON.parse(lines[0].slice(MANIFEST_PREFIX.length));
    } catch {
        throw new InputError(`${source}: manifest header is not valid JSON`);
    }
    const manifest = validateManifest(manifestValue, source);
    if (lines[1] !== "theta,p1,p2") {
        throw new InputError(`${source}: expected header "theta,p1,p2", got ${JSON.stringify(lines[1])}`);
    }
    const thetas: number[] = [];
    const p1: number[] = [];
    const p2: number[] = [];
    for (const line of lines.slice(2)) {
        const parts = line.split(",");
        if (parts.length !== 3) {
            throw new InputError(`${source}: malformed row ${JSON.stringify(line)}`);
        }
        const values = parts.map(Number);
        if (values.some((v) => Number.isNaN(v))) {
            throw new InputError(`${source}: non-numeric row ${JSON.stringify(line)}`);
        }
        thetas.push(values[0]);
        p1.push(values[1]);
        p2.push(values[2]);
    }
    if (thetas.length === 0) {
        throw new InputError(`${source}: CSV contains no data rows`);
    }
    return { source, manifest, thetas, p1, p2 };
}

/** All curves must share the theta grid exactly; names the first offender. */
export function requireSharedGrid(curves: FringeCurve[]): void {
    const reference = curves[0];
    for (const curve of curves.slice(1)) {
        const same =
            curve.thetas.length === reference.thetas.length &&
            curve.thetas.every((t, i) => t === reference.thetas[i]);
        if (!same) {
            throw new InputError(
                `${curve.source}: theta grid differs from ${reference.source}`,
            );
        }
    }
}
