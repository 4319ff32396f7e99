export interface RunManifest {
    command: string;
    parameters: Record<string, unknown>;
    seed: number;
    version: string;
    outputs: string[];
}

export class InputError extends Error {}

export function validateManifest(value: unknown, source: string): RunManifest {
    if (value === null || typeof value !== "object") {
        throw new InputError(`${source}: missing or malformed run manifest`);
    }
    const obj = value as Record<string, unknown>;
    if (typeof obj.command !== "string" || typeof obj.version !== "string") {
        throw new InputError(`${source}: run manifest lacks command/version fields`);
    }
    if (typeof obj.parameters !== "object" || obj.parameters === null) {
        throw new InputError(`${source}: run manifest lacks a parameters object`);
    }
    return obj as unknown as RunManifest;
}

export function manifestModel(manifest: RunManifest): string {
    const model = (manifest.parameters as Record<string, unknown>).model;
    return typeof model === "string" ? model : manifest.command;
}
