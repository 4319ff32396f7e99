#!/usr/bin/env node
/**
 * Offline plots for gbit-lab outputs.
 *
 *   plot fringe a.csv [b.csv ...] --out fig.svg [--style default]
 *   plot scan report.json --out fig.svg [--style default]
 *
 * SVG is the reference output; a .png extension (or --format png) rasterizes
 * the same SVG. Exit codes: 0 ok, 2 usage/validation error, 3 write error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { parseFringeCsv } from "./csv.js";
import { InputError } from "./manifest.js";
import { renderFringeSvg } from "./fringe.js";
import { parseScanReport } from "./report.js";
import { renderScanSvg } from "./scanplot.js";
import { stylePreset } from "./style.js";

interface Options {
    inputs: string[];
    out: string | null;
    style: string;
    format: "svg" | "png" | null;
}

function parseArgs(argv: string[]): { command: string; options: Options } {
    if (argv.length === 0) {
        throw new InputError("usage: plot <fringe|scan> <inputs...> --out <path>");
    }
    const [command, ...rest] = argv;
    const options: Options = { inputs: [], out: null, style: "default", format: null };
    for (let i = 0; i < rest.length; i++) {
        const arg = rest[i];
        if (arg === "--out") {
            options.out = rest[++i];
        } else if (arg === "--style") {
            options.style = rest[++i];
        } else if (arg === "--format") {
            const format = rest[++i];
            if (format !== "svg" && format !== "png") {
                throw new InputError(`unknown format ${JSON.stringify(format)}`);
            }
            options.format = format;
        } else if (arg.startsWith("--")) {
            throw new InputError(`unknown option ${arg}`);
        } else {
            options.inputs.push(arg);
        }
    }
    return { command, options };
}

function renderSvg(command: string, options: Options): string {
    const style = stylePreset(options.style);
    if (command === "fringe") {
        if (options.inputs.length === 0) {
            throw new InputError("fringe needs at least one CSV input");
        }
        const curves = options.inputs.map((path) => parseFringeCsv(readFileSync(path, "utf8"), path));
        return renderFringeSvg(curves, style);
    }
    if (command === "scan") {
        if (options.inputs.length !== 1) {
            throw new InputError("scan takes exactly one report JSON");
        }
        const path = options.inputs[0];
        return renderScanSvg(parseScanReport(readFileSync(path, "utf8"), path), style);
    }
    throw new InputError(`unknown command ${JSON.stringify(command)}`);
}

async function toPng(svg: string): Promise<Buffer> {
    const { Resvg } = await import("@resvg/resvg-js");
    return Buffer.from(new Resvg(svg).render().asPng());
}

export async function main(argv: string[]): Promise<number> {
    let command: string;
    let options: Options;
    let svg: string;
    try {
        ({ command, options } = parseArgs(argv));
        svg = renderSvg(command, options);
    } catch (error) {
        if (error instanceof InputError || (error as NodeJS.ErrnoException)?.code === "ENOENT") {
            console.error(`error: ${(error as Error).message}`);
            return 2;
        }
        throw error;
    }
    const format = options.format ?? (options.out?.endsWith(".png") ? "png" : "svg");
    const payload = format === "png" ? await toPng(svg) : svg;
    if (options.out === null) {
        process.stdout.write(payload);
        return 0;
    }
    try {
        writeFileSync(options.out, payload);
    } catch (error) {
        console.error(`error: cannot write ${options.out}: ${(error as Error).message}`);
        return 3;
    }
    console.error(`wrote ${options.out}`);
    return 0;
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
    main(process.argv.slice(2)).then((code) => {
        process.exitCode = code;
    });
}
