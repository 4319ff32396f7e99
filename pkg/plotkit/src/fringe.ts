import { FringeCurve, requireSharedGrid } from "./csv.js";
import { InputError, manifestModel } from "./manifest.js";
import { StylePreset } from "./style.js";
import { document, polylinePath, tag, text } from "./svg.js";

const TWO_PI = 2 * Math.PI;
const X_TICKS: Array<[number, string]> = [
    [0, "0"],
    [Math.PI / 2, "pi/2"],
    [Math.PI, "pi"],
    [(3 * Math.PI) / 2, "3pi/2"],
    [TWO_PI, "2pi"],
];
const Y_TICKS = [0, 0.25, 0.5, 0.75, 1];

/** Render detector-1 fringe curves, one per input CSV, onto a shared grid. */
export function renderFringeSvg(curves: FringeCurve[], style: StylePreset): string {
    if (curves.length === 0) {
        throw new InputError("no fringe curves to plot");
    }
    requireSharedGrid(curves);
    const { width, height, margin } = style;
    const plotW = width - margin.left - margin.right;
    const plotH = height - margin.top - margin.bottom;
    const xPix = (theta: number) => margin.left + (theta / TWO_PI) * plotW;
    const yPix = (p: number) => margin.top + (1 - p) * plotH;

    const children: string[] = [
        tag("rect", { x: 0, y: 0, width, height, fill: style.background }),
    ];
    for (const [value] of X_TICKS) {
        children.push(
            tag("line", {
                x1: xPix(value),
                y1: margin.top,
                x2: xPix(value),
                y2: margin.top + plotH,
                stroke: style.gridline,
                "stroke-width": 1,
            }),
        );
    }
    for (const value of Y_TICKS) {
        children.push(
            tag("line", {
                x1: margin.left,
                y1: yPix(value),
                x2: margin.left + plotW,
                y2: yPix(value),
                stroke: style.gridline,
                "stroke-width": 1,
            }),
        );
    }
    children.push(
        tag("rect", {
            x: margin.left,
            y: margin.top,
            width: plotW,
            height: plotH,
            fill: "none",
            stroke: style.axis,
            "stroke-width": 1,
        }),
    );
    for (const [value, label] of X_TICKS) {
        children.push(
            text(label, {
                x: xPix(value),
                y: margin.top + plotH + 18,
                "text-anchor": "middle",
                "font-family": style.font,
                "font-size": style.fontSize,
                fill: style.axis,
            }),
        );
    }
    for (const value of Y_TICKS) {
        children.push(
            text(String(value), {
                x: margin.left - 8,
                y: yPix(value) + 4,
                "text-anchor": "end",
                "font-family": style.font,
                "font-size": style.fontSize,
                fill: style.axis,
            }),
        );
    }
    children.push(
        text("theta", {
            x: margin.left + plotW / 2,
            y: height - 10,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
        text("p1", {
            x: 16,
            y: margin.top + plotH / 2,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
            transform: `rotate(-90 16 ${margin.top + plotH / 2})`,
        }),
    );

    curves.forEach((curve, index) => {
        const color = style.palette[index % style.palette.length];
        children.push(
            tag("path", {
                class: "fringe-curve",
                d: polylinePath(curve.thetas.map(xPix), curve.p1.map(yPix)),
                fill: "none",
                stroke: color,
                "stroke-width": 1.5,
            }),
        );
    });

    // Legend, labelled from the run manifests.
    curves.forEach((curve, index) => {
        const color = style.palette[index % style.palette.length];
        const y = margin.top + 16 + 16 * index;
        const x = margin.left + plotW - 150;
        children.push(
            tag("line", {
                x1: x,
                y1: y - 4,
                x2: x + 22,
                y2: y - 4,
                stroke: color,
                "stroke-width": 1.5,
            }),
            text(manifestModel(curve.manifest), {
                x: x + 28,
                y,
                "font-family": style.font,
                "font-size": style.fontSize,
                fill: style.axis,
            }),
        );
    });

    return document(width, height, children);
}
