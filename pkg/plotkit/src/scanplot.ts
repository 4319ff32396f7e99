import { ScanReport } from "./report.js";
import { StylePreset } from "./style.js";
import { document, fmt, tag, text } from "./svg.js";

const BIN_COUNT = 40;

interface Histogram {
    edges: number[];
    counts: number[];
    domainMax: number;
}

function buildHistogram(report: ScanReport): Histogram {
    const largest = Math.max(report.max_discrepancy, report.tolerance);
    const domainMax = largest > 0 ? largest * 1.05 : 1.0;
    const counts = new Array<number>(BIN_COUNT).fill(0);
    for (const value of report.discrepancies) {
        let bin = Math.floor((value / domainMax) * BIN_COUNT);
        if (bin >= BIN_COUNT) bin = BIN_COUNT - 1;
        if (bin < 0) bin = 0;
        counts[bin] += 1;
    }
    const edges = Array.from({ length: BIN_COUNT + 1 }, (_, i) => (domainMax * i) / BIN_COUNT);
    return { edges, counts, domainMax };
}

/** Render the discrepancy histogram with the tolerance line and verdict label. */
export function renderScanSvg(report: ScanReport, style: StylePreset): string {
    const { width, height, margin } = style;
    const plotW = width - margin.left - margin.right;
    const plotH = height - margin.top - margin.bottom;
    const histogram = buildHistogram(report);
    const maxCount = Math.max(...histogram.counts, 1);
    const xPix = (value: number) => margin.left + (value / histogram.domainMax) * plotW;
    const yPix = (count: number) => margin.top + (1 - count / maxCount) * plotH;

    const children: string[] = [
        tag("rect", { x: 0, y: 0, width, height, fill: style.background }),
    ];
    histogram.counts.forEach((count, i) => {
        if (count === 0) return;
        const x0 = xPix(histogram.edges[i]);
        const x1 = xPix(histogram.edges[i + 1]);
        children.push(
            tag("rect", {
                class: "histogram-bar",
                x: x0,
                y: yPix(count),
                width: Math.max(x1 - x0 - 1, 0.5),
                height: margin.top + plotH - yPix(count),
                fill: style.palette[0],
            }),
        );
    });
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

    // Tolerance line: clamp into view so tiny tolerances stay visible.
    const tolX = Math.max(xPix(report.tolerance), margin.left + 1);
    children.push(
        tag("line", {
            class: "tolerance-line",
            x1: tolX,
            y1: margin.top,
            x2: tolX,
            y2: margin.top + plotH,
            stroke: style.tolerance,
            "stroke-width": 1.5,
            "stroke-dasharray": "6 3",
        }),
        text(`tolerance ${report.tolerance}`, {
            class: "tolerance-label",
            x: tolX + 6,
            y: margin.top + 14,
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.tolerance,
        }),
    );

    children.push(
        text(`verdict: ${report.verdict}`, {
            class: "verdict-label",
            x: margin.left + plotW - 8,
            y: margin.top + 14,
            "text-anchor": "end",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
        text(
            `${report.case_id}: ${report.samples} samples, max discrepancy ${fmtShort(report.max_discrepancy)}`,
            {
                x: margin.left,
                y: margin.top - 12,
                "font-family": style.font,
                "font-size": style.fontSize,
                fill: style.axis,
            },
        ),
        text("order discrepancy", {
            x: margin.left + plotW / 2,
            y: height - 10,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
        text("samples", {
            x: 16,
            y: margin.top + plotH / 2,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
            transform: `rotate(-90 16 ${fmt(margin.top + plotH / 2)})`,
        }),
    );

    // Axis extremes only; bin edges are regular so labels stay sparse.
    children.push(
        text("0", {
            x: margin.left,
            y: margin.top + plotH + 18,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
        text(fmtShort(histogram.domainMax), {
            x: margin.left + plotW,
            y: margin.top + plotH + 18,
            "text-anchor": "middle",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
        text(String(maxCount), {
            x: margin.left - 8,
            y: margin.top + 4,
            "text-anchor": "end",
            "font-family": style.font,
            "font-size": style.fontSize,
            fill: style.axis,
        }),
    );

    return document(width, height, children);
}

function fmtShort(value: number): string {
    if (value !== 0 && (Math.abs(value) < 1e-3 || Math.abs(value) >= 1e4)) {
        return value.toExponential(3);
    }
    return String(Math.round(value * 1e6) / 1e6);
}
