export interface StylePreset {
    name: string;
    width: number;
    height: number;
    margin: { top: number; right: number; bottom: number; left: number };
    background: string;
    axis: string;
    gridline: string;
    palette: string[];
    tolerance: string;
    font: string;
    fontSize: number;
}

const DEFAULT: StylePreset = {
    name: "default",
    width: 640,
    height: 400,
    margin: { top: 40, right: 24, bottom: 48, left: 56 },
    background: "#ffffff",
    axis: "#333333",
    gridline: "#dddddd",
    palette: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"],
    tolerance: "#d62728",
    font: "monospace",
    fontSize: 12,
};

const PRESETS: Record<string, StylePreset> = {
    default: DEFAULT,
};

export function stylePreset(name: string): StylePreset {
    const preset = PRESETS[name];
    if (!preset) {
        throw new Error(`unknown style preset ${JSON.stringify(name)}`);
    }
    return preset;
}
