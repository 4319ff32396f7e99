/** Minimal deterministic SVG string builder: no DOM, no ids, no timestamps. */

export type Attrs = Record<string, string | number>;

export function fmt(value: number): string {
    // Fixed 3-decimal pixel coordinates keep output byte-stable.
    const rounded = Math.round(value * 1000) / 1000;
    return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function tag(name: string, attrs: Attrs, children: string[] = []): string {
    const rendered = Object.entries(attrs)
        .map(([key, value]) => `${key}="${typeof value === "number" ? fmt(value) : value}"`)
        .join(" ");
    const open = rendered.length > 0 ? `<${name} ${rendered}` : `<${name}`;
    if (children.length === 0) {
        return `${open}/>`;
    }
    return `${open}>${children.join("")}</${name}>`;
}

export function text(content: string, attrs: Attrs): string {
    return tag("text", attrs, [escapeText(content)]);
}

export function escapeText(value: string): string {
    return value.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function polylinePath(xs: number[], ys: number[]): string {
    const parts: string[] = [];
    for (let i = 0; i < xs.length; i++) {
        parts.push(`${i === 0 ? "M" : "L"}${fmt(xs[i])} ${fmt(ys[i])}`);
    }
    return parts.join(" ");
}

export function document(width: number, height: number, children: string[]): string {
    return (
        tag(
            "svg",
            {
                xmlns: "http://www.w3.org/2000/svg",
                width,
                height,
                viewBox: `0 0 ${width} ${height}`,
            },
            children,
        ) + "\n"
    );
}
