/* tslint:disable */
/* eslint-disable */

/**
 * Dressing functions and iteration history of one solve.
 */
export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly a: Float64Array;
    readonly b: Float64Array;
    readonly converged: boolean;
    readonly delta_a: Float64Array;
    readonly delta_b: Float64Array;
    readonly iterations: number;
    /**
     * M = B / A in GeV.
     */
    readonly mass: Float64Array;
    readonly p2: Float64Array;
    readonly probe_a: Float64Array;
    readonly probe_b: Float64Array;
}

/**
 * External and internal momenta of a grid, with the bracket of each internal
 * node.
 */
export class GridLayout {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bracket: Uint32Array;
    readonly p2_ext: Float64Array;
    readonly q2_int: Float64Array;
    /**
     * Whether the external grid was moved off coinciding internal nodes.
     */
    readonly shifted: boolean;
}

/**
 * Outcome of interpolating one array at every internal node both ways.
 */
export class InterpComparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    lookups: number;
    /**
     * Largest absolute difference between the two strategies.
     */
    max_difference: number;
    /**
     * Bisection steps the search strategy needs in total.
     */
    search_steps: number;
}

export function compare_interpolation(n: number, m_rad: number): InterpComparison;

export function grid_layout(n: number, m_rad: number, p2_min: number, p2_max: number): GridLayout;

export function solve(d: number, omega: number, m0: number, xi: number, n: number, m_rad: number, m_ang: number): Curves;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly __wbg_get_interpcomparison_lookups: (a: number) => number;
    readonly __wbg_get_interpcomparison_max_difference: (a: number) => number;
    readonly __wbg_get_interpcomparison_search_steps: (a: number) => number;
    readonly __wbg_gridlayout_free: (a: number, b: number) => void;
    readonly __wbg_interpcomparison_free: (a: number, b: number) => void;
    readonly __wbg_set_interpcomparison_lookups: (a: number, b: number) => void;
    readonly __wbg_set_interpcomparison_max_difference: (a: number, b: number) => void;
    readonly __wbg_set_interpcomparison_search_steps: (a: number, b: number) => void;
    readonly compare_interpolation: (a: number, b: number) => [number, number, number];
    readonly curves_a: (a: number) => [number, number];
    readonly curves_b: (a: number) => [number, number];
    readonly curves_converged: (a: number) => number;
    readonly curves_delta_a: (a: number) => [number, number];
    readonly curves_delta_b: (a: number) => [number, number];
    readonly curves_iterations: (a: number) => number;
    readonly curves_mass: (a: number) => [number, number];
    readonly curves_p2: (a: number) => [number, number];
    readonly curves_probe_a: (a: number) => [number, number];
    readonly curves_probe_b: (a: number) => [number, number];
    readonly grid_layout: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly gridlayout_bracket: (a: number) => [number, number];
    readonly gridlayout_p2_ext: (a: number) => [number, number];
    readonly gridlayout_q2_int: (a: number) => [number, number];
    readonly gridlayout_shifted: (a: number) => number;
    readonly solve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
