/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const __wbg_get_interpcomparison_lookups: (a: number) => number;
export const __wbg_get_interpcomparison_max_difference: (a: number) => number;
export const __wbg_get_interpcomparison_search_steps: (a: number) => number;
export const __wbg_gridlayout_free: (a: number, b: number) => void;
export const __wbg_interpcomparison_free: (a: number, b: number) => void;
export const __wbg_set_interpcomparison_lookups: (a: number, b: number) => void;
export const __wbg_set_interpcomparison_max_difference: (a: number, b: number) => void;
export const __wbg_set_interpcomparison_search_steps: (a: number, b: number) => void;
export const compare_interpolation: (a: number, b: number) => [number, number, number];
export const curves_a: (a: number) => [number, number];
export const curves_b: (a: number) => [number, number];
export const curves_converged: (a: number) => number;
export const curves_delta_a: (a: number) => [number, number];
export const curves_delta_b: (a: number) => [number, number];
export const curves_iterations: (a: number) => number;
export const curves_mass: (a: number) => [number, number];
export const curves_p2: (a: number) => [number, number];
export const curves_probe_a: (a: number) => [number, number];
export const curves_probe_b: (a: number) => [number, number];
export const grid_layout: (a: number, b: number, c: number, d: number) => [number, number, number];
export const gridlayout_bracket: (a: number) => [number, number];
export const gridlayout_p2_ext: (a: number) => [number, number];
export const gridlayout_q2_int: (a: number) => [number, number];
export const gridlayout_shifted: (a: number) => number;
export const solve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
