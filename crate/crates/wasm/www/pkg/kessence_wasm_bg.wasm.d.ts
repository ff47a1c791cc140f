/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_series_free: (a: number, b: number) => void;
export const eos_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const evolve_kinetic: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const series_column: (a: number, b: number) => [number, number];
export const series_info: (a: number) => [number, number];
export const series_is_empty: (a: number) => number;
export const series_len: (a: number) => number;
export const wall_profile: (a: number, b: number, c: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
