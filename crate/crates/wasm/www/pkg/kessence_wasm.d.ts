/* tslint:disable */
/* eslint-disable */

export class Series {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Column `i` as a `Float64Array`; out-of-range indices give an empty array.
     */
    column(i: number): Float64Array;
    info(): string;
    is_empty(): boolean;
    len(): number;
}

export function eos_curve(f0: number, f2: number, x0: number, x_min: number, x_max: number, n: number): Series;

export function evolve_kinetic(f0: number, f2: number, x0: number, x_ratio: number, hubble: number, t_end: number): Series;

export function wall_profile(b: number, l: number, n: number): Series;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_series_free: (a: number, b: number) => void;
    readonly eos_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly evolve_kinetic: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly series_column: (a: number, b: number) => [number, number];
    readonly series_info: (a: number) => [number, number];
    readonly series_is_empty: (a: number) => number;
    readonly series_len: (a: number) => number;
    readonly wall_profile: (a: number, b: number, c: number) => [number, number, number];
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
