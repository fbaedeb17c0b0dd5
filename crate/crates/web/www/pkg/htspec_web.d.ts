/* tslint:disable */
/* eslint-disable */

export function matching_poly_json(doc: string): string;

/**
 * Preset documents as `[{"name": ..., "doc": {...}}]`.
 */
export function presets(): string;

export function radius_json(doc: string): string;

/**
 * Replaces every vertex weight and every edge weight by one value each.
 */
export function reweight(doc: string, vertex_weight: number, edge_weight: number): string;

export function spectrum_json(doc: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly matching_poly_json: (a: number, b: number) => [number, number, number, number];
    readonly presets: () => [number, number];
    readonly radius_json: (a: number, b: number) => [number, number, number, number];
    readonly reweight: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly spectrum_json: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
