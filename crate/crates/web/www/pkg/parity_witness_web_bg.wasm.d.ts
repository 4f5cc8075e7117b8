/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const count_series: (a: bigint, b: bigint, c: bigint) => [number, number];
export const solve_game: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
export const trace_word: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
