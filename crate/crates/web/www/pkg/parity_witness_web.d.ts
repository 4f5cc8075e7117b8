/* tslint:disable */
/* eslint-disable */

/**
 * Statespace sizes for budgets `from..=to` with `c` colours.
 */
export function count_series(c: bigint, from: bigint, to: bigint): string;

/**
 * Solves a game given in PGSolver format.
 */
export function solve_game(text: string, algo: string, variant: string, update: string): string;

/**
 * Runs the automaton on a comma-separated word. `max_colour = 0` takes the
 * largest colour of the word.
 */
export function trace_word(colours: string, variant: string, update: string, e: bigint, max_colour: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly count_series: (a: bigint, b: bigint, c: bigint) => [number, number];
    readonly solve_game: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly trace_word: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
