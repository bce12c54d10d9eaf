/* tslint:disable */
/* eslint-disable */

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * A session with the bundled `tutorial` and `logic` libraries.
     */
    constructor();
    /**
     * The meaning of a sentence and the rules its derivation uses.
     */
    parse(sentence: string): string;
    /**
     * The transcript as one core-language tactic.
     */
    script(): string;
    /**
     * Starts a proof of `goal`, abandoning any current one.
     */
    start(goal: string): string;
    /**
     * Runs sentences stepwise on the first open goal.
     */
    step(sentences: string): string;
    /**
     * Teaches `utterance` by its definition.
     */
    teach(utterance: string, definition: string): string;
    undo(): string;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_new: () => number;
    readonly demo_parse: (a: number, b: number, c: number) => [number, number];
    readonly demo_script: (a: number) => [number, number];
    readonly demo_start: (a: number, b: number, c: number) => [number, number];
    readonly demo_step: (a: number, b: number, c: number) => [number, number];
    readonly demo_teach: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly demo_undo: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
