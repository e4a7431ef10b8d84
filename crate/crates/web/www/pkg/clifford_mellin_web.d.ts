/* tslint:disable */
/* eslint-disable */

export class RegistrationView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    angle: number;
    confidence: number;
    /**
     * Grid steps of the estimate.
     */
    ds: number;
    dtheta: number;
    matched: boolean;
    scale: number;
}

export class SpectrumView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Relative descriptor distance to the untransformed shape.
     */
    distance: number;
    readonly log_magnitudes: Float64Array;
    readonly n: number;
}

/**
 * Magnitude spectrum on an `n x n` log-polar grid.
 */
export function magnitude_spectrum(seed: number, scale: number, angle: number, n: number): SpectrumView;

/**
 * Flattened `(b1, b2, beta)` roots of -1 for `"Cl(2,0)"`, `"Cl(1,1)"` or `"Cl(0,2)"`.
 */
export function manifold_points(algebra: string, resolution: number): Float64Array;

/**
 * Registers the untransformed shape against its `(scale, angle)` copy.
 */
export function register_shapes(seed: number, scale: number, angle: number, n: number): RegistrationView;

/**
 * RGBA pixels of demo shape `seed`, magnified by `scale` and turned by `angle` radians.
 */
export function render_rgba(seed: number, scale: number, angle: number): Uint8Array;

export function side(): number;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_registrationview_angle: (a: number) => number;
    readonly __wbg_get_registrationview_confidence: (a: number) => number;
    readonly __wbg_get_registrationview_ds: (a: number) => number;
    readonly __wbg_get_registrationview_dtheta: (a: number) => number;
    readonly __wbg_get_registrationview_matched: (a: number) => number;
    readonly __wbg_get_registrationview_scale: (a: number) => number;
    readonly __wbg_get_spectrumview_distance: (a: number) => number;
    readonly __wbg_registrationview_free: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_angle: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_confidence: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_ds: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_dtheta: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_matched: (a: number, b: number) => void;
    readonly __wbg_set_registrationview_scale: (a: number, b: number) => void;
    readonly __wbg_set_spectrumview_distance: (a: number, b: number) => void;
    readonly __wbg_spectrumview_free: (a: number, b: number) => void;
    readonly magnitude_spectrum: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly manifold_points: (a: number, b: number, c: number) => [number, number, number, number];
    readonly register_shapes: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly render_rgba: (a: number, b: number, c: number) => [number, number, number, number];
    readonly side: () => number;
    readonly spectrumview_log_magnitudes: (a: number) => [number, number];
    readonly spectrumview_n: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
