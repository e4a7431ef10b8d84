/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_registrationview_angle: (a: number) => number;
export const __wbg_get_registrationview_confidence: (a: number) => number;
export const __wbg_get_registrationview_ds: (a: number) => number;
export const __wbg_get_registrationview_dtheta: (a: number) => number;
export const __wbg_get_registrationview_matched: (a: number) => number;
export const __wbg_get_registrationview_scale: (a: number) => number;
export const __wbg_get_spectrumview_distance: (a: number) => number;
export const __wbg_registrationview_free: (a: number, b: number) => void;
export const __wbg_set_registrationview_angle: (a: number, b: number) => void;
export const __wbg_set_registrationview_confidence: (a: number, b: number) => void;
export const __wbg_set_registrationview_ds: (a: number, b: number) => void;
export const __wbg_set_registrationview_dtheta: (a: number, b: number) => void;
export const __wbg_set_registrationview_matched: (a: number, b: number) => void;
export const __wbg_set_registrationview_scale: (a: number, b: number) => void;
export const __wbg_set_spectrumview_distance: (a: number, b: number) => void;
export const __wbg_spectrumview_free: (a: number, b: number) => void;
export const magnitude_spectrum: (a: number, b: number, c: number, d: number) => [number, number, number];
export const manifold_points: (a: number, b: number, c: number) => [number, number, number, number];
export const register_shapes: (a: number, b: number, c: number, d: number) => [number, number, number];
export const render_rgba: (a: number, b: number, c: number) => [number, number, number, number];
export const side: () => number;
export const spectrumview_log_magnitudes: (a: number) => [number, number];
export const spectrumview_n: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
