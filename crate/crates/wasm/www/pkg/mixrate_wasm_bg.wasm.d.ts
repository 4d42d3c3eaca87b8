/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_chainspectrum_free: (a: number, b: number) => void;
export const __wbg_detectorrun_free: (a: number, b: number) => void;
export const __wbg_signalslem_free: (a: number, b: number) => void;
export const bp_slem: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
export const chainspectrum_eig_im: (a: number) => [number, number];
export const chainspectrum_eig_re: (a: number) => [number, number];
export const chainspectrum_matrix: (a: number) => [number, number];
export const chainspectrum_series: (a: number) => [number, number];
export const chainspectrum_slem: (a: number) => number;
export const chainspectrum_states: (a: number) => number;
export const detect_run: (a: number, b: number, c: bigint) => [number, number, number];
export const detectorrun_onset_s: (a: number) => number;
export const detectorrun_rps_alarm_s: (a: number) => number;
export const detectorrun_rps_score: (a: number) => [number, number];
export const detectorrun_rps_t: (a: number) => [number, number];
export const detectorrun_rps_threshold: (a: number) => number;
export const detectorrun_signal: (a: number) => [number, number];
export const detectorrun_signal_t: (a: number) => [number, number];
export const detectorrun_slem: (a: number) => [number, number];
export const detectorrun_slem_alarm_s: (a: number) => number;
export const detectorrun_slem_t: (a: number) => [number, number];
export const detectorrun_slem_threshold: (a: number) => number;
export const logistic_spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint) => [number, number, number];
export const signalslem_mean_slem: (a: number) => number;
export const signalslem_signal: (a: number) => [number, number];
export const signalslem_signal_t: (a: number) => [number, number];
export const signalslem_slem: (a: number) => [number, number];
export const signalslem_slem_t: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
