/* tslint:disable */
/* eslint-disable */

export class ChainSpectrum {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly eig_im: Float64Array;
    /**
     * Real parts, sorted by descending modulus.
     */
    readonly eig_re: Float64Array;
    /**
     * Transition probabilities, row-major.
     */
    readonly matrix: Float64Array;
    readonly series: Float64Array;
    readonly slem: number;
    readonly states: number;
}

export class DetectorRun {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly onset_s: number;
    readonly rps_alarm_s: number;
    readonly rps_score: Float64Array;
    readonly rps_t: Float64Array;
    readonly rps_threshold: number;
    readonly signal: Float64Array;
    readonly signal_t: Float64Array;
    readonly slem: Float64Array;
    /**
     * Alarm time of the SLEM detector, or NaN without an alarm.
     */
    readonly slem_alarm_s: number;
    readonly slem_t: Float64Array;
    readonly slem_threshold: number;
}

export class SignalSlem {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly mean_slem: number;
    readonly signal: Float64Array;
    readonly signal_t: Float64Array;
    readonly slem: Float64Array;
    /**
     * Window end times, seconds.
     */
    readonly slem_t: Float64Array;
}

/**
 * Synthetic pressure at 100 Hz and its SLEM over 20 s windows.
 */
export function bp_slem(hrmean: number, hrstd: number, duration_s: number, states: number, seed: bigint): SignalSlem;

/**
 * Both detectors on an 8-minute pressure run. With `change`, mean heart
 * rate ramps 60 to 100 bpm and pulse pressure 40 to 25 mmHg from 360 s.
 */
export function detect_run(change: boolean, corrected: boolean, seed: bigint): DetectorRun;

/**
 * Chain and spectrum of a logistic-map run. `noise` is `none`,
 * `measurement` or `dynamic`.
 */
export function logistic_spectrum(mu: number, noise: string, noise_std: number, n: number, states: number, seed: bigint): ChainSpectrum;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_chainspectrum_free: (a: number, b: number) => void;
    readonly __wbg_detectorrun_free: (a: number, b: number) => void;
    readonly __wbg_signalslem_free: (a: number, b: number) => void;
    readonly bp_slem: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number];
    readonly chainspectrum_eig_im: (a: number) => [number, number];
    readonly chainspectrum_eig_re: (a: number) => [number, number];
    readonly chainspectrum_matrix: (a: number) => [number, number];
    readonly chainspectrum_series: (a: number) => [number, number];
    readonly chainspectrum_slem: (a: number) => number;
    readonly chainspectrum_states: (a: number) => number;
    readonly detect_run: (a: number, b: number, c: bigint) => [number, number, number];
    readonly detectorrun_onset_s: (a: number) => number;
    readonly detectorrun_rps_alarm_s: (a: number) => number;
    readonly detectorrun_rps_score: (a: number) => [number, number];
    readonly detectorrun_rps_t: (a: number) => [number, number];
    readonly detectorrun_rps_threshold: (a: number) => number;
    readonly detectorrun_signal: (a: number) => [number, number];
    readonly detectorrun_signal_t: (a: number) => [number, number];
    readonly detectorrun_slem: (a: number) => [number, number];
    readonly detectorrun_slem_alarm_s: (a: number) => number;
    readonly detectorrun_slem_t: (a: number) => [number, number];
    readonly detectorrun_slem_threshold: (a: number) => number;
    readonly logistic_spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint) => [number, number, number];
    readonly signalslem_mean_slem: (a: number) => number;
    readonly signalslem_signal: (a: number) => [number, number];
    readonly signalslem_signal_t: (a: number) => [number, number];
    readonly signalslem_slem: (a: number) => [number, number];
    readonly signalslem_slem_t: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
