/* tslint:disable */
/* eslint-disable */

export class Coverage {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    eirp_dbm: number;
    mapl_db: number;
    noise_floor_dbm: number;
    range_m: number;
    throughput_bps: number;
}

/**
 * Received power (dB, relative) against distance to the canyon edge.
 */
export class PowerCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly approx_db: Float64Array;
    readonly distances: Float64Array;
    readonly exact_db: Float64Array;
}

export class SpreadScan {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    azimuth_gain_db: number;
    /**
     * Normalized gain per azimuth (dB), starting at 0° in equal steps.
     */
    readonly normalized_db: Float64Array;
}

/**
 * Coverage range of a log-distance gain model under a link budget.
 */
export function coverage(tx_power_dbm: number, antenna_gain_dbi: number, margin_db: number, bandwidth_mhz: number, noise_figure_db: number, snr_db: number, slope: number, intercept_db: number): Coverage;

/**
 * Log-spaced sweep of the exact and far-field canyon power.
 */
export function power_curve(tx_height: number, width: number, rx_depth: number, psi: number, d_min: number, d_max: number, points: number): PowerCurve;

/**
 * One Rayleigh-faded scan seen through a Gaussian horn.
 */
export function spread_scan(seed: bigint, grid_size: number, hpbw_deg: number): SpreadScan;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_coverage_free: (a: number, b: number) => void;
    readonly __wbg_get_coverage_eirp_dbm: (a: number) => number;
    readonly __wbg_get_coverage_mapl_db: (a: number) => number;
    readonly __wbg_get_coverage_noise_floor_dbm: (a: number) => number;
    readonly __wbg_get_coverage_range_m: (a: number) => number;
    readonly __wbg_get_coverage_throughput_bps: (a: number) => number;
    readonly __wbg_get_spreadscan_azimuth_gain_db: (a: number) => number;
    readonly __wbg_powercurve_free: (a: number, b: number) => void;
    readonly __wbg_set_coverage_eirp_dbm: (a: number, b: number) => void;
    readonly __wbg_set_coverage_mapl_db: (a: number, b: number) => void;
    readonly __wbg_set_coverage_noise_floor_dbm: (a: number, b: number) => void;
    readonly __wbg_set_coverage_range_m: (a: number, b: number) => void;
    readonly __wbg_set_coverage_throughput_bps: (a: number, b: number) => void;
    readonly __wbg_set_spreadscan_azimuth_gain_db: (a: number, b: number) => void;
    readonly __wbg_spreadscan_free: (a: number, b: number) => void;
    readonly coverage: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly power_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly powercurve_approx_db: (a: number) => [number, number];
    readonly powercurve_distances: (a: number) => [number, number];
    readonly powercurve_exact_db: (a: number) => [number, number];
    readonly spread_scan: (a: bigint, b: number, c: number) => [number, number, number];
    readonly spreadscan_normalized_db: (a: number) => [number, number];
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
