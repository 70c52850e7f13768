/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_coverage_free: (a: number, b: number) => void;
export const __wbg_get_coverage_eirp_dbm: (a: number) => number;
export const __wbg_get_coverage_mapl_db: (a: number) => number;
export const __wbg_get_coverage_noise_floor_dbm: (a: number) => number;
export const __wbg_get_coverage_range_m: (a: number) => number;
export const __wbg_get_coverage_throughput_bps: (a: number) => number;
export const __wbg_get_spreadscan_azimuth_gain_db: (a: number) => number;
export const __wbg_powercurve_free: (a: number, b: number) => void;
export const __wbg_set_coverage_eirp_dbm: (a: number, b: number) => void;
export const __wbg_set_coverage_mapl_db: (a: number, b: number) => void;
export const __wbg_set_coverage_noise_floor_dbm: (a: number, b: number) => void;
export const __wbg_set_coverage_range_m: (a: number, b: number) => void;
export const __wbg_set_coverage_throughput_bps: (a: number, b: number) => void;
export const __wbg_set_spreadscan_azimuth_gain_db: (a: number, b: number) => void;
export const __wbg_spreadscan_free: (a: number, b: number) => void;
export const coverage: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const power_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const powercurve_approx_db: (a: number) => [number, number];
export const powercurve_distances: (a: number) => [number, number];
export const powercurve_exact_db: (a: number) => [number, number];
export const spread_scan: (a: bigint, b: number, c: number) => [number, number, number];
export const spreadscan_normalized_db: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
