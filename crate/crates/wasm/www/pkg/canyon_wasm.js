/* @ts-self-types="./canyon_wasm.d.ts" */

export class Coverage {
    static __wrap(ptr) {
        const obj = Object.create(Coverage.prototype);
        obj.__wbg_ptr = ptr;
        CoverageFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CoverageFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_coverage_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get eirp_dbm() {
        const ret = wasm.__wbg_get_coverage_eirp_dbm(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mapl_db() {
        const ret = wasm.__wbg_get_coverage_mapl_db(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get noise_floor_dbm() {
        const ret = wasm.__wbg_get_coverage_noise_floor_dbm(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get range_m() {
        const ret = wasm.__wbg_get_coverage_range_m(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get throughput_bps() {
        const ret = wasm.__wbg_get_coverage_throughput_bps(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set eirp_dbm(arg0) {
        wasm.__wbg_set_coverage_eirp_dbm(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mapl_db(arg0) {
        wasm.__wbg_set_coverage_mapl_db(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set noise_floor_dbm(arg0) {
        wasm.__wbg_set_coverage_noise_floor_dbm(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set range_m(arg0) {
        wasm.__wbg_set_coverage_range_m(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set throughput_bps(arg0) {
        wasm.__wbg_set_coverage_throughput_bps(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Coverage.prototype[Symbol.dispose] = Coverage.prototype.free;

/**
 * Received power (dB, relative) against distance to the canyon edge.
 */
export class PowerCurve {
    static __wrap(ptr) {
        const obj = Object.create(PowerCurve.prototype);
        obj.__wbg_ptr = ptr;
        PowerCurveFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        PowerCurveFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_powercurve_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get approx_db() {
        const ret = wasm.powercurve_approx_db(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get distances() {
        const ret = wasm.powercurve_distances(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get exact_db() {
        const ret = wasm.powercurve_exact_db(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) PowerCurve.prototype[Symbol.dispose] = PowerCurve.prototype.free;

export class SpreadScan {
    static __wrap(ptr) {
        const obj = Object.create(SpreadScan.prototype);
        obj.__wbg_ptr = ptr;
        SpreadScanFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SpreadScanFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_spreadscan_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get azimuth_gain_db() {
        const ret = wasm.__wbg_get_spreadscan_azimuth_gain_db(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set azimuth_gain_db(arg0) {
        wasm.__wbg_set_spreadscan_azimuth_gain_db(this.__wbg_ptr, arg0);
    }
    /**
     * Normalized gain per azimuth (dB), starting at 0° in equal steps.
     * @returns {Float64Array}
     */
    get normalized_db() {
        const ret = wasm.spreadscan_normalized_db(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) SpreadScan.prototype[Symbol.dispose] = SpreadScan.prototype.free;

/**
 * Coverage range of a log-distance gain model under a link budget.
 * @param {number} tx_power_dbm
 * @param {number} antenna_gain_dbi
 * @param {number} margin_db
 * @param {number} bandwidth_mhz
 * @param {number} noise_figure_db
 * @param {number} snr_db
 * @param {number} slope
 * @param {number} intercept_db
 * @returns {Coverage}
 */
export function coverage(tx_power_dbm, antenna_gain_dbi, margin_db, bandwidth_mhz, noise_figure_db, snr_db, slope, intercept_db) {
    const ret = wasm.coverage(tx_power_dbm, antenna_gain_dbi, margin_db, bandwidth_mhz, noise_figure_db, snr_db, slope, intercept_db);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Coverage.__wrap(ret[0]);
}

/**
 * Log-spaced sweep of the exact and far-field canyon power.
 * @param {number} tx_height
 * @param {number} width
 * @param {number} rx_depth
 * @param {number} psi
 * @param {number} d_min
 * @param {number} d_max
 * @param {number} points
 * @returns {PowerCurve}
 */
export function power_curve(tx_height, width, rx_depth, psi, d_min, d_max, points) {
    const ret = wasm.power_curve(tx_height, width, rx_depth, psi, d_min, d_max, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return PowerCurve.__wrap(ret[0]);
}

/**
 * One Rayleigh-faded scan seen through a Gaussian horn.
 * @param {bigint} seed
 * @param {number} grid_size
 * @param {number} hpbw_deg
 * @returns {SpreadScan}
 */
export function spread_scan(seed, grid_size, hpbw_deg) {
    const ret = wasm.spread_scan(seed, grid_size, hpbw_deg);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SpreadScan.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./canyon_wasm_bg.js": import0,
    };
}

const CoverageFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_coverage_free(ptr, 1));
const PowerCurveFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_powercurve_free(ptr, 1));
const SpreadScanFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_spreadscan_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('canyon_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
