/* @ts-self-types="./dse_wasm_demo.d.ts" */

/**
 * Dressing functions and iteration history of one solve.
 */
export class Curves {
    static __wrap(ptr) {
        const obj = Object.create(Curves.prototype);
        obj.__wbg_ptr = ptr;
        CurvesFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CurvesFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_curves_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get a() {
        const ret = wasm.curves_a(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get b() {
        const ret = wasm.curves_b(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {boolean}
     */
    get converged() {
        const ret = wasm.curves_converged(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * @returns {Float64Array}
     */
    get delta_a() {
        const ret = wasm.curves_delta_a(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get delta_b() {
        const ret = wasm.curves_delta_b(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get iterations() {
        const ret = wasm.curves_iterations(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * M = B / A in GeV.
     * @returns {Float64Array}
     */
    get mass() {
        const ret = wasm.curves_mass(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get p2() {
        const ret = wasm.curves_p2(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get probe_a() {
        const ret = wasm.curves_probe_a(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get probe_b() {
        const ret = wasm.curves_probe_b(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) Curves.prototype[Symbol.dispose] = Curves.prototype.free;

/**
 * External and internal momenta of a grid, with the bracket of each internal
 * node.
 */
export class GridLayout {
    static __wrap(ptr) {
        const obj = Object.create(GridLayout.prototype);
        obj.__wbg_ptr = ptr;
        GridLayoutFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        GridLayoutFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_gridlayout_free(ptr, 0);
    }
    /**
     * @returns {Uint32Array}
     */
    get bracket() {
        const ret = wasm.gridlayout_bracket(this.__wbg_ptr);
        var v1 = getArrayU32FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 4, 4);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get p2_ext() {
        const ret = wasm.gridlayout_p2_ext(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {Float64Array}
     */
    get q2_int() {
        const ret = wasm.gridlayout_q2_int(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Whether the external grid was moved off coinciding internal nodes.
     * @returns {boolean}
     */
    get shifted() {
        const ret = wasm.gridlayout_shifted(this.__wbg_ptr);
        return ret !== 0;
    }
}
if (Symbol.dispose) GridLayout.prototype[Symbol.dispose] = GridLayout.prototype.free;

/**
 * Outcome of interpolating one array at every internal node both ways.
 */
export class InterpComparison {
    static __wrap(ptr) {
        const obj = Object.create(InterpComparison.prototype);
        obj.__wbg_ptr = ptr;
        InterpComparisonFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        InterpComparisonFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_interpcomparison_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get lookups() {
        const ret = wasm.__wbg_get_interpcomparison_lookups(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * Largest absolute difference between the two strategies.
     * @returns {number}
     */
    get max_difference() {
        const ret = wasm.__wbg_get_interpcomparison_max_difference(this.__wbg_ptr);
        return ret;
    }
    /**
     * Bisection steps the search strategy needs in total.
     * @returns {number}
     */
    get search_steps() {
        const ret = wasm.__wbg_get_interpcomparison_search_steps(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @param {number} arg0
     */
    set lookups(arg0) {
        wasm.__wbg_set_interpcomparison_lookups(this.__wbg_ptr, arg0);
    }
    /**
     * Largest absolute difference between the two strategies.
     * @param {number} arg0
     */
    set max_difference(arg0) {
        wasm.__wbg_set_interpcomparison_max_difference(this.__wbg_ptr, arg0);
    }
    /**
     * Bisection steps the search strategy needs in total.
     * @param {number} arg0
     */
    set search_steps(arg0) {
        wasm.__wbg_set_interpcomparison_search_steps(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) InterpComparison.prototype[Symbol.dispose] = InterpComparison.prototype.free;

/**
 * @param {number} n
 * @param {number} m_rad
 * @returns {InterpComparison}
 */
export function compare_interpolation(n, m_rad) {
    const ret = wasm.compare_interpolation(n, m_rad);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return InterpComparison.__wrap(ret[0]);
}

/**
 * @param {number} n
 * @param {number} m_rad
 * @param {number} p2_min
 * @param {number} p2_max
 * @returns {GridLayout}
 */
export function grid_layout(n, m_rad, p2_min, p2_max) {
    const ret = wasm.grid_layout(n, m_rad, p2_min, p2_max);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return GridLayout.__wrap(ret[0]);
}

/**
 * @param {number} d
 * @param {number} omega
 * @param {number} m0
 * @param {number} xi
 * @param {number} n
 * @param {number} m_rad
 * @param {number} m_ang
 * @returns {Curves}
 */
export function solve(d, omega, m0, xi, n, m_rad, m_ang) {
    const ret = wasm.solve(d, omega, m0, xi, n, m_rad, m_ang);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Curves.__wrap(ret[0]);
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
        "./dse_wasm_demo_bg.js": import0,
    };
}

const CurvesFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_curves_free(ptr, 1));
const GridLayoutFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_gridlayout_free(ptr, 1));
const InterpComparisonFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_interpcomparison_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU32FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint32ArrayMemory0().subarray(ptr / 4, ptr / 4 + len);
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

let cachedUint32ArrayMemory0 = null;
function getUint32ArrayMemory0() {
    if (cachedUint32ArrayMemory0 === null || cachedUint32ArrayMemory0.byteLength === 0) {
        cachedUint32ArrayMemory0 = new Uint32Array(wasm.memory.buffer);
    }
    return cachedUint32ArrayMemory0;
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
    cachedUint32ArrayMemory0 = null;
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
        module_or_path = new URL('dse_wasm_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
