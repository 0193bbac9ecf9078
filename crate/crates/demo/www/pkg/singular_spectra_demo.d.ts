/* tslint:disable */
/* eslint-disable */

/**
 * The `count` largest zeros of `a -> M(a, b, xi)`, in decreasing order.
 */
export function azeros(b: number, xi: number, count: number): Float64Array;

/**
 * Eigenfunctions `u_0..u_kmax` on `samples` equispaced points of `[0, 1]`,
 * each scaled to unit maximum modulus and positive near `x = 0`.
 *
 * Layout: `[x_0..x_{n-1}, u_0(x_0)..u_0(x_{n-1}), u_1(..), ...]`.
 */
export function eigenfunction_curves(nu: number, xi: number, kmax: number, samples: number): Float64Array;

/**
 * `M(a, b, xi)` on `samples` equispaced `a` in `[a_min, a_max]`.
 *
 * Layout: `[a_0..a_{n-1}, M(a_0)..M(a_{n-1})]`.
 */
export function kummer_vs_a(b: number, xi: number, a_min: number, a_max: number, samples: number): Float64Array;

/**
 * Scaled eigenvalues `lambda_k / xi` over `steps` equispaced `xi` in
 * `[xi_min, xi_max]`, next to the half-line values `mu_k`.
 *
 * Layout: `[mu_0..mu_kmax, then per xi: xi, lt_0..lt_kmax]`.
 */
export function spectrum_vs_mu(nu: number, xi_min: number, xi_max: number, steps: number, kmax: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly azeros: (a: number, b: number, c: number) => [number, number, number, number];
    readonly eigenfunction_curves: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly kummer_vs_a: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly spectrum_vs_mu: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
