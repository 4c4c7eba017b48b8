/** Reader for the binary field snapshot format.
 *
 * Layout (little-endian): magic "FKPS", u32 version = 1, u32 nx, u32 ny,
 * f64 Lx, Ly, t, alpha, sigma, c, then nx*ny f64 samples row-major with
 * x varying fastest.
 */

export class SnapshotFormatError extends Error {}

const MAGIC = "FKPS";
const VERSION = 1;
const HEADER_BYTES = 64;

export interface Snapshot {
  nx: number;
  ny: number;
  Lx: number;
  Ly: number;
  t: number;
  alpha: number;
  sigma: number;
  c: number;
  /** Sample at grid indices (ix, iy). */
  at(ix: number, iy: number): number;
  /** Raw payload, row-major with x fastest (length nx * ny). */
  payload: Float64Array;
}

export function readSnapshot(raw: Uint8Array): Snapshot {
  if (raw.byteLength < HEADER_BYTES) {
    throw new SnapshotFormatError("truncated header");
  }
  const view = new DataView(raw.buffer, raw.byteOffset, raw.byteLength);
  const magic = String.fromCharCode(raw[0], raw[1], raw[2], raw[3]);
  if (magic !== MAGIC) {
    throw new SnapshotFormatError(`bad magic ${JSON.stringify(magic)}`);
  }
  const version = view.getUint32(4, true);
  if (version !== VERSION) {
    throw new SnapshotFormatError(`unsupported version ${version}`);
  }
  const nx = view.getUint32(8, true);
  const ny = view.getUint32(12, true);
  const expected = HEADER_BYTES + 8 * nx * ny;
  if (raw.byteLength !== expected) {
    throw new SnapshotFormatError(
      `payload length ${raw.byteLength - HEADER_BYTES} does not match header dims ${nx}x${ny}`,
    );
  }
  const payload = new Float64Array(nx * ny);
  for (let i = 0; i < payload.length; i++) {
    payload[i] = view.getFloat64(HEADER_BYTES + 8 * i, true);
    if (!Number.isFinite(payload[i])) {
      throw new SnapshotFormatError(`non-finite sample at index ${i}`);
    }
  }
  return {
    nx,
    ny,
    Lx: view.getFloat64(16, true),
    Ly: view.getFloat64(24, true),
    t: view.getFloat64(32, true),
    alpha: view.getFloat64(40, true),
    sigma: view.getFloat64(48, true),
    c: view.getFloat64(56, true),
    at: (ix, iy) => payload[iy * nx + ix],
    payload,
  };
}
