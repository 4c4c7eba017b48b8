"""Binary field snapshots.

Layout (little-endian): magic b"FKPS", u32 version = 1, u32 nx, u32 ny,
f64 Lx, Ly, t, alpha, sigma, c, then nx*ny f64 samples row-major with x
varying fastest.
"""

import struct

import numpy as np

MAGIC = b"FKPS"
VERSION = 1
_HEADER = struct.Struct("<4sIII6d")


class SnapshotFormatError(ValueError):
    pass


def write_snapshot(path, values, grid, params, t):
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValueError("refusing to write non-finite snapshot")
    nx, ny = grid.grid_x.n, grid.grid_y.n
    if values.shape != (nx, ny):
        raise ValueError(f"shape {values.shape} does not match grid ({nx}, {ny})")
    header = _HEADER.pack(MAGIC, VERSION, nx, ny,
                          grid.grid_x.half_width, grid.grid_y.half_width,
                          float(t), params.alpha, float(params.sigma), params.c)
    # row-major with x fastest: y-major ordering of the (x, y)-indexed array
    payload = np.ascontiguousarray(values.T, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_snapshot(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise SnapshotFormatError("truncated header")
    magic, version, nx, ny, Lx, Ly, t, alpha, sigma, c = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise SnapshotFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported version {version}")
    expected = _HEADER.size + 8 * nx * ny
    if len(raw) != expected:
        raise SnapshotFormatError(
            f"payload length {len(raw) - _HEADER.size} does not match "
            f"header dims {nx}x{ny}")
    data = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size).reshape(ny, nx)
    meta = {"t": t, "Lx": Lx, "Ly": Ly, "alpha": alpha, "sigma": sigma, "c": c,
            "nx": nx, "ny": ny}
    return data.T.copy(), meta
