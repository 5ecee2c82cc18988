"""Exhaustive pair-space enumeration: phase atlas, scatter sweeps, the
distinct-q census, the linear order-parameter/negativity law, and the
partial-trace recursion check.

Cells are indexed by canonical pairs (row <= col) of basis-state indices
in row-major order.  Complement pairs therefore land on the anti-diagonal
(col == 2^n - 1 - row), which is the all-differ, zero-overlap band.

All closed forms here are for equal-weight pairs unless a weight square is
given explicitly; they are cross-checked against the dense oracles in the
test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, TextIO

import json
import numpy as np

from . import kernels
from .errors import SizeCapError
from .observables import DEFAULT_SPIN_SCALE, ZERO_TOL, ObservablesRecord, observables
from .states import BasisState, SuperpositionSpec, decompose_pair

#: Default and hard caps for closed-form enumeration.
MAX_ENUM_SITES = 12
MAX_ENUM_SITES_OVERRIDE = 16

#: Phase labels in kernel code order.
PHASE_LABELS = ("PM", "SG", "FM", "AFM")

_CHUNK_PAIRS = 1 << 22


def classify_phase(obs: ObservablesRecord, tol: float = ZERO_TOL) -> str:
    """Total, mutually exclusive phase assignment from (m, q_ea)."""
    return _classify_scalar(obs.m, obs.q_ea, tol)


def _classify_scalar(m: float, q_ea: float, tol: float = ZERO_TOL) -> str:
    if abs(m) < tol:
        return "PM" if q_ea < tol else "SG"
    return "FM" if m > 0 else "AFM"


@dataclass(frozen=True)
class AtlasCell:
    row: int
    col: int
    k: int
    q_ea: float
    m: float
    neg: float
    phase: str


@dataclass(frozen=True, eq=False)
class AtlasMatrix:
    """Columnar store of all 2^n(2^n+1)/2 canonical cells."""

    n: int
    spin_scale: float
    row: np.ndarray
    col: np.ndarray
    k: np.ndarray
    q_ea: np.ndarray
    m: np.ndarray
    neg: np.ndarray
    phase_code: np.ndarray

    def __len__(self) -> int:
        return self.row.size

    def cells(self) -> Iterator[AtlasCell]:
        for i in range(self.row.size):
            yield AtlasCell(
                row=int(self.row[i]),
                col=int(self.col[i]),
                k=int(self.k[i]),
                q_ea=float(self.q_ea[i]),
                m=float(self.m[i]),
                neg=float(self.neg[i]),
                phase=PHASE_LABELS[self.phase_code[i]],
            )

    def cell(self, row: int, col: int) -> AtlasCell:
        dim = 1 << self.n
        if not 0 <= row <= col < dim:
            raise ValueError(f"cell ({row}, {col}) is not canonical for n={self.n}")
        i = row * dim - row * (row - 1) // 2 + (col - row)
        return AtlasCell(
            row=row,
            col=col,
            k=int(self.k[i]),
            q_ea=float(self.q_ea[i]),
            m=float(self.m[i]),
            neg=float(self.neg[i]),
            phase=PHASE_LABELS[self.phase_code[i]],
        )

    def phase_counts(self) -> dict:
        counts = np.bincount(self.phase_code, minlength=len(PHASE_LABELS))
        return {label: int(counts[i]) for i, label in enumerate(PHASE_LABELS)}


def _check_enum_size(n: int, max_n: int) -> None:
    if max_n > MAX_ENUM_SITES_OVERRIDE:
        raise SizeCapError(
            f"cap {max_n} above the hard limit {MAX_ENUM_SITES_OVERRIDE}"
        )
    if n < 1:
        raise ValueError(f"site count must be >= 1, got {n}")
    if n > max_n:
        raise SizeCapError(f"site count {n} above the cap {max_n}")


def _block_columns(n: int, scale: float, rows: np.ndarray, cols: np.ndarray,
                   k: np.ndarray, ae: np.ndarray, tol: float = ZERO_TOL):
    """Equal-weight observables for one kernel block (vectorized)."""
    ki = k.astype(np.int64)
    aei = ae.astype(np.int64)
    q = (n - ki) * (scale * scale) / n
    m = (2 * aei + ki - n) * (scale / n)
    neg = np.where(ki >= 2, ki / n, 0.0)
    m_zero = np.abs(m) < tol
    code = np.where(
        m_zero,
        np.where(q < tol, 0, 1),
        np.where(m > 0, 2, 3),
    ).astype(np.uint8)
    return q, m, neg, code


def _iter_blocks(n: int):
    """Kernel blocks covering all canonical pairs, in row-major order."""
    dim = 1 << n
    row = 0
    while row < dim:
        stop = row
        pairs = 0
        while stop < dim and pairs < _CHUNK_PAIRS:
            pairs += dim - stop
            stop += 1
        yield kernels.pair_block(n, row, stop)
        row = stop


def build_atlas(n: int, scale: float = DEFAULT_SPIN_SCALE) -> AtlasMatrix:
    """Evaluate every canonical equal-weight pair at the given scale."""
    _check_enum_size(n, MAX_ENUM_SITES)
    parts = {name: [] for name in ("row", "col", "k", "q", "m", "neg", "code")}
    for rows, cols, k, ae, _d1 in _iter_blocks(n):
        q, m, neg, code = _block_columns(n, scale, rows, cols, k, ae)
        for name, arr in zip(parts, (rows, cols, k, q, m, neg, code)):
            parts[name].append(arr)
    cat = {name: np.concatenate(chunks) for name, chunks in parts.items()}
    return AtlasMatrix(
        n=n,
        spin_scale=scale,
        row=cat["row"],
        col=cat["col"],
        k=cat["k"],
        q_ea=cat["q"],
        m=cat["m"],
        neg=cat["neg"],
        phase_code=cat["code"],
    )


def distinct_sg_q_census(
    n: int, scale: float = DEFAULT_SPIN_SCALE, max_n: int = MAX_ENUM_SITES
) -> list:
    """Sorted distinct q_ea over SG-classified equal-weight cells.

    Found by enumerating every canonical pair, not by a counting formula.
    """
    if n < 2:
        raise ValueError(f"census needs at least 2 sites, got {n}")
    _check_enum_size(n, max_n)
    seen = np.zeros(n + 1, dtype=bool)
    for _rows, _cols, k, ae, _d1 in _iter_blocks(n):
        ki = k.astype(np.int64)
        aei = ae.astype(np.int64)
        sg = (2 * aei + ki == n) & (aei >= 1)
        seen[np.unique(ki[sg])] = True
    return sorted(float((n - kk) * (scale * scale) / n) for kk in np.nonzero(seen)[0])


@dataclass(frozen=True)
class ScatterPoint:
    n: int
    row: int
    col: int
    weight_p: float
    m: float
    q_ea: float


def weight_grid(steps: int) -> np.ndarray:
    """Uniform grid over [0, 1]; p = 1/2 is inserted when absent."""
    if steps < 2:
        raise ValueError(f"need at least 2 weight steps, got {steps}")
    grid = np.linspace(0.0, 1.0, steps)
    if not np.any(grid == 0.5):
        grid = np.sort(np.append(grid, 0.5))
    return grid


def _weighted_mq(n, scale, k, ae, d1, p):
    """m and q_ea for weight square p on the row member, vectorized."""
    t = 2.0 * p - 1.0
    ki = k.astype(np.int64)
    aei = ae.astype(np.int64)
    d1i = d1.astype(np.int64)
    m = ((2 * aei + ki - n) + (2 * d1i - ki) * t) * (scale / n)
    q = ((n - ki) + ki * t * t) * (scale * scale) / n
    return m, q


def weighted_scatter(
    n: int,
    steps: int = 101,
    scale: float = DEFAULT_SPIN_SCALE,
    max_n: int = MAX_ENUM_SITES,
) -> Iterator[ScatterPoint]:
    """(m, q_ea) for every canonical pair and every grid weight.

    Yields points pair-major (row, col, then p ascending); the p = 1/2
    subset reproduces the equal-weight atlas exactly.
    """
    _check_enum_size(n, max_n)
    grid = weight_grid(steps)
    for rows, cols, k, ae, d1 in _iter_blocks(n):
        per_p = [_weighted_mq(n, scale, k, ae, d1, p) for p in grid]
        for i in range(rows.size):
            r = int(rows[i])
            c = int(cols[i])
            for p, (m, q) in zip(grid, per_p):
                yield ScatterPoint(
                    n=n, row=r, col=c, weight_p=float(p),
                    m=float(m[i]), q_ea=float(q[i]),
                )


@dataclass(frozen=True)
class FitResult:
    n: int
    slope: float
    intercept: float
    max_residual: float
    excluded_k1_count: int


def fit_linear_law(
    n: int, scale: float = DEFAULT_SPIN_SCALE, max_n: int = MAX_ENUM_SITES
) -> FitResult:
    """Least-squares line of q_ea against normalized average negativity.

    Fits over all equal-weight cells with cluster size k != 1; lone-cat
    cells sit off the line (their negativity is 0 while q_ea < q_max) and
    are counted separately.
    """
    if n < 3:
        raise ValueError(f"law fit needs at least 3 sites, got {n}")
    _check_enum_size(n, max_n)
    counts = np.zeros(n + 1, dtype=np.int64)
    for _rows, _cols, k, _ae, _d1 in _iter_blocks(n):
        counts += np.bincount(k, minlength=n + 1)
    xs, ys, ws = [], [], []
    for kk in range(n + 1):
        if kk == 1 or counts[kk] == 0:
            continue
        xs.append(kk / n if kk >= 2 else 0.0)
        ys.append((n - kk) * (scale * scale) / n)
        ws.append(float(counts[kk]))
    x = np.array(xs)
    y = np.array(ys)
    w = np.array(ws)
    # centered weighted OLS; identical to the fit over the raw cell list
    # because every cell with the same k carries the same (x, y)
    total = w.sum()
    xbar = (w * x).sum() / total
    ybar = (w * y).sum() / total
    sxx = (w * (x - xbar) ** 2).sum()
    slope = float((w * (x - xbar) * (y - ybar)).sum() / sxx)
    intercept = float(ybar - slope * xbar)
    max_residual = float(np.max(np.abs(y - (intercept + slope * x))))
    return FitResult(
        n=n,
        slope=slope,
        intercept=intercept,
        max_residual=max_residual,
        excluded_k1_count=int(counts[1]),
    )


def k1_deviation_report(n: int, scale: float = DEFAULT_SPIN_SCALE) -> dict:
    """Where lone-cat (k = 1) cells sit relative to the fitted law."""
    fit = fit_linear_law(n, scale)
    q_k1 = (n - 1) * (scale * scale) / n
    return {
        "count": fit.excluded_k1_count,
        "q_ea": float(q_k1),
        "neg_avg_normalized": 0.0,
        "offset_from_law": float(q_k1 - fit.intercept),
    }


@dataclass(frozen=True)
class RecursionReport:
    """Outcome of the drop-last-site block check."""

    n: int
    checked: int
    skipped: int
    violations: int
    max_error: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def recursion_check(n: int, scale: float = DEFAULT_SPIN_SCALE, tol: float = 1e-12) -> RecursionReport:
    """Verify that dropping an agreeing last site maps the atlas into the
    (n-1)-site atlas: n*q_n == (n-1)*q_{n-1} + scale^2 and the differ
    structure is unchanged.  Pairs whose last site differs are skipped.
    """
    if not 2 <= n <= 8:
        raise ValueError(f"recursion check supports 2..8 sites, got {n}")
    dim = 1 << n
    checked = skipped = violations = 0
    max_error = 0.0
    for row in range(dim):
        for col in range(row, dim):
            if (row ^ col) & 1:
                skipped += 1
                continue
            b1 = BasisState(n, row)
            b2 = BasisState(n, col)
            q_full = observables(SuperpositionSpec.equal_weight(b1, b2), scale).q_ea
            r1 = b1.drop_last_site()
            r2 = b2.drop_last_site()
            q_rest = observables(SuperpositionSpec.equal_weight(r1, r2), scale).q_ea
            err = abs(n * q_full - ((n - 1) * q_rest + scale * scale))
            dec_full = decompose_pair(b1, b2)
            dec_rest = decompose_pair(r1, r2)
            same_structure = (
                dec_rest.differ == dec_full.differ
                and dec_rest.pattern == dec_full.pattern
            )
            if err > tol or not same_structure:
                violations += 1
            max_error = max(max_error, err)
            checked += 1
    return RecursionReport(
        n=n, checked=checked, skipped=skipped,
        violations=violations, max_error=max_error,
    )


# ---------------------------------------------------------------------------
# export writers (deterministic byte-stable output)
# ---------------------------------------------------------------------------

def _state_strings(n: int) -> list:
    dim = 1 << n
    return [
        "".join("e" if (i >> (n - s)) & 1 else "g" for s in range(1, n + 1))
        for i in range(dim)
    ]


def _meta_comment(version: str, n: int, scale: float, seed: int) -> str:
    return f"# sgatlas={version} n={n} spin_scale={float(scale)!r} seed={seed}"


def write_atlas_csv(
    n: int,
    fh: TextIO,
    scale: float = DEFAULT_SPIN_SCALE,
    seed: int = 0,
    version: str = "0",
    max_n: int = MAX_ENUM_SITES,
    normalize_q: bool = False,
) -> dict:
    """Stream the atlas as CSV; returns {cells, phase_counts}."""
    _check_enum_size(n, max_n)
    names = _state_strings(n)
    q_max = scale * scale
    fh.write(_meta_comment(version, n, scale, seed) + "\n")
    header = "n,row,col,b1,b2,k,q_ea,m,neg,phase"
    if normalize_q:
        header += ",q_norm"
    fh.write(header + "\n")
    total = 0
    phase_counts = np.zeros(len(PHASE_LABELS), dtype=np.int64)
    for rows, cols, k, ae, _d1 in _iter_blocks(n):
        q, m, neg, code = _block_columns(n, scale, rows, cols, k, ae)
        phase_counts += np.bincount(code, minlength=len(PHASE_LABELS))
        total += rows.size
        lines = []
        for i in range(rows.size):
            r = int(rows[i])
            c = int(cols[i])
            line = (
                f"{n},{r},{c},{names[r]},{names[c]},{int(k[i])},"
                f"{float(q[i])!r},{float(m[i])!r},{float(neg[i])!r},"
                f"{PHASE_LABELS[code[i]]}"
            )
            if normalize_q:
                line += f",{float(q[i] / q_max)!r}"
            lines.append(line)
        fh.write("\n".join(lines) + "\n")
    return {
        "cells": total,
        "phase_counts": {lab: int(phase_counts[i]) for i, lab in enumerate(PHASE_LABELS)},
    }


def write_atlas_json(
    n: int,
    fh: TextIO,
    scale: float = DEFAULT_SPIN_SCALE,
    seed: int = 0,
    version: str = "0",
    max_n: int = MAX_ENUM_SITES,
    normalize_q: bool = False,
) -> dict:
    """Stream the atlas as JSON (one cell per line); returns {cells, phase_counts}."""
    _check_enum_size(n, max_n)
    names = _state_strings(n)
    q_max = scale * scale
    head = {
        "tool": "sgatlas",
        "version": version,
        "n": n,
        "spin_scale": float(scale),
        "seed": seed,
    }
    fh.write(json.dumps(head, separators=(",", ":"))[:-1] + ',"cells":[\n')
    total = 0
    phase_counts = np.zeros(len(PHASE_LABELS), dtype=np.int64)
    first = True
    for rows, cols, k, ae, _d1 in _iter_blocks(n):
        q, m, neg, code = _block_columns(n, scale, rows, cols, k, ae)
        phase_counts += np.bincount(code, minlength=len(PHASE_LABELS))
        total += rows.size
        lines = []
        for i in range(rows.size):
            r = int(rows[i])
            c = int(cols[i])
            cell = {
                "row": r,
                "col": c,
                "b1": names[r],
                "b2": names[c],
                "k": int(k[i]),
                "q_ea": float(q[i]),
                "m": float(m[i]),
                "neg": float(neg[i]),
                "phase": PHASE_LABELS[code[i]],
            }
            if normalize_q:
                cell["q_norm"] = float(q[i] / q_max)
            lines.append(json.dumps(cell, separators=(",", ":")))
        sep = ",\n"
        block = sep.join(lines)
        fh.write(block if first else sep + block)
        first = False
    fh.write("\n]}\n")
    return {
        "cells": total,
        "phase_counts": {lab: int(phase_counts[i]) for i, lab in enumerate(PHASE_LABELS)},
    }


def write_scatter_csv(
    n: int,
    steps: int,
    fh: TextIO,
    scale: float = DEFAULT_SPIN_SCALE,
    seed: int = 0,
    version: str = "0",
    max_n: int = MAX_ENUM_SITES,
) -> dict:
    """Stream the weighted sweep as CSV; returns {pairs, points}."""
    _check_enum_size(n, max_n)
    grid = weight_grid(steps)
    fh.write(_meta_comment(version, n, scale, seed) + f" steps={len(grid)}\n")
    fh.write("n,row,col,p,m,q_ea\n")
    pairs = 0
    for rows, cols, k, ae, d1 in _iter_blocks(n):
        pairs += rows.size
        per_p = [_weighted_mq(n, scale, k, ae, d1, p) for p in grid]
        lines = []
        for i in range(rows.size):
            r = int(rows[i])
            c = int(cols[i])
            for p, (m, q) in zip(grid, per_p):
                lines.append(f"{n},{r},{c},{float(p)!r},{float(m[i])!r},{float(q[i])!r}")
        fh.write("\n".join(lines) + "\n")
    return {"pairs": pairs, "points": pairs * len(grid)}
