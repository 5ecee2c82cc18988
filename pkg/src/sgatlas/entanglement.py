"""Negativity across bipartitions, GHZ clusters, and dense density-matrix tools.

Negativity of a cut is ``(||rho^T||_1 - 1) / 2`` with the transpose taken on
the chosen subsystem.  Two routes are provided:

* a dense path (partial transpose + Hermitian eigensolve), capped at
  ``DENSE_SITE_CAP`` sites, and
* an exact fast path exploiting that a two-basis-term pure state has
  Schmidt rank at most 2 across any cut.

The averaged, normalized negativity reported for a state is the mean of
the n single-site-vs-rest cuts scaled by 2, so a full n-site GHZ cluster
scores exactly 1 and any product state scores 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import SizeCapError
from .states import (
    DENSE_SITE_CAP,
    BasisState,
    SuperpositionSpec,
    build_amplitude_vector,
)

#: Maximum allowed deviation from Hermitian symmetry in dense inputs.
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class NegativityReport:
    """Negativity per single-site cut plus raw and normalized averages."""

    per_cut: dict
    avg_raw: float
    avg_normalized: float

    def to_dict(self) -> dict:
        sites = sorted(self.per_cut)
        return {
            "per_cut": [float(self.per_cut[s]) for s in sites],
            "avg_raw": float(self.avg_raw),
            "avg_normalized": float(self.avg_normalized),
        }


def density_matrix(spec: SuperpositionSpec) -> np.ndarray:
    """Pure-state density matrix of a spec (dense, size capped)."""
    if spec.n > DENSE_SITE_CAP:
        raise SizeCapError(
            f"dense path refuses {spec.n} sites (cap {DENSE_SITE_CAP}); "
            "use the Schmidt fast path"
        )
    psi = build_amplitude_vector(spec)
    return np.outer(psi, psi.conj())


def _sites_from_matrix(rho: np.ndarray) -> int:
    dim = rho.shape[0]
    if rho.ndim != 2 or rho.shape[1] != dim or dim & (dim - 1) or dim == 0:
        raise ValueError(f"expected a square 2^n x 2^n matrix, got shape {rho.shape}")
    return dim.bit_length() - 1


def _check_subset(sites: Iterable[int], n: int) -> frozenset:
    subset = frozenset(sites)
    for s in subset:
        if not 1 <= int(s) <= n:
            raise ValueError(f"site {s} outside 1..{n}")
    return subset


def partial_transpose(rho: np.ndarray, sites: Iterable[int]) -> np.ndarray:
    """Transpose the indices of the given sites.  An involution."""
    n = _sites_from_matrix(rho)
    subset = _check_subset(sites, n)
    if not subset:
        return rho.copy()
    perm = list(range(2 * n))
    for s in subset:
        a = s - 1
        perm[a], perm[n + a] = perm[n + a], perm[a]
    dim = 1 << n
    return rho.reshape([2] * (2 * n)).transpose(perm).reshape(dim, dim)


def negativity(rho: np.ndarray, sites: Iterable[int]) -> float:
    """Dense negativity of a cut: (trace norm of the partial transpose - 1) / 2.

    The input must be Hermitian within ``HERMITIAN_TOL``; it is symmetrized
    before the eigensolve so the trace norm is a plain sum of |eigenvalue|.
    """
    n = _sites_from_matrix(rho)
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise np.linalg.LinAlgError("density matrix is not Hermitian")
    sym = 0.5 * (rho + rho.conj().T)
    lam = np.linalg.eigvalsh(partial_transpose(sym, _check_subset(sites, n)))
    return max(0.5 * (float(np.abs(lam).sum()) - 1.0), 0.0)


def schmidt_negativity(spec: SuperpositionSpec, sites: Iterable[int]) -> float:
    """Exact negativity of a two-term pure state across any cut.

    If the members agree when restricted to either side of the cut the
    state is a product across it (negativity 0); otherwise the Schmidt
    coefficients are |w1|, |w2| and the negativity is |w1|*|w2|.
    """
    n = spec.n
    subset = _check_subset(sites, n)
    if spec.is_single or not subset:
        return 0.0
    mask = 0
    for s in subset:
        mask |= 1 << (n - s)
    full = (1 << n) - 1
    if (spec.b1.bits & mask) == (spec.b2.bits & mask):
        return 0.0
    if (spec.b1.bits & ~mask & full) == (spec.b2.bits & ~mask & full):
        return 0.0
    return abs(spec.w1) * abs(spec.w2)


def negativity_report(spec: SuperpositionSpec) -> NegativityReport:
    """Negativity of every single-site cut, averaged and normalized by 2.

    For an equal-weight pair with cluster size k the normalized average is
    exactly k/n when k >= 2 and 0 otherwise.
    """
    n = spec.n
    per_cut = {site: schmidt_negativity(spec, (site,)) for site in range(1, n + 1)}
    avg_raw = sum(per_cut.values()) / n
    return NegativityReport(per_cut=per_cut, avg_raw=avg_raw, avg_normalized=2.0 * avg_raw)


def ghz_state(
    n_entangled: int,
    total: Optional[int] = None,
    placement: Optional[Iterable[int]] = None,
    fixed: Optional[Mapping[int, str]] = None,
) -> SuperpositionSpec:
    """Equal-weight pair whose differ set is a fully correlated cluster.

    ``placement`` picks the cluster sites (default: the first
    ``n_entangled``); ``fixed`` assigns 'e'/'g' to every remaining site.
    """
    if total is None:
        total = n_entangled
    if not 1 <= total:
        raise ValueError("total site count must be >= 1")
    if n_entangled < 0 or n_entangled > total:
        raise ValueError(f"cluster size {n_entangled} outside 0..{total}")
    placed = frozenset(placement) if placement is not None else frozenset(
        range(1, n_entangled + 1)
    )
    if len(placed) != n_entangled:
        raise ValueError(f"placement {sorted(placed)} does not have {n_entangled} sites")
    for s in placed:
        if not 1 <= s <= total:
            raise ValueError(f"placement site {s} outside 1..{total}")
    fixed = dict(fixed) if fixed is not None else {}
    rest = set(range(1, total + 1)) - placed
    if set(fixed) != rest:
        raise ValueError(
            f"fixed pattern must cover exactly sites {sorted(rest)}, got {sorted(fixed)}"
        )
    bits1 = 0
    for site, letter in fixed.items():
        if letter == "e":
            bits1 |= 1 << (total - site)
        elif letter != "g":
            raise ValueError(f"invalid fixed letter {letter!r} at site {site}")
    mask = 0
    for site in placed:
        mask |= 1 << (total - site)
    if mask == 0:
        return SuperpositionSpec.single(BasisState(total, bits1))
    return SuperpositionSpec.equal_weight(
        BasisState(total, bits1), BasisState(total, bits1 | mask)
    )


def partial_trace(rho: np.ndarray, site: int) -> np.ndarray:
    """Trace out one site of a dense density matrix."""
    n = _sites_from_matrix(rho)
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")
    t = rho.reshape([2] * (2 * n))
    reduced = np.trace(t, axis1=site - 1, axis2=n + site - 1)
    dim = 1 << (n - 1)
    return reduced.reshape(dim, dim)


def matrix_dump(rho: np.ndarray) -> list:
    """Debug serialization: row-major [re, im] pairs."""
    flat = np.asarray(rho, dtype=np.complex128).ravel()
    return [[float(v.real), float(v.imag)] for v in flat]
