"""All-to-all Ising couplings: quenched Gaussian sampling, diagonal energies,
and frustrated-triangle detection.

Energies use Pauli eigenvalues (+1/-1), independent of the spin-1/2 scale
used for magnetization, so a single aligned bond with coupling J costs -J.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionError, SizeCapError
from .states import BasisState, SuperpositionSpec

#: Exhaustive enumeration caps.
MAX_CENSUS_SITES = 20
MAX_ENERGY_ENUM_SITES = 16


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Symmetric zero-diagonal couplings with the seed that produced them."""

    n: int
    j: np.ndarray
    j_scale: float
    seed: int


@dataclass(frozen=True)
class FrustrationCensus:
    total_triangles: int
    frustrated: int

    @property
    def fraction(self) -> float:
        return self.frustrated / self.total_triangles


def sample_couplings(n: int, j_scale: float = 1.0, seed: int = 0) -> CouplingMatrix:
    """Draw each bond independently from Normal(0, j_scale^2 / n).

    Deterministic for a fixed seed (PCG64 generator).
    """
    if n < 2:
        raise ValueError(f"need at least 2 sites, got {n}")
    rng = np.random.default_rng(seed)
    std = j_scale / math.sqrt(n)
    j = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    j[iu] = rng.normal(0.0, std, size=len(iu[0]))
    j = j + j.T
    return CouplingMatrix(n=n, j=j, j_scale=j_scale, seed=seed)


def _pauli_signs(bits: int, n: int) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint32)
    return 2.0 * ((bits >> shifts) & 1) - 1.0


def energy(b: BasisState, couplings: CouplingMatrix) -> float:
    """Diagonal energy -sum_{i<k} J_ik s_i s_k with s = +-1."""
    if b.n != couplings.n:
        raise DimensionError(f"state has {b.n} sites, couplings expect {couplings.n}")
    s = _pauli_signs(b.bits, b.n)
    return float(-0.5 * s @ couplings.j @ s)


def all_energies(couplings: CouplingMatrix) -> np.ndarray:
    """Energies of every basis state, in index order."""
    n = couplings.n
    if n > MAX_ENERGY_ENUM_SITES:
        raise SizeCapError(
            f"exhaustive energies capped at {MAX_ENERGY_ENUM_SITES} sites, got {n}"
        )
    idx = np.arange(1 << n, dtype=np.uint32)[:, None]
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint32)[None, :]
    s = 2.0 * ((idx >> shifts) & 1) - 1.0
    return -0.5 * np.einsum("bi,ik,bk->b", s, couplings.j, s)


def expectation_energy(spec: SuperpositionSpec, couplings: CouplingMatrix) -> float:
    """Energy of a superposition: the weight-square mix of the two members.

    Cross terms vanish because the operator is diagonal in this basis.
    """
    if spec.n != couplings.n:
        raise DimensionError(f"spec has {spec.n} sites, couplings expect {couplings.n}")
    p1 = abs(spec.w1) ** 2
    p2 = abs(spec.w2) ** 2
    return p1 * energy(spec.b1, couplings) + p2 * energy(spec.b2, couplings)


def frustration_census(couplings: CouplingMatrix) -> FrustrationCensus:
    """Count triangles with an odd number of negative bonds.

    Exactly-zero couplings are treated as positive, so they never create
    frustration.
    """
    n = couplings.n
    if n < 3:
        raise ValueError(f"triangles need at least 3 sites, got {n}")
    if n > MAX_CENSUS_SITES:
        raise SizeCapError(f"census capped at {MAX_CENSUS_SITES} sites, got {n}")
    signs = np.where(couplings.j < 0, -1.0, 1.0)
    tri = np.array(list(combinations(range(n), 3)))
    prod = signs[tri[:, 0], tri[:, 1]] * signs[tri[:, 1], tri[:, 2]] * signs[tri[:, 0], tri[:, 2]]
    frustrated = int(np.sum(prod < 0))
    return FrustrationCensus(total_triangles=len(tri), frustrated=frustrated)


def couplings_to_csv(couplings: CouplingMatrix, spin_scale: float, version: str) -> str:
    """Upper-triangle CSV (1-based sites) with a reproducibility header."""
    lines = [
        f"# sgatlas={version} n={couplings.n} spin_scale={float(spin_scale)!r} "
        f"seed={couplings.seed} j_scale={float(couplings.j_scale)!r}",
        "i,k,j_ik",
    ]
    for i in range(couplings.n):
        for k in range(i + 1, couplings.n):
            lines.append(f"{i + 1},{k + 1},{float(couplings.j[i, k])!r}")
    return "\n".join(lines) + "\n"
