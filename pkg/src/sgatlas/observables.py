"""Local magnetizations, average magnetization, and the overlap order parameter.

Magnetization uses spin-1/2 eigenvalues by default (``scale = 0.5``), so a
fully aligned single state has ``q_ea = 0.25``.  The scale is configurable;
every export records the value used.

Three computation routes are kept deliberately separate:

* :func:`local_magnetization` -- the two-term diagonal formula on a spec,
* :func:`closed_form_observables` -- closed forms over a cluster decomposition,
* :func:`dense_local_magnetization` -- brute-force expectation on the full
  amplitude vector, used as the oracle the other two are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import ClusterDecomposition, SuperpositionSpec, build_amplitude_vector

#: Spin magnitude per site (sigma_z / 2 eigenvalues).
DEFAULT_SPIN_SCALE = 0.5

#: |m| and q_ea below this are treated as zero by the phase classifier.
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class ObservablesRecord:
    """Per-site magnetizations plus their average and mean square."""

    m_local: tuple
    m: float
    q_ea: float

    def to_dict(self) -> dict:
        return {
            "m_local": [float(v) for v in self.m_local],
            "m": float(self.m),
            "q_ea": float(self.q_ea),
        }


def _check_scale(scale: float) -> None:
    if scale <= 0:
        raise ValueError(f"spin scale must be positive, got {scale}")


def _site_signs(bits: int, n: int) -> np.ndarray:
    """+1 for excited, -1 for ground, in site order 1..n."""
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint32)
    return 2.0 * ((bits >> shifts) & 1) - 1.0


def _record_from_local(m_local: np.ndarray) -> ObservablesRecord:
    return ObservablesRecord(
        m_local=tuple(float(v) for v in m_local),
        m=float(np.mean(m_local)),
        q_ea=float(np.mean(m_local ** 2)),
    )


def local_magnetization(spec: SuperpositionSpec, scale: float = DEFAULT_SPIN_SCALE) -> np.ndarray:
    """Per-site magnetization of a two-term superposition.

    The measured operator is diagonal, so for distinct members the cross
    terms vanish and each site contributes ``(p1*s1 + p2*s2) * scale``.
    """
    _check_scale(scale)
    n = spec.n
    p1 = abs(spec.w1) ** 2
    p2 = abs(spec.w2) ** 2
    return (p1 * _site_signs(spec.b1.bits, n) + p2 * _site_signs(spec.b2.bits, n)) * scale


def observables(spec: SuperpositionSpec, scale: float = DEFAULT_SPIN_SCALE) -> ObservablesRecord:
    """Average magnetization and overlap order parameter of a spec."""
    return _record_from_local(local_magnetization(spec, scale))


def closed_form_observables(
    dec: ClusterDecomposition, p1: float = 0.5, scale: float = DEFAULT_SPIN_SCALE
) -> ObservablesRecord:
    """Observables from a cluster decomposition and the weight square of b1.

    Co-excited sites give ``+scale``, co-ground sites ``-scale``; each
    differ site gives ``+-(2*p1 - 1) * scale`` with the sign taken from the
    decomposition's pattern.
    """
    _check_scale(scale)
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"p1 must lie in [0, 1], got {p1}")
    m_local = np.empty(dec.n)
    skew = (2.0 * p1 - 1.0) * scale
    for site in dec.agree_e:
        m_local[site - 1] = scale
    for site in dec.agree_g:
        m_local[site - 1] = -scale
    for site, b1_excited in zip(sorted(dec.differ), dec.pattern):
        m_local[site - 1] = skew if b1_excited else -skew
    return _record_from_local(m_local)


def dense_local_magnetization(
    spec: SuperpositionSpec, scale: float = DEFAULT_SPIN_SCALE
) -> np.ndarray:
    """Brute-force per-site expectation over the full amplitude vector."""
    _check_scale(scale)
    amps = build_amplitude_vector(spec)
    probs = np.abs(amps) ** 2
    n = spec.n
    idx = np.arange(amps.size, dtype=np.uint64)
    out = np.empty(n)
    for site in range(1, n + 1):
        bit = (idx >> np.uint64(n - site)) & np.uint64(1)
        out[site - 1] = float(probs @ (2.0 * bit - 1.0)) * scale
    return out


def dense_observables(spec: SuperpositionSpec, scale: float = DEFAULT_SPIN_SCALE) -> ObservablesRecord:
    """Oracle-path record; must agree with :func:`observables`."""
    return _record_from_local(dense_local_magnetization(spec, scale))
