"""Basis states, two-term superpositions, and the ensemble words that generate them.

Conventions used consistently across the package:

* Sites are numbered 1..n.  Site 1 is the leftmost letter of the textual
  form and the most significant bit of the integer form.
* ``e`` (excited) is bit 1, ``g`` (ground) is bit 0, so ``"eeg"`` has
  index ``0b110 == 6``.
* A two-term superposition is canonicalized so ``b1.index <= b2.index``.
  A pair with ``b1 == b2`` denotes the single basis state; its weights
  collapse to ``(1, 0)``.
* Ensemble words are sequences over ``{C, e, g}``.  ``C`` marks a cat
  site, i.e. a site where the two superposed members disagree.  The
  textual form is comma separated with a correlation-variant suffix,
  e.g. ``"C,C,e,g:1"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionError, SizeCapError

#: Normalization tolerance for superposition weights and amplitude vectors.
NORM_TOL = 1e-12

#: Largest site count for which dense vectors / density matrices are built.
DENSE_SITE_CAP = 10

WORD_LETTERS = ("C", "e", "g")

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class BasisState:
    """An n-site excitation pattern, one computational basis label."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"site count must be >= 1, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"index {self.bits} out of range for {self.n} sites")

    @classmethod
    def from_string(cls, text: str) -> "BasisState":
        """Parse a pattern like ``"eeg"`` (site 1 leftmost)."""
        bits = 0
        for ch in text:
            if ch == "e":
                bits = (bits << 1) | 1
            elif ch == "g":
                bits = bits << 1
            else:
                raise ValueError(f"invalid site letter {ch!r} in {text!r}")
        if not text:
            raise ValueError("empty basis-state string")
        return cls(len(text), bits)

    @classmethod
    def from_index(cls, n: int, index: int) -> "BasisState":
        return cls(n, index)

    @property
    def index(self) -> int:
        """Integer label under the declared ordering."""
        return self.bits

    def excited(self, site: int) -> bool:
        """Whether ``site`` (1-based) is excited."""
        if not 1 <= site <= self.n:
            raise ValueError(f"site {site} out of range 1..{self.n}")
        return (self.bits >> (self.n - site)) & 1 == 1

    @property
    def excited_count(self) -> int:
        return self.bits.bit_count()

    def complement(self) -> "BasisState":
        """Flip every site.  An involution."""
        return BasisState(self.n, self.bits ^ ((1 << self.n) - 1))

    def drop_last_site(self) -> "BasisState":
        """Restrict to sites 1..n-1."""
        if self.n < 2:
            raise ValueError("cannot drop the only site")
        return BasisState(self.n - 1, self.bits >> 1)

    def __str__(self) -> str:
        return "".join(
            "e" if (self.bits >> (self.n - s)) & 1 else "g"
            for s in range(1, self.n + 1)
        )


def complement(b: BasisState) -> BasisState:
    """Module-level alias for :meth:`BasisState.complement`."""
    return b.complement()


@dataclass(frozen=True)
class SuperpositionSpec:
    """An ordered pair of basis states with complex weights.

    Canonical form: ``b1.index <= b2.index`` (weights travel with their
    states when the constructor swaps), and a degenerate pair
    ``b1 == b2`` is stored with weights ``(1, 0)``.
    """

    b1: BasisState
    b2: BasisState
    w1: complex
    w2: complex

    def __post_init__(self):
        if self.b1.n != self.b2.n:
            raise DimensionError(
                f"mismatched site counts {self.b1.n} != {self.b2.n}"
            )
        b1, b2 = self.b1, self.b2
        w1 = complex(self.w1)
        w2 = complex(self.w2)
        norm = abs(w1) ** 2 + abs(w2) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"weights are not normalized: |w1|^2+|w2|^2 = {norm}")
        if b1 == b2:
            w1, w2 = complex(1.0), complex(0.0)
        elif b1.bits > b2.bits:
            object.__setattr__(self, "b1", b2)
            object.__setattr__(self, "b2", b1)
            w1, w2 = w2, w1
        object.__setattr__(self, "w1", w1)
        object.__setattr__(self, "w2", w2)

    @classmethod
    def single(cls, b: BasisState) -> "SuperpositionSpec":
        return cls(b, b, 1.0, 0.0)

    @classmethod
    def equal_weight(cls, b1: BasisState, b2: BasisState) -> "SuperpositionSpec":
        if b1 == b2:
            return cls.single(b1)
        return cls(b1, b2, _SQRT_HALF, _SQRT_HALF)

    @classmethod
    def weighted(cls, b1: BasisState, b2: BasisState, p1: float) -> "SuperpositionSpec":
        """Real positive weights with ``|w1|^2 = p1`` on ``b1``."""
        if not 0.0 <= p1 <= 1.0:
            raise ValueError(f"p1 must lie in [0, 1], got {p1}")
        if p1 == 0.5:
            return cls.equal_weight(b1, b2)
        return cls(b1, b2, math.sqrt(p1), math.sqrt(1.0 - p1))

    @property
    def n(self) -> int:
        return self.b1.n

    @property
    def is_single(self) -> bool:
        return self.b1 == self.b2

    @property
    def k(self) -> int:
        """Number of differ (cat) sites."""
        return (self.b1.bits ^ self.b2.bits).bit_count()

    @property
    def p1(self) -> float:
        return abs(self.w1) ** 2


@dataclass(frozen=True)
class ClusterDecomposition:
    """Site partition of a pair: co-excited / co-ground / differing.

    ``pattern`` holds one flag per differ site in ascending site order,
    True when ``b1`` is the excited member at that site.
    """

    n: int
    agree_e: frozenset
    agree_g: frozenset
    differ: frozenset
    pattern: tuple

    @property
    def k(self) -> int:
        return len(self.differ)


def decompose_pair(b1: BasisState, b2: BasisState) -> ClusterDecomposition:
    """Positionwise comparison of two same-size basis states."""
    if b1.n != b2.n:
        raise DimensionError(f"mismatched site counts {b1.n} != {b2.n}")
    n = b1.n
    agree_e, agree_g, differ, pattern = [], [], [], []
    for site in range(1, n + 1):
        x1 = (b1.bits >> (n - site)) & 1
        x2 = (b2.bits >> (n - site)) & 1
        if x1 == x2:
            (agree_e if x1 else agree_g).append(site)
        else:
            differ.append(site)
            pattern.append(x1 == 1)
    return ClusterDecomposition(
        n=n,
        agree_e=frozenset(agree_e),
        agree_g=frozenset(agree_g),
        differ=frozenset(differ),
        pattern=tuple(pattern),
    )


@dataclass(frozen=True)
class EnsembleWord:
    """A word over ``{C, e, g}`` plus a correlation-variant index.

    With ``c`` cat letters there are ``2**max(c-1, 0)`` inequivalent
    correlation patterns (modulo swapping the two members).  Variant bit
    ``j-1`` controls the ``(j+1)``-th cat site in site order: 0 keeps it
    aligned with the first cat site inside ``b1``, 1 anti-aligns it.
    """

    letters: tuple
    variant: int = 0

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("empty ensemble word")
        for ch in letters:
            if ch not in WORD_LETTERS:
                raise ValueError(f"invalid word letter {ch!r}")
        if not 0 <= self.variant < self.variant_count:
            raise ValueError(
                f"variant {self.variant} out of range for {self.cat_count} cat sites"
            )

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def cat_count(self) -> int:
        return sum(1 for ch in self.letters if ch == "C")

    @property
    def variant_count(self) -> int:
        return 1 << max(self.cat_count - 1, 0)

    @classmethod
    def parse(cls, text: str) -> "EnsembleWord":
        """Parse ``"C,C,e,g:1"``; the variant suffix defaults to 0."""
        body, _, suffix = text.partition(":")
        letters = tuple(part.strip() for part in body.split(","))
        variant = int(suffix) if suffix else 0
        return cls(letters, variant)

    def __str__(self) -> str:
        return ",".join(self.letters) + f":{self.variant}"


def expand_ensemble_word(word: EnsembleWord) -> SuperpositionSpec:
    """Realize a word as an equal-weight pair whose differ set is the cat sites.

    The first cat site is ground in ``b1`` (this keeps the pair canonical);
    later cat sites follow the variant bits.  A word with no cat letters
    yields the single basis state it spells.
    """
    n = word.n
    bits1 = 0
    differ_mask = 0
    cat_seen = 0
    for site, letter in enumerate(word.letters, start=1):
        pos = n - site
        if letter == "e":
            bits1 |= 1 << pos
        elif letter == "C":
            differ_mask |= 1 << pos
            if cat_seen > 0 and (word.variant >> (cat_seen - 1)) & 1:
                bits1 |= 1 << pos
            cat_seen += 1
    if differ_mask == 0:
        return SuperpositionSpec.single(BasisState(n, bits1))
    return SuperpositionSpec.equal_weight(
        BasisState(n, bits1), BasisState(n, bits1 ^ differ_mask)
    )


def _multiset_permutations(letters: Sequence[str]) -> Iterator[tuple]:
    """Distinct permutations in lexicographic order (no duplicates)."""
    seq = sorted(letters)
    n = len(seq)
    while True:
        yield tuple(seq)
        # next lexicographic permutation
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1:] = reversed(seq[i + 1:])


def word_family(letters: Iterable[str]) -> list:
    """All distinct arrangements of a letter multiset, times all variants."""
    letters = tuple(letters)
    if not letters:
        raise ValueError("empty letter multiset")
    out = []
    for arrangement in _multiset_permutations(letters):
        probe = EnsembleWord(arrangement, 0)
        for variant in range(probe.variant_count):
            out.append(EnsembleWord(arrangement, variant))
    return out


def enumerate_word_family(letters: Iterable[str]) -> list:
    """Expand every arrangement/variant of the multiset into specs.

    The construction is duplicate-free under swapping the two members:
    the count equals (multiset permutations) * 2**max(c-1, 0).
    """
    return [expand_ensemble_word(w) for w in word_family(letters)]


def build_amplitude_vector(spec: SuperpositionSpec) -> np.ndarray:
    """Dense complex vector with the pair's weights at the two indices."""
    amps = np.zeros(1 << spec.n, dtype=np.complex128)
    if spec.is_single:
        amps[spec.b1.index] = 1.0
    else:
        amps[spec.b1.index] = spec.w1
        amps[spec.b2.index] = spec.w2
    return amps


def uniform_product_state(n: int) -> np.ndarray:
    """Every-site equal superposition: all 2**n amplitudes are 2**(-n/2)."""
    if n < 1:
        raise ValueError(f"site count must be >= 1, got {n}")
    if n > DENSE_SITE_CAP:
        raise SizeCapError(f"dense path refuses {n} sites (cap {DENSE_SITE_CAP})")
    return np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
