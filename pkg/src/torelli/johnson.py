"""Depth in the lower-central filtration of the mapping class group, the
graded homomorphisms attached to it, and the bordism-equivalence test.

A mapping class f sits at filtration level k when every generator is moved
by an element of the k-th lower central subgroup: f(alpha_i) alpha_i^-1 in
F_k for all i.  The level-k invariant tau_k(f) records, per generator, the
class of f(alpha_i) alpha_i^-1 in F_k/F_{k+1}, extracted here as the
degree-k part of a truncated Magnus expansion and written in Lyndon
coordinates.  Key facts wired into this module:

  - tau_k vanishes exactly on level k+1, and is additive at level k;
  - the image of tau_k lands in the kernel of the bracket contraction
    once rewritten through the symplectic pairing (slot of a_i carries
    tau(b_i), slot of b_i carries -tau(a_i));
  - two level-k classes induce bordant structures exactly when they
    differ by an element of level 2k-1, so that test reduces to a depth
    computation on f h^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import MissingInverse, NotInJk, ValidationFailure
from .freegroup import (MappingClass, Word, compose, invert, letter_name,
                        multiply, validate)
from .freelie import H1LieTensor, LieElement, bracket_map
from .magnus import DEFAULT_DEPTH, TruncatedSeries, magnus_expand, series_inverse

DEFAULT_TOWER_MAX = 5


@dataclass(frozen=True)
class DepthReport:
    """Per-generator lower-central depths of f(alpha_i) alpha_i^-1.

    A witness of None means no term survived the cutoff, i.e. that
    generator's displacement sits at depth cutoff+1 or deeper.
    """

    genus: int
    cutoff: int
    witnesses: tuple[Optional[int], ...]

    @property
    def depth(self) -> Optional[int]:
        finite = [w for w in self.witnesses if w is not None]
        return min(finite) if finite else None

    def certifies(self, k: int) -> bool:
        """Membership at level k, valid for k <= cutoff+1."""
        if k > self.cutoff + 1:
            raise ValueError(f"level {k} not decidable at cutoff {self.cutoff}")
        d = self.depth
        return d is None or d >= k


@dataclass
class TauValue:
    """Level-k invariant: one degree-k Lie element per generator."""

    genus: int
    k: int
    components: tuple[LieElement, ...]

    def __post_init__(self):
        n = 2 * self.genus
        if len(self.components) != n:
            raise ValueError(f"expected {n} components, got {len(self.components)}")
        for c in self.components:
            if c.rank != n or c.degree != self.k:
                raise ValueError("component in the wrong Lie layer")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def add(self, other: "TauValue") -> "TauValue":
        if (self.genus, self.k) != (other.genus, other.k):
            raise ValueError("mismatched tau values")
        return TauValue(self.genus, self.k,
                        tuple(a.add(b) for a, b in zip(self.components,
                                                       other.components)))

    def neg(self) -> "TauValue":
        return TauValue(self.genus, self.k,
                        tuple(c.neg() for c in self.components))

    @classmethod
    def zero(cls, genus: int, k: int) -> "TauValue":
        n = 2 * genus
        return cls(genus, k, tuple(LieElement.zero(n, k) for _ in range(n)))


def _require_valid(f: MappingClass):
    report = validate(f)
    if not report.ok:
        failed = ", ".join(c.name for c in report.checks if c.status == "fail")
        raise ValidationFailure(f"mapping class fails validation: {failed}")


def displacement_series(f: MappingClass, cutoff: int) -> list[TruncatedSeries]:
    """Expansions of f(alpha_j) alpha_j^-1 for every generator j."""
    rank = 2 * f.genus
    out = []
    for j, image in enumerate(f.images, start=1):
        w = multiply(image, Word((-j,)))
        out.append(magnus_expand(w, rank, cutoff))
    return out

def _check_level(series: list[TruncatedSeries], k: int):
    # no term of degree < k may survive in any generator's displacement
    for j, s in enumerate(series, start=1):
        d = s.min_positive_degree()
        if d is not None and d < k:
            raise NotInJk(
                f"generator {letter_name(j)} moves at depth {d} < {k}",
                k=k, witness=letter_name(j), degree=d)


def filtration_depth(f: MappingClass, cutoff: int = DEFAULT_DEPTH) -> DepthReport:
    """Largest certified filtration level of f, up to the cutoff."""
    _require_valid(f)
    series = displacement_series(f, cutoff)
    return DepthReport(f.genus, cutoff,
                       tuple(s.min_positive_degree() for s in series))


def tau(f: MappingClass, k: int) -> TauValue:
    """Level-k invariant of f; requires membership at level k."""
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    _require_valid(f)
    series = displacement_series(f, k)
    _check_level(series, k)
    rank = 2 * f.genus
    comps = tuple(LieElement.from_polynomial(rank, k, s.degree_terms(k))
                  for s in series)
    return TauValue(f.genus, k, comps)


def symplectic_dual(t: TauValue) -> H1LieTensor:
    """Rewrite a Hom-form value as a tensor via the intersection pairing:
    the slot of a_i receives tau(b_i), the slot of b_i receives -tau(a_i)."""
    comps: list[LieElement] = []
    for i in range(1, t.genus + 1):
        comps.append(t.components[2 * i - 1])        # slot a_i <- tau(b_i)
        comps.append(t.components[2 * i - 2].neg())  # slot b_i <- -tau(a_i)
    return H1LieTensor(t.genus, t.k, tuple(comps))


@dataclass(frozen=True)
class MoritaReport:
    k: int
    contained: bool
    bracket: LieElement  # degree k+1; zero exactly when contained


def morita_check(f: MappingClass, k: int) -> MoritaReport:
    """Containment of the level-k value in the bracket-contraction kernel.
    Always true for genuine mapping classes; a false is a diagnostic that
    something upstream is broken, not a classification."""
    value = bracket_map(symplectic_dual(tau(f, k)))
    return MoritaReport(k, value.is_zero(), value)


def _inverse_of(h: MappingClass,
                library: Optional[dict[str, MappingClass]] = None) -> MappingClass:
    if h.inverse_images is not None:
        return h.inverse()
    if h.torelli_decomposition is not None and library is not None:
        inv = None
        for name, power in reversed(h.torelli_decomposition):
            gen = library[name]
            step = gen.inverse() if power > 0 else gen
            inv = step if inv is None else compose(inv, step)
        if inv is not None:
            return inv
    raise MissingInverse("no inverse images and no resolvable decomposition")


def bordant(f: MappingClass, h: MappingClass, k: int,
            library: Optional[dict[str, MappingClass]] = None) -> bool:
    """Whether the level-k structures attached to f and h are bordant,
    i.e. f h^-1 sits at level 2k-1.

    Both inputs must certify level k.  h must carry inverse images, or a
    decomposition resolvable through ``library``.
    """
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    _require_valid(f)
    _require_valid(h)
    _check_level(displacement_series(f, k), k)
    _check_level(displacement_series(h, k), k)
    diff = compose(f, _inverse_of(h, library))
    # membership at level 2k-1 needs no surviving term below degree 2k-1
    series = displacement_series(diff, 2 * k - 2)
    return all(s.min_positive_degree() is None for s in series)


@dataclass(frozen=True)
class TowerReport:
    """Successive levels kmin..: each value, stopping after the first
    nonzero one (which determines the rest of the bordism data)."""

    genus: int
    kmin: int
    kmax: int
    entries: tuple[tuple[int, TauValue], ...]
    first_nonzero: Optional[int]


def tau_tower(f: MappingClass, kmin: int = 2,
              kmax: int = DEFAULT_TOWER_MAX) -> TowerReport:
    """Values at levels kmin, kmin+1, ... read off one expansion at degree
    kmax; stops at the first nonzero level or at kmax."""
    if not 1 <= kmin <= kmax:
        raise ValueError(f"bad level range {kmin}..{kmax}")
    _require_valid(f)
    series = displacement_series(f, kmax)
    _check_level(series, kmin)
    rank = 2 * f.genus
    entries = []
    first_nonzero = None
    for k in range(kmin, kmax + 1):
        comps = tuple(LieElement.from_polynomial(rank, k, s.degree_terms(k))
                      for s in series)
        value = TauValue(f.genus, k, comps)
        entries.append((k, value))
        if not value.is_zero():
            first_nonzero = k
            break
    return TowerReport(f.genus, kmin, kmax, tuple(entries), first_nonzero)


# ---------------------------------------------------------------------------
# precomposed expansion tables
#
# Sweeping many words in a fixed generating set would otherwise re-expand
# ever-longer image words.  A table stores mu(f(alpha_j)) once; extending
# by one more generator only walks that generator's stored (short) images.

@dataclass
class ActionTable:
    genus: int
    cutoff: int
    series: tuple[TruncatedSeries, ...]          # mu(f(alpha_j))
    inverse_series: tuple[TruncatedSeries, ...]  # their reciprocals

    @classmethod
    def identity(cls, genus: int, cutoff: int) -> "ActionTable":
        rank = 2 * genus
        ser = tuple(magnus_expand(Word((j,)), rank, cutoff)
                    for j in range(1, rank + 1))
        inv = tuple(magnus_expand(Word((-j,)), rank, cutoff)
                    for j in range(1, rank + 1))
        return cls(genus, cutoff, ser, inv)

    @classmethod
    def for_mapping_class(cls, f: MappingClass, cutoff: int) -> "ActionTable":
        rank = 2 * f.genus
        ser = tuple(magnus_expand(w, rank, cutoff) for w in f.images)
        inv = tuple(magnus_expand(invert(w), rank, cutoff) for w in f.images)
        return cls(f.genus, cutoff, ser, inv)

    def precompose(self, g: MappingClass) -> "ActionTable":
        """Table of (self composed after g)."""
        if g.genus != self.genus:
            raise ValueError("genus mismatch")
        rank = 2 * self.genus
        ser: list[TruncatedSeries] = []
        inv: list[TruncatedSeries] = []
        for j, image in enumerate(g.images, start=1):
            if image.letters == (j,):
                ser.append(self.series[j - 1])
                inv.append(self.inverse_series[j - 1])
                continue
            acc = TruncatedSeries.one(rank, self.cutoff)
            for x in image.letters:
                factor = (self.series[x - 1] if x > 0
                          else self.inverse_series[-x - 1])
                acc = acc.mul(factor)
            ser.append(acc)
            inv.append(series_inverse(acc))
        return ActionTable(self.genus, self.cutoff, tuple(ser), tuple(inv))

    def displacement(self, j: int) -> TruncatedSeries:
        """Expansion of f(alpha_j) alpha_j^-1."""
        rank = 2 * self.genus
        return self.series[j - 1].mul(magnus_expand(Word((-j,)), rank, self.cutoff))

    def depth_report(self) -> DepthReport:
        witnesses = tuple(self.displacement(j).min_positive_degree()
                          for j in range(1, 2 * self.genus + 1))
        return DepthReport(self.genus, self.cutoff, witnesses)

    def tau(self, k: int) -> TauValue:
        if not 1 <= k <= self.cutoff:
            raise ValueError(f"level {k} outside table cutoff {self.cutoff}")
        rank = 2 * self.genus
        disp = [self.displacement(j) for j in range(1, rank + 1)]
        _check_level(disp, k)
        comps = tuple(LieElement.from_polynomial(rank, k, s.degree_terms(k))
                      for s in disp)
        return TauValue(self.genus, k, comps)
