"""Z2 quadratic forms on H1 of the surface, Arf invariants, and the
Birman-Craggs family of homomorphisms.

A quadratic form is stored by its values on the standard basis
x1, y1, ..., xg, yg and extended to all of H1 by the polarization law
q(u+v) = q(u) + q(v) + u.v, where u.v is the mod-2 intersection pairing.
Forms with Arf invariant 0 index the Birman-Craggs homomorphisms; each is
evaluated on a Torelli word letterwise from its generator descriptor and
summed in Z2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ArfNonZero, GenusMismatch, ParseError, ValidationFailure
from .freegroup import MappingClass, abelianization, compose, validate
from .johnson import TauValue, tau

H1Vector = tuple[int, ...]

MAX_FORM_GENUS = 8


def basis_vector(genus: int, index: int) -> H1Vector:
    """Standard basis vector; index 2i-1 is x_i, index 2i is y_i."""
    n = 2 * genus
    if not 1 <= index <= n:
        raise GenusMismatch(f"basis index {index} out of range for genus {genus}")
    return tuple(1 if j == index - 1 else 0 for j in range(n))


def add_vectors(u: H1Vector, v: H1Vector) -> H1Vector:
    if len(u) != len(v):
        raise GenusMismatch("H1 vectors of different rank")
    return tuple((a + b) % 2 for a, b in zip(u, v))


def intersect(u: H1Vector, v: H1Vector) -> int:
    """Mod-2 intersection pairing; x_i.y_i = 1 and all else vanishes."""
    if len(u) != len(v):
        raise GenusMismatch("H1 vectors of different rank")
    total = 0
    for k in range(0, len(u), 2):
        total += u[k] * v[k + 1] + u[k + 1] * v[k]
    return total % 2


@dataclass(frozen=True, slots=True)
class QuadForm:
    """A Z2 quadratic form, determined by its 2g basis values."""

    basis_values: tuple[int, ...]

    def __post_init__(self):
        if len(self.basis_values) % 2 != 0 or not self.basis_values:
            raise GenusMismatch("need 2g basis values")
        if any(b not in (0, 1) for b in self.basis_values):
            raise ValidationFailure("basis values must be bits")

    @property
    def genus(self) -> int:
        return len(self.basis_values) // 2


def q_eval(q: QuadForm, v: H1Vector) -> int:
    """Value of q on v via polarization.

    Writing v as a sum of distinct basis vectors, the cross terms
    pair up only within a handle, so they count handles where both
    bits of v are set.
    """
    if len(v) != len(q.basis_values):
        raise GenusMismatch("vector rank does not match the form")
    total = sum(b for b, bit in zip(q.basis_values, v) if bit)
    for k in range(0, len(v), 2):
        total += v[k] * v[k + 1]
    return total % 2


def arf(q: QuadForm) -> int:
    """Arf invariant: sum of q(x_i) q(y_i) over the handles."""
    vals = q.basis_values
    return sum(vals[k] * vals[k + 1] for k in range(0, len(vals), 2)) % 2


def _require_symplectic(pairs: Sequence[tuple[H1Vector, H1Vector]]):
    """Pairs must form part of a symplectic basis: x_i.y_j = delta_ij,
    x_i.x_j = y_i.y_j = 0."""
    for i, (xi, yi) in enumerate(pairs):
        for j, (xj, yj) in enumerate(pairs):
            if intersect(xi, yj) != (1 if i == j else 0):
                raise ValidationFailure(
                    f"pair list not symplectic: x_{i + 1}.y_{j + 1} wrong")
            if intersect(xi, xj) != 0 or intersect(yi, yj) != 0:
                raise ValidationFailure(
                    f"pair list not symplectic: pairs {i + 1},{j + 1} interact")


def arf_on_pairs(q: QuadForm, pairs: Sequence[tuple[H1Vector, H1Vector]]) -> int:
    """Arf invariant of q restricted to the subsurface spanned by the pairs."""
    _require_symplectic(pairs)
    return sum(q_eval(q, x) * q_eval(q, y) for x, y in pairs) % 2


def enumerate_forms(genus: int, arf_filter: Optional[int] = None) -> list[QuadForm]:
    """All 2^{2g} forms in lexicographic basis-value order, optionally
    filtered by Arf invariant.  Supported through genus 8."""
    if not 1 <= genus <= MAX_FORM_GENUS:
        raise GenusMismatch(f"genus must be in 1..{MAX_FORM_GENUS}, got {genus}")
    out = []
    for bits in itertools.product((0, 1), repeat=2 * genus):
        q = QuadForm(bits)
        if arf_filter is None or arf(q) == arf_filter:
            out.append(q)
    return out


def parse_form_literal(text: str) -> QuadForm:
    """Parse `q: x1=0 y1=1 x2=0 y2=0` (the `q:` prefix is optional).

    Every basis symbol through the largest index mentioned must appear
    exactly once.
    """
    body = text.strip()
    if body.startswith("q:"):
        body = body[2:].strip()
    seen: dict[int, int] = {}
    for tok in body.split():
        name, eq, val = tok.partition("=")
        kind = name[:1]
        if eq != "=" or kind not in ("x", "y") or not name[1:].isdigit() \
                or val not in ("0", "1"):
            raise ParseError(f"bad form term {tok!r}")
        i = int(name[1:])
        if i < 1:
            raise ParseError(f"bad form term {tok!r}")
        idx = 2 * (i - 1) + (0 if kind == "x" else 1)
        if idx in seen:
            raise ParseError(f"repeated form term {name!r}")
        seen[idx] = int(val)
    if not seen:
        raise ParseError("empty form literal")
    n = max(seen) + 1
    if n % 2 == 1:
        n += 1
    missing = [k for k in range(n) if k not in seen]
    if missing:
        raise ParseError("form literal must cover every basis symbol")
    return QuadForm(tuple(seen[k] for k in range(n)))


def form_literal(q: QuadForm) -> str:
    parts = []
    for i in range(1, q.genus + 1):
        parts.append(f"x{i}={q.basis_values[2 * i - 2]}")
        parts.append(f"y{i}={q.basis_values[2 * i - 1]}")
    return "q: " + " ".join(parts)


# ---------------------------------------------------------------------------
# Torelli generator descriptors

@dataclass(frozen=True, slots=True)
class TorelliGenDescriptor:
    """Evaluation data for one Torelli generator.

    kind "bscc": a twist about a bounding simple closed curve, with a
    symplectic basis of the bounded subsurface.  kind "bp": a bounding-pair
    map, with the pair's common homology class and a symplectic basis of
    the genus-1 cobounded subsurface.  ``action`` is the free-group action
    used for the tau side of eta2.
    """

    name: str
    kind: str
    action: MappingClass
    pairs: tuple[tuple[H1Vector, H1Vector], ...] = ()
    curve_class: Optional[H1Vector] = None

    def __post_init__(self):
        if self.kind not in ("bscc", "bp"):
            raise ValidationFailure(f"unknown descriptor kind {self.kind!r}")
        if self.kind == "bp" and (self.curve_class is None or len(self.pairs) != 1):
            raise ValidationFailure("bp descriptor needs a curve class and one pair")
        if self.kind == "bscc" and self.curve_class is not None:
            raise ValidationFailure("bscc descriptor carries no curve class")


def validate_descriptor(d: TorelliGenDescriptor) -> None:
    """Full invariant check: symplectic pairs, nonzero class for bp,
    validated action lying in the kernel of the H1 action."""
    n = 2 * d.action.genus
    for x, y in d.pairs:
        if len(x) != n or len(y) != n:
            raise ValidationFailure("descriptor vectors of the wrong rank")
    _require_symplectic(d.pairs)
    if d.kind == "bp":
        if len(d.curve_class) != n:
            raise ValidationFailure("curve class of the wrong rank")
        if not any(d.curve_class):
            raise ValidationFailure("bp curve class must be nonzero")
    report = validate(d.action)
    if not report.ok:
        failing = [c.name for c in report.checks if c.status == "fail"]
        raise ValidationFailure(
            f"descriptor {d.name!r} action fails checks: {', '.join(failing)}")
    ab = abelianization(d.action)
    if any(ab[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
        raise ValidationFailure(
            f"descriptor {d.name!r} action does not act trivially on H1")


TorelliWord = Sequence[tuple[TorelliGenDescriptor, int]]


def rho(q: QuadForm, word: TorelliWord) -> int:
    """Birman-Craggs homomorphism for the form q, evaluated letterwise.

    Rule for a bscc twist: Arf of q restricted to the bounded subsurface.
    Rule for a bp map: 0 when q is 1 on the pair's class, otherwise the
    restricted Arf of the cobounded genus-1 piece.  Exponents are
    irrelevant in Z2.
    """
    if arf(q) != 0:
        raise ArfNonZero("Birman-Craggs homomorphisms exist only for Arf-0 forms")
    total = 0
    for desc, _exp in word:
        if desc.kind == "bscc":
            total += arf_on_pairs(q, desc.pairs)
        else:
            if q_eval(q, desc.curve_class) == 1:
                continue
            total += arf_on_pairs(q, desc.pairs)
    return total % 2


@dataclass(frozen=True, slots=True)
class Eta2Value:
    """The level-2 combined invariant: tau_2 of the composed action plus
    one Birman-Craggs bit per Arf-0 form, in enumeration order."""

    genus: int
    tau2: TauValue
    rho_bits: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.tau2.is_zero() and not any(self.rho_bits)


def composed_action(word: TorelliWord, genus: int) -> MappingClass:
    """Left-fold of compose over the word's letters."""
    from .freegroup import identity_class

    f = identity_class(genus)
    for desc, exp in word:
        g = desc.action if exp >= 0 else desc.action.inverse()
        f = compose(f, g)
    return f


def _word_genus(word: TorelliWord, genus: Optional[int]) -> int:
    if word:
        inferred = word[0][0].action.genus
        if genus is not None and genus != inferred:
            raise GenusMismatch(
                f"word is at genus {inferred}, asked for {genus}")
        return inferred
    if genus is None:
        raise GenusMismatch("empty word needs an explicit genus")
    return genus


def eta2(word: TorelliWord, genus: Optional[int] = None) -> Eta2Value:
    """tau_2 of the composed action together with all Birman-Craggs values."""
    g = _word_genus(word, genus)
    for desc, _exp in word:
        validate_descriptor(desc)
    f = composed_action(word, g)
    t2 = tau(f, 2)
    bits = tuple(rho(q, word) for q in enumerate_forms(g, arf_filter=0))
    return Eta2Value(g, t2, bits)


def eta2_trivial(word: TorelliWord, genus: Optional[int] = None) -> bool:
    return eta2(word, genus).is_trivial()
