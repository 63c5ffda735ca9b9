"""Words and mapping classes for a genus-g surface with one boundary circle.

The fundamental group of the surface is free of rank 2g on standard
generators a_1, b_1, ..., a_g, b_g.  Letters are nonzero signed integers:
``2i-1`` stands for a_i, ``2i`` for b_i, and negation is inversion.  A word
is always stored freely reduced.  The boundary circle reads

    zeta = [a_1, b_1] [a_2, b_2] ... [a_g, b_g],

with the commutator convention [u, v] = u v u^-1 v^-1.

A mapping class is recorded by the images of the 2g generators under the
induced automorphism of the free group; any genuine mapping class fixes
zeta exactly, which is the first validation check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import GenusMismatch, MissingInverse, NotReduced, ParseError


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word in the surface group generators.

    >>> Word((1, 2, -1))
    Word('a1 b1 a1'')
    >>> Word((1, -1))
    Traceback (most recent call last):
        ...
    torelli.errors.NotReduced: adjacent inverse pair at position 0
    """

    letters: tuple[int, ...]

    def __post_init__(self):
        for pos, (x, y) in enumerate(zip(self.letters, self.letters[1:])):
            if x == -y:
                raise NotReduced(f"adjacent inverse pair at position {pos}")
        if any(x == 0 for x in self.letters):
            raise NotReduced("letter 0 is not a generator index")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def max_index(self) -> int:
        return max((abs(x) for x in self.letters), default=0)


IDENTITY = Word(())


@dataclass(frozen=True, slots=True)
class Generator:
    """One standard generator; index 2i-1 names a_i, index 2i names b_i."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise GenusMismatch(f"generator index {self.index} out of range")

    @property
    def handle(self) -> int:
        return (self.index + 1) // 2

    @property
    def name(self) -> str:
        i = self.handle
        return f"a{i}" if self.index % 2 == 1 else f"b{i}"

    @property
    def word(self) -> Word:
        return Word((self.index,))


def generators(genus: int) -> list[Generator]:
    return [Generator(j) for j in range(1, 2 * genus + 1)]


def reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence.

    >>> reduce([1, 2, -2, -1, 3])
    Word('a2')
    """
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise NotReduced("letter 0 is not a generator index")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(tuple(out))


def multiply(u: Word, v: Word) -> Word:
    """Concatenate and reduce.  multiply(w, invert(w)) is the identity."""
    out = list(u.letters)
    for x in v.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(tuple(out))


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)))


def commutator(u: Word, v: Word) -> Word:
    return multiply(multiply(u, v), multiply(invert(u), invert(v)))


def conjugate(u: Word, by: Word) -> Word:
    """by u by^-1."""
    return multiply(multiply(by, u), invert(by))


def boundary_word(genus: int) -> Word:
    """zeta = [a_1, b_1] ... [a_g, b_g]; the reduced word, length 4g."""
    if genus < 1:
        raise GenusMismatch(f"genus must be >= 1, got {genus}")
    letters = []
    for i in range(1, genus + 1):
        a, b = 2 * i - 1, 2 * i
        letters += [a, b, -a, -b]
    return Word(tuple(letters))


# ---------------------------------------------------------------------------
# word <-> token text

def letter_name(letter: int, genus: Optional[int] = None) -> str:
    """Token for a signed letter; index 2g+1 (when genus is given) is the
    mapping-torus generator ``gamma``."""
    j = abs(letter)
    if genus is not None and j == 2 * genus + 1:
        base = "gamma"
    elif j % 2 == 1:
        base = f"a{(j + 1) // 2}"
    else:
        base = f"b{j // 2}"
    return base + ("'" if letter < 0 else "")


def format_word(w: Word, genus: Optional[int] = None) -> str:
    """Render a word in token syntax; the identity renders as ``1``."""
    if not w.letters:
        return "1"
    return " ".join(letter_name(x, genus) for x in w.letters)


def parse_word(text: str, genus: int, aliases: Optional[dict[str, Word]] = None,
               line: Optional[int] = None) -> Word:
    """Parse token syntax into a reduced word.

    Tokens are ``a<i>``/``b<i>``, a trailing apostrophe inverts, ``1`` is
    the identity, and names bound by the caller's alias table splice in
    (inverted under the apostrophe).
    """
    letters: list[int] = []
    col = 0
    for raw in text.split():
        col = text.index(raw, col)
        tok, inv = raw, False
        if tok.endswith("'"):
            tok, inv = tok[:-1], True
        if tok == "1":
            if inv:
                raise ParseError("1 takes no inverse mark", line, col + 1)
            col += len(raw)
            continue
        if aliases and tok in aliases:
            sub = invert(aliases[tok]) if inv else aliases[tok]
            letters.extend(sub.letters)
            col += len(raw)
            continue
        kind = tok[:1]
        if kind not in ("a", "b") or not tok[1:].isdigit():
            raise ParseError(f"unknown token {raw!r}", line, col + 1)
        i = int(tok[1:])
        if not 1 <= i <= genus:
            raise ParseError(f"generator {tok!r} out of range for genus {genus}",
                             line, col + 1)
        j = 2 * i - 1 if kind == "a" else 2 * i
        letters.append(-j if inv else j)
        col += len(raw)
    return reduce(letters)


# ---------------------------------------------------------------------------
# mapping classes

@dataclass(frozen=True, slots=True)
class MappingClass:
    """A mapping class of the genus-g one-boundary surface, recorded by the
    images of the standard generators.

    ``images[j-1]`` is the image of generator j.  ``inverse_images``, when
    supplied, records the inverse automorphism and is cross-checked by
    :func:`validate`; it is never computed by search.
    ``torelli_decomposition`` optionally remembers the class as a word in
    named library generators, as (name, +-1) pairs.
    """

    genus: int
    images: tuple[Word, ...]
    inverse_images: Optional[tuple[Word, ...]] = None
    torelli_decomposition: Optional[tuple[tuple[str, int], ...]] = None

    def __post_init__(self):
        n = 2 * self.genus
        if self.genus < 1:
            raise GenusMismatch(f"genus must be >= 1, got {self.genus}")
        if len(self.images) != n:
            raise GenusMismatch(
                f"expected {n} generator images, got {len(self.images)}")
        for w in self.images:
            if w.max_index() > n:
                raise GenusMismatch(
                    f"image uses generator index {w.max_index()} beyond 2g={n}")
        if self.inverse_images is not None:
            if len(self.inverse_images) != n:
                raise GenusMismatch(
                    f"expected {n} inverse images, got {len(self.inverse_images)}")
            for w in self.inverse_images:
                if w.max_index() > n:
                    raise GenusMismatch(
                        f"inverse image uses index {w.max_index()} beyond 2g={n}")

    def is_identity(self) -> bool:
        return all(w.letters == (j,) for j, w in enumerate(self.images, start=1))

    def inverse(self) -> "MappingClass":
        if self.inverse_images is None:
            raise MissingInverse("mapping class carries no inverse images")
        dec = None
        if self.torelli_decomposition is not None:
            dec = tuple((name, -e) for name, e in reversed(self.torelli_decomposition))
        return MappingClass(self.genus, self.inverse_images, self.images, dec)


def identity_class(genus: int) -> MappingClass:
    gens = tuple(Word((j,)) for j in range(1, 2 * genus + 1))
    return MappingClass(genus, gens, gens, ())


def apply(f: MappingClass, w: Word) -> Word:
    """Image of a word under the automorphism induced by f, reduced."""
    n = 2 * f.genus
    out: list[int] = []
    for x in w.letters:
        j = abs(x)
        if j > n:
            raise GenusMismatch(f"word uses generator index {j} beyond 2g={n}")
        img = f.images[j - 1].letters
        seq = img if x > 0 else tuple(-y for y in reversed(img))
        for y in seq:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return Word(tuple(out))


def compose(f: MappingClass, h: MappingClass) -> MappingClass:
    """The mapping class acting as f after h.

    Images substitute h's images into f; inverse images (when both factors
    carry them) compose the other way around.  Torelli decompositions
    concatenate when both are present.
    """
    if f.genus != h.genus:
        raise GenusMismatch(f"genus mismatch: {f.genus} vs {h.genus}")
    images = tuple(apply(f, w) for w in h.images)
    inverse_images = None
    if f.inverse_images is not None and h.inverse_images is not None:
        h_inv = MappingClass(h.genus, h.inverse_images)
        inverse_images = tuple(apply(h_inv, w) for w in f.inverse_images)
    dec = None
    if f.torelli_decomposition is not None and h.torelli_decomposition is not None:
        dec = f.torelli_decomposition + h.torelli_decomposition
    return MappingClass(f.genus, images, inverse_images, dec)


def abelianization(f: MappingClass) -> list[list[int]]:
    """The induced 2g x 2g integer matrix on H_1: column j lists the signed
    letter counts of the image of generator j."""
    n = 2 * f.genus
    mat = [[0] * n for _ in range(n)]
    for j, w in enumerate(f.images):
        for x in w.letters:
            mat[abs(x) - 1][j] += 1 if x > 0 else -1
    return mat


def _int_det(mat: list[list[int]]) -> int:
    # Bareiss fraction-free elimination; exact over the integers.
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""


@dataclass(frozen=True, slots=True)
class ValidationReport:
    genus: int
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def validate(f: MappingClass) -> ValidationReport:
    """Structural checks: boundary word fixed exactly, abelianized action
    of determinant +-1, and (when inverse images are supplied) that the two
    automorphisms invert each other in both orders."""
    checks = []
    zeta = boundary_word(f.genus)
    img = apply(f, zeta)
    if img == zeta:
        checks.append(CheckResult("boundary", "pass", "zeta fixed"))
    else:
        checks.append(CheckResult("boundary", "fail",
                                  f"zeta maps to {format_word(img)}"))
    det = _int_det(abelianization(f))
    status = "pass" if det in (1, -1) else "fail"
    checks.append(CheckResult("abelianization", status, f"det = {det}"))
    if f.inverse_images is None:
        checks.append(CheckResult("inverse", "skipped", "inverse images not supplied"))
    else:
        g_inv = MappingClass(f.genus, f.inverse_images)
        ok = (compose(f, g_inv).is_identity() and compose(g_inv, f).is_identity())
        checks.append(CheckResult("inverse", "pass" if ok else "fail",
                                  "two-sided inverse" if ok else
                                  "compositions are not the identity"))
    return ValidationReport(f.genus, tuple(checks))
