"""Surface models, a validated library of Torelli generators, and parsers
for user-supplied mapping classes (.map) and Torelli words (.tor).

Twists about separating curves act by conjugation on the handles inside
the curve.  Bounding-pair maps ship as literal word tables; each table is
committed only after passing the validation triple (boundary word fixed,
trivial H1 action, nonzero level-2 invariant), which pins the class modulo
the next filtration step.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import GenusMismatch, ParseError, ValidationFailure
from .freegroup import (MappingClass, Word, boundary_word, commutator,
                        format_word, invert, letter_name, multiply, parse_word,
                        reduce, validate)
from .spinquad import (H1Vector, TorelliGenDescriptor, basis_vector,
                       validate_descriptor)


@dataclass(frozen=True, slots=True)
class SurfaceModel:
    """The genus-g one-boundary surface: generator names, boundary word,
    and the standard homology basis."""

    genus: int

    def __post_init__(self):
        if self.genus < 1:
            raise GenusMismatch(f"genus must be >= 1, got {self.genus}")

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(letter_name(j) for j in range(1, 2 * self.genus + 1))

    @property
    def zeta(self) -> Word:
        return boundary_word(self.genus)

    def x(self, i: int) -> H1Vector:
        return basis_vector(self.genus, 2 * i - 1)

    def y(self, i: int) -> H1Vector:
        return basis_vector(self.genus, 2 * i)


@dataclass(frozen=True, slots=True)
class GeneratorEntry:
    """A named Torelli generator: its free-group action plus the optional
    descriptor feeding the Birman-Craggs side.  ``action_path`` remembers
    where a file-supplied action came from, for round-tripping."""

    name: str
    action: MappingClass
    descriptor: Optional[TorelliGenDescriptor] = None
    action_path: Optional[str] = None


def _conj(w: Word, by: Word) -> Word:
    return multiply(multiply(by, w), invert(by))


def _handle_commutator(i: int) -> Word:
    return commutator(Word((2 * i - 1,)), Word((2 * i,)))


def _run_curve(start: int, end: int) -> Word:
    """Word of the separating curve around handles start..end."""
    w = Word(())
    for i in range(start, end + 1):
        w = multiply(w, _handle_commutator(i))
    return w


def _run_twist(genus: int, start: int, end: int) -> MappingClass:
    """Conjugate the handles in the run by the run's curve; fix the rest.
    Fixes the boundary word because the run is contiguous."""
    c = _run_curve(start, end)
    ci = invert(c)
    images, inverses = [], []
    for j in range(1, 2 * genus + 1):
        i = (j + 1) // 2
        if start <= i <= end:
            images.append(_conj(Word((j,)), c))
            inverses.append(_conj(Word((j,)), ci))
        else:
            images.append(Word((j,)))
            inverses.append(Word((j,)))
    return MappingClass(genus, tuple(images), tuple(inverses))


def bscc_twist(genus: int, h: int) -> GeneratorEntry:
    """Twist about the separating curve enclosing handles 1..h, h < g."""
    if not 1 <= h < genus:
        raise GenusMismatch(
            f"subsurface genus must satisfy 1 <= h < g, got h={h}, g={genus}")
    action = _run_twist(genus, 1, h)
    model = SurfaceModel(genus)
    desc = TorelliGenDescriptor(
        name=f"BSCC:{h}", kind="bscc", action=action,
        pairs=tuple((model.x(i), model.y(i)) for i in range(1, h + 1)))
    return GeneratorEntry(f"BSCC:{h}", action, desc)


def boundary_twist(genus: int) -> GeneratorEntry:
    """Twist about a curve parallel to the boundary: conjugation by zeta."""
    action = _run_twist(genus, 1, genus)
    model = SurfaceModel(genus)
    desc = TorelliGenDescriptor(
        name="BDRY", kind="bscc", action=action,
        pairs=tuple((model.x(i), model.y(i)) for i in range(1, genus + 1)))
    return GeneratorEntry("BDRY", action, desc)


# Bounding-pair word table, genus 2 block.  z is the curve word of the
# band sum of the handle-1 separating curve with a parallel of the second
# a-curve; the pair (that band sum, the a2 curve) cobounds the genus-1
# subsurface spanned by handle 1.  Derived from a disk-with-identifications
# model of the twists and frozen here after passing the validation triple;
# tau_2 equals the wedge of the pair's class with the cobounded handle's
# basis, pinning the class modulo the next filtration step.
_BP_Z = (1, 2, -1, -2, 3)


def _bp_std_action(genus: int) -> MappingClass:
    z = Word(_BP_Z)
    zi = invert(z)
    images = [_conj(Word((1,)), zi), _conj(Word((2,)), zi),
              _conj(Word((3,)), zi),
              reduce((4, -3) + _BP_Z)]
    inverses = [_conj(Word((1,)), z), _conj(Word((2,)), z),
                _conj(Word((3,)), z),
                reduce((4, 3) + zi.letters)]
    for j in range(5, 2 * genus + 1):
        images.append(Word((j,)))
        inverses.append(Word((j,)))
    return MappingClass(genus, tuple(images), tuple(inverses))


def bp_map(genus: int, layout: str = "std") -> GeneratorEntry:
    """The library bounding-pair map.  Layout "std" pairs a band-sum curve
    in the class of a2 with the a2 curve itself, cobounding handle 1."""
    if genus < 2:
        raise GenusMismatch(f"bounding pairs need genus >= 2, got {genus}")
    if layout != "std":
        raise ParseError(f"unknown bounding-pair layout {layout!r}")
    action = _bp_std_action(genus)
    model = SurfaceModel(genus)
    desc = TorelliGenDescriptor(
        name="BP:std", kind="bp", action=action,
        curve_class=model.x(2), pairs=((model.x(1), model.y(1)),))
    return GeneratorEntry("BP:std", action, desc)


def builtin_entries(genus: int) -> dict[str, GeneratorEntry]:
    """Names available in .tor files without declaration."""
    out = {"BDRY": boundary_twist(genus)}
    for h in range(1, genus):
        out[f"BSCC:{h}"] = bscc_twist(genus, h)
    if genus >= 2:
        out["BP:std"] = bp_map(genus)
    return out


# ---------------------------------------------------------------------------
# .map files

def _meaningful_lines(text: str):
    """(line_number, content) with comments and blank lines dropped."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield ln, body


def _parse_genus_line(lines) -> int:
    try:
        ln, body = next(lines)
    except StopIteration:
        raise ParseError("empty file, expected a genus line") from None
    parts = body.split()
    if len(parts) != 2 or parts[0] != "genus" or not parts[1].isdigit():
        raise ParseError("expected `genus <g>`", ln)
    g = int(parts[1])
    if g < 1:
        raise ParseError("genus must be >= 1", ln)
    return g


def _parse_image_lines(lines, genus: int, aliases, header_ln: int):
    """2g lines `<gen> -> <tokens>`, each generator exactly once."""
    images: dict[int, Word] = {}
    last_ln = header_ln
    while len(images) < 2 * genus:
        try:
            ln, body = next(lines)
        except StopIteration:
            raise ParseError(
                f"expected {2 * genus} image lines, got {len(images)}",
                last_ln) from None
        last_ln = ln
        if "->" not in body:
            raise ParseError("expected `<gen> -> <tokens>`", ln)
        lhs, rhs = body.split("->", 1)
        target = parse_word(lhs.strip(), genus, line=ln)
        if len(target.letters) != 1 or target.letters[0] < 0:
            raise ParseError("left side must be a single plain generator", ln)
        j = target.letters[0]
        if j in images:
            raise ParseError(f"duplicate image for {letter_name(j)}", ln)
        images[j] = parse_word(rhs.strip(), genus, aliases, line=ln)
    return tuple(images[j] for j in range(1, 2 * genus + 1)), last_ln


def parse_map_file(text: str) -> MappingClass:
    """Parse and validate a .map file.

    Layout: a genus line, optional `let <name> = <tokens>` aliases, a
    `map` header with 2g image lines, and an optional `inverse` header
    with 2g more.  Aliases may reference earlier aliases.
    """
    lines = _meaningful_lines(text)
    genus = _parse_genus_line(lines)
    aliases: dict[str, Word] = {}
    ln, body = 0, None
    for ln, body in lines:
        if body == "map":
            break
        parts = body.split("=", 1)
        head = parts[0].split()
        if len(parts) != 2 or len(head) != 2 or head[0] != "let":
            raise ParseError("expected `let <name> = <tokens>` or `map`", ln)
        name = head[1]
        if name in aliases:
            raise ParseError(f"alias {name!r} redefined", ln)
        aliases[name] = parse_word(parts[1].strip(), genus, aliases, line=ln)
    else:
        raise ParseError("missing `map` header", ln if body else 1)
    images, last_ln = _parse_image_lines(lines, genus, aliases, ln)
    inverse_images = None
    tail = next(lines, None)
    if tail is not None:
        ln, body = tail
        if body != "inverse":
            raise ParseError("expected `inverse` or end of file", ln)
        inverse_images, last_ln = _parse_image_lines(lines, genus, aliases, ln)
        tail = next(lines, None)
        if tail is not None:
            raise ParseError("unexpected content after the inverse block", tail[0])
    f = MappingClass(genus, images, inverse_images)
    report = validate(f)
    if not report.ok:
        failing = "; ".join(f"{c.name}: {c.detail}" for c in report.checks
                            if c.status == "fail")
        raise ValidationFailure(f"mapping class rejected ({failing})")
    return f


def serialize_map_file(f: MappingClass) -> str:
    """Emit the .map text for a mapping class; inverse of parse_map_file."""
    out = io.StringIO()
    out.write(f"genus {f.genus}\n")
    out.write("map\n")
    for j, w in enumerate(f.images, start=1):
        out.write(f"{letter_name(j)} -> {format_word(w)}\n")
    if f.inverse_images is not None:
        out.write("inverse\n")
        for j, w in enumerate(f.inverse_images, start=1):
            out.write(f"{letter_name(j)} -> {format_word(w)}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# .tor files

def _parse_h1_sum(token: str, genus: int, ln: int) -> H1Vector:
    """`x1+y2`-style sums of basis symbols into an H1 vector."""
    bits = [0] * (2 * genus)
    for part in token.split("+"):
        part = part.strip()
        kind = part[:1]
        if kind not in ("x", "y") or not part[1:].isdigit():
            raise ParseError(f"bad homology term {part!r}", ln)
        i = int(part[1:])
        if not 1 <= i <= genus:
            raise ParseError(f"homology index {part!r} out of range", ln)
        idx = 2 * (i - 1) + (0 if kind == "x" else 1)
        bits[idx] ^= 1
    return tuple(bits)


def _parse_pair_list(rest: str, genus: int, ln: int):
    """`(x1 y1)(x2 y2)...` into H1 vector pairs."""
    pairs = []
    s = rest.strip()
    while s:
        if not s.startswith("("):
            raise ParseError("expected `(` starting a pair", ln)
        close = s.find(")")
        if close < 0:
            raise ParseError("unclosed pair", ln)
        inner = s[1:close].split()
        if len(inner) != 2:
            raise ParseError("a pair holds exactly two sums", ln)
        pairs.append((_parse_h1_sum(inner[0], genus, ln),
                      _parse_h1_sum(inner[1], genus, ln)))
        s = s[close + 1:].strip()
    if not pairs:
        raise ParseError("empty pair list", ln)
    return tuple(pairs)


def _basis_pair_handles(pairs, genus: int, ln: int) -> list[int]:
    """Require each pair to be a standard handle pair (x_i, y_i); the
    built-in action model only covers those."""
    model = SurfaceModel(genus)
    handles = []
    for x, y in pairs:
        for i in range(1, genus + 1):
            if x == model.x(i) and y == model.y(i):
                handles.append(i)
                break
        else:
            raise ParseError(
                "bscc pairs must be standard handle pairs (x_i y_i); "
                "supply general actions through a bp `action` file", ln)
    return handles


def _inline_bscc(name: str, rest: str, genus: int, ln: int) -> GeneratorEntry:
    if not rest.startswith("pairs"):
        raise ParseError("bscc generator needs `pairs (...)`", ln)
    pairs = _parse_pair_list(rest[len("pairs"):], genus, ln)
    handles = sorted(_basis_pair_handles(pairs, genus, ln))
    if handles != list(range(handles[0], handles[-1] + 1)):
        raise ParseError(
            "bscc handle set must be a contiguous run for the built-in "
            "conjugation model", ln)
    action = _run_twist(genus, handles[0], handles[-1])
    desc = TorelliGenDescriptor(name=name, kind="bscc", action=action,
                                pairs=pairs)
    validate_descriptor(desc)
    return GeneratorEntry(name, action, desc)


def _inline_bp(name: str, rest: str, genus: int, ln: int,
               load: Callable[[str], str]) -> GeneratorEntry:
    parts = rest.split()
    if (len(parts) < 6 or parts[0] != "class" or parts[2] != "pair"
            or parts[-2] != "action"):
        raise ParseError(
            "bp generator needs `class <sum> pair (<sum> <sum>) action <file>`",
            ln)
    curve_class = _parse_h1_sum(parts[1], genus, ln)
    pair_text = " ".join(parts[3:-2])
    pairs = _parse_pair_list(pair_text, genus, ln)
    if len(pairs) != 1:
        raise ParseError("bp generator takes exactly one pair", ln)
    path = parts[-1]
    try:
        action_text = load(path)
    except OSError as exc:
        raise ParseError(f"cannot read action file {path!r}: {exc}", ln) from exc
    action = parse_map_file(action_text)
    if action.genus != genus:
        raise ParseError(
            f"action file has genus {action.genus}, word has genus {genus}", ln)
    desc = TorelliGenDescriptor(name=name, kind="bp", action=action,
                                curve_class=curve_class, pairs=pairs)
    validate_descriptor(desc)
    return GeneratorEntry(name, action, desc, action_path=path)


def _default_loader(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def parse_tor_file(text: str,
                   load: Callable[[str], str] = _default_loader
                   ) -> tuple[tuple[GeneratorEntry, int], ...]:
    """Parse a .tor file into its Torelli word.

    Layout: a genus line, `gen` declarations, and a final `word` line.
    Built-in names (BDRY, BSCC:h, BP:std) need no declaration.  ``load``
    maps a bp action path to that file's text.
    """
    lines = _meaningful_lines(text)
    genus = _parse_genus_line(lines)
    entries = builtin_entries(genus)
    declared: list[str] = []
    word_line = None
    for ln, body in lines:
        head, _, rest = body.partition(" ")
        if head == "word":
            word_line = (ln, rest.strip())
            break
        if head != "gen":
            raise ParseError("expected `gen` or `word`", ln)
        name, _, spec_rest = rest.strip().partition(" ")
        if not name:
            raise ParseError("missing generator name", ln)
        if name in entries:
            raise ParseError(f"generator {name!r} already defined", ln)
        kind, _, tail = spec_rest.strip().partition(" ")
        if kind == "bscc":
            entries[name] = _inline_bscc(name, tail.strip(), genus, ln)
        elif kind == "bp":
            entries[name] = _inline_bp(name, tail.strip(), genus, ln, load)
        else:
            raise ParseError(f"unknown generator kind {kind!r}", ln)
        declared.append(name)
    if word_line is None:
        raise ParseError("missing `word` line")
    ln, body = word_line
    if next(lines, None) is not None:
        raise ParseError("content after the `word` line", ln + 1)
    if not body:
        raise ParseError("empty word line", ln)
    letters = []
    for tok in body.split():
        name, exp = tok, 1
        if name.endswith("'"):
            name, exp = name[:-1], -1
        if name not in entries:
            raise ParseError(f"unknown generator name {name!r}", ln)
        letters.append((entries[name], exp))
    return tuple(letters)


def serialize_tor_file(genus: int,
                       word: tuple[tuple[GeneratorEntry, int], ...]) -> str:
    """Emit .tor text for a word; built-ins stay bare, inline generators
    are re-declared from their descriptors."""
    builtins = builtin_entries(genus)
    out = io.StringIO()
    out.write(f"genus {genus}\n")
    seen = set()
    for entry, _exp in word:
        if entry.name in builtins or entry.name in seen:
            continue
        seen.add(entry.name)
        d = entry.descriptor
        if d is None:
            raise ValidationFailure(
                f"generator {entry.name!r} has no descriptor to serialize")
        if d.kind == "bscc":
            body = "pairs " + "".join(
                f"({_h1_sum_text(x, genus)} {_h1_sum_text(y, genus)})"
                for x, y in d.pairs)
        else:
            if entry.action_path is None:
                raise ValidationFailure(
                    f"bp generator {entry.name!r} has no action path to emit")
            x, y = d.pairs[0]
            body = (f"class {_h1_sum_text(d.curve_class, genus)} "
                    f"pair ({_h1_sum_text(x, genus)} {_h1_sum_text(y, genus)}) "
                    f"action {entry.action_path}")
        out.write(f"gen {entry.name} {d.kind} {body}\n")
    toks = [e.name + ("'" if exp < 0 else "") for e, exp in word]
    out.write("word " + " ".join(toks) + "\n")
    return out.getvalue()


def _h1_sum_text(v: H1Vector, genus: int) -> str:
    terms = []
    for i in range(1, genus + 1):
        if v[2 * (i - 1)]:
            terms.append(f"x{i}")
        if v[2 * i - 1]:
            terms.append(f"y{i}")
    return "+".join(terms) if terms else "0"
