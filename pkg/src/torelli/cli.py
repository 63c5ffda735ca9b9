"""Command-line front end.

One verb per library operation, plain-text output with fixed ordering.
Exit codes: 0 success, 1 domain errors, 2 usage or syntax errors; every
failure also prints a machine-parsable ``error: <CODE>`` line on stdout.
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import ParseError, TorelliError
from .freegroup import MappingClass, compose, letter_name, validate
from .freelie import LieElement, lyndon_basis, standard_factorization, witt_dim
from .johnson import (DEFAULT_DEPTH, DEFAULT_TOWER_MAX, bordant,
                      filtration_depth, morita_check, tau, tau_tower)
from .mcglib import builtin_entries, parse_map_file, parse_tor_file
from .present import eta_block_ranks, present_filled, present_mapping_torus
from .spinquad import (arf, enumerate_forms, eta2, form_literal,
                       parse_form_literal, rho)

# ---------------------------------------------------------------------------
# shared text forms


def bracket_text(word: tuple[int, ...], genus: int) -> str:
    """Render a Lyndon word as its bracketing, innermost letters named."""
    if len(word) == 1:
        return letter_name(word[0], genus)
    u, v = standard_factorization(word)
    return f"[{bracket_text(u, genus)} {bracket_text(v, genus)}]"


def lie_text(el: LieElement, genus: int) -> str:
    items = el.sorted_items()
    if not items:
        return "0"
    parts = []
    for word, coeff in items:
        term = bracket_text(word, genus)
        mag = abs(coeff)
        if mag != 1:
            term = f"{mag}*{term}"
        if not parts:
            parts.append(term if coeff > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {term}")
    return " ".join(parts)


def tau_block(value, genus: int) -> str:
    lines = [f"tau k={value.k}"]
    for j, comp in enumerate(value.components, start=1):
        lines.append(f"{letter_name(j, genus)}: {lie_text(comp, genus)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# input loading


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc


def _sniff_kind(text: str) -> str:
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head = body.split()[0]
        if head in ("map", "let") or "->" in body:
            return "map"
        if head in ("gen", "word"):
            return "tor"
    return "map"


def _tor_loader(path: str):
    base = os.path.dirname(os.path.abspath(path))

    def load(rel: str) -> str:
        target = rel if os.path.isabs(rel) else os.path.join(base, rel)
        with open(target, "r", encoding="utf-8") as fh:
            return fh.read()

    return load


def load_input(path: str):
    """Parse -i input; returns ("map", MappingClass) or ("tor", word)."""
    text = _read_file(path)
    if _sniff_kind(text) == "map":
        return "map", parse_map_file(text)
    return "tor", parse_tor_file(text, load=_tor_loader(path))


def compose_word(word) -> MappingClass:
    f = None
    for entry, exp in word:
        g = entry.action if exp >= 0 else entry.action.inverse()
        f = g if f is None else compose(f, g)
    if f is None:
        raise ParseError("empty word")
    return f


def load_mapping_class(path: str) -> MappingClass:
    kind, obj = load_input(path)
    return obj if kind == "map" else compose_word(obj)


def load_tor_word(path: str):
    kind, obj = load_input(path)
    if kind != "tor":
        raise ParseError(f"{path!r} is a .map input; this command needs a "
                         "Torelli word file")
    return obj


def descriptor_word(word):
    return [(entry.descriptor, exp) for entry, exp in word]


# ---------------------------------------------------------------------------
# verbs


def cmd_depth(args) -> int:
    f = load_mapping_class(args.input)
    report = filtration_depth(f, args.max_k)
    if report.depth is None:
        print(f"depth >= {args.max_k + 1}")
    else:
        print(f"depth = {report.depth}")
        for j, w in enumerate(report.witnesses, start=1):
            shown = "none" if w is None else str(w)
            print(f"witness {letter_name(j, f.genus)}: {shown}")
    return 0


def cmd_tau(args) -> int:
    f = load_mapping_class(args.input)
    print(tau_block(tau(f, args.k), f.genus))
    return 0


def cmd_tau_tower(args) -> int:
    f = load_mapping_class(args.input)
    report = tau_tower(f, kmax=args.max_k)
    print(f"tower k={report.kmin}..{report.kmax}")
    for k, value in report.entries:
        print(f"k={k}: {'zero' if value.is_zero() else 'nonzero'}")
    if report.first_nonzero is None:
        print(f"all zero through k={report.kmax}")
    else:
        print(f"first nonzero: k={report.first_nonzero}")
        print(tau_block(report.entries[-1][1], f.genus))
    return 0


def cmd_bordant(args) -> int:
    f = load_mapping_class(args.input)
    if args.with_input is None:
        from .freegroup import identity_class
        h = identity_class(f.genus)
    else:
        h = load_mapping_class(args.with_input)
    result = bordant(f, h, args.k)
    print(f"bordant k={args.k}: {'true' if result else 'false'}")
    return 0


def cmd_morita_check(args) -> int:
    f = load_mapping_class(args.input)
    report = morita_check(f, args.k)
    if report.contained:
        print(f"morita k={report.k}: contained")
    else:
        print(f"morita k={report.k}: violated")
        print(f"bracket: {lie_text(report.bracket, f.genus)}")
    return 0


def _word_genus(word):
    return word[0][0].action.genus


def cmd_bc(args) -> int:
    word = load_tor_word(args.input)
    dword = descriptor_word(word)
    genus = _word_genus(word)
    if args.all_forms:
        bits = "".join(str(rho(q, dword))
                       for q in enumerate_forms(genus, arf_filter=0))
        print(f"rho: {bits}")
    elif args.form:
        q = parse_form_literal(args.form)
        print(f"rho: {rho(q, dword)}")
    else:
        raise ParseError("bc needs --form or --all-forms")
    return 0


def cmd_eta2(args) -> int:
    word = load_tor_word(args.input)
    value = eta2(descriptor_word(word))
    print(tau_block(value.tau2, value.genus))
    print("rho: " + "".join(str(b) for b in value.rho_bits))
    print(f"trivial: {'true' if value.is_trivial() else 'false'}")
    return 0


def cmd_forms(args) -> int:
    forms = enumerate_forms(args.genus, args.arf)
    for q in forms:
        print(form_literal(q))
    print(f"count: {len(forms)}")
    return 0


def cmd_lie(args) -> int:
    rank = 2 * args.genus
    basis = lyndon_basis(rank, args.k)
    print(f"lie rank={rank} degree={args.k} basis={args.basis}")
    for word in basis:
        if args.basis == "lyndon":
            print(bracket_text(word, args.genus))
        else:
            print(" ".join(letter_name(x, args.genus) for x in word))
    print(f"dim: {witt_dim(rank, args.k)}")
    return 0


def cmd_present(args) -> int:
    f = load_mapping_class(args.input)
    p = present_filled(f) if args.filled else present_mapping_torus(f)
    sys.stdout.write(p.text())
    return 0


def cmd_blocks(args) -> int:
    sys.stdout.write(eta_block_ranks(args.genus, args.k).text())
    return 0


def cmd_gens(args) -> int:
    from .mcglib import _h1_sum_text

    entries = builtin_entries(args.genus)
    for name in sorted(entries):
        d = entries[name].descriptor
        if d.kind == "bscc":
            detail = "pairs " + "".join(
                f"({_h1_sum_text(x, args.genus)} {_h1_sum_text(y, args.genus)})"
                for x, y in d.pairs)
        else:
            x, y = d.pairs[0]
            detail = (f"class {_h1_sum_text(d.curve_class, args.genus)} "
                      f"pair ({_h1_sum_text(x, args.genus)} "
                      f"{_h1_sum_text(y, args.genus)})")
        print(f"{name} {d.kind} {detail}")
    return 0


def cmd_validate(args) -> int:
    kind, obj = load_input(args.input)
    if kind == "map":
        report = validate(obj)
        for c in report.checks:
            detail = f" ({c.detail})" if c.detail else ""
            print(f"{c.name}: {c.status}{detail}")
        if not report.ok:
            print("error: VALIDATION_FAILED")
            return 1
        print("result: ok")
    else:
        # descriptors were validated during parsing; report the word
        f = compose_word(obj)
        print(f"word length: {len(obj)}")
        print(f"genus: {f.genus}")
        print("result: ok")
    return 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print("error: USAGE")
        super().error(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torelli",
                     description="Johnson filtration invariants of surface "
                                 "mapping classes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        return p

    p = add("depth", cmd_depth, help="filtration depth of a mapping class")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--max-k", type=int, default=DEFAULT_DEPTH)

    p = add("tau", cmd_tau, help="level-k value on the generators")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-k", type=int, required=True)

    p = add("tau-tower", cmd_tau_tower,
            help="successive levels up to the first nonzero one")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--max-k", type=int, default=DEFAULT_TOWER_MAX)

    p = add("bordant", cmd_bordant,
            help="level-k bordism comparison (default: against identity)")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--with", dest="with_input")
    p.add_argument("-k", type=int, required=True)

    p = add("morita-check", cmd_morita_check,
            help="bracket-contraction containment of the level-k value")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("-k", type=int, required=True)

    p = add("bc", cmd_bc, help="Birman-Craggs value of a Torelli word")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--form")
    p.add_argument("--all-forms", action="store_true")

    p = add("eta2", cmd_eta2,
            help="combined level-2 invariant of a Torelli word")
    p.add_argument("-i", dest="input", required=True)

    p = add("forms", cmd_forms, help="enumerate quadratic forms")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--arf", type=int, choices=(0, 1), default=None)

    p = add("lie", cmd_lie, help="free Lie layer basis and dimension")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--basis", choices=("lyndon", "monomial"),
                   default="lyndon")

    p = add("present", cmd_present, help="mapping-torus presentation")
    p.add_argument("-i", dest="input", required=True)
    p.add_argument("--filled", action="store_true")

    p = add("blocks", cmd_blocks, help="level-k block ranks")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("-k", type=int, required=True)

    p = add("gens", cmd_gens, help="list the built-in Torelli generators")
    p.add_argument("--genus", type=int, required=True)

    p = add("validate", cmd_validate, help="check an input file")
    p.add_argument("-i", dest="input", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc.code}")
        print(str(exc), file=sys.stderr)
        return 2
    except TorelliError as exc:
        print(f"error: {exc.code}")
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
