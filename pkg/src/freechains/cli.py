"""Command-line front end.

Exit status is 0 on success, 1 for bad input or usage, 2 when an internal
invariant fails.  Every rational is printed exactly as ``p/q``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from . import basis, chains, counting, cover, words
from .words import Alphabet, InvariantError, WordError

IDENTITY = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alphabet", default=argparse.SUPPRESS,
                   help="rank (default 2) or explicit symbol order such as aAbB")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampling (default 0)")
    p.add_argument("--trials", type=int, default=argparse.SUPPRESS, help="sample count (default 1000)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="freechains", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help, *args):
        p = sub.add_parser(name, help=help, parents=[common])
        # Let chains such as "-3*ab" through as positionals; real options start with "--".
        p._negative_number_matcher = re.compile(r"^-(?!h$)[^-]")
        for a in args:
            p.add_argument(a)
        return p

    add("reduce", "freely reduce a word", "word")
    add("effective", "effective representative of an indivisible element", "word")
    add("decompose", "primitive root and exponent", "word")
    add("count", "maximum number of disjoint copies of a pattern", "pattern", "word")
    add("phi", "homogenized counting quasimorphism", "pattern", "word")
    add("normalize", "normal form of a chain", "chain")
    add("boundary", "is the chain a rational 1-boundary", "chain")
    add("witness", "effective word whose quasimorphism sees the chain", "chain")
    add("sclbound", "certified scl lower bound of a chain", "chain")
    p = add("basis", "basis words up to a length")
    p.add_argument("cutoff", type=int)
    p = add("expand", "expand a homogeneous class function in the basis", "oracle")
    p.add_argument("cutoff", type=int)
    add("eval-expansion", "evaluate a saved expansion", "file", "word")
    add("lift", "lifts of an element to a finite-index subgroup", "table", "word")
    add("sclcover", "scl lower bound through a finite-index subgroup", "table", "word")
    p = add("defect", "sampled lower bound on the defect of an oracle", "oracle")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--homogenize", action="store_true", help="sample the homogenization instead")
    return parser


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise WordError(f"cannot read {path}: {e.strerror}") from None


def _chain(args, alpha: Alphabet) -> chains.Chain:
    text = args.chain.strip()
    if text.startswith("["):
        try:
            return chains.chain_from_json(text, alpha)
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise WordError(f"bad JSON chain: {e}") from None
    return chains.parse_chain(text, alpha)


def _lift_json(sd: cover.SchreierData, lift: cover.Lift) -> dict:
    return {
        "element": sd.alphabet.format(lift.element, IDENTITY),
        "substituted": sd.ambient.format(sd.substitute(lift.element), IDENTITY),
        "degree": lift.degree,
        "start_coset": lift.start_coset,
    }


def _result_text(res: chains.SclResult, fmt) -> str:
    if res.certificate is None:
        return res.status
    c = res.certificate
    return f"bound {c.bound} witness {fmt(c.witness)} value {c.value}"


def dispatch(args) -> None:
    alpha = Alphabet.from_spec(args.alphabet)
    fmt = lambda w: alpha.format(w, IDENTITY)  # noqa: E731
    cmd = args.command

    if cmd == "reduce":
        w = alpha.parse(args.word)
        _emit(args, fmt(w), {"word": alpha.format(w)})
    elif cmd == "effective":
        w = words.effective_rep(alpha.parse(args.word), alpha)
        _emit(args, fmt(w), {"word": alpha.format(w)})
    elif cmd == "decompose":
        root, m = words.primitive_decompose(alpha.parse(args.word))
        _emit(args, f"{fmt(root)} {m}", {"root": alpha.format(root), "exponent": m})
    elif cmd in ("count", "phi"):
        w, g = alpha.parse(args.pattern), alpha.parse(args.word)
        value = counting.count_disjoint(w, g) if cmd == "count" else counting.phi(w, g)
        _emit(args, str(value), {"value": str(value)})
    elif cmd == "normalize":
        terms = chains.normal_terms(chains.normalize(_chain(args, alpha), alpha), alpha)
        _emit(args, chains.format_terms(terms, alpha), chains.terms_json(terms, alpha))
    elif cmd == "boundary":
        b = chains.is_boundary(_chain(args, alpha), alpha)
        _emit(args, str(b).lower(), {"boundary": b})
    elif cmd == "witness":
        res = chains.witness(_chain(args, alpha), alpha)
        if res is None:
            _emit(args, "none", {"witness": None})
        else:
            w, v = res
            _emit(args, f"witness {fmt(w)} value {v}", {"witness": alpha.format(w), "value": str(v)})
    elif cmd == "sclbound":
        res = chains.scl_lower_bound(_chain(args, alpha), alpha)
        _emit(args, _result_text(res, fmt), chains.result_json(res, alpha))
    elif cmd == "basis":
        en = basis.enumerate_basis(args.cutoff, alpha)
        shown = [alpha.format(w) for w in en.words]
        _emit(args, "\n".join(shown), {"cutoff": en.cutoff, "words": shown})
    elif cmd == "expand":
        oracle = counting.parse_oracle(args.oracle, alpha).homogenized()
        e = basis.expand(oracle, args.cutoff, alpha)
        print(json.dumps(e.to_json(), indent=None if args.json else 2))
    elif cmd == "eval-expansion":
        try:
            e = basis.Expansion.from_json(_read(args.file))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
            raise WordError(f"bad expansion file: {err}") from None
        g = e.alphabet.parse(args.word)
        v = basis.evaluate_expansion(e, g)
        exact = e.exact_for(g)
        _emit(args, str(v) if exact else f"{v} truncated", {"value": str(v), "truncated": not exact})
    elif cmd in ("lift", "sclcover"):
        sd = cover.schreier_basis(cover.parse_table(_read(args.table)), alpha)
        g = alpha.parse(args.word)
        if cmd == "lift":
            lifts = cover.lift_chain(sd, g)
            text = "\n".join(
                f"{sd.alphabet.format(l.element, IDENTITY)} degree {l.degree} coset {l.start_coset}"
                f" = {fmt(sd.substitute(l.element))}"
                for l in lifts
            )
            _emit(args, text, [_lift_json(sd, l) for l in lifts])
        else:
            res = cover.scl_via_cover(sd, g)
            sub = res.subgroup
            if sub.certificate is None:
                text = sub.status
            else:
                c = sub.certificate
                text = (f"bound {res.bound} index {res.index} witness "
                        f"{sd.alphabet.format(c.witness)} value {c.value}")
            if res.conjugate_inverse_pair is not None:
                i, j = res.conjugate_inverse_pair
                text += f"\npair {i} {j}"
            data = chains.result_json(sub, sd.alphabet)
            data.update({
                "index": res.index,
                "bound": None if res.bound is None else str(res.bound),
                "lifts": [_lift_json(sd, l) for l in res.lifts],
                "conjugate_inverse_pair": res.conjugate_inverse_pair,
            })
            _emit(args, text, data)
    elif cmd == "defect":
        oracle = counting.parse_oracle(args.oracle, alpha)
        if args.homogenize:
            oracle = oracle.homogenized()
        v = counting.sample_defect(oracle, args.trials, args.max_len, args.seed, alpha)
        _emit(args, str(v), {"oracle": oracle.name, "defect_lower_bound": str(v),
                             "trials": args.trials, "seed": args.seed})


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name, default in (("alphabet", "2"), ("json", False), ("seed", 0), ("trials", 1000)):
            if not hasattr(args, name):
                setattr(args, name, default)
        dispatch(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 1
    except WordError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
