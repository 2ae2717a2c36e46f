"""Command-line entry point.

Exit codes: 0 success, 1 a checked property failed, 2 usage or I/O error,
3 the representation cap was exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import random
import sys
import time

from . import affine
from .affine import (
    apply_transform,
    make_irreducible,
    make_strong_partition,
    remove_fixed,
    to_json,
)
from .driver import DEFAULT_CAP, compute_levels, palindromic_length, palindromic_length_info
from .errors import EnumerationOverflow, PalPrefixError, ResourceLimitError, TransformInapplicable
from .family import decode, family, palpref_profile, size_lower_bound_bits
from .matcher import BACKENDS
from .oracle import dp_k_pal_prefixes, dp_palindromic_length, enumerate_affine, generate_strings
from .sampling import perturbed_ab, random_valid_repr, random_word
from .text_model import BaseText

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
MUTATIONS = ("split-bound", "switch-shift")


class UsageError(Exception):
    pass


def _read_text(args):
    if args.text is not None:
        return args.text
    if args.input is None:
        raise UsageError("give an input path, '-' for stdin, or --text")
    try:
        if args.input == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(args.input, "rb") as f:
                data = f.read()
    except OSError as e:
        raise UsageError(str(e)) from e
    if args.utf8:
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise UsageError(f"input is not valid UTF-8: {e}") from e
    return data


def _add_input(p):
    p.add_argument("input", nargs="?", help="input file, or '-' for stdin")
    p.add_argument("--text", help="use this literal string as the text")
    p.add_argument("--utf8", action="store_true", help="decode input bytes as UTF-8")


def _add_common(p):
    p.add_argument("--cap-reprs", type=int, default=DEFAULT_CAP, help="max live representations per level")
    p.add_argument("--cap-enum", type=int, default=2**20, help="max exponent tuples when enumerating")
    p.add_argument("--backend", choices=BACKENDS, default=None, help="string matching backend")


def _format_comps(r) -> str:
    return ";".join(f"{c.length}:{c.low}:{c.high}" for c in r.comps) or "-"


def _check_caps(args) -> None:
    if args.cap_reprs < 1 or args.cap_enum < 1:
        raise UsageError("caps must be at least 1")


def cmd_palpref(args) -> int:
    _check_caps(args)
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    text = _read_text(args)
    if len(text) == 0:
        raise UsageError("empty input")
    lc = compute_levels(BaseText(text), args.k, cap=args.cap_reprs, backend=args.backend)
    out = sys.stdout
    if args.format == "json":
        doc = {"n": len(text), "k": args.k,
               "levels": [[to_json(r) for r in lc.level(i)] for i in range(1, args.k + 1)]}
        json.dump(doc, out)
        out.write("\n")
    elif args.format == "tsv":
        out.write("level\tbase_len\tcomps\torder\tcardinality\n")
        for i in range(1, args.k + 1):
            for r in lc.level(i):
                out.write(f"{i}\t{r.base_len}\t{_format_comps(r)}\t{r.order}\t{affine.cardinality(r)}\n")
    else:
        out.write(f"n\t{len(text)}\n")
        for i in range(1, args.k + 1):
            reps = lc.level(i)
            try:
                members = len(lc.union(i)) if sum(affine.cardinality(r) for r in reps) <= args.cap_enum else "-"
            except EnumerationOverflow:
                members = "-"
            order = max((r.order for r in reps), default=0)
            out.write(f"level {i}: {len(reps)} sets / {members} prefixes / max order {order}\n")
    return EXIT_OK


def cmd_pal_length(args) -> int:
    _check_caps(args)
    text = _read_text(args)
    if len(text) == 0:
        raise UsageError("empty input")
    k, used = palindromic_length_info(BaseText(text), fallback=not args.no_fallback,
                                      cap=args.cap_reprs, backend=args.backend)
    print(k)
    print(f"fallback: {'yes' if used else 'no'}")
    return EXIT_OK


def _shrink(text: str, failing) -> str:
    """Greedy one-symbol deletions while the failure persists."""
    changed = True
    while changed:
        changed = False
        for i in range(len(text)):
            cand = text[:i] + text[i + 1:]
            if cand and failing(cand):
                text = cand
                changed = True
                break
    return text


def _level_mismatch(text: str, k: int, backend, cap_enum: int) -> str | None:
    lc = compute_levels(BaseText(text), k, backend=backend)
    dp = dp_k_pal_prefixes(text, k)
    for i in range(1, k + 1):
        got = set()
        for r in lc.level(i):
            got.update(enumerate_affine(r, cap_enum))
        if got != set(dp[i - 1]):
            return f"level {i}: extra {sorted(got - set(dp[i - 1]))[:8]} missing {sorted(set(dp[i - 1]) - got)[:8]}"
    for fb in (True, False):
        if palindromic_length(BaseText(text), fallback=fb, backend=backend) != dp_palindromic_length(text):
            return f"palindromic length differs (fallback={fb})"
    return None


def _transform_mismatch(r) -> str | None:
    want = generate_strings(r)
    outs = []
    for pos in range(1, r.order + 1):
        for kind in ("switch", "merge", "split"):
            with contextlib.suppress(TransformInapplicable):
                outs.append((f"{kind}@{pos}", apply_transform(r, kind, pos)))
    with contextlib.suppress(TransformInapplicable):
        outs.append(("truncate", apply_transform(r, "truncate")))
    outs.append(("remove_fixed", remove_fixed(r)))
    outs.append(("make_irreducible", make_irreducible(r)))
    for name, o in outs:
        if generate_strings(o) != want:
            return f"{name} changed the generated set of {affine.describe(r)}"
    parts = make_strong_partition(r)
    got = set()
    for p in parts:
        got.update(generate_strings(p))
    if got != want:
        return f"strong partition changed the generated set of {affine.describe(r)}"
    return None


def cmd_oracle_check(args) -> int:
    _check_caps(args)
    rng = random.Random(args.seed)
    ctx = affine.injected_mutation(args.inject_bug) if args.inject_bug else contextlib.nullcontext()
    verdicts = []
    with ctx:
        msg = None
        for _ in range(args.count):
            msg = _transform_mismatch(random_valid_repr(rng))
            if msg:
                break
        verdicts.append(("transforms", msg))
        msg = None
        for _ in range(args.count):
            text = random_word(rng, args.alphabet, 1, args.max_len)
            if _level_mismatch(text, args.k, args.backend, args.cap_enum):
                small = _shrink(text, lambda t: _level_mismatch(t, args.k, args.backend, args.cap_enum) is not None)
                msg = f"{_level_mismatch(small, args.k, args.backend, args.cap_enum)}; counterexample {small!r}"
                break
        verdicts.append(("levels", msg))
    for name, msg in verdicts:
        print(f"{name}\t{'FAIL ' + msg if msg else 'PASS'}")
    print(f"seed\t{args.seed}\tcount\t{args.count}")
    return EXIT_FAIL if any(msg for _, msg in verdicts) else EXIT_OK


def cmd_family(args) -> int:
    if args.t < 1 or args.s < 1:
        raise UsageError("--t and --s must be at least 1")
    if args.t + args.s > args.max_sum:
        raise ResourceLimitError(f"t + s = {args.t + args.s} exceeds the family cap {args.max_sum}")
    members = family(args.t, args.s)
    profiles = [palpref_profile(x, args.s) for x in members]
    distinct = len(set(profiles)) == len(members)
    decoded = all(decode(p, args.t, args.s) == x for p, x in zip(profiles, members))
    pals = all(x == x[::-1] and len(x) == 3 ** (args.t + args.s) for x in members)
    if args.format == "json":
        doc = {"t": args.t, "s": args.s,
               "members": [{"word": x, "profile": sorted(map(list, p))} for x, p in zip(members, profiles)]}
        json.dump(doc, sys.stdout)
        sys.stdout.write("\n")
    elif args.format == "summary":
        print(f"t {args.t}\ts {args.s}\tmembers {len(members)}\tlength {3 ** (args.t + args.s)}"
              f"\tbound_bits {size_lower_bound_bits(args.t, args.s)}")
        print(f"palindromes {pals}\tdistinct_profiles {distinct}\tdecode_ok {decoded}")
    else:
        for x in members:
            print(x)
    return EXIT_OK if distinct and decoded and pals else EXIT_FAIL


def cmd_bench(args) -> int:
    _check_caps(args)
    print("n\tk\tseconds\tpeak_reprs\tpeak_words")
    for n in args.n:
        text = perturbed_ab(n, seed=args.seed)
        t0 = time.perf_counter()
        lc = compute_levels(BaseText(text), args.k, cap=args.cap_reprs, backend=args.backend)
        dt = time.perf_counter() - t0
        peak = max(lc.counts())
        words = max(sum(r.order + 2 for r in lv) for lv in lc.levels)
        print(f"{n}\t{args.k}\t{dt:.3f}\t{peak}\t{words}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="palprefix", description="k-palindromic prefixes via affine prefix sets")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("palpref", help="representations of the k-palindromic prefixes")
    _add_input(p)
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("json", "tsv", "summary"), default="summary")
    p.set_defaults(func=cmd_palpref)

    p = sub.add_parser("pal-length", help="palindromic length of the whole text")
    _add_input(p)
    _add_common(p)
    p.add_argument("--no-fallback", action="store_true", help="never switch to the quadratic dynamic program")
    p.set_defaults(func=cmd_pal_length)

    p = sub.add_parser("oracle-check", help="randomized comparison against brute force")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-len", type=int, default=40)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--inject-bug", choices=MUTATIONS, default=None,
                   help="negative control: break one transform and expect a failure")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("family", help="check the distinct-profile palindrome family")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--format", choices=("lines", "json", "summary"), default="lines")
    p.add_argument("--max-sum", type=int, default=6, help="largest allowed t + s")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bench", help="time level computation on perturbed (ab)^m texts")
    _add_common(p)
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_CAP
    except PalPrefixError as e:
        if isinstance(e, ValueError):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
