"""Command-line interface: ``biinvariant {norm,profile,embed,qm,bench,witness}``.

Exit codes: 0 success, 1 failed verification, 2 bad input, 3 search budget
exceeded, 4 homogenization did not stabilize.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import balanced, bench, cube, freenorm, quasi, witnesses
from .words import Alphabet, Word, format_word, parse_word

EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_UNSTABLE = 4

_POWER = re.compile(r"([A-Za-z])(\d+)")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def expand_powers(text: str) -> str:
    """``b4aB4`` -> ``bbbbaBBBB``."""
    return _POWER.sub(lambda m: m.group(1) * int(m.group(2)), text)


def read_word(text: str, alphabet: Alphabet) -> Word:
    return parse_word(expand_powers(text), alphabet)


def _fraction(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# --- subcommands ----------------------------------------------------------------


def cmd_norm(args) -> int:
    if args.graph:
        p = balanced.load_graph(args.graph, args.kind)
        w = p.word(read_word(args.word, p.alphabet))
        value, deleted = balanced.cancelation_search(p, w, args.budget)
        group = {"graph": args.graph, "kind": p.kind.value}
    else:
        w = read_word(args.word, Alphabet(args.alphabet))
        value = freenorm.cancelation_norm(w)
        deleted = freenorm.trivializing_sequence(w) if args.witness else None
        group = {"group": f"F{w.alphabet.rank}"}
    payload = {"word": format_word(w), "norm": value, **group}
    text = str(value)
    if args.witness:
        payload["trivializing_sequence"] = deleted
        text += "\n" + " ".join(map(str, deleted))
    emit(args, payload, text)
    return 0


def cmd_profile(args) -> int:
    g = read_word(args.word, Alphabet(args.alphabet))
    values = freenorm.distortion_profile(g, args.N, jobs=args.jobs)
    emit(args, {"word": format_word(g), "profile": values}, " ".join(map(str, values)))
    return 0


def cmd_embed(args) -> int:
    if args.cube is not None:
        e = cube.build_cube_embedding(args.cube)
        images = {tuple(sorted(v)): cube.embed_vertex(e, v) for v in e.vertices()}
        report = cube.verify_cube_isometry(e, slow=args.slow, jobs=args.jobs) if args.verify else None
        payload = {
            "dim": e.dim,
            "k_values": list(e.k_values),
            "conjugators": [format_word(g) for g in e.conjugators],
            "images": {",".join(map(str, v)): format_word(w) for v, w in images.items()},
        }
        lines = [f"g{i + 1} (k={k}) = {format_word(g)}" for i, (k, g) in enumerate(zip(e.k_values, e.conjugators))]
        lines += [f"{{{','.join(map(str, v))}}} -> {format_word(w)}" for v, w in images.items()]
    elif args.tree:
        te = cube.tree_to_cube(cube.load_tree(args.tree), args.root)
        images = cube.embed_tree(te) if te.n_edges <= cube.MAX_DIM else {}
        report = cube.verify_tree_isometry(te, jobs=args.jobs) if args.verify else None
        payload = {
            "edges": te.n_edges,
            "cube": {str(u): sorted(c) for u, c in te.vertex_map.items()},
            "images": {str(u): format_word(w) for u, w in images.items()},
        }
        lines = [f"{u} -> {sorted(te.vertex_map[u])} -> {format_word(images[u]) if images else '-'}"
                 for u in te.vertex_map]
    else:
        raise CliError("embed needs a tree file or --cube DIM")
    if report is not None:
        payload["verified_pairs"] = report.checked
        payload["violations"] = [list(map(str, v)) for v in report.violations]
        lines.append(f"verified {report.checked} pairs: {'OK' if report.ok else 'FAILED'}")
        lines += [f"  {v}" for v in report.violations]
    emit(args, payload, "\n".join(lines))
    return 0 if report is None or report.ok else EXIT_FAIL


def _split(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


def cmd_qm(args) -> int:
    alphabet = Alphabet(args.alphabet)
    if args.dual:
        qtexts, gtexts = args.dual
        qs = [quasi.BrooksQuasimorphism(read_word(t, alphabet)) for t in _split(qtexts)]
        gs = [read_word(t, alphabet) for t in _split(gtexts)]
        m = quasi.dual_family_check(qs, gs)
        payload = {"matrix": [[_fraction(v) for v in row] for row in m], "identity": quasi.is_identity(m)}
        emit(args, payload, "\n".join(" ".join(str(v) for v in row) for row in m))
        return 0
    if args.sandwich is not None:
        qs, gs = quasi.default_dual_family(alphabet)
        kvec = [int(k) for k in _split(args.sandwich)]
        C = Fraction(args.C)
        if args.D is None:
            defects = [quasi.defect_estimate(q, args.trials, 20, args.seed) for q in qs]
            D = quasi.sandwich_constants(qs, gs, defects)[1]
        else:
            D = Fraction(args.D)
        m = freenorm.cancelation_norm(quasi.power_product(gs, kvec))
        holds = quasi.qi_sandwich_check(qs, gs, kvec, C, D)
        payload = {"k": kvec, "norm": m, "C": _fraction(C), "D": _fraction(D), "holds": holds}
        emit(args, payload, f"||prod g_i^k_i|| = {m}; C = {C}, D = {D}: {'OK' if holds else 'FAILED'}")
        return 0 if holds else EXIT_FAIL
    if not args.pattern:
        raise CliError("qm needs a pattern, --dual or --sandwich")
    q = quasi.BrooksQuasimorphism(read_word(args.pattern, alphabet))
    if args.homogenize is not None:
        value = quasi.homogenize(q, read_word(args.homogenize, alphabet))
        emit(args, {"pattern": args.pattern, "homogeneous": _fraction(value)}, str(value))
        return 0
    if args.defect:
        d = quasi.defect_estimate(q, args.trials, args.max_len, args.seed)
        emit(args, {"pattern": args.pattern, "defect_estimate": _fraction(d), "empirical": True},
             f"{d} (empirical lower estimate)")
        return 0
    if args.word is None:
        raise CliError("qm needs a word to evaluate")
    value = quasi.brooks_value(q, read_word(args.word, alphabet))
    emit(args, {"pattern": args.pattern, "value": value}, str(value))
    return 0


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.sizes, seed=args.seed, repeats=args.repeats)
    emit(args, {"rows": [r.as_dict() for r in rows]}, bench.format_table(rows))
    return 0


def cmd_witness(args) -> int:
    if args.which == "lamplighter":
        ok = witnesses.lamplighter_identity_check(args.n)
        payload = {"which": "lamplighter", "n": args.n, "ok": ok}
        text = f"[x,t]^{args.n} = [x^{args.n},t]: {'OK' if ok else 'FAILED'}"
    elif args.which == "heisenberg":
        ok = witnesses.heisenberg_identity_check(args.n)
        z = witnesses.power(witnesses.commutator(witnesses.HEIS_X, witnesses.HEIS_Y), args.n,
                            witnesses.HEIS_IDENTITY)
        payload = {"which": "heisenberg", "n": args.n, "ok": ok, "z_exponent": z.c}
        text = f"z^{args.n} = [x^{args.n},y]: {'OK' if ok else 'FAILED'}, z-exponent {z.c}"
    else:
        r = witnesses.bs_affine_check(args.p, args.q)
        ok = r.ok
        payload = {"which": "bs", "p": r.p, "q": r.q, "relation": r.relation_holds,
                   "commutator_exponent": r.commutator_exponent, "ok": ok}
        text = (f"t a^{r.p} t^-1 = a^{r.q}: {'OK' if r.relation_holds else 'FAILED'}; "
                f"[t, a^{r.p}] = a^{r.commutator_exponent}")
    emit(args, payload, text)
    return 0 if ok else EXIT_FAIL


# --- parser ---------------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--alphabet", default=default("ab"), help="generator names (default: ab)")
    parser.add_argument("--json", action="store_true", default=default(False), help="emit one JSON object")
    parser.add_argument("--seed", type=int, default=default(0))
    parser.add_argument("--jobs", type=int, default=default(1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biinvariant", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="cancelation norm of a word")
    p.add_argument("word")
    p.add_argument("--graph", help="graph file for a right-angled Artin/Coxeter group")
    p.add_argument("--kind", choices=[k.value for k in balanced.Kind], default="artin")
    p.add_argument("--witness", action="store_true", help="also print deleted positions")
    p.add_argument("--budget", type=int, default=None, help="node budget for graph groups")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("profile", parents=[common], help="||g^n|| for n = 1..N")
    p.add_argument("word")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("embed", parents=[common], help="cube or tree embeddings into F_2")
    p.add_argument("tree", nargs="?", help="tree file: one 'u v' edge per line")
    p.add_argument("--cube", type=int, metavar="DIM")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--slow", action="store_true", help="allow exact checks in dimension 4")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("qm", parents=[common], help="Brooks quasimorphisms")
    p.add_argument("pattern", nargs="?")
    p.add_argument("word", nargs="?")
    p.add_argument("--homogenize", metavar="WORD")
    p.add_argument("--defect", action="store_true", help="empirical defect estimate")
    p.add_argument("--dual", nargs=2, metavar=("PATTERNS", "WORDS"), help="comma-separated lists")
    p.add_argument("--sandwich", metavar="K1,K2", help="check the Z^2 embedding bounds at k")
    p.add_argument("--C", default="2")
    p.add_argument("--D", default=None, help="default: derived from an empirical defect")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--max-len", type=int, default=20)
    p.set_defaults(func=cmd_qm)

    p = sub.add_parser("bench", parents=[common], help="time the norm table")
    p.add_argument("sizes", type=int, nargs="*", default=[500, 1000, 2000])
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("witness", parents=[common], help="bounded-subgroup identities")
    p.add_argument("which", choices=["lamplighter", "heisenberg", "bs"])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--q", type=int, default=5)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except balanced.BudgetExceeded as exc:
        code, message = EXIT_BUDGET, str(exc)
    except quasi.NonStabilized as exc:
        code, message = EXIT_UNSTABLE, str(exc)
    except CliError as exc:
        code, message = exc.code, str(exc)
    except (ValueError, OSError) as exc:
        code, message = EXIT_INPUT, str(exc)
    print(f"error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
