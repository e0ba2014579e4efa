"""``vodbg`` command line: build, query, stats, validate, bench, contigs.

Exit codes: 0 success, 1 usage error, 2 data or validation failure.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
import time

from . import storage
from .alphabet import Alphabet
from .bench import format_table, run_bench
from .boss import MAX_K, EdgeMatrix, NodeHandle
from .contigs import unary_paths
from .errors import VodbgError
from .oracle import MAX_ORACLE_ROWS, oracle_build, oracle_compare, symmetry_violations
from .varorder import ANY, VarOrderIndex

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
FORMATS = ("fasta", "reads", "kmers")
QUERY_OPS = ("forward", "backward", "lastchar", "label", "shorter", "longer", "maxlen")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad arguments; we reserve 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input ---------------------------------------------------------------------

def _open_text(path: str):
    if path == "-":
        return sys.stdin
    try:
        return open(path, encoding="ascii", errors="replace")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def read_records(path: str, fmt: str) -> list[str]:
    """Reads (fasta, reads) or (K+1)-mers (kmers), one string per item.
    FASTA header lines are dropped and sequence lines of a record joined."""
    fh = _open_text(path)
    try:
        lines = [ln.strip() for ln in fh]
    finally:
        if fh is not sys.stdin:
            fh.close()
    if fmt != "fasta":
        return [ln for ln in lines if ln and not ln.startswith("#")]
    records, cur = [], []
    for ln in lines:
        if ln.startswith(">") or ln.startswith(";"):
            if cur:
                records.append("".join(cur))
            cur = []
        elif ln:
            cur.append(ln)
    if cur:
        records.append("".join(cur))
    return records


def split_unknown(reads: list[str], alphabet: Alphabet) -> list[str]:
    """Break reads at symbols outside the alphabet (e.g. N)."""
    bad = re.compile(f"[^{re.escape(alphabet.symbols)}]+")
    return [piece for r in reads for piece in bad.split(r) if piece]


def load_corpus(args, alphabet: Alphabet) -> EdgeMatrix:
    items = read_records(args.input, args.input_format)
    if alphabet.symbols == alphabet.symbols.upper():
        items = [s.upper() for s in items]
    if args.revcomp and not alphabet.has_complement:
        raise UsageError("--revcomp needs the DNA alphabet ACGT")
    if args.input_format == "kmers":
        bad = [s for s in items if len(s) != args.k + 1]
        if bad:
            raise DataError(f"kmers input: {bad[0]!r} is not a {args.k + 1}-mer")
        if args.revcomp:
            items = items + [alphabet.reverse_complement(s) for s in items]
        if not items:
            raise DataError("no (K+1)-mers extracted")
        return EdgeMatrix.from_edges(sorted(set(items)), args.k, alphabet)
    if getattr(args, "split_unknown", False):
        items = split_unknown(items, alphabet)
    return EdgeMatrix.from_reads(items, args.k, args.revcomp, alphabet)


def open_index(path: str) -> VarOrderIndex:
    try:
        return storage.read_index(path)
    except OSError as exc:
        raise DataError(f"cannot read index {path}: {exc.strerror}") from None


# -- subcommands -----------------------------------------------------------------

def cmd_build(args) -> int:
    if not 1 <= args.k <= MAX_K:
        raise UsageError(f"--k must lie in 1..{MAX_K}")
    try:
        alphabet = Alphabet(args.alphabet)
    except VodbgError as exc:
        raise UsageError(f"--alphabet: {exc}") from None
    t0 = time.perf_counter()
    matrix = load_corpus(args, alphabet)
    vi = VarOrderIndex.build(matrix)
    elapsed = time.perf_counter() - t0
    try:
        nbytes = storage.write_index(vi, args.output)
    except OSError as exc:
        raise DataError(f"cannot write {args.output}: {exc.strerror}") from None
    if not args.quiet:
        st = vi.graph_stats()
        out = [f"n_rows\t{st['n_rows']}", f"n_nodes\t{st['n_nodes']}",
               f"build_seconds\t{elapsed:.3f}"]
        out += [f"bits_{name}\t{v}" for name, v in st["bits"].items()]
        out += [f"boss_bits\t{st['boss_bits']}", f"size_ratio\t{st['size_ratio']:.3f}",
                f"file_bytes\t{nbytes}"]
        print("\n".join(out))
    return EXIT_OK


def _fmt(x) -> str:
    if x is None:
        return "NULL"
    if isinstance(x, NodeHandle):
        return str(x)
    if x == "":
        return "EMPTY"
    return str(x)


def answer_query(vi: VarOrderIndex, op: str, v: NodeHandle, symbol: str | None = None,
                 order: int | None = None) -> list[str]:
    """Lines the CLI prints for one query."""
    vi.check_handle(v)
    if op == "forward" and symbol is None:
        raise UsageError(f"--op {op} needs --symbol")
    if op in ("shorter", "longer") and order is None:
        raise UsageError(f"--op {op} needs --order")
    if op == "forward":
        res = vi.forward(v, symbol)
    elif op == "backward":
        res = vi.backward(v)
    elif op == "lastchar":
        res = vi.lastchar(v)
    elif op == "label":
        res = vi.label(v)
    elif op == "shorter":
        res = vi.shorter(v, order)
    elif op == "longer":
        res = vi.longer(v, order)
    else:
        res = vi.maxlen(v, ANY if symbol is None else symbol)
    if isinstance(res, list):
        return [_fmt(x) for x in res] or ["EMPTY"]
    return [_fmt(res)]


def cmd_query(args) -> int:
    vi = open_index(args.index)
    v = NodeHandle.parse(args.node)
    print("\n".join(answer_query(vi, args.op, v, args.symbol, args.order)))
    return EXIT_OK


def cmd_stats(args) -> int:
    vi = open_index(args.index)
    st = vi.graph_stats()
    lines = [f"K\t{st['K']}", f"sigma\t{st['sigma']}", f"alphabet\t{vi.alphabet.symbols}",
             f"n_rows\t{st['n_rows']}", f"n_nodes\t{st['n_nodes']}"]
    lines += [f"bits_{name}\t{v}" for name, v in st["bits"].items()]
    lines += [f"boss_bits\t{st['boss_bits']}", f"size_ratio\t{st['size_ratio']:.3f}"]
    print("\n".join(lines))
    return EXIT_OK


def parse_orders(text: str | None, K: int) -> list[int]:
    if text is None:
        return list(range(K + 1))
    orders = set()
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(\d+)-(\d+)", part)
        try:
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if lo > hi:
                    raise UsageError(f"empty order range {part!r}")
                orders.update(range(lo, hi + 1))
            else:
                orders.add(int(part))
        except ValueError:
            raise UsageError(f"bad order {part!r}; use e.g. 0-3 or 1,2,5") from None
    bad = [k for k in orders if not 0 <= k <= K]
    if bad:
        raise UsageError(f"order {bad[0]} outside 0..{K}")
    return sorted(orders)


def cmd_validate(args) -> int:
    vi = open_index(args.index)
    orders = parse_orders(args.orders, vi.K)
    args.k = vi.K
    matrix = load_corpus(args, vi.alphabet)
    if len(matrix) > MAX_ORACLE_ROWS:
        raise UsageError(f"corpus gives {len(matrix)} rows; the brute-force oracle is "
                         f"capped at {MAX_ORACLE_ROWS}. Validate a subsample instead.")
    rows = matrix.rows
    failed = 0
    for k in orders:
        problems = oracle_compare(vi, oracle_build(rows, k))
        problems += symmetry_violations(vi, k)
        if problems:
            failed += 1
            print(f"order {k}: {len(problems)} mismatches")
            for p in problems[:20]:
                print(f"  {p}")
        elif not args.quiet:
            print(f"order {k}: ok")
    return EXIT_DATA if failed else EXIT_OK


def cmd_bench(args) -> int:
    if args.queries < 1:
        raise UsageError("--queries must be at least 1")
    vi = open_index(args.index)
    rows = run_bench(vi, args.queries, args.seed, repeats=args.repeats)
    if not args.quiet:
        print(f"# K={vi.K} n_rows={vi.n_rows} queries={args.queries} seed={args.seed}")
    print(format_table(rows))
    return EXIT_OK


def cmd_contigs(args) -> int:
    vi = open_index(args.index)
    k = vi.K if args.order is None else args.order
    if not 0 <= k <= vi.K:
        raise UsageError(f"--order must lie in 0..{vi.K}")
    for seq in unary_paths(vi, k):
        if len(seq) >= args.min_length:
            print(seq)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--quiet", action="store_true", help="only print answers")
    shared.add_argument("--seed", type=int, default=0, help="random seed [default: %(default)s]")

    parser = _Parser(prog="vodbg", description="Variable-order succinct de Bruijn graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def corpus_flags(p, k_required):
        p.add_argument("--input", required=True, help="input path, or - for stdin")
        p.add_argument("--input-format", choices=FORMATS, default="fasta")
        p.add_argument("--revcomp", action="store_true",
                       help="also index reverse complements")
        p.add_argument("--split-unknown", action="store_true",
                       help="split reads at symbols outside the alphabet instead of failing")
        if k_required:
            p.add_argument("--k", type=int, required=True, help="maximum order K")

    p = sub.add_parser("build", parents=[shared], help="build an index")
    corpus_flags(p, True)
    p.add_argument("--output", required=True, help="index path (.vdbg)")
    p.add_argument("--alphabet", default="ACGT", help="symbols in rank order [default: ACGT]")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", parents=[shared], help="answer one navigation query")
    p.add_argument("--index", required=True)
    p.add_argument("--op", required=True, choices=QUERY_OPS)
    p.add_argument("--node", required=True, help="node handle i,j,k (1-based rows)")
    p.add_argument("--symbol")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", parents=[shared], help="print index sizes")
    p.add_argument("--index", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("validate", parents=[shared],
                       help="compare the index against a brute-force graph")
    p.add_argument("--index", required=True)
    corpus_flags(p, False)
    p.add_argument("--orders", help="e.g. 0-3 or 1,2,5 [default: all]")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", parents=[shared], help="time random queries")
    p.add_argument("--index", required=True)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--op-mix", choices=["default"], default="default")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("contigs", parents=[shared], help="print unary paths")
    p.add_argument("--index", required=True)
    p.add_argument("--order", type=int, help="graph order [default: K]")
    p.add_argument("--min-length", type=int, default=0)
    p.set_defaults(func=cmd_contigs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vodbg {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, VodbgError) as exc:
        print(f"vodbg {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
