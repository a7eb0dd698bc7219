"""Command-line front end.

    ancosa simulate CONFIG [--seed S] [--strategy X] [--output CSV] [--trace CSV]
    ancosa sweep CONFIG [--n-values 16,32] [--seeds 30] [--jobs J] [--output CSV]
    ancosa allocate n k N p [--oracle] [--output CSV]
    ancosa partitions n N [--oracle]
    ancosa regen-params B k d
    ancosa reliability --n 45 --k 16,21 --N 9 --p 0.1 [--output CSV]

Exit status: 0 on success, 1 on a configuration error, 2 when a simulation
ran out of rounds before every sink decoded.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import allocation, netsim, oracles
from .errors import AncosaError, ConfigError, NoValidAllocation
from .regen import regen_points

EXIT_OK, EXIT_CONFIG, EXIT_DNF = 0, 1, 2


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _probability(text):
    """Parse as an exact rational so '0.01' means exactly 1/100."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}")


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc.strerror}") from None


def _write(path, writer):
    fh, close = _open_out(path)
    try:
        writer(fh)
    finally:
        if close:
            fh.close()


def _load(args):
    topology, config, doc = netsim.load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.strategy is not None:
        overrides["strategy"] = args.strategy
    if overrides:
        config = netsim.RunConfig(**{**config.to_dict(), **overrides})
    return topology, config, doc


def cmd_simulate(args):
    topology, config, _ = _load(args)
    result = netsim.run(topology, config)
    if args.output:
        row = result.row()
        _write(args.output, lambda fh: netsim.write_rows([row], fh))
    if args.trace:
        _write(args.trace, lambda fh: netsim.write_rows(result.trace, fh, netsim.TRACE_HEADER))
    print(json.dumps(result.summary(), indent=2, sort_keys=True))
    return EXIT_DNF if result.dnf else EXIT_OK


def cmd_sweep(args):
    topology, config, doc = _load(args)
    n_values = args.n_values or doc.get("n_values") or [config.n]
    seeds = range(args.seeds if args.seeds is not None else doc.get("seeds", 30))
    strategies = [args.strategy] if args.strategy else netsim.STRATEGIES
    rows = netsim.sweep(topology, config, n_values, strategies, seeds, jobs=args.jobs)
    _write(args.output, lambda fh: netsim.write_rows(rows, fh))
    for row in rows:
        if row.get("error"):
            print(f"cell n={row['n']} {row['strategy']} seed={row['seed']}: {row['error']}",
                  file=sys.stderr)
    return EXIT_OK


def cmd_allocate(args):
    params = allocation.StorageParams(args.n, args.k, args.N, args.p)
    if args.oracle:
        parts, prob = oracles.brute_optimum(args.n, args.k, args.N, args.p)
        alloc = allocation.Allocation(parts)
    else:
        alloc, prob = allocation.optimal_allocation(params)
    print(f"{alloc}  {allocation.format_probability(prob)}")
    if args.output:
        even = allocation.even_allocation(args.n, args.N)
        row = {"n": args.n, "k": args.k, "N": args.N, "p": args.p,
               "P_even": allocation.failure_probability(even, params),
               "P_osa": prob, "allocation": str(alloc)}
        _write(args.output, lambda fh: allocation.write_rows([row], fh))
    return EXIT_OK


def cmd_partitions(args):
    if args.oracle:
        listing = ["+".join(map(str, s)) for s in oracles.all_partitions(args.n, args.N)]
        if args.N > args.n or args.N <= 0:
            raise NoValidAllocation(f"no valid allocation: N={args.N}, n={args.n}")
    else:
        listing = [str(a) for a in allocation.iter_allocations(args.n, args.N)]
    for line in listing:
        print(line)
    print(f"count={len(listing)}")
    return EXIT_OK


def cmd_regen(args):
    msr, mbr = regen_points(args.B, args.k, args.d)
    for name, point in (("msr", msr), ("mbr", mbr)):
        print(f"{name} alpha={point.alpha} gamma={point.gamma} beta={point.beta(args.d)}")
    return EXIT_OK


def cmd_reliability(args):
    grid = {"n": args.n, "k": args.k, "N": args.N, "p": args.p}
    rows = allocation.sweep_reliability(grid)
    _write(args.output, lambda fh: allocation.write_rows(rows, fh))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ancosa", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (("simulate", cmd_simulate, "run one simulation"),
                            ("sweep", cmd_sweep, "efficiency sweep over n, strategies, seeds")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config", help="JSON run document")
        p.add_argument("--seed", type=int)
        p.add_argument("--strategy", choices=netsim.STRATEGIES)
        p.add_argument("--output", help="CSV of results ('-' for stdout)")
        p.set_defaults(func=fn)
        if name == "simulate":
            p.add_argument("--trace", help="per-round, per-node CSV trace")
        else:
            p.add_argument("--n-values", type=_int_list)
            p.add_argument("--seeds", type=int, help="number of seeds, 0..S-1")
            p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("allocate", help="optimal allocation of n parts over N sites")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("N", type=int)
    p.add_argument("p", type=_probability)
    p.add_argument("--oracle", action="store_true", help="exhaustive search instead")
    p.add_argument("--output", help="CSV row")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("partitions", help="list partitions of n into N parts")
    p.add_argument("n", type=int)
    p.add_argument("N", type=int)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("regen-params", help="MSR and MBR points")
    p.add_argument("B", type=int)
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_regen)

    p = sub.add_parser("reliability", help="even vs optimal allocation over a grid")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--N", type=_int_list, required=True)
    p.add_argument("--p", type=_probability, nargs="+", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_reliability)
    return parser


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoValidAllocation:
        print("error: no valid allocation", file=sys.stderr)
        return EXIT_CONFIG
    except (AncosaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
