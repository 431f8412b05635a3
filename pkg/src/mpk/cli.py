"""Command-line surface.

Exit codes: 0 on success or a passing check, 1 when a verification fails
(the witness is printed), 2 on usage errors.  Output is deterministic for
identical invocations, seeds included; rationals print as p/q.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .branching import GraphContext, big_dim, martin_kernel
from .errors import VerificationError
from .groups import check_orthogonality, element_index, resolve_group
from .measures import (
    EwensParams,
    check_mps_consistency,
    level_measure_ewens,
)
from .partitions import (
    enumerate_multipartitions,
    enumerate_partitions,
    format_multipartition,
    parse_diagram,
    parse_multipartition,
)
from .sampling import McEstimate, RngStream, mc_estimate_ewens, sample_mpd
from .symfunc import jack_p, pieri_check
from .thoma import (
    kernel_harmonic_defect,
    kernel_kingman,
    kernel_level_sum,
    kernel_theta,
    load_thoma_file,
)
from .wreath import conjugacy_type, parse_permutation, WreathElement


def _rationals_csv(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(","))


def _emit(rows, fmt: str, json_shape=None):
    if fmt == "tsv":
        for row in rows:
            print("\t".join(str(cell) for cell in row))
    else:
        payload = json_shape(rows) if json_shape else [list(r) for r in rows]
        print(json.dumps(payload))


def _add_format(p):
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")


def _cmd_enumerate(args) -> int:
    rows = [(format_multipartition(mp),)
            for mp in enumerate_multipartitions(args.n, args.k)]
    _emit(rows, args.format, lambda r: [cell for (cell,) in r])
    return 0


def _cmd_measure_ewens(args) -> int:
    group = resolve_group(args.group)
    level = level_measure_ewens(args.n, _rationals_csv(args.t), group)
    rows = [(format_multipartition(mp), level[mp])
            for mp in enumerate_multipartitions(args.n, group.k)
            if level[mp]]
    _emit(rows, args.format,
          lambda r: [{"multipartition": mp, "weight": str(w)} for mp, w in r])
    return 0


def _cmd_check_coherence(args) -> int:
    group = resolve_group(args.group)
    t = _rationals_csv(args.t)
    levels = [level_measure_ewens(n, t, group)
              for n in range(args.max_n + 1)]
    report = check_mps_consistency(levels)
    print(str(report))
    return 0 if report.ok else 1


def _cmd_check_harmonicity(args) -> int:
    group = resolve_group(args.group)
    ctx = GraphContext(group, Fraction(args.theta))
    omega = load_thoma_file(args.omega)
    for m in range(args.max_n + 1):
        total = kernel_level_sum(omega, m, ctx)
        if total != 1:
            print(f"level {m} kernel mass is {total}, not 1")
            return 1
    for m in range(args.max_n):
        for mp in enumerate_multipartitions(m, group.k):
            defect = kernel_harmonic_defect(omega, mp, ctx)
            if defect != 0:
                print(f"harmonic defect {defect} at "
                      f"{format_multipartition(mp)}")
                return 1
    print(f"kernel harmonic and normalized through level {args.max_n}")
    return 0


def _cmd_check_orthogonality(args) -> int:
    group = resolve_group(args.group)
    report = check_orthogonality(group, tol=args.tol)
    print(str(report))
    return 0 if report.ok else 1


def _cmd_check_pieri(args) -> int:
    theta = Fraction(args.theta)
    for n in range(args.max_size + 1):
        for mu in enumerate_partitions(n):
            pieri_check(mu, theta)
    print(f"pieri expansions match edge multiplicities "
          f"up to size {args.max_size}")
    return 0


def _cmd_graph_dim(args) -> int:
    group = resolve_group(args.group)
    ctx = GraphContext(group, Fraction(args.theta))
    small = parse_multipartition(args.source, group.k)
    big = parse_multipartition(args.target, group.k)
    print(big_dim(small, big, ctx))
    return 0


def _cmd_graph_martin(args) -> int:
    group = resolve_group(args.group)
    ctx = GraphContext(group, Fraction(args.theta))
    small = parse_multipartition(args.source, group.k)
    big = parse_multipartition(args.target, group.k)
    print(martin_kernel(small, big, ctx))
    return 0


def _cmd_kernel(args) -> int:
    group = resolve_group(args.group)
    mp = parse_multipartition(args.lam, group.k)
    omega = load_thoma_file(args.omega)
    if args.what == "theta":
        ctx = GraphContext(group, Fraction(args.theta))
        value = kernel_theta(mp, omega, ctx)
    else:
        value = kernel_kingman(mp, omega, group)
    print(value if isinstance(value, Fraction) else repr(float(value)))
    return 0


def _cmd_symfunc_jack(args) -> int:
    lam = parse_diagram(args.lam)
    expr = jack_p(lam, Fraction(args.theta))
    rows = [(",".join(str(p) for p in mu) or "-", expr.coefficient(mu))
            for mu in enumerate_partitions(sum(lam))
            if expr.coefficient(mu)]
    _emit(rows, args.format,
          lambda r: [{"monomial": mu, "coefficient": str(c)} for mu, c in r])
    return 0


def _cmd_sample_mpd(args) -> int:
    t = _rationals_csv(args.t)
    zeta = _rationals_csv(args.zeta)
    if len(t) != len(zeta):
        raise ValueError("--t and --zeta must have equal length")
    if any(z <= 0 for z in zeta):
        raise ValueError("--zeta entries must be positive")
    big_t = tuple(tl / z for tl, z in zip(t, zeta))
    EwensParams(big_t)  # reuse positivity validation
    rng = RngStream(args.seed)
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for _ in range(args.count):
            sample = sample_mpd(big_t, rng, args.eps)
            sink.write(json.dumps({
                "x": [list(row) for row in sample.x],
                "delta": list(sample.delta),
                "truncation_mass": sample.truncation_mass,
            }))
            sink.write("\n")
    finally:
        if args.out:
            sink.close()
    return 0


def _combine(parts: list[McEstimate]) -> McEstimate:
    total = sum(p.n_samples for p in parts)
    mean = sum(p.mean * p.n_samples for p in parts) / total
    second = sum((p.stderr ** 2 * p.n_samples + p.mean ** 2) * p.n_samples
                 for p in parts) / total
    var = max(second - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / total), total)


def _cmd_estimate_ewens(args) -> int:
    group = resolve_group(args.group)
    mp = parse_multipartition(args.lam, group.k)
    t = _rationals_csv(args.t)
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    shares = [args.samples // args.jobs] * args.jobs
    for i in range(args.samples % args.jobs):
        shares[i] += 1
    parts = [
        mc_estimate_ewens(mp, t, group, RngStream(args.seed, stream=i),
                          share, eps=args.eps)
        for i, share in enumerate(shares) if share
    ]
    est = _combine(parts)
    if args.format == "tsv":
        print(f"{est.mean!r}\t{est.stderr!r}\t{est.n_samples}")
    else:
        print(json.dumps({"mean": est.mean, "stderr": est.stderr,
                          "samples": est.n_samples}))
    return 0


def _cmd_wreath_type(args) -> int:
    group = resolve_group(args.group)
    perm = parse_permutation(args.perm)
    labels = [part.strip() for part in args.colors.split(";")]
    if len(labels) != len(perm):
        raise ValueError(
            f"{len(labels)} colors for a permutation of {len(perm)} points")
    colors = tuple(element_index(group, label) for label in labels)
    x = WreathElement(colors, perm)
    print(format_multipartition(conjugacy_type(x, group)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpk",
        description="Deformed branching graphs over wreath products: "
                    "enumeration, measures, kernels, samplers, checks.",
        epilog="MPK_BUDGET overrides the wreath enumeration budget.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", help="list a multipartition level")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_enumerate)

    measure = sub.add_parser("measure", help="level measures")
    msub = measure.add_subparsers(dest="what", required=True)
    p = msub.add_parser("ewens")
    p.add_argument("--group", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_measure_ewens)

    check = sub.add_parser("check", help="verification suites")
    csub = check.add_subparsers(dest="what", required=True)
    p = csub.add_parser("coherence")
    p.add_argument("--group", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.set_defaults(handler=_cmd_check_coherence)
    p = csub.add_parser("harmonicity")
    p.add_argument("--group", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--max-n", type=int, default=3, dest="max_n")
    p.set_defaults(handler=_cmd_check_harmonicity)
    p = csub.add_parser("orthogonality")
    p.add_argument("--group", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(handler=_cmd_check_orthogonality)
    p = csub.add_parser("pieri")
    p.add_argument("--theta", required=True)
    p.add_argument("--max-size", type=int, default=4, dest="max_size")
    p.set_defaults(handler=_cmd_check_pieri)

    graph = sub.add_parser("graph", help="dimensions and Martin kernels")
    gsub = graph.add_subparsers(dest="what", required=True)
    for name, handler in (("dim", _cmd_graph_dim),
                          ("martin", _cmd_graph_martin)):
        p = gsub.add_parser(name)
        p.add_argument("--group", required=True)
        p.add_argument("--theta", required=True)
        p.add_argument("--from", required=True, dest="source")
        p.add_argument("--to", required=True, dest="target")
        p.set_defaults(handler=handler)

    kernel = sub.add_parser("kernel", help="boundary kernels")
    ksub = kernel.add_subparsers(dest="what", required=True)
    p = ksub.add_parser("theta")
    p.add_argument("--group", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--lambda", required=True, dest="lam")
    p.add_argument("--omega", required=True)
    p.set_defaults(handler=_cmd_kernel)
    p = ksub.add_parser("kingman")
    p.add_argument("--group", required=True)
    p.add_argument("--lambda", required=True, dest="lam")
    p.add_argument("--omega", required=True)
    p.set_defaults(handler=_cmd_kernel)

    symfunc = sub.add_parser("symfunc", help="symmetric functions")
    ssub = symfunc.add_subparsers(dest="what", required=True)
    p = ssub.add_parser("jack")
    p.add_argument("--lambda", required=True, dest="lam")
    p.add_argument("--theta", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_symfunc_jack)

    sample = sub.add_parser("sample", help="boundary samplers")
    samp_sub = sample.add_subparsers(dest="what", required=True)
    p = samp_sub.add_parser("mpd")
    p.add_argument("--t", required=True)
    p.add_argument("--zeta", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_sample_mpd)

    estimate = sub.add_parser("estimate", help="Monte Carlo estimators")
    esub = estimate.add_subparsers(dest="what", required=True)
    p = esub.add_parser("ewens")
    p.add_argument("--lambda", required=True, dest="lam")
    p.add_argument("--group", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--jobs", type=int, default=1)
    _add_format(p)
    p.set_defaults(handler=_cmd_estimate_ewens)

    wreath = sub.add_parser("wreath", help="wreath product elements")
    wsub = wreath.add_subparsers(dest="what", required=True)
    p = wsub.add_parser("type")
    p.add_argument("--group", required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--colors", required=True)
    p.set_defaults(handler=_cmd_wreath_type)

    return parser


# multipartition texts may start with "-" (empty first component); fuse
# these flags with their values so argparse does not mistake them for options
_VALUE_FLAGS = {"--from", "--to", "--lambda"}


def _fuse_dash_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_fuse_dash_values(list(argv)))
    except SystemExit as stop:
        return stop.code or 0
    try:
        return args.handler(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
