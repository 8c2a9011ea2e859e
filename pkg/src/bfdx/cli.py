"""Command-line front end: ``bfdx <group> <command> [flags]``.

Exit codes: 0 on success, 1 when the answer is an empty region or an
unreachable target (still printed as data on stdout), 2 on usage errors and
numerical failures (message on stderr).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Any, Callable

from . import __version__
from .bayes_factors import (
    JZS_SCALE,
    SI_PRIOR_VAR,
    BfKind,
    BinomialData,
    GaussianSummary,
    Interval,
    bf_threshold_t,
    binom_bf01,
    binom_h0_likelihood,
    binom_h1_marginal,
    binom_point_bf,
    jzs_bf01,
    mu_bounds,
    point_bf,
    robert_bf,
    si_bf01,
    t_statistic,
)
from .errors import BfdxError, ConvergenceError, DomainError, InfeasibleError
from .evidence_ratios import (
    binom_rejection_region,
    binom_support_region,
    gaussian_regions,
    gaussian_required_mean,
    quandary_pair,
)
from .figures import FigureScenario, default_scenario, emit_figure_data
from .lindley import (
    detect_lindley_case,
    lindley_asymptote,
    lindley_bf_range,
    lindley_mean_range,
    lindley_probability,
)
from .output import render
from .rope import Rope, decide, mean_er_in_rope
from .simulation import simulate_lindley_rate

Record = dict[str, Any]
Handler = Callable[[argparse.Namespace], "tuple[Record, int]"]


def _interval(iv: Interval | None) -> Record | None:
    return None if iv is None else {"lo": iv.lo, "hi": iv.hi}


def _infeasible(err: InfeasibleError) -> tuple[Record, int]:
    return {"feasible": False, "reason": str(err)}, 1


def _rope_arg(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI but got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError("ROPE needs LO < HI")
    return lo, hi


def _t_of(args: argparse.Namespace) -> float:
    if args.t is not None:
        return args.t
    if args.mean is None:
        raise DomainError("one of --mean or --t is required")
    return t_statistic(GaussianSummary(args.n, args.mean))


# -- handlers -----------------------------------------------------------------------


def cmd_bf_robert(args):
    return {"bf01": robert_bf(GaussianSummary(args.n, args.mean))}, 0


def cmd_bf_jzs(args):
    t = _t_of(args)
    return {"t": t, "bf01": jzs_bf01(t, args.n, args.r)}, 0


def cmd_bf_si(args):
    t = _t_of(args)
    return {"t": t, "bf01": si_bf01(t, args.n, args.prior_var)}, 0


def cmd_bf_binom(args):
    d = BinomialData(args.n, args.k)
    record: Record = {
        "h0_likelihood": binom_h0_likelihood(d),
        "h1_marginal": binom_h1_marginal(d),
        "bf01": binom_bf01(d),
    }
    if args.theta is not None:
        record["point_bf"] = binom_point_bf(args.theta, d)
    return record, 0


def cmd_bf_point(args):
    s = GaussianSummary(args.n, args.mean)
    return {"bf": point_bf(args.mu0, args.mu, s)}, 0


def cmd_bf_threshold(args):
    try:
        t = bf_threshold_t(args.kind, args.q, args.n, r=args.r, prior_var=args.prior_var)
    except InfeasibleError as err:
        return _infeasible(err)
    return {"t": t, "mean": t / math.sqrt(args.n)}, 0


def cmd_region_gauss(args):
    regions = gaussian_regions(GaussianSummary(args.n, args.mean), args.q)
    support = regions.support[0] if regions.support else None
    record = {
        "support": _interval(support),
        "rejection": [_interval(iv) for iv in regions.rejection],
    }
    return record, 0 if support is not None else 1


def cmd_region_binom(args):
    d = BinomialData(args.n, args.k)
    support = binom_support_region(d, args.q)
    record = {
        "support": _interval(support),
        "rejection": [_interval(iv) for iv in binom_rejection_region(d, args.q)],
    }
    return record, 0 if support is not None else 1


def cmd_region_mu_bounds(args):
    iv = mu_bounds(args.q, GaussianSummary(args.n, args.mean))
    return {"mu_bounds": _interval(iv)}, 0 if iv is not None else 1


def _prior(args) -> Record:
    return {"r": args.r, "prior_var": args.prior_var}


def cmd_lindley_range(args):
    try:
        means = lindley_mean_range(args.n, args.q, args.kind, **_prior(args))
    except InfeasibleError as err:
        return _infeasible(err)
    if means is None:
        return {"mean_range": None, "bf_range": None}, 1
    bfs = lindley_bf_range(args.n, args.q, args.kind, **_prior(args))
    return {"mean_range": _interval(means), "bf_range": _interval(bfs)}, 0


def cmd_lindley_prob(args):
    return {"probability": lindley_probability(args.n, args.q, args.kind, **_prior(args))}, 0


def cmd_lindley_asymptote(args):
    return {"asymptote": lindley_asymptote(args.q)}, 0


def cmd_lindley_detect(args):
    rep = detect_lindley_case(
        GaussianSummary(args.n, args.mean), args.q, args.kind, **_prior(args)
    )
    return {
        "kind": rep.kind.value,
        "q": rep.q,
        "conventional_bf": rep.conventional_bf,
        "counter_interval": _interval(rep.counter_interval),
        "is_lindley_case": rep.is_lindley_case,
    }, 0


def cmd_rope_decide(args):
    s = GaussianSummary(args.n, args.mean)
    rope = Rope.around(*args.rope, null_value=args.null)
    result = decide(gaussian_regions(s, args.q), rope)
    return {
        "verdict": result.verdict.value,
        "partial_overlap": result.partial_overlap,
        "mean_er": mean_er_in_rope(s, rope),
        "rope": _interval(rope.interval),
        "support": [_interval(iv) for iv in result.regions.support],
        "rejection": [_interval(iv) for iv in result.regions.rejection],
    }, 0


def cmd_sim_lindley(args):
    res = simulate_lindley_rate(
        args.n, args.q, args.kind, args.reps, args.seed, workers=args.workers, **_prior(args)
    )
    return {
        "reps": res.reps,
        "hits": res.hits,
        "rate": res.rate,
        "stderr": res.stderr,
        "seed": res.seed,
        "analytic": lindley_probability(args.n, args.q, args.kind, **_prior(args)),
    }, 0


def cmd_quandary(args):
    try:
        lo, hi = quandary_pair(args.n, args.q)
    except InfeasibleError as err:
        return _infeasible(err)
    centre = gaussian_required_mean(args.q, args.n)
    return {"required_mean": centre, "mu_lo": lo, "mu_hi": hi}, 0


def _make_fig_handler(figure: int) -> Handler:
    def handler(args):
        base = default_scenario(figure, args.q)
        scenario = FigureScenario(q=args.q, ns=tuple(args.n) if args.n else base.ns, mean=args.mean)
        if args.out in (None, "-"):
            emit_figure_data(figure, scenario, sys.stdout)
            return None, 0
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            rows = emit_figure_data(figure, scenario, fh)
        return {"rows": rows, "path": args.out}, 0

    return handler


# -- parser ------------------------------------------------------------------------


def _add(p: argparse.ArgumentParser, *names: str, required: bool = False) -> None:
    for name in names:
        if name == "n":
            p.add_argument("--n", type=int, required=required, help="sample size / trial count")
        elif name == "mean":
            p.add_argument("--mean", type=float, required=required, help="sample mean (units of sigma)")
        elif name == "q":
            p.add_argument("--q", type=float, default=3.0, help="Bayes factor threshold (default 3)")
        elif name == "k":
            p.add_argument("--k", type=int, required=required, help="success count")
        elif name == "kind":
            p.add_argument(
                "--kind", type=BfKind.parse, default=BfKind.ROBERT,
                help="conventional Bayes factor: robert, jzs or si (default robert)",
            )
        elif name == "t":
            p.add_argument("--t", type=float, help="t statistic (default mean*sqrt(n))")
        elif name == "prior":
            p.add_argument("--r", type=float, default=JZS_SCALE, help="JZS Cauchy scale")
            p.add_argument(
                "--prior-var", type=float, default=SI_PRIOR_VAR,
                help="scaled-information prior variance",
            )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfdx",
        description="Bayes factors, evidence ratios, Lindley cases and ROPE decisions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")

    groups = parser.add_subparsers(dest="group", metavar="GROUP", required=True)

    def leaf(sub, name: str, handler: Handler, help_text: str, flags=(), required=()):
        p = sub.add_parser(name, parents=[common], help=help_text)
        _add(p, *required, required=True)
        _add(p, *flags)
        p.set_defaults(handler=handler)
        return p

    bf = groups.add_parser("bf", help="Bayes factors").add_subparsers(
        dest="cmd", metavar="COMMAND", required=True
    )
    leaf(bf, "robert", cmd_bf_robert, "Robert factor for mu=0", required=("n", "mean"))
    leaf(bf, "jzs", cmd_bf_jzs, "JZS t-test factor for the null", ("mean", "t", "prior"), ("n",))
    leaf(bf, "si", cmd_bf_si, "scaled-information factor for the null", ("mean", "t", "prior"), ("n",))
    p = leaf(bf, "binom", cmd_bf_binom, "binomial factor for theta=1/2", required=("n", "k"))
    p.add_argument("--theta", type=float, help="also report the point factor of theta vs 1/2")
    p = leaf(bf, "point", cmd_bf_point, "factor for point mu against point mu0", required=("n", "mean"))
    p.add_argument("--mu", type=float, required=True, help="alternative mean")
    p.add_argument("--mu0", type=float, default=0.0, help="null mean (default 0)")
    leaf(bf, "threshold", cmd_bf_threshold, "t where the factor equals q", ("q", "kind", "prior"), ("n",))

    region = groups.add_parser("region", help="support and rejection regions").add_subparsers(
        dest="cmd", metavar="COMMAND", required=True
    )
    leaf(region, "support-gauss", cmd_region_gauss, "Gaussian evidence-ratio regions", ("q",), ("n", "mean"))
    leaf(region, "support-binom", cmd_region_binom, "binomial evidence-ratio regions", ("q",), ("n", "k"))
    leaf(region, "mu-bounds", cmd_region_mu_bounds, "means beating the null by q", ("q",), ("n", "mean"))

    lindley = groups.add_parser("lindley", help="Lindley-case analysis").add_subparsers(
        dest="cmd", metavar="COMMAND", required=True
    )
    leaf(lindley, "range", cmd_lindley_range, "Lindley mean and BF ranges", ("q", "kind", "prior"), ("n",))
    leaf(lindley, "prob", cmd_lindley_prob, "P(Lindley case | H0)", ("q", "kind", "prior"), ("n",))
    leaf(lindley, "asymptote", cmd_lindley_asymptote, "large-n limit of the probability", ("q",))
    leaf(lindley, "detect", cmd_lindley_detect, "diagnose one sample", ("q", "kind", "prior"), ("n", "mean"))

    rope = groups.add_parser("rope", help="ROPE decisions").add_subparsers(
        dest="cmd", metavar="COMMAND", required=True
    )
    p = leaf(rope, "decide", cmd_rope_decide, "accept/reject the null against a ROPE", ("q",), ("n", "mean"))
    p.add_argument("--rope", type=_rope_arg, required=True, metavar="LO,HI",
                   help="ROPE bounds; write --rope=-0.1,0.1 for a negative LO")
    p.add_argument("--null", type=float, default=0.0, help="null value (default 0)")

    sim = groups.add_parser("sim", help="Monte Carlo").add_subparsers(
        dest="cmd", metavar="COMMAND", required=True
    )
    p = leaf(sim, "lindley", cmd_sim_lindley, "simulate the Lindley-case rate", ("q", "kind", "prior"), ("n",))
    p.add_argument("--reps", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)

    fig = groups.add_parser("fig", help="figure data as CSV").add_subparsers(
        dest="cmd", metavar="FIGURE", required=True
    )
    for figure in (1, 2):
        p = fig.add_parser(str(figure), parents=[common], help=f"curves for figure {figure}")
        _add(p, "q")
        p.add_argument("--n", type=int, nargs="+", help="sample size(s), one curve each")
        p.add_argument("--mean", type=float, help="sample mean (default: Robert threshold mean)")
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.set_defaults(handler=_make_fig_handler(figure))

    p = groups.add_parser("quandary", parents=[common], help="boundary quandary pair")
    _add(p, "n", required=True)
    _add(p, "q")
    p.set_defaults(handler=cmd_quandary)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        record, code = args.handler(args)
    except (DomainError, ValueError) as err:
        print(f"bfdx: error: {err}", file=sys.stderr)
        return 2
    except (ConvergenceError, BfdxError, ArithmeticError) as err:
        print(f"bfdx: numerical failure: {err}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except OSError as err:
        print(f"bfdx: I/O error: {err}", file=sys.stderr)
        return 2
    try:
        if record is not None:
            sys.stdout.write(render(record, args.format))
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
