"""forge: exact random-walk products, verdicts, and searches over pointed graphs.

Exit codes: 0 = result produced, 1 = a verified property failed,
2 = usage or input error.
"""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction

import click

from . import cayley as cy
from .errors import ForgeError
from .fixtures import resolve_spec
from .graphs import check_assumptions, index_set
from .hypergroup import (
    build_table,
    check_S1,
    check_S2,
    check_distance_regular,
    classify,
)
from .matrices import (
    commute_check,
    irreducibility,
    norm_bounds,
    stationary_check,
    transition_matrix,
    uniform_norm_bound,
    verify_maincoro,
    verify_regular_representation,
)
from .regression import paper_regression
from .search import replay_counterexample, search_conjecture
from .serialize import dumps_json, dumps_tsv, jsonable, parse_frac
from .walks import (
    brute_force_conditional,
    joint_distance_law,
    jump_distribution,
    left_nested_product,
    markov_check,
    monte_carlo_conditional,
)

FAIL = 1
USAGE = 2


def _tsv_rows(data, prefix=""):
    if isinstance(data, dict):
        for key in data:
            yield from _tsv_rows(data[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(data, list):
        for idx, item in enumerate(data):
            yield from _tsv_rows(item, f"{prefix}.{idx}" if prefix else str(idx))
    else:
        yield (prefix, "" if data is None else data)


def _emit(ctx, payload) -> None:
    cfg = ctx.obj
    data = jsonable(payload)
    if cfg["format"] == "json":
        text = dumps_json(data)
    else:
        text = dumps_tsv(_tsv_rows(data), header=("field", "value"))
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _forge_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ForgeError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(USAGE)

    return wrapper


def _pattern_arg(text: str) -> tuple[int, ...]:
    try:
        pat = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.UsageError(f"--pattern must be comma-separated integers: {text!r}")
    if not pat:
        raise click.UsageError("--pattern must be nonempty")
    return pat


def _alpha_arg(text: str):
    """'uniform' or a JSON file mapping index -> rational weight."""
    if text == "uniform":
        return None
    try:
        with open(text, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read alpha file {text}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"alpha file {text} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise click.UsageError("alpha file must be a JSON object of index -> weight")
    alpha = {}
    for key, value in raw.items():
        idx = int(key)
        if isinstance(value, str):
            alpha[idx] = parse_frac(value)
        elif isinstance(value, int):
            alpha[idx] = Fraction(value)
        else:
            alpha[idx] = Fraction(str(value))
    return alpha


def _group_for(spec: str) -> cy.CayleyGraph:
    """A Cayley group from a group spec, or from a Cayley-backed fixture."""
    try:
        return cy.parse_group_spec(spec)
    except ForgeError:
        pg = resolve_spec(spec)
        if pg.cayley is None:
            raise
        return pg.cayley.cg


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report to a file instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv"]), default="json", show_default=True, help="Report serialization.")
@click.option("--seed", type=int, default=0, show_default=True, help="Monte-Carlo seed.")
@click.option("--cap-enumeration", type=int, default=None, help="Max tuples for brute-force products.")
@click.option("--cap-pattern", type=int, default=None, help="Max pattern space for joint laws.")
@click.option("--cap-graphs", type=int, default=None, help="Max graphs for the conjecture search.")
@click.option("--cap-window", type=int, default=None, help="Max vertices in a realized window.")
@click.pass_context
def main(ctx, out, fmt, seed, cap_enumeration, cap_pattern, cap_graphs, cap_window):
    """Exact hypergroup products, walk laws, and operator bounds on pointed graphs."""
    for name, cap in (
        ("--cap-enumeration", cap_enumeration),
        ("--cap-pattern", cap_pattern),
        ("--cap-graphs", cap_graphs),
        ("--cap-window", cap_window),
    ):
        if cap is not None and cap < 1:
            raise click.UsageError(f"{name} must be positive")
    ctx.obj = {
        "out": out,
        "format": fmt,
        "seed": seed,
        "cap_enumeration": cap_enumeration,
        "cap_pattern": cap_pattern,
        "cap_graphs": cap_graphs,
        "cap_window": cap_window,
    }


@main.group()
def graph():
    """Pointed-graph loading and assumption checks."""


@graph.command("check")
@click.argument("spec")
@click.pass_context
@_forge_errors
def graph_check(ctx, spec):
    """Verify simplicity, connectivity, local finiteness, and condition (iii)."""
    pg = resolve_spec(spec)
    report = check_assumptions(pg)
    indices, top = index_set(pg)
    _emit(
        ctx,
        {
            "graph": pg.name,
            "vertices": pg.vertex_count,
            "index_set": {"indices": indices, "top": top},
            "assumptions": report,
        },
    )
    if not report.passed:
        sys.exit(FAIL)


@main.group()
def cayley():
    """Cayley-graph realization and translation checks."""


@cayley.command("realize")
@click.argument("spec")
@click.option("--radius", type=int, default=None, help="Window radius; omit to realize a finite group fully.")
@click.pass_context
@_forge_errors
def cayley_realize(ctx, spec, radius):
    """Realize a group window as a pointed-graph JSON object."""
    cg = cy.parse_group_spec(spec)
    cap = ctx.obj["cap_window"]
    kwargs = {"cap": cap} if cap else {}
    if radius is None:
        pg = cy.realize_full(cg, **kwargs)
    else:
        pg = cy.realize_window(cg, radius, **kwargs)
    _emit(ctx, pg)


@cayley.command("s3")
@click.argument("spec")
@click.option("--radius", type=int, required=True, help="Window radius for the translation identity check.")
@click.pass_context
@_forge_errors
def cayley_s3(ctx, spec, radius):
    """Check d(v, vw) = |w| against raw window BFS."""
    report = cy.check_S3(cy.parse_group_spec(spec), radius)
    _emit(ctx, report)
    if not report.passed:
        sys.exit(FAIL)


@main.group()
def hyper():
    """Structure constants, classification, walk conditions."""


@hyper.command("table")
@click.argument("spec")
@click.option("--bound", type=int, default=None, help="Largest row index; defaults to the full/certifiable range.")
@click.pass_context
@_forge_errors
def hyper_table(ctx, spec, bound):
    """The table of products x_i o x_j up to the bound."""
    _emit(ctx, build_table(resolve_spec(spec), bound=bound))


@hyper.command("classify")
@click.argument("spec")
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def hyper_classify(ctx, spec, bound):
    """Hypergroup / PreHypergroupOnly verdict with the first witness."""
    _emit(ctx, classify(build_table(resolve_spec(spec), bound=bound)))


@hyper.command("conditions")
@click.argument("spec")
@click.pass_context
@_forge_errors
def hyper_conditions(ctx, spec):
    """Assumptions, both walk conditions, and (finite only) distance regularity."""
    pg = resolve_spec(spec)
    assumptions = check_assumptions(pg)
    s1 = check_S1(pg)
    s2 = check_S2(pg)
    payload = {"graph": pg.name, "assumptions": assumptions, "S1": s1, "S2": s2}
    if not pg.truncated:
        payload["distance_regular"] = check_distance_regular(pg)
    _emit(ctx, payload)
    if not (assumptions.passed and s1.passed and s2.passed):
        sys.exit(FAIL)


@main.group()
def product():
    """m-fold products: left-nested, jump DP, brute force, Monte Carlo."""


@product.command("pl")
@click.argument("spec")
@click.option("--pattern", required=True)
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def product_pl(ctx, spec, pattern, bound):
    """Left-nested product PL(i_1, ..., i_m)."""
    pat = _pattern_arg(pattern)
    table = build_table(resolve_spec(spec), bound=bound)
    _emit(ctx, {"pattern": pat, "law": left_nested_product(table, pat)})


@product.command("j")
@click.argument("spec")
@click.option("--pattern", required=True)
@click.pass_context
@_forge_errors
def product_j(ctx, spec, pattern):
    """Jump distribution J(i_1, ..., i_m)."""
    pat = _pattern_arg(pattern)
    _emit(ctx, {"pattern": pat, "law": jump_distribution(resolve_spec(spec), pat)})


@product.command("brute")
@click.argument("spec")
@click.option("--pattern", required=True)
@click.pass_context
@_forge_errors
def product_brute(ctx, spec, pattern):
    """Exact conditional law by full enumeration (Cayley graphs)."""
    pat = _pattern_arg(pattern)
    cg = _group_for(spec)
    cap = ctx.obj["cap_enumeration"]
    kwargs = {"cap": cap} if cap else {}
    _emit(ctx, {"pattern": pat, "law": brute_force_conditional(cg, pat, **kwargs)})


@product.command("mc")
@click.argument("spec")
@click.option("--pattern", required=True)
@click.option("--trials", type=int, default=100_000, show_default=True)
@click.pass_context
@_forge_errors
def product_mc(ctx, spec, pattern, trials):
    """Monte-Carlo estimate of the conditional law (Cayley graphs)."""
    pat = _pattern_arg(pattern)
    cg = _group_for(spec)
    _emit(ctx, monte_carlo_conditional(cg, pat, trials, seed=ctx.obj["seed"]))


@main.group()
def walk():
    """The distance process Z_n of a group random walk."""


@walk.command("joint")
@click.argument("spec")
@click.option("--alpha", default="uniform", show_default=True, help="'uniform' or a JSON file of index -> weight.")
@click.option("--depth", type=int, default=2, show_default=True)
@click.pass_context
@_forge_errors
def walk_joint(ctx, spec, alpha, depth):
    """Exact joint law of (Z_1, ..., Z_depth) for a finite Cayley walk."""
    cg = _group_for(spec)
    cap = ctx.obj["cap_pattern"]
    kwargs = {"pattern_cap": cap} if cap else {}
    _emit(ctx, joint_distance_law(cg, _alpha_arg(alpha), depth, **kwargs))


@walk.command("markov")
@click.argument("spec")
@click.option("--alpha", default="uniform", show_default=True)
@click.option("--depth", type=int, default=3, show_default=True)
@click.pass_context
@_forge_errors
def walk_markov(ctx, spec, alpha, depth):
    """Markov / i.i.d. verdicts for the distance process."""
    cg = _group_for(spec)
    cap = ctx.obj["cap_pattern"]
    kwargs = {"pattern_cap": cap} if cap else {}
    law = joint_distance_law(cg, _alpha_arg(alpha), depth, **kwargs)
    report = markov_check(law)
    _emit(ctx, report)
    if not report.is_markov:
        sys.exit(FAIL)


@main.group()
def matrix():
    """Transition matrices P_k and operator-norm bounds."""


@matrix.command("norms")
@click.argument("spec")
@click.option("--k", type=int, required=True)
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def matrix_norms(ctx, spec, k, bound):
    """Exact c_k, d_k, and Rayleigh lower bounds for ||P_k||."""
    table = build_table(resolve_spec(spec), bound=bound)
    _emit(ctx, norm_bounds(table, k))


@matrix.command("uniform-bound")
@click.argument("spec")
@click.pass_context
@_forge_errors
def matrix_uniform_bound(ctx, spec):
    """S = sup |S_k(v)| and the uniform bound S^2 on every ||P_k||."""
    _emit(ctx, uniform_norm_bound(resolve_spec(spec)))


@matrix.command("commute")
@click.argument("spec")
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def matrix_commute(ctx, spec, bound):
    """Do all P_i P_j = P_j P_i? Cross-checked against classification."""
    report = commute_check(build_table(resolve_spec(spec), bound=bound))
    _emit(ctx, report)
    if not report.commutes:
        sys.exit(FAIL)


@matrix.command("regular-rep")
@click.argument("spec")
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def matrix_regular_rep(ctx, spec, bound):
    """Verify P_i P_j = sum_k p[i,j][k] P_k entrywise."""
    report = verify_regular_representation(build_table(resolve_spec(spec), bound=bound))
    _emit(ctx, report)
    if not report.passed:
        sys.exit(FAIL)


@matrix.command("stationary")
@click.argument("spec")
@click.pass_context
@_forge_errors
def matrix_stationary(ctx, spec):
    """pi_G = (|S_0|, ..., |S_M|)/|G| as a fixed vector of every P_k."""
    report = stationary_check(_group_for(spec))
    _emit(ctx, report)
    if not report.passed:
        sys.exit(FAIL)


@matrix.command("maincoro")
@click.argument("spec")
@click.option("--pattern", required=True)
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def matrix_maincoro(ctx, spec, pattern, bound):
    """Check the product of transition matrices against the jump law."""
    pat = _pattern_arg(pattern)
    table = build_table(resolve_spec(spec), bound=bound)
    report = verify_maincoro(table, pat)
    _emit(ctx, report)
    if not report.passed:
        sys.exit(FAIL)


@matrix.command("irreducible")
@click.argument("spec")
@click.option("--k", type=int, required=True)
@click.option("--bound", type=int, default=None)
@click.pass_context
@_forge_errors
def matrix_irreducible(ctx, spec, k, bound):
    """Communicating classes of P_k."""
    table = build_table(resolve_spec(spec), bound=bound)
    _emit(ctx, irreducibility(transition_matrix(table, k)))


@main.group()
def search():
    """Counterexample search over small connected graphs."""


@search.command("conjecture")
@click.option("--max-vertices", type=int, default=6, show_default=True)
@click.option("--bases", type=click.Choice(["all", "canonical"]), default="all", show_default=True)
@click.pass_context
@_forge_errors
def search_cmd(ctx, max_vertices, bases):
    """Scan for graphs that satisfy the walk conditions without being hypergroups."""
    if max_vertices > 10:
        raise click.UsageError("--max-vertices capped at 10")
    cap = ctx.obj["cap_graphs"]
    kwargs = {"cap": cap} if cap else {}
    report = search_conjecture(max_vertices, base_policy=bases, **kwargs)
    replay_ok = True
    for entry in report.counterexamples:
        replayed = replay_counterexample(entry)[3]
        if replayed.verdict != entry.verdict:
            replay_ok = False
    payload = report.to_jsonable()
    payload["replay_verified"] = replay_ok
    _emit(ctx, payload)
    if not replay_ok:
        sys.exit(FAIL)


@main.command("paper-regression")
@click.pass_context
@_forge_errors
def paper_regression_cmd(ctx):
    """Recompute every published worked example; any mismatch fails the run."""
    report = paper_regression()
    _emit(ctx, report)
    if not report.passed:
        sys.exit(FAIL)


if __name__ == "__main__":
    main()
