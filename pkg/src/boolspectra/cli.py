"""Command-line driver.

Reports are JSON on stdout (keys sorted, so identical inputs give identical
bytes); ``--human`` switches to a short tabular rendering.  Exit codes:
0 success, 2 parse error, 3 violated construction condition, 4 failed
precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import anfcon, gmm, spectral
from .core import (
    BooleanFunction,
    algebraic_degree,
    classify,
    resiliency_order,
    truth_table_to_anf,
    wht,
)
from .decomp import concatenate_4, four_decompose, verify_5valued_quadruple
from .errors import (
    BoolSpectraError,
    ConstructionError,
    NotBent,
    ParseError,
)
from .expr import parse_expression
from .io import (
    emit_truth_table_hex,
    fixtures_dir,
    function_from_json,
    function_to_json,
    parse_truth_table_hex,
)
from .support import DualFunction, OrderedSupport, bent_distance_to_profile, dual, sequence_profile

EXIT_OK, EXIT_PARSE, EXIT_CONDITION, EXIT_PRECONDITION = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


# -- input resolution -----------------------------------------------------------


def _resolve(path: str, base: Path | None = None) -> Path:
    if path.startswith("fixture:"):
        return fixtures_dir() / path[len("fixture:"):]
    p = Path(path)
    if base is not None and not p.is_absolute():
        p = base / p
    return p


def _read_text(path: str, base: Path | None = None) -> str:
    p = _resolve(path, base)
    try:
        return p.read_text()
    except OSError as e:
        raise CliError(EXIT_PARSE, f"cannot read {p}: {e.strerror}") from None


def read_function(path: str, base: Path | None = None) -> BooleanFunction:
    return parse_truth_table_hex(_read_text(path, base))


def _function(obj, base: Path | None) -> BooleanFunction:
    """A function binding: {"anf", "n"}, {"hex"}, {"bits"}, {"file"} or a bare hex string."""
    if isinstance(obj, str):
        return parse_truth_table_hex(obj)
    if not isinstance(obj, dict):
        raise ParseError(f"bad function binding {obj!r}")
    if "file" in obj:
        return read_function(obj["file"], base)
    return function_from_json(obj)


def _support(obj) -> OrderedSupport:
    if "sequence" in obj:
        return OrderedSupport.from_sequence(int(obj["n"]), [int(w) for w in obj["sequence"]])
    if "points" in obj:
        return OrderedSupport.from_points(int(obj["n"]), [int(w) for w in obj["points"]])
    # {n, v, E} keeps E in the given order
    return OrderedSupport.from_json(obj)


def _dual(obj, base: Path | None) -> DualFunction:
    return DualFunction(_support(obj["support"]), _function(obj["dual"], base))


# -- reports ------------------------------------------------------------------


def function_report(f: BooleanFunction) -> dict:
    W = wht(f)
    c = classify(W)
    rep = {
        "n": f.n,
        "anf": str(truth_table_to_anf(f)),
        "degree": algebraic_degree(f),
        "class": str(c),
        "kind": c.kind,
        "histogram": {str(k): v for k, v in sorted(W.histogram().items())},
        "support_sizes": {str(k): v for k, v in sorted(c.support_sizes().items())},
        "resiliency": resiliency_order(W),
    }
    sup = W.support()
    if len(sup) == 1:
        # affine input: the whole spectrum is one value
        rep["point"] = {"omega": sup[0], "value": int(W[sup[0]])}
    rep.update(function_to_json(f))
    return rep


KIND_NAMES = {"bent": "Bent", "plateaued": "Plateaued", "five_valued": "FiveValued", "other": "Other"}


def _human_class(rep: dict) -> str:
    amps = sorted({abs(int(k)) for k in rep["histogram"]})
    sizes = "/".join(str(v) for _, v in sorted((int(k), v) for k, v in rep["support_sizes"].items()))
    line = f"{KIND_NAMES.get(rep['kind'], rep['kind'])} |W| ∈ {{{','.join(map(str, amps))}}}, supports {sizes}, resiliency {rep['resiliency']}"
    if "point" in rep:
        line += f"; value {rep['point']['value']} at {rep['point']['omega']}"
    return line


def _is_function_report(rep) -> bool:
    return isinstance(rep, dict) and "kind" in rep and "histogram" in rep


def _indent(text: str) -> str:
    return "  " + text.replace("\n", "\n  ")


def render_human(rep) -> str:
    if _is_function_report(rep):
        rows = [_human_class(rep)]
        rows += [f"  {k:<10} {rep[k]}" for k in ("n", "degree", "anf")]
        rows.append("  histogram  " + ", ".join(f"{k}:{v}" for k, v in rep["histogram"].items()))
        return "\n".join(rows)
    if isinstance(rep, list):
        return "\n".join(render_human(x) for x in rep)
    if not isinstance(rep, dict):
        return str(rep)
    out = []
    for k, v in rep.items():
        if _is_function_report(v):
            out += [f"{k}:", _indent(render_human(v))]
        elif isinstance(v, list) and v and all(_is_function_report(x) for x in v):
            out.append(f"{k}:")
            out += [_indent(render_human(x)) for x in v]
        elif isinstance(v, (dict, list)):
            out.append(f"{k:<24} {json.dumps(v, sort_keys=True)}")
        else:
            out.append(f"{k:<24} {v}")
    return "\n".join(out)


def emit(rep, args) -> None:
    text = render_human(rep) if args.human else json.dumps(rep, sort_keys=True, indent=2)
    sys.stdout.write(text + "\n")


# -- recipes ------------------------------------------------------------------

RECIPE_OPS = (
    "construct_plateaued",
    "assemble_five_valued",
    "construction_one",
    "c1",
    "c2",
    "c3",
    "c3q",
    "c4",
    "gmm",
    "concatenate_4",
)


def _need(recipe: dict, *keys):
    missing = [k for k in keys if k not in recipe]
    if missing:
        raise ParseError(f"recipe '{recipe.get('op')}' missing {', '.join(missing)}")
    return [recipe[k] for k in keys]


def _four(fs, base) -> list[BooleanFunction]:
    if not isinstance(fs, list) or len(fs) != 4:
        raise ParseError("expected a list of four functions")
    return [_function(x, base) for x in fs]


def _concat_report(q, alpha: int, beta: int) -> dict:
    rep = {"alpha": alpha, "beta": beta}
    try:
        rep["quadruple"] = verify_5valued_quadruple(*q).to_json()
    except BoolSpectraError as e:
        rep["quadruple"] = {"error": str(e)}
    F = concatenate_4(q, alpha, beta)
    rep["concatenation"] = str(classify(wht(F)))
    rep["bent"] = classify(wht(F)).is_bent
    rep["concatenation_hex"] = emit_truth_table_hex(F)
    return rep


def run_recipe(recipe: dict, base: Path | None = None, seed: int = 0) -> tuple[list[BooleanFunction], dict]:
    """Run one construction; returns the output functions and extra report fields."""
    op = recipe.get("op")
    if op not in RECIPE_OPS:
        raise ParseError(f"unknown op {op!r}; expected one of {', '.join(RECIPE_OPS)}")
    extra: dict = {}
    if op == "construct_plateaued":
        s, g = _need(recipe, "support", "dual")
        f = spectral.construct_plateaued(
            _support(s), _function(g, base), check_weight=recipe.get("check_weight", True)
        )
        return [f], extra
    if op == "assemble_five_valued":
        a, b = _need(recipe, "first", "second")
        pair = spectral.DisjointPair(_dual(a, base), _dual(b, base))
        cert = spectral.certify_totally_disjoint(pair)
        extra["certificate"] = cert.to_json()
        return [spectral.assemble_five_valued(pair, recipe.get("c1"), recipe.get("c2"))], extra
    if op == "construction_one":
        g, h, a = _need(recipe, "g", "h", "a")
        res = spectral.construction_one(_function(g, base), _function(h, base), int(a))
        extra["certificate"] = spectral.certify_totally_disjoint(res.pair).to_json()
        return [res.f], extra
    if op == "c1":
        a, h1, h2, row = _need(recipe, "a", "h1", "h2", "row")
        return [anfcon.construct_c1(_function(a, base), _function(h1, base), _function(h2, base), int(row))], extra
    if op == "c2":
        a, d = _need(recipe, "a", "d")
        q = anfcon.construct_c2_quadruple(_four(a, base), _four(d, base))
        extra.update(_concat_report(q, *recipe.get("alpha_beta", (1, 2))))
        return list(q), extra
    if op == "c3":
        (h,) = _need(recipe, "h")
        return [anfcon.construct_c3(_four(h, base))], extra
    if op == "c3q":
        (grid,) = _need(recipe, "grid")
        if not isinstance(grid, list) or len(grid) != 4:
            raise ParseError("grid must be 4 rows of 4 functions")
        q = anfcon.construct_c3_quadruple([_four(row, base) for row in grid])
        extra.update(_concat_report(q, *recipe.get("alpha_beta", (1, 2))))
        return list(q), extra
    if op == "c4":
        a, h1, h2, g1, g2, case = _need(recipe, "a", "h1", "h2", "g1", "g2", "case")
        fa, f1, f2 = (_function(x, base) for x in (a, h1, h2))
        f = anfcon.construct_c4(fa, f1, f2, _function(g1, base), _function(g2, base), str(case))
        if case == "i":
            extra["zeta"] = function_to_json(anfcon.c4_zeta(fa, f1, f2))
        return [f], extra
    if op == "gmm":
        if "spec" in recipe:
            spec = gmm.GmmSpec.from_json(recipe["spec"])
        elif "default" in recipe:
            d = recipe["default"]
            spec = gmm.gmm_default_maps(
                int(d["n"]), int(d["s"]), int(d["t"]), int(d["e0_size"]), int(d.get("min_weight", 0))
            )
        elif "random" in recipe:
            d = recipe["random"]
            rng = np.random.default_rng(int(d.get("seed", seed)))
            spec = gmm.random_gmm_spec(
                rng, int(d["n"]), int(d["s"]), int(d["t"]), int(d.get("min_weight", 0)), d.get("e0_size")
            )
        else:
            raise ParseError("gmm recipe needs 'spec', 'default' or 'random'")
        rep = gmm.gmm_report(spec)
        extra["spec"] = spec.to_json()
        extra["gmm"] = rep.to_json()
        return [rep.f], extra
    fs, alpha, beta = _need(recipe, "functions", "alpha", "beta")
    return [concatenate_4(_four(fs, base), int(alpha), int(beta))], extra


def _write_outputs(fs: list[BooleanFunction], out: str | None) -> list[str]:
    if not out:
        return []
    p = Path(out)
    if len(fs) == 1:
        paths = [p]
    else:
        stem = p.name[: -len(".tt.hex")] if p.name.endswith(".tt.hex") else p.stem
        paths = [p.with_name(f"{stem}_{i}.tt.hex") for i in range(1, len(fs) + 1)]
    for f, q in zip(fs, paths):
        q.write_text(emit_truth_table_hex(f) + "\n")
    return [str(q) for q in paths]


# -- commands -----------------------------------------------------------------


def cmd_classify(args) -> dict:
    return function_report(read_function(args.input))


def cmd_build(args) -> dict:
    path = _resolve(args.recipe)
    try:
        recipe = json.loads(_read_text(args.recipe))
    except json.JSONDecodeError as e:
        raise CliError(EXIT_PARSE, f"recipe is not JSON: {e}") from None
    if not isinstance(recipe, dict):
        raise CliError(EXIT_PARSE, "recipe must be a JSON object")
    fs, extra = run_recipe(recipe, path.parent, args.seed)
    rep: dict = {"op": recipe["op"]}
    if len(fs) == 1:
        rep["result"] = function_report(fs[0])
    else:
        rep["results"] = [function_report(f) for f in fs]
    rep.update(extra)
    written = _write_outputs(fs, args.out)
    if written:
        rep["written"] = written
    return rep


def cmd_decompose(args):
    f = read_function(args.input)
    n = f.n
    try:
        if args.all:
            pairs = [(a, b) for a in range(1, 1 << n) for b in range(1, 1 << n) if a != b]
            return [four_decompose(f, a, b).to_json() for a, b in pairs]
        return four_decompose(f, args.alpha, args.beta).to_json()
    except NotBent as e:
        raise CliError(EXIT_PRECONDITION, str(e)) from None
    except ValueError as e:
        if isinstance(e, BoolSpectraError):
            raise
        raise CliError(EXIT_PRECONDITION, str(e)) from None


def cmd_certify(args) -> dict:
    obj = json.loads(_read_text(args.pair))
    base = _resolve(args.pair).parent
    if obj.get("op") == "assemble_five_valued" or "first" in obj:
        pair = spectral.DisjointPair(_dual(obj["first"], base), _dual(obj["second"], base))
    else:
        raise CliError(EXIT_PARSE, "expected a pair with 'first' and 'second'")
    rep = spectral.certify_totally_disjoint(pair).to_json()
    rep["n"] = pair.n
    return rep


def cmd_profile(args) -> dict:
    p = _resolve(args.input)
    own_dual = None
    if p.name.endswith(".support.json"):
        s = _support(json.loads(_read_text(args.input)))
    elif p.name.endswith(".json"):
        d = _dual(json.loads(_read_text(args.input)), p.parent)
        s, own_dual = d.support, d.g
    else:
        d = dual(wht(read_function(args.input)))
        s, own_dual = d.support, d.g
    prof = sequence_profile(s)
    rep = {
        "n": s.n,
        "support": s.to_json(),
        "m": prof.m,
        "rank": prof.rank,
        "generators": [str(truth_table_to_anf(g)) for g in prof.generators],
        "distinct": sum(1 for _ in prof.distinct()),
    }
    g = own_dual
    if args.dual is not None:
        q = Path(args.dual)
        g = read_function(args.dual) if q.exists() else parse_expression(args.dual, prof.m)
    if g is not None:
        rep["dual"] = str(truth_table_to_anf(g))
        rep["bent_distance"] = bent_distance_to_profile(g, prof)
        corr = prof.correlations(g)
        rep["correlations"] = {str(int(k)): int(v) for k, v in zip(*np.unique(corr, return_counts=True))}
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    common.add_argument("--human", action="store_true", help="tabular output instead of JSON")
    common.add_argument("--out", default=None, help="write the produced artifact here")

    ap = argparse.ArgumentParser(prog="boolspectra", description="Five-valued spectra toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", parents=[common], help="spectral class of a hex truth table")
    p.add_argument("input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("build", parents=[common], help="run a construction recipe")
    p.add_argument("recipe")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("decompose", parents=[common], help="4-decomposition of a bent function")
    p.add_argument("input")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--all", action="store_true", help="sweep every ordered (alpha, beta) pair")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", parents=[common], help="total disjointness of a pair of duals")
    p.add_argument("pair")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("profile", parents=[common], help="sequence profile and bent-distance query")
    p.add_argument("input", help=".support.json, dual .json, or a hex truth table")
    p.add_argument("--dual", default=None, help="hex file or ANF expression to test")
    p.set_defaults(func=cmd_profile)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
        if args.cmd != "build" and args.out:
            Path(args.out).write_text(json.dumps(rep, sort_keys=True, indent=2) + "\n")
        emit(rep, args)
        return EXIT_OK
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ParseError, json.JSONDecodeError, KeyError, TypeError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ConstructionError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_CONDITION
    except (BoolSpectraError, ValueError) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
