# coeffkit/cli.py
# Usage examples:
#   coeff validate example:nilprod
#   coeff cohomology data/models/h3z2 --invariant
#   coeff compare example:ex52_product --invariant --format table --expect-iso
#   coeff class-status example:nilprod --form "x1^x2^y2^y3"
#   coeff product example:h3z2 example:h3z2 --prefix-a x --prefix-b y --symplectic "x1^y1 + x2^x3 + y2^y3" -o out/ex52.json
#   coeff fuzz --dim 6 --count 100 --seed 42 --jobs 4

from __future__ import annotations
import sys, argparse, json, logging
from pathlib import Path
import pandas as pd

from coeffkit import config
from coeffkit.coeffective import (
    class_status, cohomologically_symplectic, compare, compare_subcomplex, coeffective_cohomology,
    lefschetz_profile, les_verify, tilde_cohomology, validate_symplectic,
)
from coeffkit.complexes import InternalInconsistency, cohomology
from coeffkit.exterior import parse_form
from coeffkit.fuzz import fuzz
from coeffkit.lie import validate_presentation
from coeffkit.model_runtime import (
    model_complex, model_presentation, model_weights, product_model, resolve_model,
)
from coeffkit.registry import FIXED_KEYS, available_keys, builtin_example, verify_golden
from coeffkit.schema import ModelError, format_model
from coeffkit.torus import check_weight_compatibility

log = logging.getLogger("coeffkit.cli")

# ---------------- Output helpers ----------------
def _print_table(title: str, df: pd.DataFrame):
    print(f"\n{title}")
    print("-" * len(title))
    print(df.to_string(index=False))

def _print_json(payload: dict):
    print(json.dumps(payload, indent=2, ensure_ascii=False))

def _yn(x) -> str:
    return "yes" if x else "no"

def _degrees(df: pd.DataFrame, args: argparse.Namespace) -> pd.DataFrame:
    if args.degree is None:
        return df
    out = df[df["p"] == args.degree]
    if out.empty:
        raise ValueError(f"degree {args.degree} is outside 0..{int(df['p'].max())}")
    return out

def _settings(args: argparse.Namespace) -> config.Settings:
    return config.load_settings(args.config, max_generators=getattr(args, "max_gen", None))

def _format(args: argparse.Namespace, settings: config.Settings) -> str:
    return args.format or settings.default_format

def _load(args: argparse.Namespace):
    settings = _settings(args)
    model = resolve_model(args.model)
    mc = model_complex(model, invariant=args.invariant, max_gen=settings.max_generators)
    log.debug("loaded %s: dims %s", model.name, mc.complex.dims())
    return settings, model, mc

def _symplectic(model, C):
    if model.symplectic is None:
        raise ModelError(f"{model.name}: model has no symplectic form")
    return validate_symplectic(C, model.symplectic)

# ---------------- Commands ----------------
def cmd_validate(args: argparse.Namespace) -> int:
    settings = _settings(args)
    model = resolve_model(args.model)
    pres = model_presentation(model)
    report = validate_presentation(pres)
    print(f"model {model.name}: {pres.m} generators")
    for line in report.lines(pres.names):
        print(line)
    if not report.ok:
        return 2
    if model.weights is not None:
        wr = check_weight_compatibility(pres, model_weights(model))
        for line in wr.lines(pres.names):
            print(line)
        if not wr.ok:
            return 2
    elif args.invariant:
        raise ModelError(f"{model.name}: --invariant requires weights")
    if model.symplectic is not None:
        C = model_complex(model, invariant=args.invariant, max_gen=settings.max_generators).complex
        sf = validate_symplectic(C, model.symplectic)
        print(f"symplectic: yes (n = {sf.n}); cohomologically symplectic: {_yn(cohomologically_symplectic(C, sf))}")
    print("OK: model validation passed.")
    return 0

def cmd_cohomology(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    C = mc.complex
    df = pd.DataFrame({"p": list(C.degrees()), "dim": list(C.dims()), "betti": list(cohomology(C).betti)})
    df = _degrees(df, args)
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "invariant": args.invariant,
                     "dims": df["dim"].tolist(), "betti": df["betti"].tolist()})
    else:
        _print_table(f"Cohomology of {C.name}", df)
    return 0

def _range_marker(p: int, n: int) -> str:
    return "yes" if p >= n else "no"

def cmd_coeffective(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    coe = coeffective_cohomology(mc.complex, sf)
    df = pd.DataFrame({"p": list(range(len(coe))), "coeffective": list(coe),
                       "p>=n": [_range_marker(p, sf.n) for p in range(len(coe))]})
    df = _degrees(df, args)
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "n": sf.n, "coeffective": df["coeffective"].tolist()})
    else:
        _print_table(f"Coeffective cohomology of {mc.complex.name} (n = {sf.n})", df)
    return 0

def cmd_tilde(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    tilde = tilde_cohomology(mc.complex, sf)
    df = pd.DataFrame({"p": list(range(len(tilde))), "tilde": list(tilde),
                       "p>=n": [_range_marker(p, sf.n) for p in range(len(tilde))]})
    df = _degrees(df, args)
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "n": sf.n, "tilde": df["tilde"].tolist()})
    else:
        _print_table(f"Reduced cohomology H̃ of {mc.complex.name} (n = {sf.n})", df)
    return 0

def _ps(values) -> str:
    return ",".join(str(int(p)) for p in values) or "none"

def cmd_compare(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    report = compare(mc.complex, sf)
    prof = report.profile
    df = pd.DataFrame([{
        "p": r.p, "betti": r.betti, "coeffective": r.dim_coe, "tilde": r.dim_tilde,
        "coker": r.coker, "coker_direct": r.coker_direct, "verdict": r.verdict,
        "boundary": "*" if r.boundary else "",
        "injective": bool(prof.injective[r.p]), "surjective": bool(prof.surjective[r.p]),
    } for r in report.rows])
    df = _degrees(df, args)
    iso = df[df["verdict"] == "iso"]["p"].tolist()
    non_iso = df[df["verdict"] == "non-iso"]["p"].tolist()
    if _format(args, settings) == "json":
        _print_json({
            "model": model.name, "n": sf.n,
            "betti": df["betti"].tolist(), "coeffective": df["coeffective"].tolist(),
            "tilde": df["tilde"].tolist(), "coker": df["coker"].tolist(),
            "verdict": {str(int(p)): v for p, v in zip(df["p"], df["verdict"])},
            "lefschetz": {"injective": df["injective"].tolist(), "surjective": df["surjective"].tolist()},
        })
    else:
        show = df.drop(columns=["injective", "surjective"])
        _print_table(f"H_coE vs H̃ for {mc.complex.name} (n = {sf.n})", show)
        if not show["boundary"].eq("").all():
            print("* coker_direct (of [ω]: H^{p-1} -> H^{p+1}) differs from the exact-sequence cokernel at p = n")
        if non_iso:
            print(f"not isomorphic: p={_ps(non_iso)}")
        print(f"isomorphic: p={_ps(iso)}")
    if args.expect_iso and non_iso:
        return 1
    return 0

def cmd_lefschetz(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    prof = lefschetz_profile(mc.complex, sf)
    df = pd.DataFrame({"p": list(mc.complex.degrees()), "rank": list(prof.ranks),
                       "injective": list(prof.injective), "surjective": list(prof.surjective)})
    df = _degrees(df, args)
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "n": sf.n,
                     "lefschetz": {"rank": df["rank"].tolist(), "injective": df["injective"].tolist(),
                                   "surjective": df["surjective"].tolist()}})
    else:
        _print_table(f"Lefschetz map ω∧ on {mc.complex.name} (n = {sf.n})", df)
        print(f"injective for p <= n-1 and surjective for p >= n-1: {_yn(prof.hard_lefschetz_shape())}")
    return 0

def cmd_les(args: argparse.Namespace) -> int:
    settings, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    report = les_verify(mc.complex, sf)
    df = pd.DataFrame([{"p": nd.p, "space": nd.space, "dim": nd.dim, "rank_in": nd.rank_in,
                        "nullity_out": nd.nullity_out, "exact": nd.exact} for nd in report.nodes])
    ident = pd.DataFrame(list(report.identity), columns=["p", "coeffective", "tilde", "coker"])
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "n": sf.n, "exact": report.ok,
                     "nodes": df.to_dict(orient="records"), "identity": ident.to_dict(orient="records")})
    else:
        _print_table(f"Long exact sequence for {mc.complex.name} (p >= {sf.n})", df)
        _print_table("dim H_coE = dim H̃ + coker", ident)
        print(f"exact: {_yn(report.ok)}")
    return 0

def cmd_class_status(args: argparse.Namespace) -> int:
    _, model, mc = _load(args)
    sf = _symplectic(model, mc.complex)
    form = parse_form(args.form, model.generators)
    print(class_status(mc.complex, sf, form).line())
    return 0

def cmd_inclusion(args: argparse.Namespace) -> int:
    settings = _settings(args)
    model = resolve_model(args.model)
    mc = model_complex(model, invariant=True, max_gen=settings.max_generators)
    sf = _symplectic(model, mc.complex)
    rep = compare_subcomplex(mc.full, mc.inclusion, sf)
    df = pd.DataFrame({"p": list(range(len(rep.h_iso))),
                       "H_iso": [_yn(x) for x in rep.h_iso],
                       "coE_iso": ["n/a" if x is None else _yn(x) for x in rep.coe_iso]})
    df = _degrees(df, args)
    if _format(args, settings) == "json":
        _print_json({"model": model.name, "n": sf.n, "h_iso": df["H_iso"].tolist(),
                     "coe_iso": df["coE_iso"].tolist(), "hypotheses": rep.hypotheses,
                     "consistent": rep.consistent})
    else:
        _print_table(f"Invariant subcomplex inside {mc.full.name} (n = {sf.n})", df)
        print(f"hypotheses hold: {_yn(rep.hypotheses)}; conclusion consistent: {_yn(rep.consistent)}")
    return 0 if rep.consistent else 1

def cmd_product(args: argparse.Namespace) -> int:
    a, b = resolve_model(args.model_a), resolve_model(args.model_b)
    prod = product_model(a, b, args.prefix_a, args.prefix_b, args.symplectic, args.name)
    text = format_model(prod)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        print(f"OK: Wrote product model {prod.name} ({len(prod.generators)} generators): {out}")
    else:
        print(text, end="")
    return 0

def cmd_example(args: argparse.Namespace) -> int:
    if args.list:
        for key in available_keys():
            print(key)
        return 0
    keys = [args.key] if args.key else list(FIXED_KEYS)
    if args.write_dir:
        out_dir = Path(args.write_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for key in keys:
            path = out_dir / f"{key}.json"
            path.write_text(format_model(builtin_example(key).model), encoding="utf-8")
            print(f"OK: Wrote {path}")
    if args.verify:
        settings = _settings(args)
        bad = 0
        for key in keys:
            problems = verify_golden(builtin_example(key), settings.max_generators)
            print(f"golden {key}: {'ok' if not problems else 'MISMATCH'}")
            for msg in problems:
                print(f"  {msg}")
            bad += len(problems)
        return 1 if bad else 0
    if not args.write_dir:
        if not args.key:
            raise ValueError("give an example key, --list, --write-dir or --verify")
        print(format_model(builtin_example(args.key).model), end="")
    return 0

def cmd_fuzz(args: argparse.Namespace) -> int:
    settings = _settings(args)
    report = fuzz(args.dim, args.count, args.seed, settings, jobs=args.jobs)
    print(report.summary())
    for msg in report.failures:
        print(f"FAIL: {msg}")
    return 0 if report.ok else 1

# ---------------- Parser + main ----------------
def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--config", dest="config", required=False, help="Settings YAML (see data/config/defaults.yaml)")
    c.add_argument("--max-gen", dest="max_gen", type=int, required=False, help="Ambient generator cap")
    c.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    return c

def _model_args(p: argparse.ArgumentParser, degree: bool = True):
    p.add_argument("model", help="Model JSON path or example:KEY")
    p.add_argument("--invariant", action="store_true", help="Use the torus-invariant subcomplex (needs weights)")
    p.add_argument("--format", dest="format", choices=["table", "json"], required=False)
    if degree:
        p.add_argument("--degree", dest="degree", type=int, required=False, help="Report a single degree P")

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coeff", description="Coeffective cohomology of Lie algebra models")
    sub = p.add_subparsers(dest="cmd", required=True)
    common = _common()

    p_val = sub.add_parser("validate", parents=[common], help="Check Jacobi, weights and the symplectic form")
    _model_args(p_val, degree=False)
    p_val.set_defaults(func=cmd_validate)

    for name, func, text in [
        ("cohomology", cmd_cohomology, "Dimensions and betti numbers"),
        ("coeffective", cmd_coeffective, "Coeffective cohomology"),
        ("tilde", cmd_tilde, "Reduced cohomology H̃ = ker [ω]"),
        ("lefschetz", cmd_lefschetz, "Injectivity/surjectivity of ω∧ per degree"),
        ("les", cmd_les, "Verify the long exact sequence"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=text)
        _model_args(sp)
        sp.set_defaults(func=func)

    p_cmp = sub.add_parser("compare", parents=[common], help="H_coE vs H̃ with per-degree verdicts")
    _model_args(p_cmp)
    p_cmp.add_argument("--expect-iso", dest="expect_iso", action="store_true",
                       help="Exit 1 if any degree p >= n is not isomorphic")
    p_cmp.set_defaults(func=cmd_compare)

    p_cls = sub.add_parser("class-status", parents=[common], help="Coeffective and de Rham status of a form")
    _model_args(p_cls, degree=False)
    p_cls.add_argument("--form", dest="form", required=True, help='Form expression, e.g. "x1^x2^y2^y3"')
    p_cls.set_defaults(func=cmd_class_status)

    p_inc = sub.add_parser("inclusion", parents=[common], help="Invariant subcomplex vs the full complex")
    p_inc.add_argument("model", help="Model JSON path or example:KEY (needs weights)")
    p_inc.add_argument("--format", dest="format", choices=["table", "json"], required=False)
    p_inc.add_argument("--degree", dest="degree", type=int, required=False)
    p_inc.set_defaults(func=cmd_inclusion)

    p_prod = sub.add_parser("product", parents=[common], help="Direct-sum product of two models")
    p_prod.add_argument("model_a")
    p_prod.add_argument("model_b")
    p_prod.add_argument("--prefix-a", dest="prefix_a", default="x")
    p_prod.add_argument("--prefix-b", dest="prefix_b", default="y")
    p_prod.add_argument("--symplectic", dest="symplectic", required=False, help="ω over the product generators")
    p_prod.add_argument("--name", dest="name", required=False)
    p_prod.add_argument("-o", "--out", dest="out", required=False, help="Write the product model JSON")
    p_prod.set_defaults(func=cmd_product)

    p_ex = sub.add_parser("example", parents=[common], help="Built-in example models")
    p_ex.add_argument("key", nargs="?", help="Registry key, e.g. nilprod or torus_6")
    p_ex.add_argument("--list", action="store_true", help="List available keys")
    p_ex.add_argument("--write-dir", dest="write_dir", required=False, help="Write model JSON files here")
    p_ex.add_argument("--verify", action="store_true", help="Recompute golden tables")
    p_ex.set_defaults(func=cmd_example)

    p_fz = sub.add_parser("fuzz", parents=[common], help="Random nilpotent models against the invariant suite")
    p_fz.add_argument("--dim", type=int, required=True)
    p_fz.add_argument("--count", type=int, required=True)
    p_fz.add_argument("--seed", type=int, default=0)
    p_fz.add_argument("--jobs", type=int, default=1)
    p_fz.set_defaults(func=cmd_fuzz)

    return p

def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InternalInconsistency as e:
        print(f"INTERNAL ERROR: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2

if __name__ == "__main__":
    raise SystemExit(main())
