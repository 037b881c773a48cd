"""Command-line front end.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
1 parse error, 2 validation failure or refused hypothesis, 3 abelian input,
4 vacuous raising, 5 no congruent character found, 6 self-test failure.
"""

from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction

import click

from . import acceptance
from .cosetmodel import annihilators, class_partition, load_model, validate
from .errors import (
    AbelianInput,
    BadParams,
    EllDividesIndex,
    MZero,
    NoCentralOps,
    NotRankOne,
    ParseError,
    ValidationFailed,
)
from .levelraise import certify, k_characters
from .satake import (
    GL3,
    GSP4,
    SatakeParamsGL3,
    SatakeParamsGSp4,
    allowed_types,
    bruhat_check,
    check_gsp4_condition,
    check_u3_condition,
    classify_gl3,
    classify_gsp4,
    exclusions,
    parahoric_indices,
    profile_gl3,
    profile_gsp4,
    rep_type,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_ABELIAN = 3
EXIT_VACUOUS = 4
EXIT_NOT_FOUND = 5
EXIT_SUITE = 6

SURROGATE_WARNING = "abelianity tested against class-partition surrogate"


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _emit(command: str, inputs, results, warnings=(), code: int = EXIT_OK):
    report = {
        "command": command,
        "inputs_digest": _digest(inputs),
        "results": results,
        "warnings": list(warnings),
    }
    click.echo(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False))
    sys.exit(code)


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path):
    try:
        return load_model(path)
    except ParseError as exc:
        _fail(str(exc), EXIT_PARSE)


@click.group()
def main():
    """Level-raising toolkit for finite double-coset models."""


# ------------------------------------------------------------ validate


@main.command("validate")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--strict", is_flag=True, help="Require every weight to be 1.")
def cmd_validate(path, strict):
    """Validate a model document and report indices and class partition."""
    model = _load(path)
    report = validate(model, strict_torsion_free=strict)
    results = {"model_hash": model.digest(), "validation": report.to_dict()}
    inputs = {"model": model.digest(), "strict": strict}
    if not report.accepted:
        _emit("validate", inputs, results, code=EXIT_VALIDATION)
    ann = {}
    for level in ("K", "Kp", "J"):
        a = annihilators(model, level)
        ann[level] = {"a_min": str(a.a_min), "b_min": str(a.b_min)}
    cp = class_partition(model)
    results["annihilators"] = ann
    results["class_partition"] = {
        "blocks": [list(b) for b in cp.blocks],
        "representatives": list(cp.representatives),
        "radius": {y: str(cp.radius[y]) for y in model.x_j},
    }
    _emit("validate", inputs, results)


# ------------------------------------------------------------ raise


def _pick_character(model, spec: str):
    chars = k_characters(model)
    if spec == "constant":
        for ch in chars:
            if ch.witness is not None and len(set(ch.witness)) == 1:
                return chars.index(ch), ch
        _fail("no constant-function character at level K", EXIT_PARSE)
    try:
        idx = int(spec)
    except ValueError:
        _fail(f"--character must be an index or 'constant', got {spec!r}", EXIT_PARSE)
    if not 0 <= idx < len(chars):
        _fail(f"character index {idx} out of range (0..{len(chars) - 1})", EXIT_PARSE)
    ch = chars[idx]
    if ch.is_symbolic or ch.witness is None:
        _fail(f"character {idx} has irrational values; pass a rational character", EXIT_PARSE)
    return idx, ch


@main.command("raise")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--ell", type=int, required=True, help="The prime ell.")
@click.option("--character", "character", required=True, help="Index into the K-level characters, or 'constant'.")
@click.option("--rank-one", is_flag=True, help="Run the rank-one refinement.")
def cmd_raise(path, ell, character, rank_one):
    """Certify level raising for a K-level character modulo ell."""
    from sympy import isprime

    model = _load(path)
    if not isprime(ell):
        _fail(f"ell = {ell} is not prime", EXIT_PARSE)
    report = validate(model)
    inputs = {"model": model.digest(), "ell": str(ell), "character": character, "rank_one": rank_one}
    if not report.accepted:
        _emit("raise", inputs, {"validation": report.to_dict()}, code=EXIT_VALIDATION)
    idx, eta = _pick_character(model, character)
    try:
        cert = certify(model, eta, ell, rank_one=rank_one)
    except AbelianInput as exc:
        _emit("raise", inputs, {"error": "AbelianInput", "message": str(exc)}, [SURROGATE_WARNING], EXIT_ABELIAN)
    except MZero as exc:
        _emit("raise", inputs, {"error": "MZero", "message": f"raising vacuous: {exc}"}, code=EXIT_VACUOUS)
    except EllDividesIndex as exc:
        _emit("raise", inputs, {"error": "EllDividesIndex", "message": str(exc)}, code=EXIT_VALIDATION)
    except (NoCentralOps, NotRankOne, ValidationFailed) as exc:
        _emit("raise", inputs, {"error": type(exc).__name__, "message": str(exc)}, code=EXIT_VALIDATION)
    results = {"character_index": str(idx), "certificate": cert.to_dict()}
    code = EXIT_OK if cert.status == "found" else EXIT_NOT_FOUND
    _emit("raise", inputs, results, [SURROGATE_WARNING], code)


# ------------------------------------------------------------ classify


def _parse_values(text: str | None):
    if text is None:
        return None
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        _fail(f"cannot parse values {text!r}: {exc}", EXIT_PARSE)


def _type_entry(t) -> dict:
    prof = profile_gl3(t) if t.group == GL3 else profile_gsp4(t)
    d = t.to_dict()
    d["columns"] = list(prof.columns)
    d["dims"] = [str(v) for v in prof.dims]
    return d


def _str_values(vals):
    return [str(v) for v in vals]


@main.command("classify")
@click.option("--group", type=click.Choice(["gl3", "gsp4"]), required=True)
@click.option("--q", "q", type=int, required=True, help="Residue field size.")
@click.option("--chi", default=None, help="Character values: chi1,chi2,chi3 (gl3) or chi1,chi2,sigma (gsp4).")
@click.option("--t", "t", default=None, help="Satake parameter entries for the congruence condition.")
@click.option("--profile", "profile_label", default=None, help="Report the parahoric profile of a type label.")
@click.option("--ell", type=int, default=None, help="Prime for the congruence conditions and exclusions.")
@click.option("--satake-check", is_flag=True, help="Cross-check parahoric indices against the Bruhat count.")
def cmd_classify(group, q, chi, t, profile_label, ell, satake_check):
    """Classify Satake data and report the raising conditions modulo ell."""
    grp = GL3 if group == "gl3" else GSP4
    chi_vals = _parse_values(chi)
    t_vals = _parse_values(t)
    inputs = {
        "group": grp,
        "q": str(q),
        "chi": None if chi_vals is None else _str_values(chi_vals),
        "t": None if t_vals is None else _str_values(t_vals),
        "profile": profile_label,
        "ell": None if ell is None else str(ell),
        "satake_check": satake_check,
    }
    results = {"group": grp, "q": str(q)}
    try:
        if profile_label is not None:
            results["profile"] = _type_entry(rep_type(grp, profile_label))
        if chi_vals is not None:
            if grp == GL3:
                params = SatakeParamsGL3(q, chi_vals)
                types = classify_gl3(params)
                results["params"] = _str_values(params.chi)
            else:
                if len(chi_vals) != 3:
                    raise BadParams("gsp4 takes chi1,chi2,sigma")
                params = SatakeParamsGSp4(q, *chi_vals)
                types = classify_gsp4(params)
                results["params"] = _str_values(params.values)
            results["types"] = [_type_entry(x) for x in types]
        if satake_check:
            idx = parahoric_indices(grp, q)
            results["indices"] = {k: str(v) for k, v in idx.items()}
            results["bruhat_check"] = bruhat_check(grp, q)
        if ell is not None:
            if grp == GL3 and (1 + q + q * q) % ell == 0:
                msg = f"refused: ell = {ell} divides 1+q+q^2 = {1 + q + q * q}"
                _emit("classify", inputs, {"error": "Refused", "message": msg}, code=EXIT_VALIDATION)
            if t_vals is not None:
                cond = check_u3_condition(t_vals, q, ell) if grp == GL3 else check_gsp4_condition(t_vals, q, ell)
                results["condition"] = {
                    "main": cond.flag,
                    "refinement": cond.refinement,
                    "reasons": list(cond.reasons),
                }
            if grp == GSP4:
                results["exclusions"] = sorted(exclusions(q, ell))
            results["allowed_types"] = [x.label for x in allowed_types(grp, q, ell)]
        elif t_vals is not None:
            raise BadParams("--t needs --ell")
    except (BadParams, KeyError) as exc:
        _fail(f"bad parameters: {exc}", EXIT_PARSE)
    _emit("classify", inputs, results)


# ------------------------------------------------------------ selftest


@main.command("selftest")
@click.option("--seed", type=int, default=acceptance.DEFAULT_SEED, show_default=True, help="Seed for randomized criteria.")
@click.option("--only", default=None, help="Comma-separated criterion numbers to run.")
def cmd_selftest(seed, only):
    """Run the acceptance suite; exit 6 on the first failing criterion."""
    numbers = None
    if only:
        try:
            numbers = {int(x) for x in only.split(",")}
        except ValueError:
            _fail(f"cannot parse --only {only!r}", EXIT_PARSE)
    results = acceptance.run_suite(seed=seed, only=numbers)
    for r in results:
        click.echo(r.line(), err=True)
    failed = [r for r in results if not r.ok]
    out = {"seed": str(seed), "criteria": [r.to_dict() for r in results]}
    if failed:
        out["first_failure"] = failed[0].to_dict()
    # timings are left out so the report is reproducible
    _emit("selftest", {"seed": str(seed), "only": sorted(numbers) if numbers else None}, out,
          code=EXIT_SUITE if failed else EXIT_OK)


if __name__ == "__main__":
    main()
