"""Command-line front end.

Subcommands: eval | check | hunt | props | selftest.  Inputs are JSON
documents, outputs are JSON (single objects on stdout, JSONL streams for
records); errors land on stderr as a structured JSON object.

Exit codes:
    0  success, no violations
    1  violations found (hunt, or check with a Violated verdict)
    2  input or validation error
    3  numerical failure (non-finite integrand, unresolved budget)

Numbers are serialized with 17 significant digits so identical invocations
produce byte-identical output.  No environment variable affects any
computed value; configuration is explicit in files and flags (the only
environment knob, SHEETBOX_BACKEND, swaps equivalent kernel
implementations).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .core import DOT, SYMPLECTIC2D, Pairing
from .errors import NonFiniteIntegrand, SheetboxError, ValidationError
from .falsify import SearchConfig, hunt_with_stats
from .jsonio import dump_line, dumps
from .localprod import (
    LocalProductInstance,
    local_product_closed_info,
    local_product_direct_info,
)
from .quadrature import DEFAULT_SEED, QuadratureConfig
from .sheets import SHEET_KINDS, Sheet
from .suites import modulus_suite, selftest_run, swap_suite
from .theorems import THEOREM_IDS, VIOLATED, TheoremReport, theorem_report

_PAIRINGS = {"dot": DOT, "symplectic2d": SYMPLECTIC2D}

_QUAD_FIELDS = ("method", "nodes", "samples", "seed", "rel_tol", "max_levels")


# --------------------------------------------------------------------------
# document parsing
# --------------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top-level JSON value must be an object")
    return doc


def _require_number_list(doc: dict, field: str) -> list[float]:
    if field not in doc:
        raise ValidationError(f"missing required field {field!r}")
    raw = doc[field]
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"field {field!r} must be a non-empty list of numbers")
    out = []
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise ValidationError(f"field {field!r} must contain finite numbers")
        out.append(float(v))
    return out


def _optional_int(doc: dict, field: str) -> int | None:
    if field not in doc:
        return None
    v = doc[field]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"field {field!r} must be an integer")
    return v


def normalize_instance_document(doc: dict) -> dict:
    """Validate an instance document and return its canonical form.

    The canonical form re-parses to an identical document, field for field.
    """
    allowed = {"a", "b", "s", "k", "sheet", "pairing", "quadrature"}
    for key in doc:
        if key not in allowed:
            raise ValidationError(f"unknown field {key!r} in instance document")
    a = _require_number_list(doc, "a")
    b = _require_number_list(doc, "b")
    if len(a) != len(b):
        raise ValidationError(f"fields 'a' and 'b' must have equal length ({len(a)} vs {len(b)})")
    out: dict = {"a": a, "b": b}
    s = _optional_int(doc, "s")
    k = _optional_int(doc, "k")
    if s is not None:
        out["s"] = s
    if k is not None:
        out["k"] = k
    if "sheet" in doc:
        if doc["sheet"] not in SHEET_KINDS:
            raise ValidationError(
                f"field 'sheet' must be one of {'|'.join(SHEET_KINDS)}, got {doc['sheet']!r}"
            )
        out["sheet"] = doc["sheet"]
    if "pairing" in doc:
        if doc["pairing"] not in _PAIRINGS:
            raise ValidationError(
                f"field 'pairing' must be one of {'|'.join(_PAIRINGS)}, got {doc['pairing']!r}"
            )
        out["pairing"] = doc["pairing"]
    if "quadrature" in doc:
        q = doc["quadrature"]
        if not isinstance(q, dict):
            raise ValidationError("field 'quadrature' must be an object")
        for key in q:
            if key not in _QUAD_FIELDS:
                raise ValidationError(f"unknown field 'quadrature.{key}'")
        out["quadrature"] = {key: q[key] for key in _QUAD_FIELDS if key in q}
    return out


def quadrature_config_from(doc: dict, seed_override: int | None = None) -> QuadratureConfig:
    """Build the quadrature configuration: flag > file > defaults."""
    q = doc.get("quadrature", {})
    method = q.get("method", "auto")
    if method not in ("gl", "mc", "auto"):
        raise ValidationError(f"field 'quadrature.method' must be gl|mc, got {method!r}")
    kwargs = dict(method=method)
    for field, caster in (
        ("nodes", int), ("samples", int), ("seed", int),
        ("rel_tol", float), ("max_levels", int),
    ):
        if field in q:
            v = q[field]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValidationError(f"field 'quadrature.{field}' must be a number")
            kwargs[field] = caster(v)
    if seed_override is not None:
        kwargs["seed"] = seed_override
    try:
        return QuadratureConfig(**kwargs)
    except ValidationError as exc:
        raise ValidationError(f"field 'quadrature': {exc}") from None


def _pairing_of(doc: dict) -> Pairing:
    return _PAIRINGS[doc.get("pairing", "dot")]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _integration_payload(info) -> dict:
    payload = {
        "re": info.value.real,
        "im": info.value.imag,
        "error_estimate": info.error_estimate,
    }
    if info.integration is not None:
        payload["method"] = info.integration.method_used
        payload["evaluations"] = info.integration.evaluations
        payload["converged"] = info.integration.converged
    return payload


def _cmd_eval(args) -> int:
    doc = normalize_instance_document(_load_json(args.instance))
    if "k" not in doc:
        raise ValidationError("eval requires field 'k'")
    if "s" in doc:
        raise ValidationError("eval uses field 'k'; remove field 's'")
    if "sheet" not in doc:
        raise ValidationError("eval requires field 'sheet'")
    cfg = quadrature_config_from(doc, args.seed)
    inst = LocalProductInstance(
        doc["a"], doc["b"], doc["k"], Sheet(doc["sheet"]), _pairing_of(doc)
    )
    out: dict = {"instance": doc, "path": args.path}
    unresolved = False
    if args.path in ("direct", "both"):
        info = local_product_direct_info(inst, cfg)
        out["direct"] = _integration_payload(info)
        unresolved = unresolved or not info.converged
    if args.path in ("closed", "both"):
        info = local_product_closed_info(inst, cfg)
        out["closed"] = _integration_payload(info)
        unresolved = unresolved or not info.converged
    if args.path == "both":
        d = complex(out["direct"]["re"], out["direct"]["im"])
        c = complex(out["closed"]["re"], out["closed"]["im"])
        out["abs_discrepancy"] = abs(d - c)
        out["rel_discrepancy"] = abs(d - c) / max(abs(c), 1e-300)
    sys.stdout.write(dumps(out) + "\n")
    return 3 if unresolved else 0


def _report_payload(report: TheoremReport, note: str | None = None) -> dict:
    payload = {
        "type": "theorem_report",
        "theorem": report.theorem_id,
        "a": list(report.a),
        "b": list(report.b),
        "s": report.s,
        "k": report.k,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "lhs_error": report.lhs_error,
        "margin": report.margin,
        "verdict": report.verdict,
    }
    if note:
        payload["note"] = note
    return payload


def _cmd_check(args) -> int:
    doc = normalize_instance_document(_load_json(args.instance))
    if "s" not in doc:
        raise ValidationError("check requires field 's'")
    if "k" in doc:
        raise ValidationError("check derives k from s; remove field 'k'")
    if doc.get("pairing", "dot") != "dot":
        raise ValidationError("check uses the dot pairing; remove field 'pairing'")
    cfg = quadrature_config_from(doc, args.seed)
    report = theorem_report(args.theorem, doc["a"], doc["b"], doc["s"], cfg, args.allow_s0)
    note = "s=0 is outside the stated range of the inequality" if doc["s"] == 0 else None
    sys.stdout.write(dumps(_report_payload(report, note)) + "\n")
    if not report.converged:
        return 3
    return 1 if report.verdict == VIOLATED else 0


def _search_config_from(doc: dict, theorem: str, seed_override: int | None) -> SearchConfig:
    allowed = {
        "n_range", "s_range", "pairing_value_range", "component_range",
        "samples", "seed", "max_attempts_per_sample", "quadrature",
    }
    for key in doc:
        if key not in allowed:
            raise ValidationError(f"unknown field {key!r} in search config")
    kwargs: dict = {"theorem_id": theorem}
    for field in ("n_range", "s_range", "pairing_value_range", "component_range"):
        if field in doc:
            v = doc[field]
            if not isinstance(v, list) or len(v) != 2:
                raise ValidationError(f"field {field!r} must be a [lo, hi] pair")
            kwargs[field] = tuple(v)
    for field in ("samples", "seed", "max_attempts_per_sample"):
        if field in doc:
            v = doc[field]
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"field {field!r} must be an integer")
            kwargs[field] = v
    if seed_override is not None:
        kwargs["seed"] = seed_override
    return SearchConfig(**kwargs)


def _cmd_hunt(args) -> int:
    doc = _load_json(args.config)
    sc = _search_config_from(doc, args.theorem, args.seed)
    cfg = quadrature_config_from(doc)
    outcome = hunt_with_stats(sc, cfg)
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in outcome.records:
            fh.write(
                dump_line(
                    {
                        "type": "violation",
                        "theorem": sc.theorem_id,
                        "sample_index": rec.sample_index,
                        "a": list(rec.a),
                        "b": list(rec.b),
                        "s": rec.s,
                        "k": rec.k,
                        "lhs": rec.lhs,
                        "rhs": rec.rhs,
                        "margin": rec.margin,
                        "lhs_error": rec.lhs_error,
                    }
                )
            )
    summary = {
        "samples": outcome.samples,
        "evaluated": outcome.evaluated,
        "violations": outcome.violations,
        "inconclusive": outcome.inconclusive,
        "skipped": outcome.skipped,
    }
    sys.stdout.write(dumps(summary) + "\n")
    return 1 if outcome.violations else 0


def _cmd_props(args) -> int:
    suite = swap_suite if args.suite == "swap" else modulus_suite
    result = suite(args.trials, args.seed)
    sys.stdout.write(
        dumps(
            {
                "suite": args.suite,
                "trials": result.total,
                "passed": result.passed,
                "worst": result.worst,
            }
        )
        + "\n"
    )
    return 0 if result.all_passed else 1


def _cmd_selftest(args) -> int:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            ok = selftest_run(fh, args.scale)
        sys.stdout.write(dumps({"selftest": "pass" if ok else "fail", "log": args.out}) + "\n")
    else:
        ok = selftest_run(sys.stdout, args.scale)
    return 0 if ok else 1


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheetbox",
        description="Box integrals of sheet-composed phase kernels: evaluate, "
        "check inequalities, hunt counterexamples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one local product")
    p_eval.add_argument("--instance", required=True, help="instance JSON file")
    p_eval.add_argument("--path", choices=("direct", "closed", "both"), default="direct")
    p_eval.add_argument("--seed", type=int, default=None, help="override the quadrature seed")
    p_eval.set_defaults(func=_cmd_eval)

    p_check = sub.add_parser("check", help="verdict for one inequality instance")
    p_check.add_argument("--theorem", choices=THEOREM_IDS, required=True)
    p_check.add_argument("--instance", required=True, help="instance JSON file")
    p_check.add_argument("--seed", type=int, default=None, help="override the quadrature seed")
    p_check.add_argument(
        "--allow-s0", action="store_true",
        help="permit s = 0 (outside the inequality's stated range)",
    )
    p_check.set_defaults(func=_cmd_check)

    p_hunt = sub.add_parser("hunt", help="seeded random search for violations")
    p_hunt.add_argument("--theorem", choices=THEOREM_IDS, required=True)
    p_hunt.add_argument("--config", required=True, help="search config JSON file")
    p_hunt.add_argument("--out", required=True, help="JSONL output for violation records")
    p_hunt.add_argument("--seed", type=int, default=None, help="override the search seed")
    p_hunt.set_defaults(func=_cmd_hunt)

    p_props = sub.add_parser("props", help="run a property suite")
    p_props.add_argument("--suite", choices=("swap", "modulus"), required=True)
    p_props.add_argument("--trials", type=int, default=50)
    p_props.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_props.set_defaults(func=_cmd_props)

    p_self = sub.add_parser("selftest", help="run the acceptance checks")
    p_self.add_argument("--scale", choices=("full", "quick"), default="full")
    p_self.add_argument("--out", default=None, help="write the JSONL log here instead of stdout")
    p_self.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonFiniteIntegrand as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 3
    except SheetboxError as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
