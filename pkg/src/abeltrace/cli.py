"""Command-line front end: ``abeltrace <command> [options]``, JSON on stdout."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .abelian import abelian_basis, castelnuovo_bound
from .errors import AbelTraceError, DegreeDropAtInfinity, DegenerateStildeSystem, InputError, OracleFailure
from .oracle import SamplePlan, numeric_trace, numeric_trace_form, oracle_compare
from .parser import infer_dimension, parse_poly, parse_ratfunc
from .reconstruct import (
    abel_inverse,
    hankel_check,
    pi_inverse,
    pi_map,
    rho_inverse,
    rho_map,
    star_check,
    starstar_check,
    trace_pipeline_w,
    wood_test,
)
from .trace import Cycle, MeroFunc, power_sums, tilt, trace_form, trace_function

COMMANDS = ("trace", "reconstruct", "wood", "abel-inverse", "abelian", "castelnuovo", "verify")

# keys accepted per command (inline flags and --file lines alike)
FIELDS = {
    "trace": {"n", "f", "h", "kmax"},
    "reconstruct": {"n", "f", "h"},
    "wood": {"n", "u1", "d"},
    "abel-inverse": {"n", "d", "w", "f", "h"},
    "abelian": {"n", "f"},
    "castelnuovo": {"n", "d", "q"},
    "verify": {"n", "f", "h", "kmax", "count"},
}
REPEATABLE = {"f", "w"}
INTEGER = {"n", "d", "q", "kmax", "count"}


@dataclass
class JobSpec:
    command: str
    n: int | None = None
    inputs: dict = field(default_factory=dict)
    seed: int | None = None
    output: str | None = None
    pretty: bool = False

    def get(self, key, default=None):
        return self.inputs.get(key, default)

    def require(self, key):
        if key not in self.inputs:
            raise InputError(f"{self.command} needs --{key}")
        return self.inputs[key]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _common(p):
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--file", help="read key=value lines (one per line)")
    p.add_argument("--output", help="write the JSON document to this path")
    p.add_argument("--pretty", action="store_true", help="indented JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abeltrace", description="Traces along line pencils, Abel-inverse reconstruction and abelian forms.")
    parser.add_argument("--version", action="version", version=f"abeltrace {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("trace", help="power sums u_k, traces v_k of h, trace-form coefficients w_k")
    _common(p)
    p.add_argument("--f", action="append", help="defining polynomial (repeat for a sum of components)")
    p.add_argument("--h", help="function on the hypersurface")
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("reconstruct", help="F = Pi(V) and H = rho(h) with their checks")
    _common(p)
    p.add_argument("--f", action="append")
    p.add_argument("--h")

    p = sub.add_parser("wood", help="is u1 affine in b?")
    _common(p)
    p.add_argument("--u1")
    p.add_argument("--d", type=int)

    p = sub.add_parser("abel-inverse", help="recover (F, H) from w_0..w_{2d-1}")
    _common(p)
    p.add_argument("--d", type=int)
    p.add_argument("--w", action="append", help="one coefficient per flag, or a ';'-separated list")
    p.add_argument("--f", action="append", help="compute w from this cycle instead")
    p.add_argument("--h")

    p = sub.add_parser("abelian", help="basis of maximal-degree abelian forms")
    _common(p)
    p.add_argument("--f", action="append")

    p = sub.add_parser("castelnuovo", help="Castelnuovo number pi_q(d, 2, n)")
    _common(p)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)

    p = sub.add_parser("verify", help="compare exact traces with root sums")
    _common(p)
    p.add_argument("--f", action="append")
    p.add_argument("--h")
    p.add_argument("--kmax", type=int)
    p.add_argument("--count", type=int)
    return parser


def _read_file(path: str, command: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    out: dict = {}
    allowed = FIELDS[command] | {"seed", "output"}
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in allowed:
            raise InputError(f"{path}:{lineno}: unknown key {key!r} for {command}")
        if key in INTEGER or key == "seed":
            try:
                value = int(value)
            except ValueError:
                raise InputError(f"{path}:{lineno}: {key} must be an integer") from None
        if key in REPEATABLE:
            out.setdefault(key, []).append(value)
        elif key in out:
            raise InputError(f"{path}:{lineno}: duplicate key {key!r}")
        else:
            out[key] = value
    return out


def job_from_args(argv) -> JobSpec:
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise InputError(f"a command is required: {', '.join(COMMANDS)}")
    values = {k: v for k, v in vars(args).items() if v is not None and k not in ("command", "file", "pretty")}
    if args.file:
        for key, value in _read_file(args.file, args.command).items():
            if key in REPEATABLE:
                values[key] = list(values.get(key, [])) + value
            else:
                values.setdefault(key, value)
    seed = values.pop("seed", None)
    env = os.environ.get("ABELTRACE_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InputError("ABELTRACE_SEED must be an integer") from None
    output = values.pop("output", None)
    n = values.pop("n", None)
    unknown = set(values) - FIELDS[args.command]
    if unknown:
        raise InputError(f"unknown fields for {args.command}: {', '.join(sorted(unknown))}")
    if n is not None and n < 1 and args.command != "castelnuovo":
        raise InputError("n must be at least 1")
    return JobSpec(args.command, n, values, seed, output, args.pretty)


# ---------------------------------------------------------------- commands


def _dimension(job: JobSpec, *texts) -> int:
    if job.n is not None:
        return job.n
    return max([infer_dimension(t) for t in texts if t] or [1])


def _cycle(job: JobSpec, n: int) -> Cycle:
    fs = job.require("f")
    comps = tuple((parse_poly(t, n), 1) for t in fs)
    return Cycle(n, comps)


def _strs(seq):
    return [str(x) for x in seq]


def cmd_trace(job: JobSpec) -> dict:
    n = _dimension(job, *job.require("f"), job.get("h"))
    V = _cycle(job, n)
    T = tilt(V).require_global()
    kmax = job.get("kmax", 2 * T.d - 1)
    if kmax < 0:
        raise InputError("kmax must be nonnegative")
    out = {"d": T.d, "n": n, "u": _strs(power_sums(T, kmax).u)}
    if job.get("h") is not None:
        h = MeroFunc.parse(job.get("h"), n)
        out["v"] = _strs(trace_function(V, h, kmax).v)
        out["w"] = _strs(trace_form(V, h, kmax).w)
    return out


def cmd_reconstruct(job: JobSpec) -> dict:
    n = _dimension(job, *job.require("f"), job.get("h"))
    V = _cycle(job, n)
    T = tilt(V).require_global()
    F = pi_map(V)
    det, disc, equal = hankel_check(power_sums(T, 2 * T.d - 2).u, F)
    out = {
        "F": str(F),
        "d": T.d,
        "f": str(pi_inverse(F)),
        "hankel": {"det": str(det), "disc": str(disc), "equal": equal},
        "n": n,
        "star": star_check(F),
    }
    if job.get("h") is not None:
        H = rho_map(V, MeroFunc.parse(job.get("h"), n))
        out["H"] = str(H)
        out["h"] = str(rho_inverse(F, H))
        out["starstar"] = starstar_check(H, F)
    return out


def cmd_wood(job: JobSpec) -> dict:
    text = job.require("u1")
    n = _dimension(job, text)
    return {"affine_in_b": wood_test(parse_ratfunc(text, n), job.get("d"))}


def _split_w(items) -> list:
    out = []
    for item in items:
        out.extend(s.strip() for s in item.split(";") if s.strip())
    return out


def cmd_abel_inverse(job: JobSpec) -> dict:
    if job.get("w") and job.get("f"):
        raise InputError("give either --w or --f/--h, not both")
    if job.get("f"):
        n = _dimension(job, *job.get("f"), job.get("h"))
        V = _cycle(job, n)
        h = MeroFunc.parse(job.get("h") or "1", n)
        d = tilt(V).require_global().d
        w = trace_pipeline_w(V, h)
        try:
            reference = (pi_map(V, validate=False), rho_map(V, h))
        except AbelTraceError:
            reference = None
    else:
        texts = _split_w(job.require("w"))
        n = _dimension(job, *texts)
        w = [parse_ratfunc(t, n) for t in texts]
        d = job.get("d", len(w) // 2)
        reference = None
    pair = abel_inverse(w, d, n, reference=reference)
    return {
        "F": str(pair.F),
        "H": str(pair.H),
        "d": d,
        "f": str(pi_inverse(pair.F)),
        "h": str(rho_inverse(pair.F, pair.H)),
        "n": n,
        "star": True,
        "starstar": True,
    }


def cmd_abelian(job: JobSpec) -> dict:
    fs = job.require("f")
    if len(fs) != 1:
        raise InputError("abelian takes a single polynomial")
    n = _dimension(job, fs[0])
    B = abelian_basis(parse_poly(fs[0], n), n)
    return {
        "d": B.d,
        "dimension": B.dimension,
        "expected_dimension": castelnuovo_bound(B.d, n, n),
        "generators": _strs(B.generators),
        "independent": B.independent,
        "n": n,
        "nullity": [
            {"degrees": list(c.degrees), "generator": str(c.generator), "vanishes": c.vanishes, "w": _strs(c.w)}
            for c in B.certificates
        ],
    }


def cmd_castelnuovo(job: JobSpec) -> dict:
    if job.n is None:
        raise InputError("castelnuovo needs --n")
    return {"pi_q": castelnuovo_bound(job.require("d"), job.n, job.require("q"))}


def cmd_verify(job: JobSpec) -> dict:
    n = _dimension(job, *job.require("f"), job.get("h"))
    V = _cycle(job, n)
    h = MeroFunc.parse(job.get("h") or "1", n)
    T = tilt(V).require_global()
    kmax = job.get("kmax", 2 * T.d - 1)
    count = job.get("count", 50)
    seed = 0 if job.seed is None else job.seed
    plan = SamplePlan(seed, count)
    u = power_sums(T, kmax).u
    v = trace_function(V, h, kmax).v
    w = trace_form(V, h, kmax).w
    reports = []
    for k in range(kmax + 1):
        reports.append(oracle_compare(u[k], plan, lambda p, k=k: numeric_trace(V, "1", k, p), f"u{k}"))
        reports.append(oracle_compare(v[k], plan, lambda p, k=k: numeric_trace(V, h, k, p), f"v{k}"))
        reports.append(oracle_compare(w[k], plan, lambda p, k=k: numeric_trace_form(V, h, k, p), f"w{k}"))
    summary = [{"label": r.label, "max_error": r.max_error, "passed": r.passed, "samples": len(r.samples), "skipped": r.skipped} for r in reports]
    out = {"count": count, "passed": all(r.passed for r in reports), "reports": summary, "seed": seed}
    if not out["passed"]:
        raise _VerifyFailed(out)
    return out


class _VerifyFailed(OracleFailure):
    def __init__(self, document):
        self.document = document
        super().__init__("symbolic and numeric values disagree")


HANDLERS = {
    "trace": cmd_trace,
    "reconstruct": cmd_reconstruct,
    "wood": cmd_wood,
    "abel-inverse": cmd_abel_inverse,
    "abelian": cmd_abelian,
    "castelnuovo": cmd_castelnuovo,
    "verify": cmd_verify,
}


def _error_document(exc: AbelTraceError) -> dict:
    err = {"message": str(exc), "name": exc.name}
    if isinstance(exc, DegreeDropAtInfinity):
        err["vertical_degree"] = exc.vertical_degree
        err["global_degree"] = exc.global_degree
    if isinstance(exc, DegenerateStildeSystem):
        err["cause"] = exc.cause
        err["rank"] = exc.rank
    return {"error": err}


def render(document: dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(document, sort_keys=True, indent=2)
    return json.dumps(document, sort_keys=True)


def run(job: JobSpec):
    """``(exit code, JSON document)`` for a validated job."""
    try:
        return 0, HANDLERS[job.command](job)
    except _VerifyFailed as exc:
        doc = dict(exc.document)
        doc.update(_error_document(exc))
        return exc.exit_code, doc
    except AbelTraceError as exc:
        return exc.exit_code, _error_document(exc)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pretty = "--pretty" in argv
    try:
        job = job_from_args(argv)
    except AbelTraceError as exc:
        print(render(_error_document(exc), pretty))
        return exc.exit_code
    code, doc = run(job)
    text = render(doc, job.pretty)
    if job.output:
        try:
            with open(job.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(render(_error_document(InputError(f"cannot write {job.output}: {exc.strerror}")), pretty))
            return 2
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
