"""Batch front end: parse a parameterization, run the analysis, emit a report."""
import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .expr import ParseError, parse_form, parse_univariate
from .mubasis import (MuBasisError, Parameterization, ParameterizationError,
                      compute_mu_basis, h_invariant, validate_mu_basis)
from .polycore.linalg import det as rat_det
from .polycore.poly import SV, TU, BiHomPoly, UniPoly, bihom_gcd, normalize_primitive
from .resmat import (ResmatError, build_bezout_FG, build_moving_forms, build_sylvester,
                     build_symbolic_bezout, hybrid_family)
from .singularity import (CheckResult, DeltaError, RationalFunctionPair,
                          bezout_divisor_check, check_delta_product, d_resultant_general,
                          d_resultant_same_denominator, delta_subresultant,
                          form_squarefree, reduced_singular_factors, stratification_report)
from .smithlab import SingularFactorError, fitting_support_check, singular_factors

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

PROJECTIVE_CHECKS = (
    "mu_basis", "delta_product", "seed_independence", "hybrid_family_agreement",
    "fitting_ideals", "bezout_divisor_chain", "d_resultant_same_denominator",
    "symbolic_bezout_factorization", "multiplicity_divisibility",
)
PAIR_CHECKS = ("d_resultant_general",)
ALL_CHECKS = PROJECTIVE_CHECKS + PAIR_CHECKS


class InputError(ValueError):
    """Malformed or invalid input."""


@dataclass
class InputSpec:
    mode: str
    forms: dict
    seed: int = 0
    checks: tuple = None
    approx_roots: bool = False
    max_enum: int = 8
    dump_matrices: bool = False

    def parameterization(self):
        return Parameterization(self.forms["a"], self.forms["b"], self.forms["c"])

    def pair(self):
        return RationalFunctionPair(*(self.forms[k] for k in ("A", "C", "B", "D")))


@dataclass
class ReportDocument:
    data: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)


# -- serialization ---------------------------------------------------------

def rat(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coeff_json(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else rat(c)


def form_array(f):
    """Coefficient array of a form, primitive with positive leading coefficient."""
    if f.is_zero():
        return [0] * (f.degree + 1)
    return [_coeff_json(c) for c in normalize_primitive(f).coeffs]


def raw_array(coeffs):
    return [_coeff_json(c) for c in coeffs]


def _parse_coeff(x, where):
    if isinstance(x, bool):
        raise InputError(f"{where}: boolean is not a coefficient")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad rational {x!r}") from exc
    raise InputError(f"{where}: coefficients must be integers or 'num/den' strings")


def _array_from_text(text, where):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: bad coefficient array at position {exc.pos}") from exc
    if not isinstance(value, list):
        raise InputError(f"{where}: expected an array")
    return value


def _to_form(value, where, degree=None):
    if isinstance(value, str) and value.strip().startswith("["):
        value = _array_from_text(value, where)
    if isinstance(value, list):
        if not value:
            raise InputError(f"{where}: empty coefficient array")
        coeffs = [_parse_coeff(x, where) for x in value]
        if degree is not None and len(coeffs) != degree + 1:
            raise InputError(f"{where}: {len(coeffs)} coefficients for degree {degree}")
        return BiHomPoly(len(coeffs) - 1, coeffs, SV)
    if not isinstance(value, str):
        raise InputError(f"{where}: expected an expression or coefficient array")
    try:
        d, coeffs = parse_form(value, ("s", "v"))
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc
    if degree is not None and d != degree:
        raise InputError(f"{where}: degree {d}, expected {degree}")
    return BiHomPoly(d, coeffs, SV)


def _to_univariate(value, where):
    if isinstance(value, str) and value.strip().startswith("["):
        value = _array_from_text(value, where)
    if isinstance(value, list):
        return UniPoly([_parse_coeff(x, where) for x in value])
    if not isinstance(value, str):
        raise InputError(f"{where}: expected an expression or coefficient array")
    try:
        return UniPoly(parse_univariate(value, "t"))
    except ParseError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _text_to_dict(text):
    doc = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"line {lineno}: expected 'key = value'")
        key, value = (x.strip() for x in line.split("=", 1))
        doc[key] = value
    return doc


def parse_input(text, mode=None):
    """Parse JSON or ``key = expression`` lines into an InputSpec.

    A report produced by this tool is accepted too; its ``input`` echo is used.

    Raises
    ------
    InputError
        On syntax errors, inhomogeneous forms or an invalid parameterization.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON at position {exc.pos}: {exc.msg}") from exc
        if "input" in doc and isinstance(doc["input"], dict):
            doc = doc["input"]
    else:
        doc = _text_to_dict(text)
    mode = mode or doc.get("mode")
    if mode is None:
        mode = "rational-pair" if "A" in doc else "projective"
    degree = doc.get("degree")
    if degree is not None:
        try:
            degree = int(degree)
        except (TypeError, ValueError) as exc:
            raise InputError(f"degree must be an integer, got {degree!r}") from exc
    if mode == "projective":
        missing = [k for k in "abc" if k not in doc]
        if missing:
            raise InputError(f"projective mode needs a, b, c (missing {', '.join(missing)})")
        if any(k in doc for k in "ABCD"):
            raise InputError("rational-pair keys given in projective mode")
        forms = {k: _to_form(doc[k], k, degree) for k in "abc"}
        spec = InputSpec(mode, forms)
        try:
            spec.parameterization()
        except ParameterizationError as exc:
            raise InputError(str(exc)) from exc
    elif mode == "rational-pair":
        missing = [k for k in "ACBD" if k not in doc]
        if missing:
            raise InputError(f"rational-pair mode needs A, C, B, D (missing {', '.join(missing)})")
        forms = {k: _to_univariate(doc[k], k) for k in "ACBD"}
        spec = InputSpec(mode, forms)
        try:
            spec.pair()
        except (ValueError, TypeError) as exc:
            raise InputError(str(exc)) from exc
    else:
        raise InputError(f"unknown mode {mode!r}")
    return spec


# -- pipeline --------------------------------------------------------------

def _check_json(c):
    out = {"passed": c.passed}
    if not c.passed:
        out["witness"] = {k: (v if isinstance(v, (int, str, bool)) else str(v))
                          for k, v in c.witness.items()}
    return out


def _factor_json(factors):
    return {str(k): form_array(f) for k, f in sorted(factors.items())}


def _same_factors(a, b):
    return all(normalize_primitive(a[k]) == normalize_primitive(b[k]) for k in a)


def _factor_witness(a, b):
    return {f"d{k}": f"{a[k]} vs {b[k]}" for k in a
            if normalize_primitive(a[k]) != normalize_primitive(b[k])}


def _multiplicity_checks(phi, basis, sf, report):
    """H_Q divides d_(m_Q) and is coprime to every d_k with k > m_Q."""
    failures = {}
    for pt in report.decomposition.points:
        if pt.point is None:
            continue
        H = h_invariant(phi, basis, pt.point).with_varpair(TU)
        m = H.degree
        key = str(pt.point)
        if m != pt.multiplicity:
            failures[key] = f"deg H = {m}, attributed {pt.multiplicity}"
        elif m >= 2 and not H.divides(sf.factors[m]):
            failures[key] = f"H = {H} does not divide d_{m}"
        else:
            for k in range(m + 1, sf.n + 1):
                if bihom_gcd(H, sf.factors[k]).degree:
                    failures[key] = f"H = {H} meets d_{k}"
                    break
    return CheckResult("multiplicity_divisibility", not failures, failures)


def _pipeline_projective(spec, checks, data, results):
    phi = spec.parameterization()
    n = phi.n
    basis = compute_mu_basis(phi)
    data["n"] = n
    data["mu"] = basis.mu
    data["mu_basis"] = {"p": [form_array(f) for f in basis.p],
                        "q": [form_array(f) for f in basis.q]}
    S = build_sylvester(build_moving_forms(phi, basis))
    sf = reduced_singular_factors(singular_factors(S, n, basis.mu))
    delta = delta_subresultant(phi, basis, S)
    data["d"] = _factor_json(sf.factors)
    data["d_reduced"] = _factor_json(sf.reduced)
    data["delta"] = form_array(delta.delta)
    ordinary = (all(sf.factors[k].degree == 0 for k in range(3, n + 1))
                and all(e == 1 for _, e in form_squarefree(sf.factors[2])))
    data["ordinary"] = ordinary
    report = stratification_report(phi, basis, sf, delta, approx_roots=spec.approx_roots)
    data["stratification"] = _strat_json(report, spec.approx_roots)
    if spec.dump_matrices:
        data["matrices"] = {"sylvester": S.to_json(), "bezout_FG": build_bezout_FG(phi).to_json()}

    if "mu_basis" in checks:
        v = validate_mu_basis(phi, basis)
        results.append(CheckResult("mu_basis", v.ok, {"messages": "; ".join(v.messages)}))
    if "delta_product" in checks:
        results.append(check_delta_product(delta, sf))
    if "seed_independence" in checks:
        wit = {}
        for seed in (spec.seed, spec.seed + 1):
            other = singular_factors(S, n, basis.mu, seed=seed)
            if not _same_factors(sf.factors, other.factors):
                wit[f"seed_{seed}"] = str(_factor_witness(sf.factors, other.factors))
        results.append(CheckResult("seed_independence", not wit, wit))
    if "hybrid_family_agreement" in checks:
        bad = {}
        for j, M in enumerate(hybrid_family(build_moving_forms(phi, basis))):
            fj = singular_factors(M, n, basis.mu)
            if not _same_factors(sf.factors, fj.factors):
                bad[f"psi_{j}"] = str(_factor_witness(sf.factors, fj.factors))
        results.append(CheckResult("hybrid_family_agreement", not bad, bad))
    if "fitting_ideals" in checks:
        fr = fitting_support_check(S, basis, delta.delta)
        results.append(CheckResult("fitting_ideals", fr.ok, {"messages": "; ".join(fr.messages)}))
    if "bezout_divisor_chain" in checks:
        sub = bezout_divisor_check(phi, sf, max_enum=spec.max_enum)
        ok = all(c.passed for c in sub)
        wit = {c.name: str(c.witness) for c in sub if not c.passed}
        data["bezout_divisors_checked"] = [c.name for c in sub]
        results.append(CheckResult("bezout_divisor_chain", ok, wit))
    if "d_resultant_same_denominator" in checks:
        _, c = d_resultant_same_denominator(phi, sf)
        results.append(c)
    if "symbolic_bezout_factorization" in checks:
        try:
            sb = build_symbolic_bezout(phi, basis)
            results.append(CheckResult("symbolic_bezout_factorization", True))
            data["symbolic_bezout_det_N"] = rat(rat_det(sb.N))
        except ResmatError as exc:
            results.append(CheckResult("symbolic_bezout_factorization", False,
                                       {"error": str(exc)}))
    if "multiplicity_divisibility" in checks:
        results.append(_multiplicity_checks(phi, basis, sf, report))


def _strat_json(report, approx):
    rows = []
    for r in report.rows:
        row = {"factor": form_array(r.atom),
               "exponents": {str(k): e for k, e in sorted(r.exponents.items())},
               "reduced_exponents": {str(k): e for k, e in sorted(r.reduced_exponents.items())}}
        if approx:
            row["roots"] = [_complex_json(z) for z in r.roots]
            row["points"] = [[_complex_json(x) for x in p] for p in r.points]
        rows.append(row)
    dec = report.decomposition
    points = []
    for p in dec.points:
        points.append({
            "multiplicity": p.multiplicity,
            "H": form_array(p.H),
            "point": None if p.point is None else [rat(x) for x in p.point.normalized()],
            "parameters": [[rat(a), rat(b)] for a, b in p.parameters],
            "certified": p.certified,
            "count": p.count,
        })
    return {
        "rows": rows,
        "h": {str(k): form_array(v) for k, v in sorted(dec.h.items())},
        "psi": {f"{k},{s}": form_array(v) for (k, s), v in sorted(dec.psi.items())},
        "certified": {str(k): v for k, v in sorted(dec.certified.items())},
        "notes": list(dec.notes),
        "proper_points": points,
        "point_counts": {str(k): v for k, v in sorted(report.point_counts.items())},
        "proper_counts": {str(k): v for k, v in sorted(report.proper_counts.items())},
        "infinitely_near": {str(s): {str(k): c for k, c in sorted(d.items())}
                            for s, d in sorted(report.infinitely_near.items())},
        "genus_budget": report.genus_budget,
        "genus_target": report.genus_target,
        "best_effort": report.best_effort,
    }


def _complex_json(z):
    if isinstance(z, str):
        return z
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


def _pipeline_pair(spec, checks, data, results):
    pair = spec.pair()
    g = d_resultant_general(pair)
    data["h"] = form_array(g.h)
    data["q"] = form_array(g.q)
    data["delta_common"] = form_array(g.delta)
    data["nu"] = {k: form_array(f) for k, f in zip("abc", g.nu.forms)}
    data["lhs"] = form_array(g.lhs)
    data["rhs"] = form_array(g.rhs)
    if "d_resultant_general" in checks:
        results.append(g.check)


def _input_echo(spec):
    if spec.mode == "projective":
        echo = {k: raw_array(f.coeffs) for k, f in spec.forms.items()}
        echo["degree"] = spec.forms["a"].degree
    else:
        echo = {k: raw_array(f.coeffs) for k, f in spec.forms.items()}
    echo["mode"] = spec.mode
    return echo


def run_pipeline(spec, timing=False):
    """Run every requested check; deterministic for a fixed seed."""
    wanted = PROJECTIVE_CHECKS if spec.mode == "projective" else PAIR_CHECKS
    checks = wanted if spec.checks is None else tuple(c for c in spec.checks if c in wanted)
    data = {"input": _input_echo(spec), "seed": spec.seed, "version": __version__}
    results = []
    start = time.perf_counter()
    if spec.mode == "projective":
        _pipeline_projective(spec, checks, data, results)
    else:
        _pipeline_pair(spec, checks, data, results)
    data["checks"] = {c.name: _check_json(c) for c in results}
    if timing:
        data["timing_seconds"] = round(time.perf_counter() - start, 3)
    return ReportDocument(data, results)


# -- output ----------------------------------------------------------------

def _fmt(arr, x="t", y="u"):
    deg = len(arr) - 1
    return str(BiHomPoly(deg, [Fraction(c) for c in arr], TU)) if deg > 0 else str(arr[0])


def _text(report):
    d = report.data
    lines = []
    if d["input"]["mode"] == "projective":
        lines.append(f"degree n = {d['n']}, mu = {d['mu']}")
        dl = d["delta"]
        lines.append(f"Delta = {_fmt(dl)}" if len(dl) <= 13 else f"Delta: degree {len(dl) - 1}")
        lines.append("singular factors:")
        for k, arr in sorted(d["d"].items(), key=lambda kv: -int(kv[0])):
            red = d["d_reduced"][k]
            lines.append(f"  d_{k} = {_fmt(arr)}    reduced: {_fmt(red)}")
        st = d["stratification"]
        lines.append("points by multiplicity (proper or infinitely near):")
        for k, c in sorted(st["point_counts"].items(), key=lambda kv: -int(kv[0])):
            lines.append(f"  {c} point(s) of multiplicity {k}")
        for p in st["proper_points"]:
            where = "irrational" if p["point"] is None else "(" + " : ".join(p["point"]) + ")"
            params = ", ".join(f"({a} : {b})" for a, b in p["parameters"])
            lines.append(f"  proper {p['multiplicity']}-fold point {where}"
                         + (f" from parameters {params}" if params else "")
                         + (f", {p['count']} point(s)" if p["point"] is None else ""))
        for s, ks in sorted(st["infinitely_near"].items(), key=lambda kv: -int(kv[0])):
            for k, c in sorted(ks.items(), key=lambda kv: -int(kv[0])):
                lines.append(f"  {c} infinitely near {k}-fold point(s) over {s}-fold points")
        lines.append(f"genus budget: {st['genus_budget']} of {st['genus_target']}"
                     + (" (best effort)" if st["best_effort"] else ""))
        if d.get("ordinary"):
            lines.append("only ordinary double points")
    else:
        lines.append(f"h = {_fmt(d['h'])}, q = {_fmt(d['q'])}, delta = {_fmt(d['delta_common'])}")
    lines.append("checks:")
    for name, c in d["checks"].items():
        lines.append(f"  {'PASS' if c['passed'] else 'FAIL'} {name}")
        for k, v in c.get("witness", {}).items():
            lines.append(f"       {k}: {v}")
    if "timing_seconds" in d:
        lines.append(f"time: {d['timing_seconds']} s")
    return "\n".join(lines) + "\n"


def emit(report, fmt="json"):
    """Serialize a report; JSON output is key-sorted and byte-stable."""
    if fmt == "json":
        return (json.dumps(report.data, sort_keys=True, indent=2) + "\n").encode()
    if fmt == "text":
        return _text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


# -- entry point -----------------------------------------------------------

def _seed_default():
    env = os.environ.get("CURVESING_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        return None


def build_parser():
    p = argparse.ArgumentParser(
        prog="curvesing",
        description="Singular factors and singularity report of a rational plane curve.")
    p.add_argument("--input", metavar="PATH", default="-",
                   help="input file (JSON or 'key = expr' lines); '-' reads stdin")
    p.add_argument("--mode", choices=("projective", "rational-pair"),
                   help="override the mode given in the input")
    p.add_argument("--checks", default="all",
                   help="comma separated check names, 'all' or 'none'")
    p.add_argument("--seed", type=int, default=None,
                   help="Moebius seed (default $CURVESING_SEED or 0)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--approx-roots", action="store_true",
                   help="include approximate complex roots and curve points")
    p.add_argument("--max-enum", type=int, default=8,
                   help="largest degree for full minor enumeration (default 8)")
    p.add_argument("--dump-matrices", action="store_true",
                   help="embed the Sylvester and Bezout matrices in the report")
    p.add_argument("--timing", action="store_true", help="report wall-clock time")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _parse_checks(value):
    if value == "all":
        return None
    if value in ("none", ""):
        return ()
    names = tuple(x.strip() for x in value.split(",") if x.strip())
    unknown = [x for x in names if x not in ALL_CHECKS]
    if unknown:
        raise InputError(f"unknown check(s): {', '.join(unknown)}")
    return names


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        seed = args.seed if args.seed is not None else _seed_default()
        if seed is None:
            raise InputError("CURVESING_SEED is not an integer")
        if args.max_enum < 2:
            raise InputError("--max-enum must be at least 2")
        if args.input == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc
        spec = parse_input(text, mode=args.mode)
        spec.seed = seed
        spec.checks = _parse_checks(args.checks)
        spec.approx_roots = args.approx_roots
        spec.max_enum = args.max_enum
        spec.dump_matrices = args.dump_matrices
    except InputError as exc:
        print(f"curvesing: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = run_pipeline(spec, timing=args.timing)
    except (MuBasisError, ResmatError, SingularFactorError, DeltaError,
            ArithmeticError) as exc:
        print(f"curvesing: internal error [{type(exc).__module__}]: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
