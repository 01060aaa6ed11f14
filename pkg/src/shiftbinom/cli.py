"""Command-line front end: verification runs, coefficient tables, sequence
tables, and composition listings, emitted as CSV or JSON.

Examples:
    shiftbinom verify identity --r 2 --l 1,1,1 --p 1 --q 5
    shiftbinom verify odd-equality --r 2 --l 1,1 --a-max 9
    shiftbinom coeffs --family even --r 2 --l 1,1
    shiftbinom coeffs --family odd --r 2 --l 1,1 --a-min -5 --a-max 5
    shiftbinom seq pi --l 2 --m 1:100:1 --format csv --out pi.csv
    shiftbinom seq ratio-pi --r 2 --l 1,1 --A 2 --m 10:1000:90
    shiftbinom compositions --n 4 --g 3 --check

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.  Identical invocations produce byte-identical output; `num` and `den`
columns are exact decimal strings that re-parse to the in-memory rationals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import oracle, sequences, sums
from .exact import Shift
from .sums import Family, SumSpec, Window

__all__ = ["main", "run"]


# ------------------------- argument value parsing -------------------------


def _parse_l(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad l-list {text!r}; expected like 1,0,2")
    return parts


def _parse_q(text: str) -> int:
    # 0 marks the q -> infinity sentinel at the flag layer (a real q is >= 1)
    if text.lower() in ("inf", "infinity", "none"):
        return 0
    return int(text)


def _parse_m_sweep(text: str) -> list[int]:
    if ":" not in text:
        return [int(text)]
    fields = text.split(":")
    if len(fields) == 2:
        fields.append("1")
    if len(fields) != 3:
        raise argparse.ArgumentTypeError(f"bad m sweep {text!r}; expected start:stop:stride")
    start, stop, stride = (int(v) for v in fields)
    if stride < 1 or stop < start:
        raise argparse.ArgumentTypeError(f"bad m sweep {text!r}")
    return list(range(start, stop + 1, stride))


def _parse_window(text: str) -> Window:
    return Window(text)


def _parse_shift(text: str) -> Shift:
    return Shift.parse(text)


class UsageError(Exception):
    pass


# ----------------------------- output emission ----------------------------


def _emit(rows: list[dict], fieldnames: list[str], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(rows, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _print_check(rec: dict) -> None:
    sys.stdout.write(json.dumps(rec) + "\n")


# ------------------------------ worker jobs -------------------------------
# top-level functions so process pools can pickle them


def _coeff_job(args) -> dict:
    spec, family, A, m, window = args
    sv = sums.coefficient(spec, family, A, m, window)
    return {
        "A": A,
        "num": str(sv.coeff.numerator),
        "den": str(sv.coeff.denominator),
        "pi_exp": sv.scale_exp,
        "float": float(sv),
    }


def _seq_job(args) -> dict:
    kind, params, m = args
    rec = _seq_record(kind, params, m)
    return {
        "m": rec.m,
        "num": str(rec.exact.numerator),
        "den": str(rec.exact.denominator),
        "float": rec.approx,
        "target": f"{rec.target_tag}={rec.target_value!r}",
        "abs_error": rec.abs_error,
    }


def _seq_record(kind: str, params: dict, m: int) -> sequences.SeqRecord:
    window = params["window"]
    if kind == "pi":
        return sequences.pi_seq_t0(params["l_single"], m, window)
    if kind == "pi2":
        return sequences.pi2_seq(params["l_single"], m, window)
    if kind == "pis":
        return sequences.pi_over_sin_seq(params["l_single"], params["s"], m, window)
    if kind == "pis2":
        return sequences.pi_over_sin_sq_seq(params["l_single"], params["s"], m)
    if kind == "pis-odd":
        return sequences.pi_over_sin_cos_seq(params["l_single"], params["s"], m, window)
    if kind == "cum":
        return sequences.odd_A_cumulative_seq(params["spec"], m)
    if kind == "agg":
        return sequences.aggregate_composition_seq(
            params["n"], params["g"], params["r"], m
        )
    if kind == "ratio-pi2":
        return sequences.pi2_ratio_seq(params["spec"], params["A"], m, window)
    if kind == "ratio-pi":
        return sequences.pi_ratio_seq(params["spec"], params["A"], m, window)
    raise UsageError(f"unknown sequence kind {kind!r}")


def _pmap(fn, items, workers: int) -> list:
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


# ------------------------------- subcommands ------------------------------


def _build_spec(ns) -> SumSpec:
    if ns.l is None:
        raise UsageError("--l is required for this command")
    return SumSpec(r=ns.r, l=ns.l, p=ns.p, q=None if ns.q == 0 else ns.q)


def _cmd_verify(ns) -> int:
    checks: list[dict] = []
    names = (
        ["identity", "odd-integral", "antisym-integral", "odd-equality", "sum-rule", "cg"]
        if ns.check == "all"
        else [ns.check]
    )
    spec = None
    if any(c in names for c in ("identity", "odd-integral", "antisym-integral", "odd-equality", "sum-rule")):
        spec = _build_spec(ns)

    if "identity" in names or "odd-integral" in names or "antisym-integral" in names:
        report = {c["check"]: c for c in oracle.identity_report(spec, ns.odd_a_cut)}
        if "identity" in names:
            c = report["even-expansion"]
            checks.append(
                {
                    "check": "identity",
                    "lhs": c["lhs"],
                    "rhs": c["rhs"],
                    "abs_err": c["abs_err"],
                    "pass": c["abs_err"] < 1e-9,
                }
            )
        if "odd-integral" in names:
            c = report["odd-expansion"]
            checks.append(
                {
                    "check": "odd-integral",
                    "lhs": c["lhs"],
                    "rhs": c["rhs"],
                    "abs_err": c["abs_err"],
                    "pass": c["abs_err"] < 1e-6,
                }
            )
        if "antisym-integral" in names:
            c = report["antisym-expansion"]
            checks.append(
                {
                    "check": "antisym-integral",
                    "lhs": c["lhs"],
                    "rhs": c["rhs"],
                    "abs_err": c["abs_err"],
                    "pass": c["abs_err"] < 1e-9,
                }
            )

    if "odd-equality" in names:
        for A in range(1, ns.a_max + 1, 2):
            direct = sums.odd_A_coefficient_direct(spec, A)
            alt = sums.odd_A_coefficient_sinc(spec, A)
            equal = direct == alt
            checks.append(
                {
                    "check": f"odd-equality[A={A}]",
                    "lhs": str(direct.coeff),
                    "rhs": str(alt.coeff),
                    "abs_err": "exact" if equal else repr(float(direct) - float(alt)),
                    "pass": equal,
                }
            )

    if "sum-rule" in names:
        total = sums.sum_rule_even(spec)
        target = math.comb(spec.r * spec.n, spec.r * spec.n // 2)
        checks.append(
            {
                "check": "sum-rule",
                "lhs": str(total),
                "rhs": str(target),
                "abs_err": "exact" if total == target else str(total - target),
                "pass": total == target,
            }
        )

    if "cg" in names:
        comps = list(sequences.enumerate_g_compositions(ns.n, ns.g))
        forms_ok = all(
            sequences.cg_weight(c) == sequences.cg_weight_factorial_form(c)
            for c in comps
        )
        total = ns.g * ns.n * sum(sequences.cg_weight(c) for c in comps)
        target = math.comb(ns.g * ns.n, ns.n)
        ok = forms_ok and total == target
        checks.append(
            {
                "check": "cg",
                "lhs": str(total),
                "rhs": str(target),
                "abs_err": "exact" if ok else "form-mismatch" if not forms_ok else str(total - target),
                "pass": ok,
            }
        )

    for rec in checks:
        _print_check(rec)
    return 0 if all(rec["pass"] for rec in checks) else 1


def _cmd_coeffs(ns) -> int:
    spec = _build_spec(ns)
    family = Family(ns.family)
    needs_m = family in (Family.SHIFTED, Family.ANTISYM, Family.FOUR)
    if needs_m and ns.m is None:
        raise UsageError(f"family {family.value} needs --m")
    m = None if ns.m is None else ns.m[0]
    parity = 1 if family in (Family.ODD, Family.ODD_SINC) else 0
    if ns.a_max is not None:
        a_min = ns.a_min if ns.a_min is not None else -ns.a_max
        A_values = [A for A in range(a_min, ns.a_max + 1) if A % 2 == parity]
        if not A_values:
            raise UsageError(
                f"no A of {'odd' if parity else 'even'} parity in [{a_min}, {ns.a_max}]"
            )
    else:
        try:
            A_values = sums.default_A_range(spec, family)
        except ValueError as e:
            raise UsageError(str(e) + "; give --a-max")
    jobs = [(spec, family, A, m, ns.window) for A in A_values]
    rows = _pmap(_coeff_job, jobs, ns.workers)
    _emit(rows, ["A", "num", "den", "pi_exp", "float"], ns.format, ns.out)
    return 0


_SEQ_KINDS = ("pi", "pi2", "pis", "pis2", "pis-odd", "cum", "agg", "ratio-pi2", "ratio-pi")


def _cmd_seq(ns) -> int:
    params: dict = {"window": ns.window}
    kind = ns.kind
    if kind in ("pi", "pi2", "pis", "pis2", "pis-odd"):
        if ns.l is None or len(ns.l) != 1:
            raise UsageError(f"kind {kind} takes --l with a single value")
        params["l_single"] = ns.l[0]
        if kind in ("pis", "pis2", "pis-odd"):
            if ns.s is None:
                raise UsageError(f"kind {kind} needs --s")
            params["s"] = ns.s
    elif kind in ("cum", "ratio-pi2", "ratio-pi"):
        params["spec"] = _build_spec(ns)
        if kind in ("ratio-pi2", "ratio-pi"):
            if ns.A is None:
                raise UsageError(f"kind {kind} needs --A")
            params["A"] = ns.A
    elif kind == "agg":
        if ns.n is None or ns.g is None:
            raise UsageError("kind agg needs --n and --g")
        params.update(n=ns.n, g=ns.g, r=ns.r)
    if ns.m is None:
        raise UsageError("--m is required (single value or start:stop:stride)")
    # validate the first record up front so precondition violations exit 2
    _seq_record(kind, params, ns.m[0])
    jobs = [(kind, params, m) for m in ns.m]
    rows = _pmap(_seq_job, jobs, ns.workers)
    _emit(rows, ["m", "num", "den", "float", "target", "abs_error"], ns.format, ns.out)
    return 0


def _cmd_compositions(ns) -> int:
    if ns.n is None or ns.n < 1 or ns.g is None or ns.g < 2:
        raise UsageError("need --n >= 1 and --g >= 2")
    comps = list(sequences.enumerate_g_compositions(ns.n, ns.g))
    rows = []
    for c in comps:
        w = sequences.cg_weight(c)
        rows.append(
            {
                "parts": ",".join(str(v) for v in c.parts),
                "num": str(w.numerator),
                "den": str(w.denominator),
            }
        )
    _emit(rows, ["parts", "num", "den"], ns.format, ns.out)
    if ns.check:
        total = ns.g * ns.n * sum(sequences.cg_weight(c) for c in comps)
        target = math.comb(ns.g * ns.n, ns.n)
        forms_ok = all(
            sequences.cg_weight(c) == sequences.cg_weight_factorial_form(c)
            for c in comps
        )
        ok = total == target and forms_ok
        sys.stderr.write(
            f"check g*n*sum(c_g) = C(gn, n): {total} vs {target}: "
            f"{'pass' if ok else 'FAIL'}\n"
        )
        return 0 if ok else 1
    return 0


# ------------------------------ parser set-up -----------------------------


def _add_common(p: argparse.ArgumentParser, *, spec=False, table=False) -> None:
    p.add_argument("--config", help="key=value file; command-line flags override it")
    if spec:
        p.add_argument("--r", type=int, default=None)
        p.add_argument("--l", type=_parse_l, default=None, help="comma list, e.g. 1,0,2")
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--q", type=_parse_q, default=None, help="positive integer or 'inf'")
    if table:
        p.add_argument("--window", type=_parse_window, default=None,
                       choices=list(Window), help="paper or symmetric")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--workers", type=int, default=None)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shiftbinom", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run exact/numeric verification checks")
    pv.add_argument("check", choices=("identity", "odd-integral", "antisym-integral",
                                      "odd-equality", "sum-rule", "cg", "all"))
    _add_common(pv, spec=True)
    pv.add_argument("--a-max", type=int, default=None)
    pv.add_argument("--odd-a-cut", type=int, default=None)
    pv.add_argument("--n", type=int, default=None)
    pv.add_argument("--g", type=int, default=None)

    pc = sub.add_parser("coeffs", help="emit one coefficient family as a table")
    _add_common(pc, spec=True, table=True)
    pc.add_argument("--family", choices=[f.value for f in Family], default=None)
    pc.add_argument("--a-min", type=int, default=None)
    pc.add_argument("--a-max", type=int, default=None)
    pc.add_argument("--m", type=_parse_m_sweep, default=None,
                    help="truncation for the windowed families")

    ps = sub.add_parser("seq", help="emit a convergence table over an m sweep")
    ps.add_argument("kind", choices=_SEQ_KINDS)
    _add_common(ps, spec=True, table=True)
    ps.add_argument("--s", type=_parse_shift, default=None, help="shift, e.g. 1/3")
    ps.add_argument("--A", type=int, default=None)
    ps.add_argument("--m", type=_parse_m_sweep, default=None,
                    help="single value or start:stop:stride (inclusive)")
    ps.add_argument("--n", type=int, default=None)
    ps.add_argument("--g", type=int, default=None)

    pk = sub.add_parser("compositions", help="list g-compositions with weights")
    _add_common(pk, table=True)
    pk.add_argument("--n", type=int, default=None)
    pk.add_argument("--g", type=int, default=None)
    pk.add_argument("--check", action="store_true", default=None,
                    help="also verify g*n*sum(c_g) = C(gn, n)")

    return ap


_HARD_DEFAULTS = {
    "verify": {"r": 2, "p": 1, "q": 3, "a_max": 9, "odd_a_cut": 399, "n": 4, "g": 2},
    "coeffs": {"r": 2, "p": 1, "q": 0, "format": "csv", "workers": 1},
    "seq": {"r": 2, "p": 1, "q": 0, "format": "csv", "workers": 1},
    "compositions": {"format": "csv", "workers": 1, "check": False},
}

_WINDOW_DEFAULT = {"coeffs": Window.SYMMETRIC, "seq": Window.PAPER}

_BOOL_KEYS = {"check"}

_PARSERS = {
    "l": _parse_l,
    "q": _parse_q,
    "m": _parse_m_sweep,
    "s": _parse_shift,
    "window": _parse_window,
    "r": int,
    "p": int,
    "a_min": int,
    "a_max": int,
    "odd_a_cut": int,
    "n": int,
    "g": int,
    "A": int,
    "workers": int,
    "format": str,
    "out": str,
    "family": str,
    "check": None,
}


def _load_config(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _apply_config_and_defaults(ns: argparse.Namespace) -> argparse.Namespace:
    cfg = _load_config(ns.config) if getattr(ns, "config", None) else {}
    for key, raw in cfg.items():
        if not hasattr(ns, key):
            raise UsageError(f"unknown config key {key!r} for command {ns.command}")
        if getattr(ns, key) is None or (key in _BOOL_KEYS and getattr(ns, key) is None):
            if key in _BOOL_KEYS:
                setattr(ns, key, raw.lower() in ("1", "true", "yes", "on"))
                continue
            parser = _PARSERS.get(key, str)
            try:
                setattr(ns, key, parser(raw))
            except (ValueError, argparse.ArgumentTypeError) as e:
                raise UsageError(f"bad config value {key}={raw!r}: {e}")
    for key, default in _HARD_DEFAULTS[ns.command].items():
        if getattr(ns, key) is None:
            setattr(ns, key, default)
    if hasattr(ns, "window") and ns.window is None:
        ns.window = _WINDOW_DEFAULT.get(ns.command, Window.SYMMETRIC)
    return ns


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    ns = ap.parse_args(argv)
    try:
        ns = _apply_config_and_defaults(ns)
        if ns.command == "verify":
            return _cmd_verify(ns)
        if ns.command == "coeffs":
            return _cmd_coeffs(ns)
        if ns.command == "seq":
            return _cmd_seq(ns)
        if ns.command == "compositions":
            return _cmd_compositions(ns)
        raise UsageError(f"unknown command {ns.command!r}")
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def run() -> None:
    sys.exit(main())
