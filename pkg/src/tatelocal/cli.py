"""Command-line access to every operation, with JSON or CSV output.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .errors import TateLocalError
from .localfield.bruhat import BruhatFunction
from .localfield.characters import UnitaryCharacter
from .localfield.logexact import LogExact
from .localfield.padic import is_prime
from .localfield.place import Place
from .localfield.testfunction import MultiplicativeTestFunction


class UsageError(Exception):
    pass


# --- output -------------------------------------------------------------------


def _num(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def _plain(obj):
    """Turn payload objects into JSON-ready structures (complex → {re, im})."""
    if isinstance(obj, LogExact):
        return obj.to_dict()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_plain(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    obj = _plain(obj)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, list):
        return "[" + ", ".join(dumps(x) for x in obj) + "]"
    return "{" + ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items()) + "}"


def _flatten(prefix: str, obj, out: list) -> None:
    obj = _plain(obj)
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, _num(obj) if isinstance(obj, float) else obj))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_num(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def emit(payload: dict, fmt: str, table: tuple | None = None) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    if table is not None:
        return _csv(*table)
    rows: list = []
    _flatten("", payload, rows)
    return _csv(("key", "value"), rows)


# --- argument parsing -----------------------------------------------------------


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not numbers: {text!r}") from None


def _triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start,stop,step, got {text!r}")
    try:
        a, b, h = (float(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not numbers: {text!r}") from None
    if h <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    return a, b, h


def _index(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"character index must be integers, got {text!r}") from None


def _grid(spec) -> np.ndarray:
    a, b, h = spec
    n = int(math.floor((b - a) / h + 1e-9))
    return a + h * np.arange(n + 1)


def _add_character_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--place", choices=("finite", "real", "complex"), required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--delta", type=int, default=0)
    p.add_argument("--f", type=int, default=0)
    p.add_argument("--char-index", type=_index)
    p.add_argument("--parity", choices=("plus", "minus"), default="plus")
    p.add_argument("--N", type=int, default=0)
    p.add_argument("--tau", type=float, default=0.0)


def _character(args) -> UnitaryCharacter:
    if args.place == "real":
        return UnitaryCharacter.real(args.parity, args.tau)
    if args.place == "complex":
        return UnitaryCharacter.complex(args.N, args.tau)
    if args.q is None:
        raise UsageError("--q is required at a finite place")
    place = Place.finite(args.q, args.delta)
    if args.f == 0:
        return UnitaryCharacter.unramified(place, args.tau)
    if args.char_index is None or not is_prime(args.q):
        return UnitaryCharacter.ramified_conductor_only(place, args.f, args.tau)
    return UnitaryCharacter(place, args.f, args.char_index, tau=args.tau)


def _bump(pair) -> MultiplicativeTestFunction:
    return MultiplicativeTestFunction.bump(pair[0], pair[1])


def _load_phi(path: str, p: int) -> BruhatFunction:
    with open(path, encoding="utf-8") as fh:
        phi = BruhatFunction.from_dict(json.load(fh))
    if phi.p != p:
        raise UsageError(f"--p {p} does not match the function file (p = {phi.p})")
    return phi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatelocal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    p = add("gamma", "Gamma factor Γ(χ, s)")
    _add_character_flags(p)
    p.add_argument("--s", type=_pair, required=True, help="re,im")

    p = add("spectral", "m-th derivative of log Γ(χ, s)")
    _add_character_flags(p)
    p.add_argument("--order", type=int, default=1)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--s", type=_pair)
    g.add_argument("--tau-grid", type=_triple, help="start,stop,step on Re s = 1/2")

    p = add("symbol", "Toeplitz symbol on the unit circle")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kind", choices=("H", "K"), required=True)
    p.add_argument("--theta-grid", type=_triple, required=True)

    p = add("toeplitz", "eigenvalues of an N×N truncation")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kind", choices=("H", "K"), required=True)
    p.add_argument("--size", type=int, required=True)

    p = add("weil", "local term W(χ, g)")
    _add_character_flags(p)
    p.add_argument("--route", choices=("spectral", "convolution", "closed"), required=True)
    p.add_argument("--bump", type=_pair, required=True, help="u0,L")

    p = add("conductor-integral", "exact ∫(1 - χ(t)) d^×t/|1 - t| over the units")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--char-index", type=_index, required=True)

    p = add("g-apply", "G(φ) for a Bruhat function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--omega", default=None)

    p = add("conductor-apply", "H(φ) for a Bruhat function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--phi", required=True)

    p = add("multiplier-check", "Γ(χω_τ, 1/2) multiplier identity")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--f", type=int, default=0)
    p.add_argument("--char-index", type=_index)

    p = add("explicit", "explicit formula report for ζ")
    p.add_argument("--zeros", required=True)
    p.add_argument("--bump", type=_pair, required=True)
    p.add_argument("--zero-count", type=int)

    p = add("poisson", "Poisson summation check")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--bump", type=_pair, required=True)
    return parser


# --- commands -------------------------------------------------------------------


def _cmd_gamma(args):
    from .gamma import gamma_eval

    chi = _character(args)
    v = gamma_eval(chi, complex(*args.s))
    return {"chi": chi.to_dict(), "s": complex(*args.s), "value": v.value}, None


def _cmd_spectral(args):
    from .spectral import dlog_gamma, dlog_gamma_values

    chi = _character(args)
    if args.s is not None:
        v = dlog_gamma(chi, complex(*args.s), args.order)
        payload = {"chi": chi.to_dict(), "order": args.order, "s": v.s, "value": v.value}
        if v.exact is not None:
            payload["exact"] = v.exact
        return payload, None
    taus = _grid(args.tau_grid)
    vals = dlog_gamma_values(chi, 0.5 + 1j * taus, args.order)
    payload = {"chi": chi.to_dict(), "order": args.order, "tau": taus, "value": vals}
    rows = [(float(t), float(v.real), float(v.imag)) for t, v in zip(taus, vals)]
    return payload, (("tau", "re", "im"), rows)


def _cmd_symbol(args):
    from .spectral import symbol

    thetas = _grid(args.theta_grid)
    vals = symbol(args.p, np.exp(1j * thetas), args.kind)
    vals = np.atleast_1d(vals)
    payload = {"p": args.p, "kind": args.kind, "theta": thetas, "value": vals}
    return payload, (("theta", "value"), [(float(t), float(v)) for t, v in zip(thetas, vals)])


def _cmd_toeplitz(args):
    from .spectral import spectrum_support, toeplitz_spectrum

    t = toeplitz_spectrum(args.p, args.kind, args.size)
    payload = {"p": args.p, "kind": args.kind, "size": args.size, "eigenvalues": t.eigenvalues,
               "support": list(spectrum_support(args.p, args.kind))}
    return payload, (("index", "eigenvalue"), [(i, float(v)) for i, v in enumerate(t.eigenvalues)])


def _cmd_weil(args):
    from .weil import weil_term

    chi = _character(args)
    r = weil_term(chi.place, chi, _bump(args.bump), args.route)
    return r.to_dict(), None


def _cmd_conductor_integral(args):
    from .weil import conductor_integral

    chi = UnitaryCharacter.dirichlet(args.p, args.f, args.char_index)
    return conductor_integral(chi).to_dict(), None


def _cmd_g_apply(args):
    from .weil import g_apply

    phi = _load_phi(args.phi, args.p)
    return {"value": g_apply(Place.finite(args.p), phi, args.omega)}, None


def _cmd_conductor_apply(args):
    from .weil import conductor_apply

    phi = _load_phi(args.phi, args.p).canonicalize()
    return conductor_apply(phi).to_dict(), None


def _cmd_multiplier_check(args):
    from .weil import tate_multiplier_check

    phi = _load_phi(args.phi, args.p)
    if args.f:
        if args.char_index is None:
            raise UsageError("--char-index is required with --f")
        chi = UnitaryCharacter.dirichlet(args.p, args.f, args.char_index)
    else:
        chi = UnitaryCharacter.unramified(Place.finite(args.p))
    r = tate_multiplier_check(phi, chi, args.tau)
    return {"lhs": r.lhs, "rhs": r.rhs, "discrepancy": r.discrepancy}, None


def _cmd_explicit(args):
    from .globalverify import explicit_report, load_zeros

    zeros = load_zeros(args.zeros)
    if args.zero_count is not None:
        zeros = zeros.head(args.zero_count)
    return explicit_report(_bump(args.bump), zeros).to_dict(), None


def _cmd_poisson(args):
    from .globalverify import poisson_check

    r = poisson_check(args.u, _bump(args.bump))
    return {"lhs": r.lhs, "rhs": r.rhs, "discrepancy": r.discrepancy, "terms": r.terms,
            "tail_bound": r.tail_bound}, None


COMMANDS = {
    "gamma": _cmd_gamma, "spectral": _cmd_spectral, "symbol": _cmd_symbol, "toeplitz": _cmd_toeplitz,
    "weil": _cmd_weil, "conductor-integral": _cmd_conductor_integral, "g-apply": _cmd_g_apply,
    "conductor-apply": _cmd_conductor_apply, "multiplier-check": _cmd_multiplier_check,
    "explicit": _cmd_explicit, "poisson": _cmd_poisson,
}


def _diagnose(message: str, stream) -> None:
    tag = "error:"
    if not os.environ.get("NO_COLOR") and getattr(stream, "isatty", lambda: False)():
        tag = "\033[31merror:\033[0m"
    print(f"{tag} {message}", file=stream)


def run_command(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, table = COMMANDS[args.command](args)
    except UsageError as exc:
        _diagnose(str(exc), stderr)
        return 2
    except (TateLocalError, ValueError, ZeroDivisionError, ArithmeticError, OSError, KeyError) as exc:
        _diagnose(f"{type(exc).__name__}: {exc}", stderr)
        return 1
    stdout.write(emit(payload, args.format, table))
    return 0


def main(argv=None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
