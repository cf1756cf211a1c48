"""
Command-line front end: ``qbaker {husimi,compare,humps,selftest}``.

Every command writes CSV grids plus a JSON metadata file next to the output
prefix.  Flags override entries of an optional ``--config`` file of flat
``key = value`` lines.  Exit codes: 0 success, 1 validation error,
2 invariant failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import selftest as _selftest
from .baker import BakerFamilyParams, baker_apply
from .coherent import DEFAULT_EPS, PhasePoint, cell_centres, coherent_state, husimi
from .semiclassical import (
    SemiclassicalRegime,
    compare_exact_semiclassical,
    hump_catalog,
    is_singular_a2,
    psi_kappa_curve,
)
from .serialize import (
    comparison_envelope,
    dump_json,
    humps_csv,
    husimi_csv,
    husimi_envelope,
    psi_curve_csv,
    write_grid_csv,
)
from .torus import StateVector, TorusSpace, pf_basis_state

EXIT_OK, EXIT_VALIDATION, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text: str):
    parts = str(text).split(",")
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def read_config(path) -> dict:
    """Flat ``key = value`` file; blank lines and '#' comments are skipped."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def build_parser() -> argparse.ArgumentParser:
    # defaults live in DEFAULTS so that config entries can fill unset flags
    p = _Parser(prog="qbaker", description="Quantum baker's maps on the torus")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="flat key = value file; flags take precedence")
        sp.add_argument("--out", help="output prefix")
        sp.add_argument("--eps", type=float)

    h = sub.add_parser("husimi", help="Husimi function of a state")
    common(h)
    h.add_argument("--N", type=int)
    h.add_argument("--n", type=int, help="position bits (for baker: states)")
    h.add_argument("--r", type=int, help="momentum bits, n = N - r (for baker: states)")
    h.add_argument("--state", help="coherent:q,p | pf:X;A | baker:q,p | zero")
    h.add_argument("--nq", type=int)
    h.add_argument("--np", type=int)
    h.add_argument("--normalize", action="store_true", default=None)

    c = sub.add_parser("compare", help="exact vs semiclassical propagator")
    common(c)
    c.add_argument("--N", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--theta")
    c.add_argument("--s", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--a")
    c.add_argument("--nq", type=int)
    c.add_argument("--np", type=int)
    c.add_argument("--form", choices=["61", "62"])
    c.add_argument("--normalize", action="store_true", default=None)

    m = sub.add_parser("humps", help="hump catalog and Psi^2 curves")
    common(m)
    m.add_argument("--r", type=int)
    m.add_argument("--a")
    m.add_argument("--a1", type=float)
    m.add_argument("--sweep-a2", type=int, dest="sweep_a2")

    t = sub.add_parser("selftest", help="run the invariant suite")
    t.add_argument("--config")
    t.add_argument("--max-N", type=int, dest="max_N")
    t.add_argument("--eps", type=float)
    t.add_argument("--seed", type=int)
    return p


DEFAULTS = {
    "husimi": {"out": "husimi", "eps": DEFAULT_EPS, "nq": 64, "np": 64, "normalize": False},
    "compare": {"out": "compare", "eps": DEFAULT_EPS, "nq": 64, "np": 64, "form": "62", "normalize": False},
    "humps": {"out": "humps", "eps": DEFAULT_EPS},
    "selftest": {"max_N": 10, "eps": DEFAULT_EPS, "seed": 0},
}

_TYPES = {"N": int, "n": int, "r": int, "s": int, "nq": int, "np": int, "max_N": int, "seed": int,
          "sweep_a2": int, "eps": float, "a1": float,
          "normalize": lambda v: str(v).lower() in ("1", "true", "yes", "on")}


def resolve(args: argparse.Namespace) -> dict:
    """Merge flags > config file > defaults into a plain dict."""
    cfg = vars(args).copy()
    fileconf = read_config(cfg["config"]) if cfg.get("config") else {}
    for key, val in fileconf.items():
        if key not in cfg:
            raise UsageError(f"unknown config key {key!r} for {args.command}")
        if cfg[key] is None:
            cfg[key] = _TYPES.get(key, str)(val)
    for key, val in DEFAULTS[args.command].items():
        if cfg.get(key) is None:
            cfg[key] = val
    if "eps" in cfg and not (0.0 < cfg["eps"] < 1.0):
        raise UsageError(f"--eps must lie in (0, 1), got {cfg['eps']}")
    return cfg


def _meta(cfg, t0) -> dict:
    echo = {k: v for k, v in cfg.items() if v is not None}
    return {"command": cfg["command"], "config": echo, "version": __version__,
            "wall_time": round(time.perf_counter() - t0, 6)}


def _parse_state(cfg):
    spec = cfg.get("state")
    N = cfg.get("N")
    if spec is None or N is None:
        raise UsageError("husimi needs --N and --state")
    space = TorusSpace.qubits(N)
    kind, _, rest = spec.partition(":")
    if kind == "zero":
        return StateVector(space, np.zeros(space.D))
    if kind == "coherent":
        return coherent_state(space, PhasePoint(*_pair(rest)), cfg["eps"], cfg["normalize"])
    if kind == "pf":
        xs, sep, as_ = rest.partition(";")
        if not sep:
            raise UsageError("pf states are written pf:X;A with bit strings X and A")
        x_bits = [int(c) for c in xs.strip()]
        a_bits = [int(c) for c in as_.strip()]
        if cfg.get("n") is not None and cfg["n"] != len(x_bits):
            raise UsageError(f"--n {cfg['n']} disagrees with {len(x_bits)} position bits")
        return pf_basis_state(space, x_bits, a_bits)
    if kind == "baker":
        n = _map_n(cfg, N)
        psi = coherent_state(space, PhasePoint(*_pair(rest)), cfg["eps"], cfg["normalize"])
        return baker_apply(psi, BakerFamilyParams(N, n))
    raise UsageError(f"unknown state kind {kind!r}")


def _map_n(cfg, N):
    n, r = cfg.get("n"), cfg.get("r")
    if (n is None) == (r is None):
        raise UsageError("give exactly one of --n or --r")
    n = N - r if n is None else n
    if not (1 <= n <= N):
        raise UsageError(f"n must satisfy 1 <= n <= N={N}, got {n}")
    return n


def cmd_husimi(cfg, t0):
    state = _parse_state(cfg)
    grid = husimi(state, cfg["nq"], cfg["np"], cfg["eps"], cfg["normalize"])
    out = cfg["out"]
    with open(f"{out}.csv", "w", newline="") as fh:
        husimi_csv(grid, fh)
    with open(f"{out}.json", "w") as fh:
        dump_json(husimi_envelope(grid, _meta(cfg, t0)), fh)
    return [f"{out}.csv", f"{out}.json"]


def _compare_setup(cfg):
    N = cfg.get("N")
    if N is None or cfg.get("a") is None:
        raise UsageError("compare needs --N and --a")
    given = [cfg.get("n") is not None, cfg.get("theta") is not None or cfg.get("s") is not None,
             cfg.get("r") is not None]
    if sum(given) != 1:
        raise UsageError("give exactly one of --n, (--theta, --s) or --r")
    if cfg.get("n") is not None:
        if not (1 <= cfg["n"] < N):
            raise UsageError(f"--n must satisfy 1 <= n < N={N}, got {cfg['n']}")
        return BakerFamilyParams(N, cfg["n"]), SemiclassicalRegime("theta-zero")
    if cfg.get("r") is not None:
        r = cfg["r"]
        if not (0 <= r < N):
            raise UsageError(f"--r must satisfy 0 <= r < N={N}, got {r}")
        return BakerFamilyParams.from_path(1, -r, N), SemiclassicalRegime("theta-one", r)
    if cfg.get("theta") is None or cfg.get("s") is None:
        raise UsageError("--theta and --s go together")
    theta = Fraction(cfg["theta"])
    params = BakerFamilyParams.from_path(theta, cfg["s"], N)
    if theta == 1:
        return params, SemiclassicalRegime("theta-one", -cfg["s"])
    return params, SemiclassicalRegime("theta-zero" if theta == 0 else "theta-mid")


def cmd_compare(cfg, t0):
    params, regime = _compare_setup(cfg)
    a = PhasePoint(*_pair(cfg["a"]))
    rep = compare_exact_semiclassical(a, params, regime, cfg["nq"], cfg["np"], cfg["eps"],
                                      cfg["normalize"], cfg["form"])
    out = cfg["out"]
    with open(f"{out}_exact.csv", "w", newline="") as fh:
        write_grid_csv(fh, rep.q, rep.p, rep.exact)
    with open(f"{out}_semiclassical.csv", "w", newline="") as fh:
        write_grid_csv(fh, rep.q, rep.p, rep.semiclassical)
    with open(f"{out}.json", "w") as fh:
        dump_json(comparison_envelope(rep, _meta(cfg, t0)), fh)
    return [f"{out}_exact.csv", f"{out}_semiclassical.csv", f"{out}.json"]


def cmd_humps(cfg, t0):
    r = cfg.get("r")
    if r is None or r < 0:
        raise UsageError("humps needs --r >= 0")
    a = _pair(cfg["a"]) if cfg.get("a") else None
    a1 = cfg.get("a1") if cfg.get("a1") is not None else (a[0] if a else None)
    if a is None and (a1 is None or cfg.get("sweep_a2") is None):
        raise UsageError("humps needs --a, or --a1 with --sweep-a2")
    out = cfg["out"]
    written = []
    meta = {"r": r, "R": 2 ** r}
    if a is not None:
        cat = hump_catalog(complex(*a), r)
        sing = bool(is_singular_a2(a[1], r))
        with open(f"{out}_catalog.csv", "w", newline="") as fh:
            humps_csv(cat, fh, singular=sing)
        written.append(f"{out}_catalog.csv")
        meta.update({"a": list(a), "singular_a2": sing})
    if cfg.get("sweep_a2") is not None:
        n = cfg["sweep_a2"]
        a2 = cell_centres(n)
        kappas = list(range(2 ** (r + 1)))
        curves = np.array([psi_kappa_curve(a1, a2, r, k) ** 2 for k in kappas])
        sing = is_singular_a2(a2, r)
        with open(f"{out}_curves.csv", "w", newline="") as fh:
            psi_curve_csv(fh, a2, kappas, curves, sing)
        written.append(f"{out}_curves.csv")
        meta.update({"a1": a1, "samples": n, "singular_samples": int(sing.sum())})
    with open(f"{out}.json", "w") as fh:
        dump_json({"metadata": {**meta, **_meta(cfg, t0)}}, fh)
    written.append(f"{out}.json")
    return written


def cmd_selftest(cfg, t0):
    results = _selftest.run(cfg["max_N"], cfg["eps"], cfg["seed"])
    print(_selftest.format_table(results))
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed "
          f"in {time.perf_counter() - t0:.1f}s")
    return ok


COMMANDS = {"husimi": cmd_husimi, "compare": cmd_compare, "humps": cmd_humps}


def main(argv=None) -> int:
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve(args)
        if args.command == "selftest":
            return EXIT_OK if cmd_selftest(cfg, t0) else EXIT_INVARIANT
        for path in COMMANDS[args.command](cfg, t0):
            print(path)
        return EXIT_OK
    except UsageError as exc:
        print(f"qbaker: usage error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        print(f"qbaker: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"qbaker: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"qbaker: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
