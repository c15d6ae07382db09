"""Batch runner: verify identity suites, evaluate invariants on named
words, and run quadrature convergence ladders.

Reports are single JSON documents and are byte-deterministic for a fixed
config and seed; the sign/orientation conventions travel with every
report so results remain auditable.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .cochain import CONVENTIONS
from .errors import ConfigError, DomainError, FluxlabError
from .geometry import DEFAULT_SPEC, QuadratureSpec
from .identities import (
    ALL_IDENTITIES, DEFAULT_TOLERANCES, check_identity, convergence_table,
)
from .invariants import calabi, flux, kappa, tau, tau_prime
from .maps import MapWord, make_ham_flow, make_twist
from .wordgen import word_from_spec

_OPS = {
    "tau": tau,
    "flux": flux,
    "calabi": calabi,
    "kappa": lambda w, spec: kappa(w, spec),
    "tau_prime": lambda w, spec: tau_prime(w, spec),
}

_DEFAULT_LADDERS = {
    "PROP_3_3": (4, 8, 16),
    "STOKES_5_4": (4, 8, 16),
    "FLUX_LINEAR": (1, 2, 4),
}


def _builtin_words() -> dict:
    words = {}
    for tag, s in (("s05", 0.5), ("s1", 1.0), ("s2", 2.0), ("sm1", -1.0)):
        words[f"twist_{tag}"] = make_twist(1, (s,))
    # a flow with a linear Hamiltonian term: moves the origin, so it is a
    # ready-made negative example for the origin-fixing preconditions
    words["offset_flow"] = make_ham_flow(
        1, ((0.0, 0.0, 0.0), (0.4, 0.0, 0.0), (0.0, 0.0, 0.0)), 0.3)
    words["quadratic_flow"] = make_ham_flow(
        2, ((1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0)), 0.25)
    return words


# ---------------------------------------------------------------------------
# Configuration


_QUAD_FIELDS = {f.name for f in dataclasses.fields(QuadratureSpec)}


@dataclasses.dataclass
class SuiteConfig:
    identities: tuple
    seed: int = 0
    n_instances: int = None
    tolerance: float = None           # global override
    tolerances: dict = dataclasses.field(default_factory=dict)
    quadrature: QuadratureSpec = DEFAULT_SPEC
    words: dict = dataclasses.field(default_factory=dict)


def _parse_identities(value) -> tuple:
    if value in (None, "all", ["all"]):
        return tuple(ALL_IDENTITIES)
    if isinstance(value, str):
        value = [v for v in value.split(",") if v]
    out = []
    for ident in value:
        if ident not in ALL_IDENTITIES:
            raise ConfigError(f"unknown identity {ident!r}")
        out.append(ident)
    if not out:
        raise ConfigError("empty identity selection")
    return tuple(out)


def load_config(path=None, suite=None, seed=None, tol_scale=1.0) -> SuiteConfig:
    raw = {}
    if path is not None:
        try:
            with open(path) as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")

    identities = _parse_identities(suite if suite is not None
                                   else raw.get("identities", "all"))

    quad_over = raw.get("quadrature", {})
    bad = set(quad_over) - _QUAD_FIELDS
    if bad:
        raise ConfigError(f"unknown quadrature fields {sorted(bad)}")
    try:
        quad = QuadratureSpec(**{**dataclasses.asdict(DEFAULT_SPEC),
                                 **quad_over})
    except FluxlabError as exc:
        raise ConfigError(f"bad quadrature override: {exc}") from exc

    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigError("'tolerances' must map identity ids to numbers")
    for ident in tolerances:
        if ident not in ALL_IDENTITIES:
            raise ConfigError(f"tolerance for unknown identity {ident!r}")

    words = {}
    for entry in raw.get("words", []):
        if not isinstance(entry, dict) or "name" not in entry \
                or "factors" not in entry:
            raise ConfigError("word entries need 'name' and 'factors'")
        try:
            words[entry["name"]] = word_from_spec(entry["factors"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(
                f"bad word spec {entry['name']!r}: {exc}") from exc

    n_instances = raw.get("n_instances")
    if n_instances is not None and (not isinstance(n_instances, int)
                                    or n_instances < 1):
        raise ConfigError("'n_instances' must be a positive integer")

    cfg = SuiteConfig(
        identities=identities,
        seed=int(seed if seed is not None else raw.get("seed", 0)),
        n_instances=n_instances,
        tolerance=raw.get("tolerance"),
        tolerances=tolerances,
        quadrature=quad,
        words=words,
    )
    if cfg.tolerance is not None and not cfg.tolerance > 0:
        raise ConfigError("'tolerance' must be positive")
    if not tol_scale > 0:
        raise ConfigError("--tol-scale must be positive")
    return cfg


# ---------------------------------------------------------------------------
# verify


def _run_one(args):
    ident, seed, n, tol, tol_scale, quad = args
    return check_identity(ident, seed=seed, n_instances=n, tolerance=tol,
                          tol_scale=tol_scale, quad=quad)


def run_suites(cfg: SuiteConfig, tol_scale: float = 1.0, jobs: int = 1):
    tasks = []
    for ident in cfg.identities:
        tol = cfg.tolerances.get(ident, cfg.tolerance)
        tasks.append((ident, cfg.seed, cfg.n_instances, tol, tol_scale,
                      cfg.quadrature))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, tasks))
    else:
        reports = [_run_one(t) for t in tasks]
    return sorted(reports, key=lambda r: r.id)


def build_report(cfg: SuiteConfig, reports, tol_scale: float) -> dict:
    suites = []
    for rep in reports:
        entry = rep.to_json()
        # a requested tolerance below the quadrature's own target cannot
        # be certified by refinement
        entry["accuracy_not_reached"] = bool(
            not rep.verdict
            and rep.tolerance < cfg.quadrature.target_tol)
        suites.append(entry)
    return {
        "version": __version__,
        "conventions": CONVENTIONS,
        "suites": suites,
        "environment": {
            "seed": cfg.seed,
            "tol_scale": tol_scale,
            "quadrature": dataclasses.asdict(cfg.quadrature),
        },
    }


def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config, suite=args.suite, seed=args.seed,
                          tol_scale=args.tol_scale)
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return 3
    reports = run_suites(cfg, tol_scale=args.tol_scale, jobs=args.jobs)
    doc = build_report(cfg, reports, args.tol_scale)
    payload = json.dumps(doc, sort_keys=True, indent=2)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    for rep in reports:
        state = "PASS" if rep.verdict else ("ERROR" if rep.error else "FAIL")
        print(f"{rep.id:20s} {state:5s} max_residual={rep.max_residual:.3e} "
              f"tol={rep.tolerance:.1e} n={rep.n}", file=sys.stderr)
    return 0 if all(r.verdict for r in reports) else 2


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return 3
    library = {**_builtin_words(), **cfg.words}
    if args.word not in library:
        print(f"ConfigError: unknown word {args.word!r} "
              f"(known: {', '.join(sorted(library))})", file=sys.stderr)
        return 3
    if args.op not in _OPS:
        print(f"ConfigError: unknown op {args.op!r}", file=sys.stderr)
        return 3
    word = library[args.word]
    try:
        res = _OPS[args.op](word, cfg.quadrature)
    except DomainError as exc:
        print(f"DomainError: word {args.word!r} violates membership "
              f"{exc.membership!r} required by {args.op}", file=sys.stderr)
        return 2
    print(json.dumps({
        "word": args.word,
        "op": args.op,
        "value": res.value,
        "est_error": res.est_error,
        "quadrature": dataclasses.asdict(res.quadrature),
    }, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# convergence


def cmd_convergence(args) -> int:
    ladder = args.ladder
    if ladder is None:
        ladder = _DEFAULT_LADDERS.get(args.identity)
        if ladder is None:
            print(f"ConfigError: no default ladder for {args.identity!r}; "
                  f"pass --ladder", file=sys.stderr)
            return 3
    else:
        try:
            ladder = tuple(int(x) for x in ladder.split(","))
        except ValueError:
            print("ConfigError: --ladder must be comma-separated integers",
                  file=sys.stderr)
            return 3
    try:
        table = convergence_table(args.identity, args.seed or 0, ladder)
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return 3
    print(json.dumps(table, sort_keys=True, indent=2))
    return 0 if table["monotone_nonincreasing"] else 2


# ---------------------------------------------------------------------------
# entry point


def _default_jobs() -> int:
    env = os.environ.get("FLUXLAB_JOBS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxlab",
        description="Verify disk-symplectomorphism invariant identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity suites")
    p_verify.add_argument("--config", help="JSON suite configuration")
    p_verify.add_argument("--suite", help="comma-separated identity ids "
                                          "or 'all'")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--tol-scale", type=float, default=1.0)
    p_verify.add_argument("--report", help="write the JSON report here "
                                           "instead of stdout")
    p_verify.add_argument("--jobs", type=int, default=_default_jobs())
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate one invariant on a word")
    p_eval.add_argument("word", help="library word name")
    p_eval.add_argument("op", choices=sorted(_OPS))
    p_eval.add_argument("--config", help="JSON config with a word library")
    p_eval.set_defaults(func=cmd_eval)

    p_conv = sub.add_parser("convergence",
                            help="residual-vs-resolution ladder")
    p_conv.add_argument("identity")
    p_conv.add_argument("--ladder", help="comma-separated resolutions "
                                         "(at least 3)")
    p_conv.add_argument("--seed", type=int, default=0)
    p_conv.set_defaults(func=cmd_convergence)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
