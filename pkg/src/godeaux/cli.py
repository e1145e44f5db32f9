"""Command-line pipeline: derive, sample-line, build, classify, family, verify, sweep.

Every command writes JSON artifacts plus a manifest.json into --out.  Seeds
resolve as: config file < GODEAUX_SEED < --seed.  Given the same
configuration all artifacts are byte-identical; wall-clock timings go to a
separate timings.json.
"""
from __future__ import annotations

import argparse
import json
import os
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from dataclasses import field as dc_field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .errors import ConfigError, GodeauxError
from .exactalg.field import DEFAULT_PRIME, is_prime

SEED_ENV = "GODEAUX_SEED"


@dataclass
class RunConfig:
    field: int = DEFAULT_PRIME
    seed: int = 0
    through: list[str] = dc_field(default_factory=list)
    second: list[str] = dc_field(default_factory=list)
    avoid: list[str] = dc_field(default_factory=list)
    max_bidegree: tuple[int, int] = (9, 9)
    trials: int = 1
    workers: int = 1
    out: str = "."

    def to_json(self) -> dict:
        d = asdict(self)
        d["max_bidegree"] = list(self.max_bidegree)
        del d["out"]
        return d


def derive_seed(seed: int, *path: int) -> int:
    """A 63-bit seed for a sub-task, fixed by (seed, path)."""
    ss = np.random.SeedSequence([int(seed) % 2**64, *[int(v) for v in path]])
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


# -- JSON I/O ----------------------------------------------------------------------

def dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def write_json(out: Path, name: str, obj) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    text = dump(obj)
    if not (path.exists() and path.read_text() == text):
        path.write_text(text)
    return path


def read_json(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"{path}: no such file") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return data


def require(data: dict, key: str, where: str):
    if key not in data:
        raise ConfigError(f"{where}: missing field '{key}'")
    return data[key]


def check_field(data: dict, p: int, where: str):
    got = data.get("field")
    if got is not None and int(got) != p:
        raise ConfigError(f"{where}: field 'field' is {got}, run configured for {p}")


def load_line(path: str, p: int):
    from .qgeom.core import Line
    data = read_json(path)
    if "line" in data and "stiefel" not in data:
        data = data["line"]
        path = f"{path}#line"
    require(data, "stiefel", str(path))
    check_field(data, p, str(path))
    try:
        return Line.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise ConfigError(f"{path}: field 'stiefel' is malformed ({exc})") from exc


def load_resolution(path: str, p: int):
    from .construct.assemble import ResolutionCandidate
    data = read_json(path)
    for key in ("d1", "d2", "line", "solution"):
        require(data, key, str(path))
    check_field(data["line"], p, f"{path}#line")
    ring_p = data["d1"].get("ring", {}).get("p")
    if ring_p is not None and int(ring_p) != p:
        raise ConfigError(f"{path}: field 'd1.ring.p' is {ring_p}, run configured for {p}")
    try:
        return ResolutionCandidate.from_json(data)
    except GodeauxError:
        raise
    except Exception as exc:
        raise ConfigError(f"{path}: malformed resolution ({exc})") from exc


def manifest(cfg: RunConfig, command: str, outputs: Sequence[str], extra: dict | None = None):
    import sympy
    return {"schema": "godeaux.manifest/1", "command": command, "config": cfg.to_json(),
            "outputs": sorted(outputs), "versions": {
                "godeaux": __version__, "python": platform.python_version(),
                "numpy": np.__version__, "sympy": sympy.__version__}, **(extra or {})}


# -- commands ----------------------------------------------------------------------

def cmd_derive(cfg: RunConfig, args) -> dict:
    from .godeaux_data.derive import RelationSystem, derive_relations
    out = Path(cfg.out)
    path = out / "relations.json"
    sysr = derive_relations(cfg.field)
    fresh = sysr.to_json()
    if path.exists():
        try:
            cached = RelationSystem.from_json(json.loads(path.read_text()), cfg.field)
            if cached.to_json() == fresh:
                return {"relations.json": fresh}
        except Exception:
            pass                      # unreadable cache: recompute and overwrite
    write_json(out, "relations.json", fresh)
    return {"relations.json": fresh}


def _meets_any(line, names, lib) -> list[str]:
    return [n for n in names if lib[n].meets(line)]


def cmd_sample_line(cfg: RunConfig, args) -> dict:
    from .qgeom.loci import locus_library
    from .qgeom.sampling import random_line
    lib = locus_library(cfg.field)
    through = lib[cfg.through[0]] if cfg.through else None
    second = lib[cfg.second[0]] if cfg.second else None
    for attempt in range(200):
        s = derive_seed(cfg.seed, 1, attempt)
        line = random_line(s, cfg.field, through=through, second=second)
        if not _meets_any(line, cfg.avoid, lib):
            line.provenance["attempt"] = attempt
            return {"line.json": line.to_json()}
    raise GodeauxError("no line avoiding the requested loci after 200 attempts")


def _solution_from_args(space, args, seed: int):
    if getattr(args, "solution", None):
        vals = _pair(args.solution, "solution")
        if len(vals) != space.basis.shape[1]:
            raise ConfigError(f"--solution: need {space.basis.shape[1]} values")
        if not space.contains(vals):
            raise ConfigError("--solution: vector does not solve the second-step system")
        return np.array(vals, dtype=np.int64) % space.line.p
    if getattr(args, "coeffs", None):
        coeffs = _pair(args.coeffs, "coeffs")
        if len(coeffs) != space.dim:
            raise ConfigError(f"--coeffs: the solution space has dimension {space.dim}, "
                              f"got {len(coeffs)} coefficients")
        return space.combination(coeffs)
    return space.generic(seed)


def build_candidate(line, seed: int, args=None):
    from .construct.assemble import assemble
    from .construct.second_step import solve_second_step
    space = solve_second_step(line)
    vec = _solution_from_args(space, args, seed) if args is not None else space.generic(seed)
    return space, assemble(line, vec)


def cmd_build(cfg: RunConfig, args) -> dict:
    from .construct.verify import verify
    line = load_line(args.line, cfg.field)
    space, cand = build_candidate(line, derive_seed(cfg.seed, 2), args)
    rep = verify(cand, "fast")
    report = rep.to_json()
    timings = report.pop("timings", {})
    return {"solution_space.json": space.to_json(), "resolution.json": cand.to_json(),
            "report.json": report, "_timings": timings}


def cmd_classify(cfg: RunConfig, args) -> dict:
    from .classify.report import classify
    cand = None
    if args.resolution:
        cand = load_resolution(args.resolution, cfg.field)
        line = cand.line
    elif args.line:
        line = load_line(args.line, cfg.field)
    else:
        raise ConfigError("classify needs --line or --resolution")
    rep = classify(line, cand, tuple(cfg.max_bidegree),
                   with_normal_bundle=not args.no_normal_bundle)
    return {"classification.json": rep.to_json()}


def _pair(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except (AttributeError, ValueError) as exc:
        raise ConfigError(f"--{name}: expected comma-separated integers") from exc


def cmd_family(cfg: RunConfig, args) -> dict:
    from .qgeom import families
    from .qgeom.sampling import line_through
    p = cfg.field
    if args.kind == "z5":
        line = families.family_z5(_pair(args.p or "1,1", "p"), _pair(args.q or "1,2", "q"), p)
    elif args.kind == "z3":
        line = families.family_z3(_pair(args.z or "1,2", "z"), _pair(args.u or "1,2,3,4", "u"),
                                  _pair(args.w or "1,1", "w"), p)
    else:
        rng = np.random.Generator(np.random.Philox(key=[derive_seed(cfg.seed, 3), 0]))
        pt = families.random_hyp_point(rng, p)
        given = {k: getattr(args, k) for k in "vwxyz" if getattr(args, k)}
        if given:
            vals = {k: _pair(given.get(k) or ",".join(map(str, getattr(pt, k))), k)
                    for k in "vwxyz"}
            pt = families.HypParamPoint(**vals)
        P = families.hyp_param(pt, p)
        line = line_through(P, None, derive_seed(cfg.seed, 4), p,
                            {"kind": "hyp", "param": pt.to_json()})
    return {"line.json": line.to_json()}


def cmd_verify(cfg: RunConfig, args) -> dict:
    from .construct.verify import verify
    cand = load_resolution(args.resolution, cfg.field)
    rep = verify(cand, args.level, seed=derive_seed(cfg.seed, 5))
    report = rep.to_json()
    return {"report.json": report, "_timings": report.pop("timings", {})}


def sweep_trial(task: tuple) -> dict:
    """One trial of a sweep; module level so worker processes can run it."""
    p, seed, trial, through, second, level = task
    from .construct.verify import verify
    from .qgeom.loci import locus_library
    from .qgeom.sampling import random_line
    lib = locus_library(p)
    s = derive_seed(seed, 6, trial)
    rec: dict = {"trial": trial, "seed": str(s)}
    try:
        line = random_line(s, p, through=lib[through] if through else None,
                           second=lib[second] if second else None)
        space, cand = build_candidate(line, derive_seed(s, 2))
        rec.update({"line": line.to_json(), "dim": space.dim, "s": space.projective_dim})
        if space.dim:
            rep = verify(cand, level)
            rec["checks"] = rep.checks
            if "rc_ok" in rep.checks:
                rec["rc"] = rep.checks["rc_ok"]
    except GodeauxError as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def cmd_sweep(cfg: RunConfig, args) -> dict:
    through = cfg.through[0] if cfg.through else None
    second = cfg.second[0] if cfg.second else None
    tasks = [(cfg.field, cfg.seed, t, through, second, args.level) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            recs = list(ex.map(sweep_trial, tasks))
    else:
        recs = [sweep_trial(t) for t in tasks]
    recs.sort(key=lambda r: r["trial"])
    hist: dict[str, int] = {}
    for r in recs:
        if "s" in r:
            hist[str(r["s"])] = hist.get(str(r["s"]), 0) + 1
    return {"sweep.json": {"schema": "godeaux.sweep/1", "through": through, "second": second,
                           "trials": recs, "s_histogram": hist}}


COMMANDS = {"derive": cmd_derive, "sample-line": cmd_sample_line, "build": cmd_build,
            "classify": cmd_classify, "family": cmd_family, "verify": cmd_verify,
            "sweep": cmd_sweep}


# -- argument handling ---------------------------------------------------------------

def _names(text: str | None) -> list[str]:
    return [t for t in (text or "").split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, help="prime field characteristic")
    common.add_argument("--seed", type=int, help="run seed (overrides GODEAUX_SEED)")
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--through", help="comma-separated locus keys for the first point")
    common.add_argument("--second", help="locus key for the second point")
    common.add_argument("--avoid", help="comma-separated locus keys the line must miss ('all' for every one)")
    common.add_argument("--max-bidegree", help="P,Q bound for the generator table")
    common.add_argument("--trials", type=int, help="number of sweep trials")
    common.add_argument("--workers", type=int, help="worker processes for sweeps")

    ap = argparse.ArgumentParser(prog="godeaux", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("derive", parents=[common], help="derive and write the relation system")
    sub.add_parser("sample-line", parents=[common], help="sample a line in Q")
    b = sub.add_parser("build", parents=[common], help="solve the second step and assemble")
    b.add_argument("--line", required=True)
    b.add_argument("--solution", help="explicit comma-separated solution vector (84 values)")
    b.add_argument("--coeffs", help="coefficients on the kernel basis")
    c = sub.add_parser("classify", parents=[common], help="classify a line or a resolution")
    c.add_argument("--line")
    c.add_argument("--resolution")
    c.add_argument("--no-normal-bundle", action="store_true")
    f = sub.add_parser("family", parents=[common], help="a line from an explicit family")
    f.add_argument("kind", choices=["z5", "z3", "hyp"])
    for name in ("p", "q", "z", "u", "w", "v", "x", "y"):
        f.add_argument(f"--{name}", help="comma-separated family parameters")
    v = sub.add_parser("verify", parents=[common], help="verify an assembled resolution")
    v.add_argument("resolution")
    v.add_argument("--level", choices=["fast", "full"], default="fast")
    s = sub.add_parser("sweep", parents=[common], help="trials through special loci")
    s.add_argument("--level", choices=["fast", "full"], default="fast")
    return ap


def resolve_config(args, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    cfg = RunConfig()
    if args.config:
        data = read_json(args.config)
        known = set(RunConfig.__dataclass_fields__)
        for k, val in data.items():
            if k not in known:
                raise ConfigError(f"{args.config}: unknown field '{k}'")
            setattr(cfg, k, val)
        cfg.max_bidegree = tuple(cfg.max_bidegree)
    if environ.get(SEED_ENV):
        try:
            cfg.seed = int(environ[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    if args.seed is not None:
        cfg.seed = args.seed
    if args.field is not None:
        cfg.field = args.field
    if args.out is not None:
        cfg.out = args.out
    if args.through is not None:
        cfg.through = _names(args.through)
    if args.second is not None:
        cfg.second = _names(args.second)
    if args.avoid is not None:
        cfg.avoid = _names(args.avoid)
    if args.max_bidegree is not None:
        cfg.max_bidegree = _pair(args.max_bidegree, "max-bidegree")
    if args.trials is not None:
        cfg.trials = args.trials
    if args.workers is not None:
        cfg.workers = args.workers
    if not is_prime(int(cfg.field)):
        raise ConfigError(f"field: {cfg.field} is not prime")
    if len(cfg.max_bidegree) != 2:
        raise ConfigError("max_bidegree: expected two integers")
    if cfg.through or cfg.second or cfg.avoid:
        from .qgeom.loci import locus_library
        lib = locus_library(cfg.field)
        if "all" in cfg.avoid:
            cfg.avoid = lib.names()
        for key in cfg.through + cfg.second + cfg.avoid:
            if key not in lib:
                raise ConfigError(f"unknown locus {key!r}; known: {', '.join(lib.names())}")
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = resolve_config(args)
        result = COMMANDS[args.command](cfg, args)
    except GodeauxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(cfg.out)
    timings = result.pop("_timings", None)
    for name, obj in result.items():
        write_json(out, name, obj)
    if timings is not None:
        write_json(out, "timings.json", {k: round(v, 4) for k, v in timings.items()})
    write_json(out, "manifest.json", manifest(cfg, args.command, list(result)))
    for name in sorted(result):
        print(out / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
