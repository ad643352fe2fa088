"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a property violation, 2 on
usage or parse errors.  Reports are JSON with sorted keys and contain no
timestamps, so identical arguments give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .checks import Check, failure_witness, instance_checks
from .fpmod import fitting_ideal
from .generators import TEST_RINGS
from .ring import RingSpec
from .serialize import (
    FormatError,
    dumps,
    ideal_to_json,
    instance_from_json,
    instance_to_json,
    jsonable,
    parse_ring,
    ring_from_json,
    ring_to_json,
    system_from_json,
)
from .stark import SelmerInstance, StarkSystem, ideal_I, random_instance, stark_from_top
from .tower import build_tower, tower_ideal_profile, tower_system


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    ring: RingSpec = RingSpec(2, 2, ())
    rank: int = 1
    primes: tuple[str, ...] = ("q1", "q2")
    trials: int = 1
    max_i: int | None = None
    depth: int = 3
    density: float = 0.5
    out: str | None = None
    witness: str | None = None
    instance: str | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "ring": ring_to_json(self.ring),
            "rank_r": self.rank,
            "primes": list(self.primes),
            "trials": self.trials,
            "max_i": self.max_i,
            "depth": self.depth,
            "density": self.density,
            "instance": self.instance,
        }


def _parse_primes(text: str) -> tuple[str, ...]:
    text = text.strip()
    if text.isdigit():
        return tuple(f"q{i + 1}" for i in range(int(text)))
    labels = tuple(s.strip() for s in text.split(",") if s.strip())
    if len(set(labels)) != len(labels):
        raise UsageError("prime labels must be distinct")
    return labels


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorenstein-stark", description="Synthetic Stark systems over Gorenstein rings.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("gen", "generate a random instance"),
        ("verify", "run the property suite on instances"),
        ("fitting", "Fitting ideals of the dual Selmer module"),
        ("tower", "build a quotient tower and check level compatibility"),
        ("suite", "run the property suite over the test corpus"),
    ]:
        p = sub.add_parser(name, help=text)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--ring", default="p=2,a=2", help="e.g. p=2,a=2,e=2 or p=3,a=1,e=2;2")
        p.add_argument("--rank", type=int, default=1)
        p.add_argument("--primes", default="2", help="a count or comma-separated labels")
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--max-i", type=int, default=None)
        p.add_argument("--depth", type=int, default=3)
        p.add_argument("--density", type=float, default=0.5)
        p.add_argument("--out", default=None)
        p.add_argument("--witness", default=None)
        p.add_argument("--instance", default=None, help="instance or tower JSON file")
    return parser


def config_from_args(args) -> RunConfig:
    try:
        ring = parse_ring(args.ring)
        primes = _parse_primes(args.primes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.rank < 0 or args.trials < 1 or args.depth < 1:
        raise UsageError("rank must be >= 0, trials and depth >= 1")
    if not 0.0 <= args.density <= 1.0:
        raise UsageError("density must lie in [0, 1]")
    if args.max_i is not None and args.max_i < 0:
        raise UsageError("max-i must be >= 0")
    return RunConfig(
        command=args.command,
        seed=args.seed,
        ring=ring,
        rank=args.rank,
        primes=primes,
        trials=args.trials,
        max_i=args.max_i,
        depth=args.depth,
        density=args.density,
        out=args.out,
        witness=args.witness,
        instance=args.instance,
    )


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def generated_instance(cfg: RunConfig, k: int = 0) -> SelmerInstance:
    inst = random_instance(cfg.seed + k, cfg.ring, cfg.rank, len(cfg.primes), cfg.density)
    return SelmerInstance(inst.spec, inst.rank, cfg.primes, inst.loc, inst.provenance)


def _unit_for(inst: SelmerInstance, seed: int) -> np.ndarray:
    return inst.spec.random_unit(np.random.default_rng(seed))


def load_systems(cfg: RunConfig) -> list[StarkSystem]:
    """Systems from --instance (classes optional) or generated from seeds."""
    try:
        return _load_systems(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _load_systems(cfg: RunConfig) -> list[StarkSystem]:
    if cfg.instance:
        obj = _load_json(cfg.instance)
        if "master_instance" in obj:
            obj = obj["master_instance"]
        inst = instance_from_json(obj)
        if "classes" in obj:
            return [system_from_json(obj, inst)]
        unit = np.asarray(obj["unit"], dtype=np.int64) if "unit" in obj else None
        return [stark_from_top(inst, unit)]
    out = []
    for k in range(cfg.trials):
        inst = generated_instance(cfg, k)
        out.append(stark_from_top(inst, _unit_for(inst, cfg.seed + k)))
    return out


def ideal_table(sys: StarkSystem, max_i: int) -> dict:
    d_empty = sys.instance.dual_selmer_dual(())
    return {
        "I": [ideal_to_json(ideal_I(sys, i)) for i in range(max_i + 1)],
        "fitting": [ideal_to_json(fitting_ideal(d_empty, i)) for i in range(max_i + 1)],
    }


def _summary(records: list[list[Check]]) -> dict:
    names: dict[str, dict[str, int]] = {}
    for checks in records:
        for c in checks:
            entry = names.setdefault(c.name.split("[")[0], {"pass": 0, "fail": 0})
            entry["pass" if c.ok else "fail"] += 1
    failed = sum(1 for checks in records if any(not c.ok for c in checks))
    return {"trials": len(records), "failed_trials": failed, "checks": names}


def cmd_gen(cfg: RunConfig) -> int:
    if cfg.instance:
        raise UsageError("gen does not read an instance")
    out = [instance_to_json(generated_instance(cfg, k)) for k in range(cfg.trials)]
    _emit(dumps(out[0] if cfg.trials == 1 else out), cfg.out)
    return 0


def run_verify(cfg: RunConfig, systems: list[StarkSystem]) -> tuple[dict, dict | None]:
    trials = []
    records = []
    witness = None
    for k, sys_ in enumerate(systems):
        max_i = sys_.instance.N if cfg.max_i is None else cfg.max_i
        checks = instance_checks(sys_, max_i=max_i, seed=cfg.seed + k)
        records.append(checks)
        trials.append({
            "index": k,
            "instance": instance_to_json(sys_.instance),
            "checks": [c.to_json() for c in checks],
            "ideals": ideal_table(sys_, max_i),
        })
        if witness is None:
            witness = failure_witness(sys_, checks)
    report = {
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg.to_json(),
        "trials": trials,
        "summary": _summary(records),
    }
    return report, witness


def cmd_verify(cfg: RunConfig) -> int:
    report, witness = run_verify(cfg, load_systems(cfg))
    _emit(dumps(jsonable(report)), cfg.out)
    if witness is not None:
        if cfg.witness:
            Path(cfg.witness).write_text(dumps(jsonable(witness)))
        return 1
    return 0


def cmd_fitting(cfg: RunConfig) -> int:
    rows = []
    ok = True
    for sys_ in load_systems(cfg):
        max_i = sys_.instance.N if cfg.max_i is None else cfg.max_i
        table = ideal_table(sys_, max_i)
        ok = ok and table["I"] == table["fitting"]
        rows.append({"instance": instance_to_json(sys_.instance), **table})
    _emit(dumps(jsonable({"version": __version__, "seed": cfg.seed, "results": rows})), cfg.out)
    return 0 if ok else 1


def _tower_input(cfg: RunConfig):
    """(master instance, levels or None, unit or None)."""
    try:
        return _read_tower_input(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read_tower_input(cfg: RunConfig):
    if cfg.instance:
        obj = _load_json(cfg.instance)
        if "master_instance" in obj:
            levels = [ring_from_json(r) for r in obj.get("levels", [])] or None
            unit = np.asarray(obj["unit"], dtype=np.int64) if "unit" in obj else None
            return instance_from_json(obj["master_instance"]), levels, unit
        unit = np.asarray(obj["unit"], dtype=np.int64) if "unit" in obj else None
        return instance_from_json(obj), None, unit
    inst = generated_instance(cfg)
    return inst, None, _unit_for(inst, cfg.seed)


def cmd_tower(cfg: RunConfig) -> int:
    master, levels, unit = _tower_input(cfg)
    try:
        tw = build_tower(master, levels, cfg.depth)
    except ValueError as exc:
        raise UsageError(f"invalid tower: {exc}") from exc
    ts = tower_system(tw, unit)
    max_i = master.N if cfg.max_i is None else cfg.max_i
    profiles = []
    ok = ts.ok
    for i in range(max_i + 1):
        prof = tower_ideal_profile(ts, i)
        ok = ok and prof.ok
        profiles.append({
            "i": i,
            "ideals": [ideal_to_json(x) for x in prof.ideals],
            "images_match": prof.images_match,
            "fitting_match": prof.fitting_match,
            "stable": prof.stable,
        })
    report = {
        "version": __version__,
        "seed": cfg.seed,
        "config": cfg.to_json(),
        "tower": {
            "levels": [ring_to_json(s) for s in tw.levels],
            "master_instance": instance_to_json(master),
            "unit": ts.systems[-1].unit.tolist(),
        },
        "certificates": [
            {"level": c.level, "classes_match": c.classes_match, "ideals_match": c.ideals_match}
            for c in ts.certificates
        ],
        "profiles": profiles,
    }
    if tw.depth == 1:
        verify, witness = run_verify(cfg, ts.systems)
        report["verify"] = verify
        ok = ok and witness is None
    _emit(dumps(jsonable(report)), cfg.out)
    return 0 if ok else 1


def cmd_suite(cfg: RunConfig) -> int:
    """cfg.trials instances per test ring, cycling r over 0..2 and N over 1..4."""
    records = []
    failures = []
    for ring_index, spec in enumerate(TEST_RINGS):
        for k in range(cfg.trials):
            seed = cfg.seed + 1000 * ring_index + k
            inst = random_instance(seed, spec, k % 3, 1 + k % 4, cfg.density)
            sys_ = stark_from_top(inst, _unit_for(inst, seed))
            checks = instance_checks(sys_, seed=seed)
            records.append(checks)
            bad = [c.to_json() for c in checks if not c.ok]
            if bad:
                failures.append({"instance": instance_to_json(inst), "failed": bad})
    summary = _summary(records)
    _emit(dumps(jsonable({"version": __version__, "seed": cfg.seed, "summary": summary, "failures": failures})), cfg.out)
    return 0 if not failures else 1


COMMANDS = {"gen": cmd_gen, "verify": cmd_verify, "fitting": cmd_fitting, "tower": cmd_tower, "suite": cmd_suite}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
