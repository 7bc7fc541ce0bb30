"""Command-line front end.

Exit codes: 0 when every verdict in the report is PASS, 1 when a check
fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import hklinear, torus
from .gamma import GroupMismatchError, standard_rho
from .hitchin import (
    CurveSetup,
    closed_form_rank2,
    generate_rank2_presentation,
    hitchin_base_dim,
    moduli_dim,
    prym_dim,
    spectral_genus,
)
from .orbifold import OrbifoldPresentation, PresentationFormatError, stringy_e, twisted_stringy_e

COMMANDS = ("mirror-test", "stringy", "twisted", "dims", "lemma-sweep", "duality-sweep")
PASS, FAIL = "PASS", "FAIL"

REQUIRED = {
    "mirror-test": ("g", "m"),
    "stringy": (),
    "twisted": ("c",),
    "dims": ("n", "g"),
    "lemma-sweep": (),
    "duality-sweep": (),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    sidecar_path: Optional[Path] = None
    seed: Optional[int] = None
    fmt: Optional[str] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        missing = [p for p in REQUIRED[self.command] if self.params.get(p) is None]
        if missing:
            raise UsageError(
                f"{self.command} requires " + ", ".join(f"--{p}" for p in missing)
            )
        if self.command in ("stringy", "twisted") and self.input_path is None:
            raise UsageError(f"{self.command} requires --in")
        if self.seed is not None and not -(2**63) <= self.seed < 2**64:
            raise UsageError("--seed must fit in 64 bits")


@dataclass
class Report:
    command: str
    fields: list = field(default_factory=list)  # ordered (key, value) pairs
    verdicts: list = field(default_factory=list)  # (name, PASS|FAIL)
    sidecar: Optional[object] = None

    def add(self, key, value):
        self.fields.append((key, value))

    def check(self, name: str, ok: bool):
        self.verdicts.append((name, PASS if ok else FAIL))

    @property
    def passed(self) -> bool:
        return all(v == PASS for _, v in self.verdicts)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            data = {"command": self.command}
            data.update({k: v for k, v in self.fields})
            data["checks"] = {k: v for k, v in self.verdicts}
            data["verdict"] = PASS if self.passed else FAIL
            return json.dumps(data, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            keys = [k for k, _ in self.fields] + ["verdict"]
            writer.writerow(keys)
            writer.writerow([v for _, v in self.fields] + [PASS if self.passed else FAIL])
            return buf.getvalue()
        lines = [f"command: {self.command}"]
        lines += [f"{k}: {v}" for k, v in self.fields]
        lines += [f"check {k}: {v}" for k, v in self.verdicts]
        lines.append(f"verdict: {PASS if self.passed else FAIL}")
        return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------------

def cmd_mirror_test(g: int, m: int) -> Report:
    if g < 1 or m < 1 or 2 * g - 2 + m <= 0:
        raise UsageError(
            f"mirror-test needs g >= 1, m >= 1 and 2g - 2 + m > 0 (got g={g}, m={m})"
        )
    pres = generate_rank2_presentation(g, m)
    aggregate = stringy_e(pres)
    target = closed_form_rank2(g, m)
    rep = Report("mirror-test")
    rep.add("g", g)
    rep.add("m", m)
    rep.add("sectors", len(pres.sectors))
    rep.add("aggregate", aggregate.to_text())
    rep.add("closed_form", target.to_text())
    rep.check("aggregate_equals_closed_form", aggregate == target)
    rep.sidecar = pres.to_json()
    return rep


def _load_presentation(path: Path) -> OrbifoldPresentation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return OrbifoldPresentation.loads(text)


def _check_group(pres: OrbifoldPresentation, n, g):
    if n is not None and n != pres.group.n or g is not None and g != pres.group.g:
        raise GroupMismatchError(
            f"presentation is over n={pres.group.n}, g={pres.group.g}; "
            f"requested n={n}, g={g}"
        )


def cmd_stringy(path: Path, n=None, g=None) -> Report:
    pres = _load_presentation(path)
    _check_group(pres, n, g)
    poly = stringy_e(pres)
    rep = Report("stringy")
    rep.add("n", pres.group.n)
    rep.add("g", pres.group.g)
    rep.add("sectors", len(pres.sectors))
    rep.add("stringy_e", poly.to_text())
    rep.sidecar = poly.to_json()
    return rep


def cmd_twisted(path: Path, n, g, c: int) -> Report:
    pres = _load_presentation(path)
    _check_group(pres, n, g)
    rho = standard_rho(pres.group)
    twisted = twisted_stringy_e(pres, rho, c)
    rep = Report("twisted")
    rep.add("n", pres.group.n)
    rep.add("g", pres.group.g)
    rep.add("c", c)
    rep.add("twisted_stringy_e", twisted.to_text())
    if c % pres.group.n == 0:
        untwisted = stringy_e(pres)
        rep.add("stringy_e", untwisted.to_text())
        rep.check("trivial_twist_equals_untwisted", twisted == untwisted)
    rep.sidecar = twisted.to_json()
    return rep


def cmd_dims(n: int, g: int, m: int = 0) -> Report:
    if n < 2:
        raise UsageError(f"rank n must be >= 2, got {n}")
    try:
        setup = CurveSetup(g=g, n=n, m=m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sd = setup.spectral_data()
    md, bd, sg, pd = moduli_dim(setup), hitchin_base_dim(setup), spectral_genus(sd), prym_dim(sd)
    rep = Report("dims")
    for key, value in (
        ("n", n), ("g", g), ("m", m),
        ("moduli_dim", md), ("hitchin_base_dim", bd),
        ("spectral_genus", sg), ("prym_dim", pd),
    ):
        rep.add(key, value)
    rep.check("half_dimension", md == 2 * bd and bd == pd)
    return rep


def cmd_lemma_sweep(k: int, count: int, seed: int) -> Report:
    if k < 1 or count < 0:
        raise UsageError("lemma-sweep needs --k >= 1 and --count >= 0")
    rng = random.Random(seed)
    M = hklinear.standard_model(k)
    holomorphic = special = 0
    for _ in range(count):
        L = hklinear.random_holomorphic_lagrangian(M, rng)
        if hklinear.verify_holomorphic_lagrangian(M, L):
            holomorphic += 1
            special += hklinear.verify_special_lagrangian(M, L)
    rep = Report("lemma-sweep")
    rep.add("k", k)
    rep.add("count", count)
    rep.add("seed", seed)
    rep.add("holomorphic_lagrangian", holomorphic)
    rep.add("special_lagrangian", special)
    rep.check("all_samples_holomorphic", holomorphic == count)
    rep.check("lemma_implication", special == holomorphic)
    M1 = hklinear.standard_model(1)
    one_j = hklinear.LinearSubspace(((1, 0, 0, 0), (0, 0, 1, 0)))
    one_i = hklinear.LinearSubspace(((1, 0, 0, 0), (0, 1, 0, 0)))
    rep.check(
        "oracle_span_1_j",
        hklinear.verify_holomorphic_lagrangian(M1, one_j)
        and hklinear.verify_special_lagrangian(M1, one_j),
    )
    rep.check(
        "oracle_span_1_i",
        not hklinear.verify_holomorphic_lagrangian(M1, one_i)
        and not hklinear.verify_special_lagrangian(M1, one_i),
    )
    return rep


def cmd_duality_sweep(count: int, seed: int, max_half_rank: int = 4) -> Report:
    if count < 0 or max_half_rank < 1:
        raise UsageError("duality-sweep needs --count >= 0 and --k >= 1")
    rng = random.Random(seed)
    double_dual = divisors = syz = pic = 0
    for _ in range(count):
        T = torus.random_polarized_lattice(rng, 2 * max_half_rank)
        D = torus.dualize(T)
        double_dual += torus.canonically_isomorphic(torus.dualize(D), T)
        divisors += D.elementary_divisors() == T.elementary_divisors()
        syz += torus.canonically_isomorphic(torus.syz_dual_fiber(T), D)
        d = rng.randint(-5, 5)
        outs = {torus.pic_torsor(torus.TorsorLabel(T, c, torus.SL), d) for c in range(-3, 4)}
        (out,) = outs if len(outs) == 1 else (None,)
        pic += out is not None and out.side == torus.PGL and out.degree == d
    rep = Report("duality-sweep")
    rep.add("count", count)
    rep.add("seed", seed)
    rep.add("max_rank", 2 * max_half_rank)
    rep.check("double_dual", double_dual == count)
    rep.check("elementary_divisors", divisors == count)
    rep.check("syz_agrees_with_dualize", syz == count)
    rep.check("pic_degree_independent", pic == count)
    return rep


# -- argument handling ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hitchin-mirror",
        description="Stringy E-polynomials and fiber duality for Hitchin systems.",
    )
    parser.add_argument("command", choices=COMMANDS)
    for name in ("g", "n", "m", "c", "d", "k", "count"):
        parser.add_argument(f"--{name}", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--in", dest="input_path", type=Path)
    parser.add_argument("--out", dest="output_path", type=Path)
    parser.add_argument("--sidecar", dest="sidecar_path", type=Path,
                        help="write the JSON payload (presentation or polynomial) here")
    parser.add_argument("--format", dest="fmt", choices=("text", "json", "csv"))
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: getattr(ns, k) for k in ("g", "n", "m", "c", "d", "k", "count")}
    return RunConfig(
        command=ns.command,
        input_path=ns.input_path,
        output_path=ns.output_path,
        sidecar_path=ns.sidecar_path,
        seed=ns.seed,
        fmt=ns.fmt,
        params=params,
    )


def run(cfg: RunConfig) -> Report:
    p = cfg.params
    if cfg.command == "mirror-test":
        return cmd_mirror_test(p["g"], p["m"])
    if cfg.command == "stringy":
        return cmd_stringy(cfg.input_path, p.get("n"), p.get("g"))
    if cfg.command == "twisted":
        return cmd_twisted(cfg.input_path, p.get("n"), p.get("g"), p["c"])
    if cfg.command == "dims":
        return cmd_dims(p["n"], p["g"], p.get("m") or 0)
    writes = cfg.output_path is not None or cfg.sidecar_path is not None
    if writes and cfg.seed is None:
        raise UsageError(f"{cfg.command} needs an explicit --seed when writing output files")
    seed = 0 if cfg.seed is None else cfg.seed
    count = 100 if p.get("count") is None else p["count"]
    if cfg.command == "lemma-sweep":
        return cmd_lemma_sweep(p.get("k") or 1, count, seed)
    return cmd_duality_sweep(count, seed, p.get("k") or 4)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report = run(cfg)
    except (UsageError, PresentationFormatError, GroupMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fmt = cfg.fmt or ("csv" if cfg.command == "dims" else "text")
    text = report.render(fmt)
    if cfg.output_path is not None:
        cfg.output_path.write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.sidecar_path is not None and report.sidecar is not None:
        cfg.sidecar_path.write_text(json.dumps(report.sidecar, indent=2) + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
