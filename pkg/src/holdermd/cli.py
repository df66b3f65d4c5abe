"""Command-line front end.

Subcommands: ``wdm-table``, ``profile-bounds``, ``mazur-probe``, ``verdict``
and ``embed-check``. Settings come from an INI file (``--config``) and are
overridden by flags. Exit codes: 0 success, 2 validation, 3 resource limit,
4 I/O.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields
from typing import Callable, Optional

from .errors import DomainError, ResourceLimitError
from .groups import BallRule, GroupModel
from .mazur import holder_probe
from .metric import MetricSpec, WeightScheme
from .obstruction import run_obstruction
from .profiles import CSV_COLUMNS, Profile, bound_sequence
from .widthdim import fiber_diameter_oracle, wdm_closed_form

EXIT_OK, EXIT_VALIDATION, EXIT_RESOURCE, EXIT_IO = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


def fmt(x) -> str:
    """Numbers as written to CSV/JSON: ints verbatim, floats to 12 significant digits."""
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x)
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"


# -- value parsers ---------------------------------------------------------------


def _float(s: str) -> float:
    return float(s.strip())


def _int_list(s: str) -> list[int]:
    out: list[int] = []
    for part in filter(None, (t.strip() for t in s.split(","))):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _float_list(s: str) -> list[float]:
    return [float(t) for t in (u.strip() for u in s.split(",")) if t]


def _optional_path(s: str) -> Optional[str]:
    s = s.strip()
    return s or None


def _group(s: str) -> str:
    GroupModel.parse(s)
    return s.strip()


def _positive(x) -> bool:
    return x > 0


def _at_least_one(x) -> bool:
    return x >= 1


def _nonneg(x) -> bool:
    return x >= 0


@dataclass(frozen=True)
class _Key:
    parse: Callable
    check: Optional[Callable] = None
    rule: str = ""


SCHEMA: dict[str, dict[str, _Key]] = {
    "group": {"kind": _Key(_group)},
    "windows": {
        "omega_step": _Key(int, _at_least_one, ">= 1"),
        "omega_offset": _Key(int, _nonneg, ">= 0"),
        "metric_step": _Key(int, _at_least_one, ">= 1"),
        "metric_offset": _Key(int, _nonneg, ">= 0"),
    },
    "metric": {
        "weight_ratio": _Key(_float, lambda x: 0 < x < 1, "in (0, 1)"),
        "r": _Key(_float, _at_least_one, ">= 1 (or inf)"),
        "tau": _Key(_float, _positive, "> 0"),
    },
    "profile": {
        "p": _Key(_float, lambda x: 1 <= x < math.inf, "in [1, inf)"),
        "q": _Key(_float, lambda x: 1 <= x < math.inf, "in [1, inf)"),
        "c": _Key(_float, _positive, "> 0"),
        "c_prime": _Key(_float, _positive, "> 0"),
    },
    "bounds": {"i_max": _Key(int, _nonneg, ">= 0")},
    "wdm": {
        "n": _Key(_int_list, lambda v: all(x >= 1 for x in v), "all >= 1"),
        "p": _Key(_float_list, lambda v: all(1 <= x < math.inf for x in v), "all in [1, inf)"),
        "eps": _Key(_float_list, lambda v: all(x > 0 for x in v), "all > 0"),
    },
    "probe": {
        "beta": _Key(_float, _positive, "> 0"),
        "samples": _Key(int, _nonneg, ">= 0"),
        "seed": _Key(int, _nonneg, ">= 0"),
        "support_radius": _Key(int, _nonneg, ">= 0"),
        "metrics": _Key(str, lambda s: s in ("matched", "lp"), "'matched' or 'lp'"),
    },
    "embed": {
        "n": _Key(int, lambda x: 2 <= x <= 4, "in [2, 4]"),
        "p": _Key(_float, lambda x: 1 <= x < math.inf, "in [1, inf)"),
        "r": _Key(int, _at_least_one, ">= 1"),
        "h": _Key(_float, _positive, "> 0"),
    },
    "output": {"csv": _Key(_optional_path), "json": _Key(_optional_path)},
}


@dataclass
class RunConfig:
    """Flat view of every setting; attribute names are ``<section>_<key>``."""

    group_kind: str = "Z"
    windows_omega_step: int = 1
    windows_omega_offset: int = 0
    windows_metric_step: int = 1
    windows_metric_offset: int = 0
    metric_weight_ratio: float = 0.5
    metric_r: float = math.inf
    metric_tau: float = 1e-9
    profile_p: float = 1.0
    profile_q: float = 2.0
    profile_c: float = 1.0
    profile_c_prime: float = 1.0
    bounds_i_max: int = 1000
    wdm_n: list = field(default_factory=lambda: list(range(1, 9)))
    wdm_p: list = field(default_factory=lambda: [1.0, 2.0])
    wdm_eps: list = field(default_factory=lambda: [0.5, 1.0, 1.5, 2.0, 2.5])
    probe_beta: float = 0.5
    probe_samples: int = 2000
    probe_seed: int = 0
    probe_support_radius: int = 2
    probe_metrics: str = "matched"
    embed_n: int = 2
    embed_p: float = 1.0
    embed_r: int = 1
    embed_h: float = 0.05
    output_csv: Optional[str] = None
    output_json: Optional[str] = None

    def set(self, section: str, key: str, raw: str, where: str = "") -> None:
        spec = SCHEMA.get(section, {}).get(key)
        if spec is None:
            raise ConfigError(f"{where}unknown setting {section}.{key}")
        try:
            value = spec.parse(raw)
        except ValueError as exc:
            raise ConfigError(f"{where}{section}.{key}: cannot parse {raw!r} ({exc})") from None
        if spec.check is not None and not spec.check(value):
            raise ConfigError(f"{where}{section}.{key} = {raw!r} must be {spec.rule}")
        setattr(self, f"{section}_{key}", value)

    # builders for library objects
    def model(self) -> GroupModel:
        return GroupModel.parse(self.group_kind)

    def omega_rule(self) -> BallRule:
        return BallRule(self.model(), self.windows_omega_step, self.windows_omega_offset)

    def metric_spec(self, r: Optional[float] = None) -> MetricSpec:
        return MetricSpec(
            BallRule(self.model(), self.windows_metric_step, self.windows_metric_offset),
            WeightScheme(self.metric_weight_ratio),
            self.metric_r if r is None else r,
            self.metric_tau,
        )


assert {f"{s}_{k}" for s in SCHEMA for k in SCHEMA[s]} == {f.name for f in fields(RunConfig)}


def _key_line(lines: list[str], section: str, key: str) -> Optional[int]:
    current = None
    for no, line in enumerate(lines, 1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1].strip().lower()
        elif current == section and "=" in s and s.split("=", 1)[0].strip().lower() == key:
            return no
    return None


def load_config(path: Optional[str], cfg: Optional[RunConfig] = None) -> RunConfig:
    """Read an INI file into a :class:`RunConfig`; unknown sections or keys are errors."""
    cfg = cfg or RunConfig()
    if path is None:
        return cfg
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    lines = text.splitlines()
    for section in parser.sections():
        if section not in SCHEMA:
            line = next(
                (i for i, s in enumerate(lines, 1) if s.strip() == f"[{section}]"), None
            )
            raise ConfigError(f"{path}:{line}: unknown section [{section}]")
        for key, raw in parser.items(section):
            line = _key_line(lines, section, key)
            cfg.set(section, key, raw, where=f"{path}:{line}: ")
    return cfg


# -- commands ----------------------------------------------------------------------


def _open_out(path: Optional[str]):
    if path is None:
        return _Stdout()
    return open(path, "w", encoding="utf-8", newline="")


class _Stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        return False


def cmd_wdm_table(cfg: RunConfig, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "p", "eps", "wdm"])
    for n in cfg.wdm_n:
        for p in cfg.wdm_p:
            for eps in cfg.wdm_eps:
                w.writerow([n, fmt(p), fmt(eps), wdm_closed_form(n, p, eps)])


def cmd_profile_bounds(cfg: RunConfig, out) -> None:
    seq = bound_sequence(
        cfg.profile_p,
        Profile(cfg.profile_c, cfg.profile_q),
        cfg.metric_spec(),
        cfg.omega_rule(),
        cfg.bounds_i_max,
    )
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in seq.rows():
        w.writerow([fmt(v) for v in row])


def cmd_mazur_probe(cfg: RunConfig, threads: Optional[int]):
    p, q = cfg.profile_p, cfg.profile_q
    if cfg.probe_metrics == "lp":
        src, tgt = cfg.metric_spec(r=p), cfg.metric_spec(r=q)
    else:
        src = tgt = cfg.metric_spec()
    return holder_probe(
        p, q, src, tgt, cfg.probe_beta, cfg.probe_samples,
        seed=cfg.probe_seed, support_radius=cfg.probe_support_radius, workers=threads,
    )


def cmd_verdict(cfg: RunConfig, p: str, q: str, alpha: str, full: bool) -> dict:
    report = run_obstruction(
        p, q, alpha, c=cfg.profile_c, c_prime=cfg.profile_c_prime,
        spec=cfg.metric_spec(), omega_rule=cfg.omega_rule(), i_max=min(cfg.bounds_i_max, 50),
    )
    d = report.to_dict()
    if not full:
        d.pop("sequence")
    return d


def cmd_embed_check(cfg: RunConfig) -> dict:
    n, p, r, h = cfg.embed_n, cfg.embed_p, cfg.embed_r, cfg.embed_h
    if r >= n:
        raise ConfigError(f"embed.r = {r} must be smaller than embed.n = {n}")
    diam = fiber_diameter_oracle(p, n, r, h)
    bound = 2 * (r + 1) ** (-1 / p) + 2 * h
    return {
        "n": n, "p": float(fmt(p)), "r": r, "h": float(fmt(h)),
        "max_fiber_diameter": float(fmt(diam)), "bound": float(fmt(bound)),
        "certified": diam <= bound,
    }


# -- argument parsing -----------------------------------------------------------------

_FLAGS = {
    "wdm-table": [("wdm", "n"), ("wdm", "p"), ("wdm", "eps"), ("output", "csv")],
    "profile-bounds": [
        ("group", "kind"), ("profile", "p"), ("profile", "q"), ("profile", "c"),
        ("bounds", "i_max"), ("metric", "r"), ("metric", "tau"),
        ("metric", "weight_ratio"), ("output", "csv"),
    ],
    "mazur-probe": [
        ("group", "kind"), ("profile", "p"), ("profile", "q"), ("probe", "beta"),
        ("probe", "samples"), ("probe", "seed"), ("probe", "metrics"), ("metric", "r"),
        ("output", "csv"), ("output", "json"),
    ],
    "verdict": [("group", "kind"), ("profile", "c"), ("profile", "c_prime"), ("metric", "r")],
    "embed-check": [("embed", "n"), ("embed", "p"), ("embed", "r"), ("embed", "h")],
}


def _flag_name(section: str, key: str) -> str:
    names = {("group", "kind"): "group", ("output", "csv"): "output",
             ("output", "json"): "json", ("probe", "samples"): "samples",
             ("profile", "c_prime"): "c-prime"}
    if (section, key) in names:
        return "--" + names[(section, key)]
    return "--" + key.replace("_", "-")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with settings")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for sampling (default: all cores)")
    common.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override any setting (repeatable)")
    parser = argparse.ArgumentParser(prog="holdermd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "wdm-table": "width dimension of finite l^p balls on a grid (CSV)",
        "profile-bounds": "lower/upper bound sequences for the asymptotic measure (CSV)",
        "mazur-probe": "empirical Hölder ratios of the Mazur map (JSON, optional CSV)",
        "verdict": "obstruction verdict for equivariant Hölder maps (JSON)",
        "embed-check": "brute-force fiber diameter of the clip embedding (JSON)",
    }
    for name, keys in _FLAGS.items():
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verdict":
            sp.add_argument("p")
            sp.add_argument("q")
            sp.add_argument("alpha", help="exponent; rationals like 2/3 are exact")
            sp.add_argument("--full-report", action="store_true")
        for section, key in keys:
            sp.add_argument(_flag_name(section, key), dest=f"flag__{section}__{key}",
                            default=None, metavar=key.upper())
    return parser


def _resolve(args) -> RunConfig:
    cfg = load_config(args.config)
    for item in args.set:
        name, sep, raw = item.partition("=")
        section, dot, key = name.strip().partition(".")
        if not sep or not dot:
            raise ConfigError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        cfg.set(section, key, raw, where="--set: ")
    for dest, raw in vars(args).items():
        if dest.startswith("flag__") and raw is not None:
            _, section, key = dest.split("__")
            cfg.set(section, key, raw, where=f"{_flag_name(section, key)}: ")
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve(args)
        threads = args.threads if args.threads is not None else os.cpu_count()
        if args.command == "wdm-table":
            with _open_out(cfg.output_csv) as out:
                cmd_wdm_table(cfg, out)
        elif args.command == "profile-bounds":
            with _open_out(cfg.output_csv) as out:
                cmd_profile_bounds(cfg, out)
        elif args.command == "mazur-probe":
            report = cmd_mazur_probe(cfg, threads)
            text = report.to_json() + "\n"
            if cfg.output_json:
                with open(cfg.output_json, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            if cfg.output_csv:
                with _open_out(cfg.output_csv) as out:
                    w = csv.writer(out, lineterminator="\n")
                    w.writerow(["decade", "count", "max_ratio"])
                    for e, n, m in report.decades():
                        w.writerow([e, n, fmt(m)])
        elif args.command == "verdict":
            d = cmd_verdict(cfg, args.p, args.q, args.alpha, args.full_report)
            sys.stdout.write(json.dumps(d, indent=2, sort_keys=True) + "\n")
        elif args.command == "embed-check":
            sys.stdout.write(json.dumps(cmd_embed_check(cfg), indent=2) + "\n")
    except (ConfigError, DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"holdermd: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"holdermd: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"holdermd: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
