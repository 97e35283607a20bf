"""Command-line driver for family enumeration, L-polynomial tables, moment
reports, the verification suite, character-sum sweeps and Euler products.

Configuration comes from an optional key=value file plus flags (flags win).
Exit codes: 0 success, 1 verification failure, 2 resource cap, 3 bad config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .chars import incomplete_sum_sweep
from .errors import BadConfig, CapExceeded, FFQLError, OutsideValidityRegion
from .families import FamilyCache, default_cache_dir
from .gf import is_prime
from .identities import run_verification
from .lfunc import lstar_coefficients, rh_check
from .moments import KINDS, moment_protocol, sigma_product
from .places import BaseField, base_field
from .quadext import FAMILY_CAP, enumerate_family


def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bi', 'a-bi' with decimal parts."""
    s = text.strip().replace(" ", "")
    if not s:
        raise BadConfig("empty complex literal")
    if not s.endswith("i"):
        try:
            return complex(float(s), 0.0)
        except ValueError as exc:
            raise BadConfig(f"bad complex literal {text!r}") from exc
    body = s[:-1]
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            re_part, im_part = body[:k], body[k:]
            break
    else:
        re_part, im_part = "0", body
    if im_part in ("+", "-"):
        im_part += "1"
    try:
        return complex(float(re_part), float(im_part))
    except ValueError as exc:
        raise BadConfig(f"bad complex literal {text!r}") from exc


def format_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass
class RunConfig:
    command: str
    p: int
    r: int
    m: int
    m_max: int
    kind: str
    s: complex
    t: complex
    epsilon: float
    tol: float
    threads: int
    fmt: str
    out: str | None
    cache_dir: str | None
    deg_c_max: int
    deg_v0_max: int
    family_cap: int

    @property
    def base(self) -> BaseField:
        return base_field(self.p, self.r)


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BadConfig(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise BadConfig(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); 2 means cap exceeded here
        raise BadConfig(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="ffql", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("enumerate", "lpoly", "moment", "verify", "charsum", "sigma"):
        sp = sub.add_parser(name)
        sp.add_argument("--config")
        sp.add_argument("--q", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--r", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--m-max", dest="m_max", type=int)
        sp.add_argument("--kind", choices=list(KINDS))
        sp.add_argument("--s")
        sp.add_argument("--t")
        sp.add_argument("--epsilon", type=float)
        sp.add_argument("--tol", type=float)
        sp.add_argument("--threads", type=int)
        sp.add_argument("--format", dest="fmt", choices=("csv", "json"))
        sp.add_argument("--out")
        sp.add_argument("--cache-dir", dest="cache_dir")
        sp.add_argument("--deg-c-max", dest="deg_c_max", type=int)
        sp.add_argument("--deg-v0-max", dest="deg_v0_max", type=int)
        sp.add_argument("--family-cap", dest="family_cap", type=int)
        sp.add_argument("--no-cache", action="store_true")
    return parser


_DEFAULTS = {"q": None, "p": None, "r": 1, "m": 1, "m_max": None, "kind": "LL",
             "s": "2", "t": "2", "epsilon": 0.05, "tol": 1e-8, "threads": 1,
             "fmt": "csv", "out": None, "cache_dir": None,
             "deg_c_max": 3, "deg_v0_max": 2, "family_cap": None}

_CASTS = {"q": int, "p": int, "r": int, "m": int, "m_max": int,
          "epsilon": float, "tol": float, "threads": int,
          "deg_c_max": int, "deg_v0_max": int, "family_cap": int}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        for key, value in _read_config_file(args.config).items():
            if key not in merged and key != "no_cache":
                raise BadConfig(f"unknown config key {key!r}")
            merged[key] = _CASTS.get(key, str)(value) if key in _CASTS else value
    for key in merged:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    if merged["q"] is not None:
        q = int(merged["q"])
        p, r = _split_prime_power(q)
        merged["p"], merged["r"] = p, r
    if merged["p"] is None:
        raise BadConfig("one of --q or --p is required")
    if not is_prime(int(merged["p"])):
        raise BadConfig(f"p = {merged['p']} is not prime")
    m = int(merged["m"])
    if m < 0:
        raise BadConfig("m must be >= 0")
    m_max = int(merged["m_max"]) if merged["m_max"] is not None else m
    if m_max < m:
        raise BadConfig("m-max must be >= m")
    return RunConfig(
        command=args.command, p=int(merged["p"]), r=int(merged["r"]), m=m,
        m_max=m_max, kind=str(merged["kind"]),
        s=parse_complex(str(merged["s"])), t=parse_complex(str(merged["t"])),
        epsilon=float(merged["epsilon"]), tol=float(merged["tol"]),
        threads=int(merged["threads"]), fmt=str(merged["fmt"]),
        out=merged["out"], cache_dir=merged["cache_dir"],
        deg_c_max=int(merged["deg_c_max"]), deg_v0_max=int(merged["deg_v0_max"]),
        family_cap=(int(merged["family_cap"])
                    if merged["family_cap"] is not None else FAMILY_CAP))


def _split_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            r = 0
            qq = q
            while qq % p == 0:
                qq //= p
                r += 1
            if qq != 1:
                raise BadConfig(f"q = {q} is not a prime power")
            return p, r
    raise BadConfig(f"q = {q} is not a prime power")


# -- output -------------------------------------------------------------------------


def emit_rows(rows: list[dict], fmt: str, out: str | None) -> str:
    if fmt == "json":
        text = "\n".join(json.dumps(r, sort_keys=True, default=repr) for r in rows)
        text += "\n" if rows else ""
    else:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _cell(v) for k, v in r.items()})
        text = buf.getvalue()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return text


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return str(v).lower()
    return v


def _make_cache(cfg: RunConfig) -> FamilyCache:
    if getattr(cfg, "cache_dir", None) == "":
        cache_dir = None
    elif cfg.cache_dir is not None:
        cache_dir = Path(cfg.cache_dir)
    else:
        cache_dir = default_cache_dir()
    return FamilyCache(cache_dir=cache_dir, workers=cfg.threads,
                       family_cap=cfg.family_cap)


# -- commands ------------------------------------------------------------------------


def cmd_enumerate(cfg: RunConfig) -> int:
    base = cfg.base
    rows = [F.to_record() for F in enumerate_family(base, cfg.m, cap=cfg.family_cap)]
    emit_rows(rows, cfg.fmt, cfg.out)
    line = f"count={len(rows)}\n"
    (sys.stdout if cfg.out else sys.stderr).write(line)
    return 0


def cmd_lpoly(cfg: RunConfig) -> int:
    base = cfg.base
    cache = _make_cache(cfg)
    rows = []
    for F, lp in cache.pairs(base, cfg.m):
        rows.append({"omega": str(F.omega), "genus": F.genus,
                     "coeffs": json.dumps(list(lp.coeffs)),
                     "rh_dev": rh_check(lp) if F.genus >= 1 else 0.0})
    emit_rows(rows, cfg.fmt, cfg.out)
    return 0


def cmd_moment(cfg: RunConfig) -> int:
    base = cfg.base
    cache = _make_cache(cfg)
    ms = list(range(cfg.m, cfg.m_max + 1))
    reports = moment_protocol(base, cfg.kind, ms, cfg.s, cfg.t, cfg.epsilon,
                              cache=cache)
    emit_rows([r.row() for r in reports], cfg.fmt, cfg.out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify(cfg: RunConfig) -> int:
    base = cfg.base
    cache = _make_cache(cfg)
    rows = run_verification(base, cfg.m, cache=cache)
    emit_rows(rows, cfg.fmt, cfg.out)
    failures = [r for r in rows if not r["pass"]]
    sys.stderr.write(f"checks={len(rows)} failures={len(failures)}\n")
    return 1 if failures else 0


def cmd_charsum(cfg: RunConfig) -> int:
    base = cfg.base
    rows = incomplete_sum_sweep(base, cfg.deg_c_max, cfg.deg_v0_max)
    emit_rows([r.row() for r in rows], cfg.fmt, cfg.out)
    return 0


def cmd_sigma(cfg: RunConfig) -> int:
    base = cfg.base
    kinds = [cfg.kind] if cfg.kind != "invL" else ["invLL"]
    rows = []
    for kind in kinds:
        if kind not in ("LL", "Lq", "invLL", "L"):
            raise BadConfig(f"kind {kind} has no Euler product")
        sp = sigma_product(kind, base, cfg.s, cfg.t, tol=cfg.tol)
        rows.append({"kind": kind, "q": base.q, "s": format_complex(sp.s),
                     "t": format_complex(sp.t), "cutoff": sp.cutoff,
                     "value_re": sp.value.real, "value_im": sp.value.imag,
                     "tail_bound": sp.tail_bound})
    emit_rows(rows, cfg.fmt, cfg.out)
    return 0


_COMMANDS = {"enumerate": cmd_enumerate, "lpoly": cmd_lpoly,
             "moment": cmd_moment, "verify": cmd_verify,
             "charsum": cmd_charsum, "sigma": cmd_sigma}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = resolve_config(args)
        return _COMMANDS[cfg.command](cfg)
    except (BadConfig, OutsideValidityRegion) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return 2
    except FFQLError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except BrokenPipeError:  # pragma: no cover
        return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
