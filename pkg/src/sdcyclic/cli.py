"""sdcyclic command line.

    sdcyclic factor    --m 1 --n 3 [--s 3]
    sdcyclic omega     --m 1 --n 3 --s 3 --j 2 --nu 2
    sdcyclic count     --m 1 --s 3 --n 3 --mode both
    sdcyclic enumerate --m 1 --s 2 --n 3 --start 0 --limit 10 --format json
    sdcyclic verify    --m 1 --s 2 --n 3 --all
    sdcyclic gray      --m 1 --s 2 --n 3 --index 5 --out g.txt
    sdcyclic weights   --m 1 --s 2 --n 3 --index 5 --max-dim 24

Errors go to stderr as one JSON object and the exit code is nonzero.
SDCYCLIC_JOBS sets the default worker count for enumerate and verify.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional

from .codes import CodeFamily, count_closed_form
from .errors import ClosedFormUnavailable, SDCyclicError
from .factor import factor_report, factorize
from .gf import GF2m, format_poly
from .omega import omega_enumerate
from .verify import DEFAULT_CAP, gray_image_checks, gray_matrix, verify_self_dual, weight_distribution

log = logging.getLogger("sdcyclic")

COMMANDS = ("factor", "omega", "count", "enumerate", "verify", "gray", "weights")
EXIT_FAIL = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    command: str
    m: int = 1
    s: Optional[int] = None
    n: Optional[int] = None
    modulus: Optional[int] = None
    format: str = "json"
    out: Optional[str] = None
    start: int = 0
    limit: Optional[int] = None
    all: bool = False
    sample: Optional[int] = None
    index: Optional[int] = None
    max_dim: int = DEFAULT_CAP
    mode: str = "both"
    j: Optional[int] = None
    nu: Optional[int] = None
    gray: bool = False
    jobs: int = 1

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        return cls.from_dict(vars(ns))

    def validate(self) -> list[str]:
        """Every offending flag, as 'flag: reason'."""
        bad = []
        need_s = self.command != "factor"
        if not 1 <= self.m <= 16:
            bad.append(f"--m: must be in 1..16, got {self.m}")
        if self.n is None:
            bad.append("--n: required")
        elif self.n < 1 or self.n % 2 == 0:
            bad.append(f"--n: must be a positive odd integer, got {self.n}")
        if self.s is None and need_s:
            bad.append("--s: required")
        elif self.s is not None and self.s < 1:
            bad.append(f"--s: must be >= 1, got {self.s}")
        if self.start < 0:
            bad.append(f"--start: must be >= 0, got {self.start}")
        if self.limit is not None and self.limit < 0:
            bad.append(f"--limit: must be >= 0, got {self.limit}")
        if self.sample is not None and self.sample < 1:
            bad.append(f"--sample: must be >= 1, got {self.sample}")
        if self.all and (self.sample is not None or self.limit is not None):
            bad.append("--all: cannot be combined with --sample or --limit")
        if self.jobs < 1:
            bad.append(f"--jobs: must be >= 1, got {self.jobs}")
        if self.max_dim < 1:
            bad.append(f"--max-dim: must be >= 1, got {self.max_dim}")
        if self.command == "omega":
            if self.j is None:
                bad.append("--j: required")
            if self.nu is None:
                bad.append("--nu: required")
            elif self.nu < 1:
                bad.append(f"--nu: must be >= 1, got {self.nu}")
            elif self.s is not None and self.nu > 1 << (self.s - 1):
                bad.append(f"--nu: must be <= 2^(s-1) = {1 << (self.s - 1)}, got {self.nu}")
        if self.command in ("gray", "weights"):
            if self.index is None:
                bad.append("--index: required")
            elif self.index < 0:
                bad.append(f"--index: must be >= 0, got {self.index}")
        return bad


# -- helpers -----------------------------------------------------------------

_FAMILIES: dict = {}


def _family(m, s, n, modulus) -> CodeFamily:
    key = (m, s, n, modulus)
    fam = _FAMILIES.get(key)
    if fam is None:
        fam = _FAMILIES[key] = CodeFamily(m, s, n, modulus)
    return fam


def _chunks(start: int, stop: int, parts: int):
    size = max(1, -(-(stop - start) // (parts * 4)))
    return [(a, min(stop, a + size)) for a in range(start, stop, size)]


def _json_line(rec) -> str:
    return json.dumps(rec.to_json(), sort_keys=True, separators=(",", ":"))


def _csv_row(rec) -> list:
    F = rec.field
    choices = ";".join(
        f"{c.j}:{c.case}:" + ",".join(f"{k}={v}" for k, v in c.params) + ":" + format_poly(F, c.b)
        for c in rec.choices
    )
    gens = ";".join(f"{format_poly(F, a)}|{format_poly(F, b)}" for a, b in rec.generators)
    return [rec.index, choices, gens]


def _render_range(args) -> list[str]:
    m, s, n, modulus, fmt, a, b = args
    fam = _family(m, s, n, modulus)
    if fmt == "json":
        return [_json_line(r) + "\n" for r in fam.iterate(a, b - a)]
    out = []
    for r in fam.iterate(a, b - a):
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(_csv_row(r))
        out.append(buf.getvalue())
    return out


def _verify_indices(args) -> list[tuple[int, bool, str]]:
    m, s, n, modulus, indices, gray = args
    fam = _family(m, s, n, modulus)
    out = []
    for i in indices:
        rec = fam.record_at(i)
        try:
            sb = verify_self_dual(rec)
            if gray:
                gray_image_checks(rec, sb)
            out.append((i, True, ""))
        except SDCyclicError as exc:
            out.append((i, False, str(exc)))
    return out


def _fan_out(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map preserves task order, so output stays in index order
        return list(ex.map(fn, tasks))


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = open(self.path, "w", newline="") if self.path else sys.stdout
        return self.fh

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()


def _sample_indices(total: int, k: int) -> list[int]:
    if k >= total:
        return list(range(total))
    return sorted({i * total // k for i in range(k)})


def _symbols(m: int, row) -> str:
    if m <= 4:
        return "".join(format(int(v), "x") for v in row)
    return " ".join(format(int(v), "x") for v in row)


# -- commands ----------------------------------------------------------------

def cmd_factor(cfg: RunConfig) -> int:
    fd = factorize(GF2m(cfg.m, cfg.modulus), cfg.n, cfg.s)
    with _Output(cfg.out) as fh:
        fh.write(json.dumps(factor_report(fd), sort_keys=True) + "\n")
    return 0


def cmd_omega(cfg: RunConfig) -> int:
    fd = factorize(GF2m(cfg.m, cfg.modulus), cfg.n, cfg.s)
    om = omega_enumerate(fd, cfg.j, cfg.nu)
    F = fd.field

    def fp(a):
        return format_poly(F, a, ascending=True)

    def fset(xs):
        return "{" + ", ".join(fp(a) for a in xs) + "}"

    with _Output(cfg.out) as fh:
        fh.write(fset(om.elements) + "\n")
        for prefix, W in sorted(om.wsets.items(), key=lambda kv: (len(kv[0]), [om.ring.digit_key(p) for p in kv[0]])):
            head = "(" + ", ".join(fp(p) for p in prefix) + ")"
            fh.write(f"W({cfg.j},{cfg.nu};{len(prefix)}) after {head} = {fset(W)}\n")
            for l, dl in sorted(om.deltas.get(prefix, {}).items()):
                fh.write(f"  delta^({l}) after {head} = {fp(dl)}\n")
        for beta in om.elements:
            trail = ", ".join(fp(p) for p in om.trails[beta])
            fh.write(f"{fp(beta)} <- ({trail})\n")
    return 0


def cmd_count(cfg: RunConfig) -> int:
    closed = enum = None
    if cfg.mode in ("closed-form", "both"):
        try:
            t = time.perf_counter()
            closed = count_closed_form(cfg.m, cfg.s, cfg.n, cfg.modulus)
            log.info("closed form %d in %.3fs", closed, time.perf_counter() - t)
        except ClosedFormUnavailable:
            if cfg.mode == "closed-form":
                raise
            log.info("no closed form for s=%d, using enumeration only", cfg.s)
    if cfg.mode in ("enumerate", "both"):
        t = time.perf_counter()
        enum = _family(cfg.m, cfg.s, cfg.n, cfg.modulus).count_enumerated()
        log.info("enumeration %d in %.3fs", enum, time.perf_counter() - t)
    if closed is not None and enum is not None and closed != enum:
        _error("CountMismatch", f"closed form {closed} != enumeration {enum}",
               closed_form=closed, enumerated=enum)
        return EXIT_FAIL
    with _Output(cfg.out) as fh:
        fh.write(f"{closed if closed is not None else enum}\n")
    return 0


def cmd_enumerate(cfg: RunConfig) -> int:
    fam = _family(cfg.m, cfg.s, cfg.n, cfg.modulus)
    start = cfg.start
    stop = fam.total if cfg.limit is None else min(fam.total, start + cfg.limit)
    tasks = [(cfg.m, cfg.s, cfg.n, cfg.modulus, cfg.format, a, b)
             for a, b in _chunks(start, stop, cfg.jobs)] if stop > start else []
    with _Output(cfg.out) as fh:
        if cfg.jobs <= 1:
            for t in tasks:
                fh.writelines(_render_range(t))
        else:
            for lines in _fan_out(_render_range, tasks, cfg.jobs):
                fh.writelines(lines)
    log.info("wrote %d records", max(0, stop - start))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    fam = _family(cfg.m, cfg.s, cfg.n, cfg.modulus)
    total = fam.total
    if cfg.sample is not None:
        indices = _sample_indices(total, cfg.sample)
    else:
        stop = total if cfg.limit is None else min(total, cfg.start + cfg.limit)
        indices = list(range(cfg.start, stop))
    step = max(1, -(-len(indices) // (cfg.jobs * 4)))
    tasks = [(cfg.m, cfg.s, cfg.n, cfg.modulus, indices[a:a + step], cfg.gray)
             for a in range(0, len(indices), step)]
    results = [r for part in _fan_out(_verify_indices, tasks, cfg.jobs) for r in part]
    failures = [i for i, ok, _ in results if not ok]
    for i, ok, msg in results:
        if not ok:
            log.warning("code %d: %s", i, msg)
    report = {"m": cfg.m, "s": cfg.s, "n": cfg.n, "total": total, "checked": len(results),
              "confirmed": len(results) - len(failures), "failures": failures}
    if cfg.gray:
        report["gray_checked"] = True
    with _Output(cfg.out) as fh:
        fh.write(json.dumps(report, sort_keys=True) + "\n")
    return EXIT_FAIL if failures else 0


def cmd_gray(cfg: RunConfig) -> int:
    fam = _family(cfg.m, cfg.s, cfg.n, cfg.modulus)
    rec = fam.record_at(cfg.index)
    sb = verify_self_dual(rec)
    rep = gray_image_checks(rec, sb)
    G = gray_matrix(rec, sb)
    with _Output(cfg.out) as fh:
        for row in G:
            fh.write(_symbols(cfg.m, row) + "\n")
    log.info("gray image %s", json.dumps(rep, sort_keys=True))
    return 0


def cmd_weights(cfg: RunConfig) -> int:
    fam = _family(cfg.m, cfg.s, cfg.n, cfg.modulus)
    rec = fam.record_at(cfg.index)
    hist = weight_distribution(rec, cap=cfg.max_dim)
    out = {"index": cfg.index, "length": 2 * rec.N, "histogram": [[w, c] for w, c in hist.items()]}
    with _Output(cfg.out) as fh:
        fh.write(json.dumps(out, sort_keys=True) + "\n")
    return 0


HANDLERS = {
    "factor": cmd_factor, "omega": cmd_omega, "count": cmd_count, "enumerate": cmd_enumerate,
    "verify": cmd_verify, "gray": cmd_gray, "weights": cmd_weights,
}


# -- parsing and logging -------------------------------------------------------

class _JsonFormatter(logging.Formatter):
    def format(self, record):
        return json.dumps({"level": record.levelname.lower(), "msg": record.getMessage()})


def _setup_logging(quiet: bool, as_json: bool):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_JsonFormatter() if as_json else logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.WARNING if quiet else logging.INFO)
    log.propagate = False


def _error(kind: str, message: str, **extra):
    rec = {"error": kind, "message": message}
    rec.update(extra)
    sys.stderr.write(json.dumps(rec, sort_keys=True) + "\n")


def _int_auto(text: str) -> int:
    return int(text, 0)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SDCYCLIC_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=1, help="extension degree of GF(2^m)")
    common.add_argument("--n", type=int, help="odd part of the length")
    common.add_argument("--modulus", type=_int_auto, help="field modulus as an integer bit mask, e.g. 0x13")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="worker processes (default $SDCYCLIC_JOBS or 1)")
    common.add_argument("--quiet", action="store_true", help="only warnings and errors on stderr")
    common.add_argument("--json", action="store_true", help="log lines as JSON")

    p = argparse.ArgumentParser(prog="sdcyclic", description="Self-dual cyclic codes over GF(2^m)+uGF(2^m).")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", parents=[common], help="factor x^n - 1 and classify the factors")
    f.add_argument("--s", type=int, help="attach idempotents mod x^(2^s n) - 1")

    def with_s(name, help_):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.add_argument("--s", type=int, help="2-adic exponent of the length")
        return q

    o = with_s("omega", "list Omega_{j,nu} with W-sets and digit trails")
    o.add_argument("--j", type=int)
    o.add_argument("--nu", type=int)

    c = with_s("count", "count the self-dual cyclic codes")
    c.add_argument("--mode", choices=["closed-form", "enumerate", "both"], default="both")

    e = with_s("enumerate", "write code records")
    e.add_argument("--format", choices=["json", "csv"], default="json")
    e.add_argument("--start", type=int, default=0)
    e.add_argument("--limit", type=int)
    e.add_argument("--all", action="store_true")

    v = with_s("verify", "check self-duality of all or sampled codes")
    v.add_argument("--all", action="store_true")
    v.add_argument("--sample", type=int, help="K evenly spaced indices")
    v.add_argument("--start", type=int, default=0)
    v.add_argument("--limit", type=int)
    v.add_argument("--gray", action="store_true", help="also run the Gray image checks")

    g = with_s("gray", "write the Gray image generator matrix of one code")
    g.add_argument("--index", type=int)

    w = with_s("weights", "Lee weight distribution of one code")
    w.add_argument("--index", type=int)
    w.add_argument("--max-dim", type=int, default=DEFAULT_CAP, dest="max_dim")
    return p


def run(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    _setup_logging(ns.quiet, ns.json)
    cfg = RunConfig.from_args(ns)
    bad = cfg.validate()
    if bad:
        _error("InvalidFlags", f"{len(bad)} invalid flag(s)", flags=bad)
        return EXIT_USAGE
    try:
        return HANDLERS[cfg.command](cfg)
    except SDCyclicError as exc:
        extra = {}
        if getattr(exc, "witness", None) is not None:
            extra["witness"] = exc.witness
        _error(type(exc).__name__, str(exc), **extra)
        return EXIT_FAIL
    except IndexError as exc:
        _error("IndexError", str(exc))
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
