"""Command-line front end: ``kirwan pairs | polyhedron | check | verify | schubert``.

Exit status is 0 on success, 1 on a domain error (non-holomorphic Lambda,
oracle violations) and 2 on malformed input, including vectors of the wrong
length.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._exact import fmt
from .rootdata import ParameterError, SpecParseError, format_spec, parse_spec

COMMANDS = ("pairs", "polyhedron", "check", "verify", "schubert")


class UsageError(ValueError):
    pass


def parse_vector(text: str, what: str = "vector") -> tuple[Fraction, ...]:
    """'3,1' or '7/2,-1' -> exact rationals; errors carry the character offset."""
    if not text.strip():
        raise SpecParseError(f"empty {what}", 0)
    out, pos = [], 0
    for chunk in text.split(","):
        try:
            out.append(Fraction(chunk.strip()))
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"bad {what} entry {chunk!r}", pos) from None
        pos += len(chunk) + 1
    return tuple(out)


def parse_scales(text: str) -> tuple[float, ...]:
    out, pos = [], 0
    for chunk in text.split(","):
        try:
            v = float(chunk)
        except ValueError:
            raise SpecParseError(f"bad scale {chunk!r}", pos) from None
        if v < 0:
            raise SpecParseError(f"negative scale {chunk!r}", pos)
        out.append(v)
        pos += len(chunk) + 1
    return tuple(out)


def _vec_str(v: Sequence[Fraction]) -> str:
    return ",".join(fmt(x) for x in v)


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: str
    lam: tuple[Fraction, ...] | None = None
    xi: tuple[Fraction, ...] | None = None
    expr: str | None = None
    output: str = "json"
    prune: bool = True
    allow_boundary: bool = False
    samples: int = 10**5
    seed: int = 0
    scales: tuple[float, ...] | None = None

    def to_argv(self) -> list[str]:
        """Arguments that parse back to an equal config."""
        argv = [self.command, self.spec]
        if self.command == "schubert":
            return argv + [self.expr or ""]
        argv += ["--format", self.output]
        if self.command == "pairs":
            return argv
        # '=' keeps argparse from reading a leading minus sign as an option
        argv.append("--lambda=" + _vec_str(self.lam))
        if self.allow_boundary:
            argv.append("--allow-boundary")
        if self.command in ("polyhedron", "check"):
            argv.append("--prune" if self.prune else "--no-prune")
        if self.command == "check":
            argv.append("--xi=" + _vec_str(self.xi))
        if self.command == "verify":
            argv += ["--samples", str(self.samples), "--seed", str(self.seed)]
            if self.scales is not None:
                argv.append("--scales=" + ",".join(repr(s) for s in self.scales))
        return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kirwan", description="Kirwan polyhedra of holomorphic coadjoint orbits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, lam=True):
        sp.add_argument("spec", help="group, e.g. sp:n=2, su:p=2,q=2, so_star:n=4, so:p=5,q=2")
        sp.add_argument("--format", dest="output", choices=("json", "text"), default="json")
        if lam:
            sp.add_argument("--lambda", dest="lam", required=True, help="comma-separated rationals")
            sp.add_argument("--allow-boundary", action="store_true")

    common(sub.add_parser("pairs", help="list well-covering triples"), lam=False)
    for name in ("polyhedron", "check"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--prune", dest="prune", action="store_true", default=True)
        sp.add_argument("--no-prune", dest="prune", action="store_false")
        if name == "check":
            sp.add_argument("--xi", required=True)
    sp = sub.add_parser("verify", help="moment-map sampling cross-check")
    common(sp)
    sp.add_argument("--samples", type=int, default=10**5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scales", default=None, help="comma-separated X-scales")
    sp = sub.add_parser("schubert", help="evaluate a Schubert-ring expression")
    sp.add_argument("spec")
    sp.add_argument("expr", help="e.g. s[s1].theta(1,0).s[s2]")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    kw = {"command": ns.command, "spec": ns.spec}
    if ns.command == "schubert":
        return RunConfig(expr=ns.expr, **kw)
    kw["output"] = ns.output
    if ns.command != "pairs":
        kw["lam"] = parse_vector(ns.lam, "lambda")
        kw["allow_boundary"] = ns.allow_boundary
    if ns.command in ("polyhedron", "check"):
        kw["prune"] = ns.prune
    if ns.command == "check":
        kw["xi"] = parse_vector(ns.xi, "xi")
    if ns.command == "verify":
        if ns.samples < 0:
            raise UsageError("--samples must be >= 0")
        kw.update(samples=ns.samples, seed=ns.seed)
        if ns.scales is not None:
            kw["scales"] = parse_scales(ns.scales)
    return RunConfig(**kw)


# ---------------------------------------------------------------- commands

def _system(pair, cfg: RunConfig, prune: bool = True):
    from .polyhedron import assemble, instantiate
    from .polyhedron import prune as do_prune
    if len(cfg.lam) != pair.ncoords:
        raise UsageError(f"lambda has {len(cfg.lam)} entries, expected {pair.ncoords}")
    raw = instantiate(pair, assemble(pair), cfg.lam, allow_boundary=cfg.allow_boundary)
    return raw, (do_prune(raw) if prune else raw)


def cmd_pairs(cfg: RunConfig) -> tuple[str, int]:
    from .pairs import engine
    pair = parse_spec(cfg.spec)
    eng = engine(pair)
    rows = [eng.triple_json(t) for t in eng.triples]
    if cfg.output == "json":
        return json.dumps({"group": format_spec(pair), "triples": rows}, indent=2), 0
    lines = [f"lambda=({','.join(str(x) for x in r['lambda'])})  w={r['w']}  w'={r['w_prime']}"
             for r in rows]
    return "\n".join(lines) if lines else "(no triples)", 0


def cmd_polyhedron(cfg: RunConfig) -> tuple[str, int]:
    from .polyhedron import to_json, to_text
    pair = parse_spec(cfg.spec)
    _, hp = _system(pair, cfg, cfg.prune)
    if cfg.output == "json":
        out = {"group": format_spec(pair), "lambda": [fmt(x) for x in pair.canonical(cfg.lam)],
               "pruned": cfg.prune, **to_json(hp)}
        return json.dumps(out, indent=2), 0
    return to_text(hp), 0


def cmd_check(cfg: RunConfig) -> tuple[str, int]:
    from .polyhedron import format_row, _project
    pair = parse_spec(cfg.spec)
    _, hp = _system(pair, cfg, cfg.prune)
    if len(cfg.xi) != hp.dim:
        raise UsageError(f"xi has {len(cfg.xi)} entries, expected {hp.dim}")
    x = _project(cfg.xi, hp.sum_zero)
    labels = hp.labels or tuple(f"xi{i + 1}" for i in range(hp.dim))
    rows = [{"row": i, "inequality": format_row(r, labels), "slack": fmt(r.slack(x))}
            for i, r in enumerate(hp.rows)]
    violated = [r["row"] for r, row in zip(rows, hp.rows) if row.slack(x) < 0]
    inside = not violated
    if cfg.output == "json":
        return json.dumps({"inside": inside, "violated": violated, "rows": rows}, indent=2), 0
    lines = ["inside" if inside else "outside"]
    lines += [f"{'VIOLATED ' if r['row'] in violated else ''}{r['inequality']}  (slack {r['slack']})"
              for r in rows]
    return "\n".join(lines), 0


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    from .oracle import DEFAULT_SCALES, build_model, validate
    pair = parse_spec(cfg.spec)
    raw, pruned = _system(pair, cfg)
    rep = validate(build_model(pair), raw, cfg.lam, n_samples=cfg.samples,
                   scales=cfg.scales or DEFAULT_SCALES, seed=cfg.seed, facets=pruned)
    code = 0 if rep["violations"] == 0 else 1
    if cfg.output == "json":
        return json.dumps(rep, indent=2), code
    lines = [f"group {rep['group']}  samples {rep['n_samples']}  seed {rep['seed']}",
             f"violations {rep['violations']}"]
    for f in rep["per_facet_min_slack"]:
        lines.append(f"facet {f['row']}: min slack {f['min_slack']}")
    return "\n".join(lines), code


def cmd_schubert(cfg: RunConfig) -> tuple[str, int]:
    from .schubert import SchubertRing
    from .weyl import WeylGroup
    pair = parse_spec(cfg.spec)
    ring = SchubertRing(WeylGroup(pair))
    try:
        c = ring.evaluate(cfg.expr)
    except (KeyError, IndexError) as e:
        raise UsageError(f"cannot evaluate {cfg.expr!r}: {e}") from None
    return ring.format(c), 0


_DISPATCH = {"pairs": cmd_pairs, "polyhedron": cmd_polyhedron, "check": cmd_check,
             "verify": cmd_verify, "schubert": cmd_schubert}


def run(argv: Sequence[str]) -> tuple[str, str, int]:
    """(stdout, stderr, exit code) for one invocation; never raises on bad input."""
    from .polyhedron import NotHolomorphicError
    try:
        cfg = parse_config(argv)
        out, code = _DISPATCH[cfg.command](cfg)
        return out, "", code
    except SpecParseError as e:
        return "", f"error: {e}", 2
    except (UsageError, ParameterError) as e:
        return "", f"error: {e}", 2
    except NotHolomorphicError as e:
        return "", f"error: {e}", 1
    except (ValueError, ArithmeticError, RuntimeError) as e:
        return "", f"error: {e}", 1


def main(argv: Sequence[str] | None = None) -> int:
    out, err, code = run(sys.argv[1:] if argv is None else argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
