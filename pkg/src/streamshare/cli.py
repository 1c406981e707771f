"""Command-line front end.

Exit codes: 0 ok, 2 input/usage error, 3 domain error (e.g. an index that is
zero for every artist), 4 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import axioms as ax
from .core import read_csv
from .errors import DomainError, InputError, InvalidParameter, NoWork, StreamshareError
from .games import (
    balanced_contributions_check,
    induced_game_pro_rata,
    induced_game_shapley,
    random_game,
    random_profiles,
    verify_shapley_induced,
)
from .indices import (
    REGISTRY,
    Index,
    make_index,
    pro_rata_d,
    reward,
    shapley_d,
    user_centric_d,
)
from .rational import decimal_str, fraction_str

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_MISMATCH = 0, 2, 3, 4
SEED_ENV = "STREAMSHARE_SEED"
DEFAULT_SEED = 42

DECOMPOSITIONS = {"pro-rata": pro_rata_d, "shapley": shapley_d, "user-centric": user_centric_d}
GAME_FAMILIES = {"pro-rata-game": induced_game_pro_rata, "shapley-game": induced_game_shapley}
DEFAULT_PAIRS = ("pro-rata:pro-rata-game", "shapley:shapley-game")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    index: str | None = None
    tau: int | None = None
    cap: int | None = None
    beta: str | None = None
    format: str = "json"
    seed: int = DEFAULT_SEED
    budget: int = 500
    precision: int = 2
    indices: list = field(default_factory=lambda: list(ax.MATRIX_INDICES))
    pairs: list = field(default_factory=lambda: list(DEFAULT_PAIRS))
    profiles: int = 200
    max_positive: int = 8
    games: int = 100

    def validate(self):
        if self.seed < 0:
            raise InvalidParameter("seed must be nonnegative")
        if self.budget < 1:
            raise InvalidParameter("budget must be positive")
        if self.precision < 0:
            raise InvalidParameter("precision must be nonnegative")
        if self.format not in ("json", "csv", "table"):
            raise InvalidParameter(f"unknown format {self.format!r}")
        return self


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- compute -----------------------------------------------------------------

def cmd_compute(config: RunConfig) -> tuple[int, str]:
    if not config.input:
        raise InvalidParameter("--input is required")
    if not config.index:
        raise InvalidParameter("--index is required")
    p = read_csv(config.input)
    idx = make_index(config.index, tau=config.tau, cap=config.cap, beta=config.beta)
    values = idx(p)
    rewards = reward(values, p)
    prec = config.precision
    rows = [
        {
            "artist": str(a),
            "index": fraction_str(values[a]),
            "index_decimal": decimal_str(values[a], prec),
            "reward": fraction_str(rewards[a]),
            "reward_decimal": decimal_str(rewards[a], prec),
        }
        for a in p.artists
    ]
    if config.format == "json":
        out = {
            "index": idx.name,
            "params": {k: fraction_str(v) for k, v in sorted(idx.params.items())},
            "artists": len(p.artists),
            "users": len(p.users),
            "results": rows,
        }
        return EXIT_OK, _dump(out)
    if config.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return EXIT_OK, buf.getvalue()
    header = ("artist", "index", "reward", f"reward ~{prec}dp")
    body = [(r["artist"], r["index"], r["reward"], r["reward_decimal"]) for r in rows]
    return EXIT_OK, _table(header, body, title=f"{idx.label} on {p.n} artists x {p.m} users")


def _table(header, body, title=None) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *body)]
    lines = [title] if title else []
    lines.append("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in body:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


# -- axioms ------------------------------------------------------------------

_SHORT = {
    ax.ADDITIVITY: "ADD", ax.NULL_ARTISTS: "NA", ax.PAIRWISE_HOMOGENEITY: "PH",
    ax.EQUAL_INDIVIDUAL_IMPACT: "EII", ax.EQUAL_GLOBAL_IMPACT: "EGI",
    ax.EQUAL_IMPACT_OF_ARTISTS: "EIA",
}


def cmd_axioms(config: RunConfig, indices: Sequence | None = None,
               expected: dict | None = None) -> tuple[int, str]:
    """Run the axiom matrix; ``indices`` and ``expected`` override the defaults."""
    expected = ax.EXPECTED_PATTERN if expected is None else expected
    if indices is None:
        indices = []
        for name in config.indices:
            if name not in REGISTRY:
                raise InvalidParameter(f"unknown index {name!r}")
            indices.append(make_index(name))
    if not indices:
        raise NoWork("no indices selected")
    matrix = ax.axiom_matrix(indices, budget=config.budget, seed=config.seed)
    mismatches = matrix.mismatches(expected)
    code = EXIT_MISMATCH if mismatches else EXIT_OK
    if config.format == "json":
        return code, _dump(matrix.to_dict(expected))
    if config.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "axiom", "verdict", "expected", "instances"])
        for (name, a), v in matrix.cells.items():
            want = expected.get(name, {}).get(a)
            w.writerow([name, a, v.verdict,
                        "" if want is None else ("satisfied" if want else "fails"), v.instances])
        return code, buf.getvalue()
    header = ("index", *(_SHORT[a] for a in ax.AXIOMS), "RLB")
    body = []
    for name in matrix.index_names:
        row = [name]
        for a in ax.AXIOMS:
            ok = matrix.satisfied(name, a)
            want = expected.get(name, {}).get(a)
            mark = "✓" if ok else "✗"
            row.append(mark + ("!" if want is not None and want != ok else ""))
        row.append("n/a")
        body.append(row)
    foot = ("✓ satisfied on sample (bounded evidence), ✗ verified counterexample, "
            "! disagrees with the expected pattern")
    text = _table(header, body, title=f"axiom matrix, seed {config.seed}, budget {config.budget}")
    return code, text + foot + "\n" + (f"{len(mismatches)} mismatch(es)\n" if mismatches else "")


# -- shapley audit -----------------------------------------------------------

def _parse_pair(pair: str):
    d_name, sep, g_name = pair.partition(":")
    if not sep or d_name not in DECOMPOSITIONS or g_name not in GAME_FAMILIES:
        raise InvalidParameter(
            f"pair must be DECOMPOSITION:GAME with DECOMPOSITION in {sorted(DECOMPOSITIONS)} "
            f"and GAME in {sorted(GAME_FAMILIES)}, got {pair!r}"
        )
    return d_name, g_name


def _violation_json(v: dict) -> dict:
    out = {}
    for k, val in v.items():
        if k == "profile":
            out[k] = {str(a): fraction_str(x) for a, x in val.items()}
        elif k == "coalition":
            out[k] = [str(a) for a in val]
        elif isinstance(val, (int, str)):
            out[k] = val
        else:
            out[k] = fraction_str(val)
    return out


def cmd_shapley_audit(config: RunConfig) -> tuple[int, str]:
    if config.profiles < 1:
        raise NoWork("--profiles must be at least 1")
    if not 1 <= config.max_positive <= 12:
        raise InvalidParameter("--max-positive must lie in [1, 12]")
    pairs = [_parse_pair(p) for p in config.pairs]
    if not pairs:
        raise NoWork("no decomposition/game pairs selected")
    rng = random.Random(config.seed)
    sample = random_profiles(rng, config.profiles, max_artists=config.max_positive,
                             max_positive=config.max_positive)
    # the (1, 2) profile separates user-centric from the pro-rata game
    sample.insert(0, ("u0", {"1": 1, "2": 2}))
    results = []
    for d_name, g_name in pairs:
        rep = verify_shapley_induced(DECOMPOSITIONS[d_name], GAME_FAMILIES[g_name], sample,
                                     max_positive=config.max_positive)
        results.append({
            "decomposition": d_name,
            "game": g_name,
            "profiles": rep.profiles_checked,
            "restriction_checks": rep.restriction_checks,
            "value_checks": rep.value_checks,
            "violation_count": len(rep.violations),
            "violations": [_violation_json(v) for v in rep.violations[:20]],
            "ok": rep.ok,
        })
    failures = []
    for k in range(config.games):
        g = random_game(rng, rng.randint(1, 6))
        res = balanced_contributions_check(g)
        if not res:
            failures.append({"game": k, "pair": list(res.pair),
                             "values": [fraction_str(v) for v in res.values]})
    ok = all(r["ok"] for r in results) and not failures
    out = {
        "seed": config.seed,
        "pairs": results,
        "balanced_contributions": {"games": config.games, "ok": not failures,
                                   "failures": failures},
        "ok": ok,
    }
    code = EXIT_OK if ok else EXIT_MISMATCH
    if config.format == "json":
        return code, _dump(out)
    header = ("decomposition", "game", "profiles", "violations", "status")
    body = [(r["decomposition"], r["game"], r["profiles"], r["violation_count"],
             "ok" if r["ok"] else "MISMATCH") for r in results]
    body.append(("balanced-contributions", "random", config.games, len(failures),
                 "ok" if not failures else "MISMATCH"))
    return code, _table(header, body, title=f"shapley audit, seed {config.seed}")


# -- entry point -------------------------------------------------------------

def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameter(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamshare",
        description="Exact popularity indices, rewards and axiom audits for streaming problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--format", choices=("json", "csv", "table"), default=fmt_default)
        sp.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default ${SEED_ENV} or {DEFAULT_SEED})")
        sp.add_argument("--precision", type=int, default=2, help="decimal places for display")

    c = sub.add_parser("compute", help="index values and rewards for a CSV stream matrix")
    c.add_argument("--input", required=True)
    c.add_argument("--index", required=True, choices=sorted(REGISTRY))
    c.add_argument("--tau", type=int)
    c.add_argument("--cap", type=int)
    c.add_argument("--beta", help="blend weight as P/Q")
    common(c)

    a = sub.add_parser("axioms", help="search for axiom counterexamples")
    a.add_argument("--indices", default=",".join(ax.MATRIX_INDICES),
                   help="comma-separated registry names")
    a.add_argument("--budget", type=int, default=500)
    common(a)

    s = sub.add_parser("shapley-audit", help="check Shapley-induced decompositions")
    s.add_argument("--pair", action="append", dest="pairs",
                   help="DECOMPOSITION:GAME, repeatable (default: pro-rata and shapley)")
    s.add_argument("--profiles", type=int, default=200)
    s.add_argument("--max-positive", type=int, default=8)
    s.add_argument("--games", type=int, default=100)
    common(s)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, format=args.format, precision=args.precision,
                    seed=args.seed if args.seed is not None else _default_seed())
    if args.command == "compute":
        cfg.input, cfg.index = args.input, args.index
        cfg.tau, cfg.cap, cfg.beta = args.tau, args.cap, args.beta
    elif args.command == "axioms":
        cfg.indices = [s.strip() for s in args.indices.split(",") if s.strip()]
        cfg.budget = args.budget
    else:
        cfg.pairs = args.pairs or list(DEFAULT_PAIRS)
        cfg.profiles, cfg.max_positive, cfg.games = args.profiles, args.max_positive, args.games
    return cfg.validate()


COMMANDS = {"compute": cmd_compute, "axioms": cmd_axioms, "shapley-audit": cmd_shapley_audit}


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Parse and execute; returns ``(exit code, stdout text, stderr text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_OK if e.code == 0 else EXIT_INPUT), "", ""
    try:
        cfg = config_from_args(args)
        code, text = COMMANDS[cfg.command](cfg)
        return code, text, ""
    except DomainError as e:
        return EXIT_DOMAIN, "", f"error: {type(e).__name__}: {e}\n"
    except (InputError, OSError) as e:
        return EXIT_INPUT, "", f"error: {type(e).__name__}: {e}\n"
    except StreamshareError as e:
        return EXIT_INPUT, "", f"error: {type(e).__name__}: {e}\n"


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
