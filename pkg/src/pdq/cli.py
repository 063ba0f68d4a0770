"""Command-line front end.

Reports are line-oriented ``key=value`` text::

    command=<canonical command line>
    seed=<seed or ->
    modulus=<p>

    [<item name>]
    status=<pass|fail|inconclusive>
    <key>=<value>
    ...

    [summary]
    items=<count>
    pass=<count>
    fail=<count>
    inconclusive=<count>

Nested values become dotted keys and lists are joined with commas.  With
``--timings`` a final ``[timings]`` block lists seconds per item; it is
the only nondeterministic part and is off by default.  ``--json`` emits
the same content as one JSON object.  The exit status is 0 iff fail and
inconclusive are both 0; usage and input errors exit with 2.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .certify import (fixture_names, load_explicit_complex, load_fixture, negative_controls,
                      resolve_fixture_name, scale_differential, buchsbaum_eisenbud_check,
                      verify_fixture)
from .groebner import Ideal
from .idealfile import read_ideal_file
from .idealops import (RegularSequenceError, essential_variable_count, height, is_regular_sequence,
                       link, unmixed_part)
from .polycore import ParseError, default_modulus, format_polynomial
from .resolve import free_resolution, hilbert_from_betti
from .sampler import check_main_bounds, question_bound, sample_ideal, tight_examples, invariants_of

STATUSES = ("pass", "fail", "inconclusive")


@dataclass
class RunReport:
    command: str
    seed: int | None
    modulus: int
    items: list[dict] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for it in self.items:
            out[it["status"]] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        return 0 if c["fail"] == 0 and c["inconclusive"] == 0 else 1

    def as_dict(self, timings: bool = False) -> dict:
        d = {"command": self.command, "seed": self.seed, "modulus": self.modulus,
             "items": self.items, "summary": {"items": len(self.items), **self.counts()}}
        if timings:
            d["timings"] = self.timings
        return d

    def render(self, timings: bool = False) -> str:
        lines = [f"command={self.command}",
                 f"seed={'-' if self.seed is None else self.seed}",
                 f"modulus={self.modulus}"]
        for it in self.items:
            lines += ["", f"[{it['name']}]", f"status={it['status']}"]
            lines += [f"{k}={v}" for k, v in _flatten(it.get("fields", {}))]
        lines += ["", "[summary]", f"items={len(self.items)}"]
        lines += [f"{k}={v}" for k, v in self.counts().items()]
        if timings:
            lines += ["", "[timings]"]
            lines += [f"{k}={v:.3f}" for k, v in self.timings.items()]
        return "\n".join(lines) + "\n"


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_value(x) for x in v)
    if v is None:
        return "-"
    return str(v)


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, _value(v)


def _run_items(fn: Callable, args: Sequence, jobs: int) -> list:
    """Map ``fn`` over ``args`` (in a process pool if jobs > 1), keeping input order."""
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, args))
    return [fn(a) for a in args]


def _timed(fn, arg):
    t0 = time.perf_counter()
    item = fn(arg)
    return item, time.perf_counter() - t0


# -- invariants -------------------------------------------------------------------

def ideal_invariants(I: Ideal, ci_subsets: bool = True) -> dict:
    ring = I.ring
    if I.is_unit():
        # S/I = 0: no height or pd, multiplicity 0
        return {"vars": ring.n, "gens": len(I.gens), "unit": True, "ht": None, "e": 0,
                "pd": None, "betti_ranks": []}
    C = free_resolution(I)
    betti = C.betti()
    hd = hilbert_from_betti(betti, ring.n)
    ht = height(I)
    fields: dict = {
        "vars": ring.n, "gens": len(I.gens), "ht": ht, "dim": ring.n - ht,
        "e": hd.multiplicity, "pd": C.length, "betti_ranks": C.ranks(),
        "betti": {str(i): [f"{j}:{betti.beta[(i, j)]}" for j in sorted(
            jj for (ii, jj) in betti.beta if ii == i)] for i in range(C.length + 1)},
        "unmixed": unmixed_part(I) == I,
        "essential_variables": essential_variable_count(list(I.gens)),
    }
    gens = list(I.gens)
    if ci_subsets and 0 < ht < len(gens) <= 8:
        ci = {}
        for idx in itertools.combinations(range(len(gens)), ht):
            sub = [gens[i] for i in idx]
            if is_regular_sequence(ring, sub):
                ci[",".join(str(i + 1) for i in idx)] = essential_variable_count(sub)
        fields["ci_essential_variables"] = ci
    return fields


def cmd_invariants(args) -> RunReport:
    f = read_ideal_file(args.file)
    I = f.ideal
    report = RunReport(f"invariants {args.file}", None, f.ring.p)
    t0 = time.perf_counter()
    report.items.append({"name": args.file, "status": "pass", "fields": ideal_invariants(I)})
    report.timings[args.file] = time.perf_counter() - t0
    return report


# -- appendix ---------------------------------------------------------------------

def _verify_one(job: tuple[str, int]) -> tuple[dict, float]:
    name, seed = job
    t0 = time.perf_counter()
    r = verify_fixture(name, seed=seed)
    d = r.to_dict()
    item = {"name": name, "status": d["status"],
            "fields": {"computed": d["computed"], "claimed": d["claimed"], "check": d["checks"],
                       **({"notes": d["notes"]} if d["notes"] else {})}}
    return item, time.perf_counter() - t0


def _controls_one(job: tuple[str, int]) -> list[tuple[dict, float]]:
    """Negative controls: every mutated complex must fail certification."""
    name, seed = job
    out = []
    t0 = time.perf_counter()
    for k, (how, cert) in enumerate(negative_controls(name, seed=seed)):
        status = "pass" if cert.status == "failed" else "fail"
        out.append(({"name": f"{name}/mutation-{k + 1}", "status": status,
                     "fields": {"mutation": how, "certificate": cert.summary()}}, 0.0))
    I, spec = load_fixture(name)
    C = load_explicit_complex(spec.name, I.ring.p)
    ht = height(I)
    for j in range(2, C.length + 1):
        cert = buchsbaum_eisenbud_check(scale_differential(C, j), ht, seed=seed)
        status = "pass" if cert.status == "failed" else "fail"
        out.append(({"name": f"{name}/scaled-d{j}", "status": status,
                     "fields": {"mutation": f"d_{j} multiplied by {I.ring.names[0]}",
                                "certificate": cert.summary()}}, 0.0))
    total = time.perf_counter() - t0
    return [(it, total / len(out)) for it, _ in out]


def cmd_verify_appendix(args) -> RunReport:
    names = fixture_names()
    if args.filter:
        wanted = [resolve_fixture_name(f.strip()) for f in args.filter.split(",") if f.strip()]
        names = [n for n in names if n in wanted]
    cmd = f"verify-appendix --seed {args.seed}"
    if args.filter:
        cmd += f" --filter {args.filter}"
    if args.negative_controls:
        cmd += " --negative-controls"
    report = RunReport(cmd, args.seed, default_modulus())
    for item, secs in _run_items(_verify_one, [(n, args.seed) for n in names], args.jobs):
        report.items.append(item)
        report.timings[item["name"]] = secs
    if args.negative_controls:
        explicit = [n for n in names if load_fixture(n)[1].claimed.get("complex")]
        for batch in _run_items(_controls_one, [(n, args.seed) for n in explicit], args.jobs):
            for item, secs in batch:
                report.items.append(item)
                report.timings[item["name"]] = secs
    return report


# -- four-quadric sampler ----------------------------------------------------------

def _main_trial(job: tuple[int, int, int, str]) -> tuple[dict, float]:
    nvars, seed, index, mode = job
    t0 = time.perf_counter()
    I, shape = sample_ideal(nvars, 4, seed, index, mode)
    rec = check_main_bounds(I)
    item = {"name": f"trial-{index + 1}", "status": rec.status,
            "fields": {"shape": shape, "ht": rec.ht, "pd": rec.pd, "e": rec.e,
                       "betti_ranks": rec.betti, "check": rec.checks,
                       "gens": [format_polynomial(g) for g in I.gens]}}
    return item, time.perf_counter() - t0


def cmd_verify_main(args) -> RunReport:
    if args.vars < 4:
        raise SystemExit("verify-main: --vars must be at least 4")
    cmd = f"verify-main --trials {args.trials} --vars {args.vars} --seed {args.seed} --mode {args.mode}"
    report = RunReport(cmd, args.seed, default_modulus())
    for name, I in tight_examples().items():
        t0 = time.perf_counter()
        rec = check_main_bounds(I)
        checks = dict(rec.checks)
        checks["pd=6"] = "pass" if rec.pd == 6 else "fail"
        status = "fail" if "fail" in checks.values() else "pass"
        report.items.append({"name": name, "status": status,
                             "fields": {"ht": rec.ht, "pd": rec.pd, "e": rec.e,
                                        "betti_ranks": rec.betti, "check": checks}})
        report.timings[name] = time.perf_counter() - t0
    jobs = [(args.vars, args.seed, k, args.mode) for k in range(args.trials)]
    heights: dict[int, int] = {}
    for item, secs in _run_items(_main_trial, jobs, args.jobs):
        report.items.append(item)
        report.timings[item["name"]] = secs
        h = item["fields"]["ht"]
        heights[h] = heights.get(h, 0) + 1
    report.items.append({"name": "height-distribution", "status": "pass",
                         "fields": {f"ht{h}": c for h, c in sorted(heights.items())}})
    return report


# -- pd against h(n-h+1) scan ---------------------------------------------------------

def _q_trial(job: tuple[int, int, int, int, str]) -> tuple[dict, float]:
    nvars, gens, seed, index, mode = job
    t0 = time.perf_counter()
    I, shape = sample_ideal(nvars, gens, seed, index, mode)
    ht, pd, e, ranks = invariants_of(I)
    bound = question_bound(ht, gens)
    item = {"name": f"trial-{index + 1}", "status": "pass",
            "fields": {"shape": shape, "ht": ht, "pd": pd, "bound": bound,
                       "within_bound": pd <= bound}}
    return item, time.perf_counter() - t0


def cmd_question62(args) -> RunReport:
    if args.gens < 2:
        raise SystemExit("question62: --gens must be at least 2")
    cmd = (f"question62 --gens {args.gens} --trials {args.trials} --vars {args.vars} "
           f"--seed {args.seed} --mode {args.mode}")
    report = RunReport(cmd, args.seed, default_modulus())
    jobs = [(args.vars, args.gens, args.seed, k, args.mode) for k in range(args.trials)]
    table: dict[tuple[int, int], int] = {}
    violations = 0
    for item, secs in _run_items(_q_trial, jobs, args.jobs):
        report.items.append(item)
        report.timings[item["name"]] = secs
        f = item["fields"]
        table[(f["ht"], f["pd"])] = table.get((f["ht"], f["pd"]), 0) + 1
        violations += not f["within_bound"]
    # a violation would be notable output, not a failure of this program
    report.items.append({"name": "table", "status": "pass",
                         "fields": {**{f"ht{h}.pd{p}": c for (h, p), c in sorted(table.items())},
                                    "violations": violations}})
    return report


# -- link -----------------------------------------------------------------------------

def _parse_alpha(spec: str, f) -> list:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok.isdigit():
            k = int(tok)
            if not 1 <= k <= len(f.polys):
                raise SystemExit(f"link: generator index {k} out of range 1..{len(f.polys)}")
            out.append(f.polys[k - 1])
        else:
            out.append(f.ring.parse(tok))
    return out


def cmd_link(args) -> RunReport:
    f = read_ideal_file(args.file)
    I = f.ideal
    alpha = _parse_alpha(args.alpha, f)
    report = RunReport(f"link {args.file} --alpha {args.alpha}", None, f.ring.p)
    t0 = time.perf_counter()
    if not all(I.contains(a) for a in alpha):
        raise SystemExit("link: every element of alpha must lie in the ideal")
    if not is_regular_sequence(f.ring, alpha):
        raise SystemExit("link: alpha is not a regular sequence")
    K = link(I, alpha)
    inv_I = ideal_invariants(I, ci_subsets=False)
    inv_K = ideal_invariants(K, ci_subsets=False)
    e_alpha = 1
    for a in alpha:
        e_alpha *= a.degree()
    checks = {}
    if height(I) == len(alpha):
        checks["e_additivity"] = "pass" if inv_I["e"] + inv_K["e"] == e_alpha else "fail"
    if not K.is_unit():
        checks["pd_I<=pd_K+1"] = "pass" if inv_I["pd"] <= inv_K["pd"] + 1 else "fail"
    status = "fail" if "fail" in checks.values() else "pass"
    report.items.append({"name": "link", "status": status, "fields": {
        "alpha": [format_polynomial(a) for a in alpha],
        "K": [format_polynomial(g) for g in K.gens],
        "I": {k: inv_I[k] for k in ("ht", "e", "pd", "betti_ranks")},
        "K_inv": {k: inv_K[k] for k in ("ht", "e", "pd", "betti_ranks")},
        "e_alpha": e_alpha,
        "e_sum": f"{inv_I['e']} + {inv_K['e']} = {inv_I['e'] + inv_K['e']}",
        "check": checks}})
    report.timings["link"] = time.perf_counter() - t0
    return report


# -- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON object")
    common.add_argument("--timings", action="store_true", help="append wall-clock seconds per item")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")

    parser = argparse.ArgumentParser(prog="pdq", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="ht, dim, e, pd and Betti ranks of an ideal file")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify-appendix", parents=[common], help="check every catalogued fixture")
    p.add_argument("--filter", help="comma-separated fixture names or labels")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--negative-controls", action="store_true",
                   help="also certify mutated explicit complexes, which must fail")
    p.set_defaults(func=cmd_verify_appendix)

    p = sub.add_parser("verify-main", parents=[common], help="sample four-quadric ideals and check pd bounds")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--vars", type=int, default=7)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--mode", choices=("uniform", "mixed"), default="uniform")
    p.set_defaults(func=cmd_verify_main)

    p = sub.add_parser("question62", parents=[common], help="scan pd against h(n-h+1)")
    p.add_argument("--gens", type=int, default=4)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--vars", type=int, default=7)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--mode", choices=("uniform", "mixed"), default="mixed")
    p.set_defaults(func=cmd_question62)

    p = sub.add_parser("link", parents=[common], help="link an ideal by a regular sequence inside it")
    p.add_argument("file")
    p.add_argument("--alpha", required=True,
                   help="comma-separated generator numbers (1-based) or polynomials")
    p.set_defaults(func=cmd_link)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, KeyError, RegularSequenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"error: {exc.code}", file=sys.stderr)
            return 2
        raise
    if args.json:
        sys.stdout.write(json.dumps(report.as_dict(args.timings), indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(report.render(args.timings))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
