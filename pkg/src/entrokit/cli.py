"""Command-line surface: reproducible experiments with machine-readable output.

Output is line-delimited JSON by default (CSV opt-in).  Every stochastic
subcommand requires an explicit seed.  Exit codes: 0 pass, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Optional

import numpy as np

from . import gaussian as gsn
from . import inequalities as ineq
from . import oracle
from . import phasespace as phsp
from .phasespace import PhaseSpace, particles
from .stabilizer import (
    CLASSICAL,
    ENUMERATION_GUARD,
    QUANTUM,
    EntropyVector,
    ExactEntropy,
    StabilizerState,
    entropy_vector,
    enumerate_isotropic,
)
from .zmod import Subgroup

OUTPUT_DIR_ENV = "ENTROKIT_OUTPUT_DIR"


def _fmt(x: float) -> float:
    return float(f"{x:.17g}")


def _resolve(path: Optional[str], default_name: str) -> str:
    if path:
        return path
    return os.path.join(os.environ.get(OUTPUT_DIR_ENV, "."), default_name)


def _write_lines(path: str, lines: Iterable[str]) -> None:
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def _vector_obj(vec: EntropyVector) -> dict:
    return {
        "kind": vec.kind,
        "entries": [
            {"mask": mask, "size": size, "order": order, "entropy_log_d": _fmt(val)}
            for mask, size, order, val in vec.rows()
        ],
    }


def _corpus_records(d: int, n: int, threads: int = 1):
    ps = PhaseSpace(n, d)
    if threads <= 1:
        states = list(enumerate_isotropic(ps))
    else:
        states = _enumerate_sharded(ps, threads)
    for st in states:
        yield st, entropy_vector(st, QUANTUM), entropy_vector(st, CLASSICAL)


def _enumerate_sharded(ps: PhaseSpace, threads: int) -> list[StabilizerState]:
    """Shard enumeration on the first extension vector; dedup and sort at merge."""
    trivial = Subgroup.zero(ps.d, ps.m)
    full = phsp.symplectic_complement(ps, trivial)
    singles = []
    seen = set()
    for v in full.elements():
        if not any(v):
            continue
        s = trivial.extend(v)
        if s not in seen:
            seen.add(s)
            singles.append(s)
    shards = [singles[i::threads] for i in range(threads)]

    def work(shard):
        found = set()
        frontier = list(shard)
        found.update(shard)
        while frontier:
            nxt = []
            for M in frontier:
                perp = phsp.symplectic_complement(ps, M)
                for v in perp.elements():
                    if M.contains(v):
                        continue
                    M2 = M.extend(v)
                    if M2 not in found:
                        found.add(M2)
                        nxt.append(M2)
            frontier = nxt
        return found

    merged = {trivial}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for result in pool.map(work, shards):
            merged.update(result)
    ordered = sorted(merged, key=lambda s: s.basis)
    return [StabilizerState(ps, M) for M in ordered]


def cmd_enumerate(args) -> int:
    d, n = args.d, args.n
    if d**(2 * n) > ENUMERATION_GUARD:
        print(f"error: d^(2n) = {d ** (2 * n)} exceeds guard {ENUMERATION_GUARD}", file=sys.stderr)
        return 2
    out = _resolve(args.out, f"corpus_d{d}_n{n}.{args.format}")
    if args.format == "json":
        lines = []
        for idx, (st, vq, vc) in enumerate(_corpus_records(d, n, args.threads)):
            lines.append(
                json.dumps(
                    {
                        "index": idx,
                        "d": d,
                        "n": n,
                        "generators": [list(g) for g in st.M.generators()],
                        "quantum": _vector_obj(vq),
                        "classical": _vector_obj(vc),
                    },
                    sort_keys=True,
                )
            )
        _write_lines(out, lines)
    else:
        lines = ["state,kind,mask,size,order,entropy_log_d"]
        for idx, (st, vq, vc) in enumerate(_corpus_records(d, n, args.threads)):
            for vec in (vq, vc):
                for mask, size, order, val in vec.rows():
                    lines.append(f"{idx},{vec.kind},{mask},{size},{order},{_fmt(val)}")
        _write_lines(out, lines)
    print(out)
    return 0


def _load_corpus(path: str) -> list[dict]:
    records = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    if not records:
        raise ValueError("empty corpus")
    return records


def _record_vector(rec: dict, kind: str) -> EntropyVector:
    obj = rec["quantum" if kind == QUANTUM else "classical"]
    entries = {
        e["mask"]: ExactEntropy(e["size"], e["order"], rec["d"], kind)
        for e in obj["entries"]
    }
    return EntropyVector(rec["n"], rec["d"], kind, entries)


def cmd_verify(args) -> int:
    try:
        records = _load_corpus(args.corpus)
        n = records[0]["n"]
        if args.inequality:
            with open(args.inequality) as fh:
                ineqs = [ineq.Inequality.from_json(line) for line in fh if line.strip()]
        else:
            ineqs = ineq.instances(args.family, n)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.balanced_only:
        ineqs = [q for q in ineqs if ineq.is_balanced(q)]
    if not ineqs:
        print("error: no inequalities selected", file=sys.stderr)
        return 2
    vectors = [_record_vector(rec, args.kind) for rec in records]
    report = ineq.verify_batch(ineqs, vectors, args.family or "file")
    out = _resolve(args.out, "report.json")
    _write_lines(out, [report.to_json()])
    print(out)
    return 0 if report.passed else 1


def cmd_oracle_check(args) -> int:
    d, n = args.d, args.n
    if d**n > oracle.DENSE_GUARD:
        print(f"error: d^n = {d ** n} exceeds dense guard {oracle.DENSE_GUARD}", file=sys.stderr)
        return 2
    ps = PhaseSpace(n, d)
    checks = {"states": 0, "entropy": 0.0, "projector": 0.0, "wigner": 0.0}
    ok = True
    for st in enumerate_isotropic(ps):
        checks["states"] += 1
        P = oracle.projector(st)
        perr = float(
            max(
                np.abs(P @ P - P).max(),
                np.abs(P - P.conj().T).max(),
                abs(np.trace(P).real - d**n / st.M.order),
            )
        )
        checks["projector"] = max(checks["projector"], perr)
        ok &= perr < oracle.ATOL_STRUCT
        rho = oracle.dense_state(st)
        for mask in range(1, 1 << n):
            red = oracle.reduced_state(rho, ps, mask)
            exact = (
                len(particles(mask))
                - math.log(phsp.restrict(ps, st.M, mask).order) / math.log(d)
            )
            for alpha in ("vonNeumann", 0.5, 2, 3):
                err = abs(oracle.spectral_entropy(red, alpha, d) - exact)
                checks["entropy"] = max(checks["entropy"], err)
                ok &= err < oracle.ATOL_EIG
        if d % 2:
            W = oracle.wigner(rho, ps)
            perp = st.perp
            werr = 0.0
            for v in np.ndindex(*(d,) * (2 * n)):
                expect = 1 / perp.order if perp.contains(list(v)) else 0.0
                werr = max(werr, abs(W.values[v] - expect))
            checks["wigner"] = max(checks["wigner"], werr)
            ok &= werr < 1e-10
    report = {"d": d, "n": n, "passed": bool(ok)}
    report.update({k: (_fmt(v) if isinstance(v, float) else v) for k, v in checks.items()})
    out = _resolve(args.out, f"oracle_check_d{d}_n{n}.json")
    _write_lines(out, [json.dumps(report, sort_keys=True)])
    print(out)
    return 0 if ok else 1


def cmd_gaussian(args) -> int:
    out = _resolve(args.out, f"gaussian_{args.gaussian_cmd}.json")
    if args.gaussian_cmd == "verify":
        rng = np.random.default_rng(args.seed)
        n = args.n
        worst = 0.0
        for _ in range(args.trials):
            a = rng.standard_normal((2 * n, 2 * n + 2))
            g = gsn.GaussianState(n, np.zeros(2 * n), a @ a.T + np.eye(2 * n))
            for mask in range(1, 1 << n):
                k = len(particles(mask))
                s2 = gsn.renyi2_quantum(g, mask)
                for alpha in (0.5, 2.0, 3.0):
                    via = gsn.renyi_alpha_classical(g, mask, alpha) - k * gsn.renyi_correction(alpha)
                    worst = max(worst, abs(via - s2))
        ok = worst < 1e-10
        _write_lines(
            out,
            [json.dumps({"passed": ok, "trials": args.trials, "n": n, "seed": args.seed, "max_error": _fmt(worst)}, sort_keys=True)],
        )
        print(out)
        return 0 if ok else 1
    if args.gaussian_cmd == "mc":
        g, mask = _mc_fixture(args.fixture)
        if g is None:
            print(f"error: unknown fixture {args.fixture!r}", file=sys.stderr)
            return 2
        exact = gsn.renyi_alpha_classical(g, mask, 2.0)
        est, se = gsn.mc_renyi2(g, mask, args.samples, args.seed)
        ok = abs(est - exact) <= max(3 * se, 0.01 * abs(exact))
        _write_lines(
            out,
            [
                json.dumps(
                    {
                        "fixture": args.fixture,
                        "passed": ok,
                        "samples": args.samples,
                        "seed": args.seed,
                        "exact": _fmt(exact),
                        "estimate": _fmt(est),
                        "stderr": _fmt(se),
                    },
                    sort_keys=True,
                )
            ],
        )
        print(out)
        return 0 if ok else 1
    if args.gaussian_cmd == "ingleton-search":
        if args.threads <= 1:
            res = gsn.ingleton_search(args.seed, args.iters, args.strategy)
        else:
            shard_iters = args.iters // args.threads
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                results = list(
                    pool.map(
                        lambda s: gsn.ingleton_search(s, shard_iters, args.strategy),
                        [args.seed + i for i in range(args.threads)],
                    )
                )
            res = min(results, key=lambda r: r.value)
        _write_lines(out, [res.to_json()])
        print(out)
        return 0 if res.found else 1
    print(f"error: unknown gaussian subcommand {args.gaussian_cmd!r}", file=sys.stderr)
    return 2


def _mc_fixture(name: str):
    if name == "vacuum":
        return gsn.GaussianState.vacuum(1), 1
    if name == "thermal":
        return gsn.GaussianState(1, np.zeros(2), np.eye(2)), 1
    if name == "correlated":
        r = 0.6
        c, s = math.cosh(2 * r) / 2, math.sinh(2 * r) / 2
        sig = np.array([[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]])
        return gsn.GaussianState(2, np.zeros(4), sig), 3
    return None, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entrokit")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="enumerate isotropic subgroups with entropy vectors")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="verify inequalities against a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--family", choices=ineq.FAMILIES)
    p.add_argument("--inequality", help="JSON-lines file of inequalities")
    p.add_argument("--kind", choices=(QUANTUM, CLASSICAL), default=QUANTUM)
    p.add_argument("--balanced-only", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-check", help="dense-oracle vs phase-space comparison")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("gaussian", help="Gaussian-state routines")
    gs = p.add_subparsers(dest="gaussian_cmd", required=True)
    g = gs.add_parser("verify")
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--trials", type=int, default=100)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gaussian)
    g = gs.add_parser("mc")
    g.add_argument("--fixture", default="vacuum")
    g.add_argument("--samples", type=int, default=10**6)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gaussian)
    g = gs.add_parser("ingleton-search")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--iters", type=int, default=20000)
    g.add_argument("--strategy", choices=gsn.STRATEGIES, default="random-wishart")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gaussian)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    for attr in ("d", "n", "trials", "samples", "iters", "threads"):
        if getattr(args, attr, 1) is not None and getattr(args, attr, 1) < 1:
            print(f"error: --{attr} must be positive", file=sys.stderr)
            return 2
    if getattr(args, "d", 2) < 2:
        print("error: --d must be >= 2", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
