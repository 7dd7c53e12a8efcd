"""Command line front end.

    exaffine ears verify --spec F [--bound B]
    exaffine ears roots --spec F [--bound B]
    exaffine pairs classify --spec F [--bound B]
    exaffine weyl check --spec F [--collections N]
    exaffine steinberg verify --spec F [--relations st1,st2,...]
    exaffine covering --spec F

Exit codes: 0 when every selected suite passes, 1 when one fails, 2 for a
bad spec or bad arguments.  Reports are JSON with sorted keys; wall-clock
times live under the top-level "timing" key only.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__, kernels
from . import steinberg as st
from .ears import classify_pairs, enumerate_roots, lambda_covering, verify_axioms
from .specfile import SpecError, load_spec, parse_spec
from .weyl import check_presentation

RELATIONS = ("st1", "st2", "st2p", "stf", "tor", "conj", "chi", "weyl")


def default_jobs():
    try:
        return max(1, int(os.environ.get("EXAFFINE_JOBS", "1")))
    except ValueError:
        return 1


def run_relation(D, name, bound, seed, samples, collections):
    if not D.cocycle.is_commutative():
        return {"skipped": True, "reason": "the adjoint model needs a commutative cocycle", "passed": True,
                "instances": 0, "failed": 0, "counterexamples": [], "extracted_constants": {}}
    if name == "st1":
        return st.verify_st1(D, bound=bound, seed=seed)
    if name == "st2":
        return st.verify_st2(D, bound=bound, seed=seed, samples=samples)
    if name == "st2p":
        return st.verify_st2p(D, bound=bound, seed=seed)
    if name == "stf":
        return st.verify_stf(D, samples=samples, seed=seed)
    if name == "tor":
        return st.verify_tor(D, bound=bound, samples=max(100, samples or 0), seed=seed)
    if name == "conj":
        return st.verify_conj(D, bound=bound, samples=samples or 300, seed=seed)
    if name == "chi":
        return st.verify_chi(D, bound=bound, samples=max(100, samples or 0), seed=seed, covering=lambda_covering(D))
    if name == "weyl":
        return st.verify_weyl_quotient(D, bound=bound, samples=max(100, samples or 0),
                                       collections=collections or 25, seed=seed)
    raise ValueError(f"unknown relation {name}")


def _worker(task):
    spec_text, name, bound, seed, samples, collections = task
    D = parse_spec(spec_text).descriptor()
    t0 = time.perf_counter()
    res = run_relation(D, name, bound, seed, samples, collections)
    return name, res, time.perf_counter() - t0


def _spec_text(spec):
    return "".join(f"{k} = {json.dumps(v)}\n" for k, v in spec.to_json().items())


def cmd_ears(args, spec, D):
    bound = args.bound if args.bound is not None else spec.get("bound", 2)
    if args.action == "roots":
        roots = enumerate_roots(D, bound)
        for r in roots:
            print(f"{r}{'  (isotropic)' if r.isotropic else ''}")
        return {"bound": bound, "roots": [r.to_json() for r in roots], "passed": True}, {}
    t0 = time.perf_counter()
    res = verify_axioms(D, bound, seed=args.seed)
    for k, v in res["axioms"].items():
        print(f"{k}: {'PASS' if v['passed'] else 'FAIL'}")
    return res, {"verify_axioms": time.perf_counter() - t0}


def cmd_pairs(args, spec, D):
    bound = args.bound if args.bound is not None else spec.get("bound", 1)
    t0 = time.perf_counter()
    res = classify_pairs(D, bound)
    print(f"nilpotent pairs: {res['pairs']}")
    for t, c in res["counts"].items():
        print(f"  {t}: {c}")
    print(f"mismatches against the finite pattern: {len(res['mismatches'])}")
    return res, {"classify": time.perf_counter() - t0}


def cmd_weyl(args, spec, D):
    t0 = time.perf_counter()
    res = check_presentation(D, samples=args.samples or 500, collections=args.collections or 50, seed=args.seed)
    for k in ("i", "ii", "iii", "form_preserved"):
        if isinstance(res.get(k), dict):
            print(f"{k}: {'PASS' if res[k].get('passed') else 'FAIL'}")
    return res, {"check_presentation": time.perf_counter() - t0}


def cmd_steinberg(args, spec, D):
    rels = [r.strip() for r in args.relations.split(",") if r.strip()]
    bad = [r for r in rels if r not in RELATIONS]
    if bad:
        raise SpecError(f"unknown relation(s) {', '.join(bad)}; choose from {', '.join(RELATIONS)}")
    bound = args.bound if args.bound is not None else spec.get("bound", 1)
    jobs = args.jobs or default_jobs()
    text = _spec_text(spec)
    tasks = [(text, r, bound, args.seed, args.samples, args.collections) for r in rels]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            done = list(ex.map(_worker, tasks))
    else:
        done = [_worker(t) for t in tasks]
    results, timing = {}, {}
    for name, res, dt in done:
        results[name] = res
        timing[name] = dt
        tag = "SKIP" if res.get("skipped") else "PASS" if res["passed"] else "FAIL"
        print(f"{name}: {tag} ({res['instances']} instances, {res['failed']} failed)")
    out = {"relations": results, "passed": all(r["passed"] for r in results.values()),
           "skipped": sorted(n for n, r in results.items() if r.get("skipped"))}
    return out, timing


def cmd_covering(args, spec, D):
    bound = args.bound if args.bound is not None else spec.get("bound", 1)
    t0 = time.perf_counter()
    C = lambda_covering(D)
    axioms = verify_axioms(C, bound + 1, seed=args.seed)
    res = {"covering": C.spec_echo(), "axioms_passed": axioms["passed"], "same_twist": C.twist == D.twist}
    if C.cocycle.is_commutative():
        chi = st.verify_chi(C, bound=bound, samples=0, seed=args.seed, covering=C)
        res["right_inverse_after_chi"] = chi["covering_right_inverse_after_chi"]
        res["passed"] = axioms["passed"] and chi["passed"]
    else:
        res["right_inverse_after_chi"] = {"skipped": True}
        res["passed"] = axioms["passed"]
    print(f"covering: S basis {res['covering']['S_basis']}, L basis {res['covering']['L_basis']}, twist {C.twist}")
    print(f"axioms: {'PASS' if axioms['passed'] else 'FAIL'}")
    r = res["right_inverse_after_chi"]
    if not r.get("skipped"):
        print(f"chi_r^-1 o chi on generators: {'PASS' if r['passed'] else 'FAIL'} ({r['failed']} of {r['instances']} fail)")
    return res, {"covering": time.perf_counter() - t0}


def build_parser():
    p = argparse.ArgumentParser(prog="exaffine", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"exaffine {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--spec", required=True)
        q.add_argument("--bound", type=int)
        q.add_argument("--seed", type=int, default=None)
        q.add_argument("--report")
        q.add_argument("--jobs", type=int)
        q.add_argument("--samples", type=int)
        q.add_argument("--collections", type=int)

    ears = sub.add_parser("ears").add_subparsers(dest="action", required=True)
    common(ears.add_parser("verify"))
    common(ears.add_parser("roots"))
    pairs = sub.add_parser("pairs").add_subparsers(dest="action", required=True)
    common(pairs.add_parser("classify"))
    weyl = sub.add_parser("weyl").add_subparsers(dest="action", required=True)
    common(weyl.add_parser("check"))
    stb = sub.add_parser("steinberg").add_subparsers(dest="action", required=True)
    v = stb.add_parser("verify")
    common(v)
    v.add_argument("--relations", default=",".join(RELATIONS))
    common(sub.add_parser("covering"))
    return p


HANDLERS = {"ears": cmd_ears, "pairs": cmd_pairs, "weyl": cmd_weyl, "steinberg": cmd_steinberg,
            "covering": cmd_covering}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        spec = load_spec(args.spec)
        if args.seed is None:
            args.seed = spec.get("seed", 0)
        D = spec.descriptor()
        result, timing = HANDLERS[args.command](args, spec, D)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    report = {
        "tool": {"name": "exaffine", "version": __version__, "backend": kernels.BACKEND},
        "command": " ".join(filter(None, [args.command, getattr(args, "action", None)])),
        "spec": D.spec_echo() | {"cocycle": D.cocycle.to_json()},
        "seed": args.seed,
        "result": result,
        "passed": bool(result.get("passed", True)),
        "timing": timing,
    }
    # the backend name is environment, not result; keep it out of the compared body
    report["timing"]["backend"] = report["tool"].pop("backend")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    print("PASS" if report["passed"] else "FAIL")
    return 0 if report["passed"] else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
