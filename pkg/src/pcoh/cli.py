"""Command-line front end.

Exit status: 0 when everything checked passes, 1 when a check fails (the
witness is printed), 2 on bad input. Error lines carry one of the
prefixes ``input error:``, ``web mismatch:``, ``truncation error:`` or
``check failed:``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import polytope as pt
from .bang import (
    BangPcs, InexactBall, StableFn, TruncationError, eval_stable, promote, refute_dual,
    total_monotonicity_check,
)
from .category import MorphMatrix, apply, compose, format_matrix, limpl, morph_norm, parse_matrix, with_product
from .kernel import (
    NotSubstochastic, format_kernel, kern_of_lin, kernel_compose, lin_of_kern, measure_cone, parse_kernel,
)
from .limits import SizeBoundExceeded, stream_equalizer_demo
from .pcs import NotInBall, Pcs, biorth_closure, elem, format_pcs, one, parse_pcs
from .polytope import DegenerateCoordinate, Inconsistent
from .rational import InputError, WebMismatch, fmt, label_str, parse_label, q
from .rng import SplitMix64
from .suites import SUITES, SuiteReport, random_stable, run_suite, _sorted_tuples
from .tensor import tensor


class CheckFailed(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_pcs(path: str) -> Pcs:
    return parse_pcs(_read(path))


def load_vector(path: str, X) -> tuple:
    """Rationals in web order, or ``label value`` lines."""
    toks = [ln.split("#")[0].split() for ln in _read(path).splitlines()]
    toks = [t for t in toks if t]
    if toks and all(len(t) == 2 for t in toks) and len(toks) != 1:
        vals = {parse_label(a): q(v) for a, v in toks}
        return elem(X, vals).vec
    flat = [v for t in toks for v in t]
    if len(flat) != len(X.web):
        raise WebMismatch(f"vector has {len(flat)} entries, web has {len(X.web)}")
    return elem(X, [q(v) for v in flat]).vec


def load_matrix(path: str) -> MorphMatrix:
    base = Path(path).parent
    return parse_matrix(_read(path), lambda p: load_pcs(str(base / p)))


def load_stable(path: str) -> StableFn:
    """``stable DOM.pcs COD.pcs D`` then rows ``m b p/q`` with multiset ``m``."""
    base = Path(path).parent
    lines = [ln.strip() for ln in _read(path).splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "stable":
        raise InputError("stable-function file must start with 'stable DOM.pcs COD.pcs D'")
    X, Y = load_pcs(str(base / head[1])), load_pcs(str(base / head[2]))
    entries = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 3:
            raise InputError(f"bad stable-function row: {ln!r}")
        entries[(parse_label(toks[0]), parse_label(toks[1]))] = q(toks[2])
    if not head[3].isdigit():
        raise InputError(f"truncation degree must be a nonnegative integer, got {head[3]!r}")
    return StableFn.from_entries(X, int(head[3]), Y, entries)


def _vec(v) -> str:
    return " ".join(fmt(x) for x in v)


# ------------------------------------------------------------------ verbs


def cmd_dual(a, out):
    X = load_pcs(a.pcs)
    out.append(format_pcs(X.dual()).rstrip("\n"))


def cmd_closure(a, out):
    lines = _read(a.polytope).splitlines()
    head = next((i for i, ln in enumerate(lines) if ln.strip() and not ln.strip().startswith("#")), 0)
    if lines and lines[head].strip().split()[:1] == ["pcs"]:
        lines = lines[head + 1 :]
    P = pt.parse_polytope("\n".join(lines))
    gens = P.vrep if P.vrep is not None else pt.convert(P).vrep
    out.append(format_pcs(biorth_closure(P.web, gens)).rstrip("\n"))


def cmd_norm(a, out):
    if a.pcs is None:
        t = load_matrix(a.file)
        out.append(fmt(morph_norm(t)))
        return
    X = load_pcs(a.pcs)
    out.append(fmt(X.norm(load_vector(a.file, X))))


def cmd_tensor(a, out):
    out.append(format_pcs(tensor(load_pcs(a.left), load_pcs(a.right))).rstrip("\n"))


def cmd_limpl(a, out):
    out.append(format_pcs(limpl(load_pcs(a.left), load_pcs(a.right))).rstrip("\n"))


def cmd_with(a, out):
    out.append(format_pcs(with_product([load_pcs(p) for p in a.pcs])).rstrip("\n"))


def cmd_apply(a, out):
    t = load_matrix(a.matrix)
    x = load_vector(a.vector, t.dom)
    out.append(_vec(apply(t, x).vec))


def cmd_compose(a, out):
    s, t = load_matrix(a.first), load_matrix(a.second)
    dom_path = _read(a.first).split()[1]
    cod_path = _read(a.second).split()[2]
    out.append(format_matrix(compose(s, t), dom_path, cod_path).rstrip("\n"))


def cmd_bang(a, out):
    X = load_pcs(a.pcs)
    B = BangPcs(X, a.truncate)
    out.append("web: " + " ".join(label_str(m) for m in B.web))
    if a.point:
        x = elem(X, load_vector(a.point, X))
        out.append("promotion: " + _vec(promote(x, a.truncate).vec))
    if a.refute:
        w = load_vector(a.refute, B)
        r = refute_dual(w, B, a.grid_denominator)
        out.append(f"dual: {r}")
        if r.refuted:
            raise CheckFailed(f"functional is outside the dual ball: {r}")
    else:
        inner = B.inner_ball(a.grid_denominator)
        out.append(f"inner approximation: {len(inner.vrep)} generators at grid {a.grid_denominator}")


def cmd_stable_eval(a, out):
    f = load_stable(a.stable)
    x = elem(f.dom, load_vector(a.vector, f.dom))
    out.append(_vec(eval_stable(f, x).vec))


def cmd_stability(a, out):
    rng = SplitMix64(a.seed)
    rep = SuiteReport("stability-check", seed=a.seed, n=a.n, samples=a.samples, grid_den=a.grid_denominator)
    for k in range(a.samples):
        f = random_stable(rng, one(), rng.between(1, a.truncate), a.grid_denominator)

        def fv(v, f=f):
            return eval_stable(f, elem(f.dom, v), check=False).vec

        tuples = list(_sorted_tuples(f.dom, a.n, a.grid_denominator))
        r = total_monotonicity_check(fv, tuples, ball=f.dom.contains)
        rep.add("random power series is totally monotone", r.ok, f"sample {k} witness={r.witness}")
    _emit_report(rep, a, out)


def cmd_coherence(a, out):
    rep = run_suite("coherence", seed=a.seed, instances=a.instances, max_dim=a.max_dim)
    _emit_report(rep, a, out)


def cmd_stream(a, out):
    r = stream_equalizer_demo(a.alphabet, a.depth, max_size=a.max_leaves)
    rep = SuiteReport("stream", alphabet=a.alphabet, depth=a.depth)
    rep.add("equalizer dimension is n^d", r["dimension"] == r["expected_dimension"],
            f"dimension {r['dimension']} expected {r['expected_dimension']}")
    for i, c in enumerate(r["cases"]):
        rep.add("leaf isomorphism preserves norms", c["ok"],
                f"case {i} mass={fmt(c['mass'])} norm={fmt(c['norm'])} sup={fmt(c['antichain_sup'])}")
    out.append(f"web size {r['web_size']}, equalizer dimension {r['dimension']}")
    _emit_report(rep, a, out)


def cmd_kernel(a, out):
    if a.action == "compose":
        if len(a.files) != 2:
            raise InputError("kernel compose takes two kernel files")
        K, L = (parse_kernel(_read(p)) for p in a.files)
        out.append(format_kernel(kernel_compose(K, L)).rstrip("\n"))
    elif a.action == "from-matrix":
        if len(a.files) != 1:
            raise InputError("kernel from-matrix takes one matrix file")
        out.append(format_kernel(kern_of_lin(load_matrix(a.files[0]))).rstrip("\n"))
    else:
        if len(a.files) != 1:
            raise InputError("kernel to-matrix takes one kernel file")
        K = parse_kernel(_read(a.files[0]))
        t = lin_of_kern(K)
        if a.write_pcs:
            d = Path(a.write_pcs)
            d.mkdir(parents=True, exist_ok=True)
            (d / "dom.pcs").write_text(format_pcs(measure_cone(K.dom)))
            (d / "cod.pcs").write_text(format_pcs(measure_cone(K.cod)))
        out.append(format_matrix(t, "dom.pcs", "cod.pcs").rstrip("\n"))


def cmd_suite(a, out):
    names = list(SUITES) if a.name == "all" else [a.name]
    ok = True
    for n in names:
        kw = {}
        if n in ("closure-oracle", "coherence", "universal", "kernel", "norm-oracle", "exponential", "stability"):
            kw["seed"] = a.seed
        if a.instances is not None and n in ("closure-oracle", "coherence", "universal", "kernel", "norm-oracle"):
            kw["instances"] = a.instances
        if a.max_dim is not None and n in ("closure-oracle", "coherence", "universal", "norm-oracle"):
            kw["max_dim"] = a.max_dim
        if n == "closure-oracle":
            kw["grid_den"] = a.grid_denominator
        if n == "exponential" and a.truncate is not None:
            kw["max_degree"] = a.truncate
        rep = run_suite(n, **kw)
        out.append(rep.render().rstrip("\n"))
        ok = ok and rep.ok
    _write_report(a, out)
    if not ok:
        raise CheckFailed("suite reported failures")


def _emit_report(rep: SuiteReport, a, out):
    out.append(rep.render().rstrip("\n"))
    _write_report(a, out)
    if not rep.ok:
        raise CheckFailed(f"{rep.name} reported failures")


def _write_report(a, out):
    if getattr(a, "report", None):
        Path(a.report).write_text("\n".join(out) + "\n")


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--truncate", type=int, default=None, metavar="D")
    common.add_argument("--grid-denominator", type=int, default=4)
    common.add_argument("--report", metavar="PATH")

    p = argparse.ArgumentParser(prog="pcoh", description="Exact probabilistic coherence space workbench.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("dual", parents=[common], help="polar of a PCS")
    s.add_argument("pcs")
    s.set_defaults(fn=cmd_dual)

    s = sub.add_parser("closure", parents=[common], help="biorthogonal closure of generators")
    s.add_argument("polytope")
    s.set_defaults(fn=cmd_closure)

    s = sub.add_parser("norm", parents=[common], help="norm of a vector in a PCS, or of a matrix")
    s.add_argument("file")
    s.add_argument("pcs", nargs="?")
    s.set_defaults(fn=cmd_norm)

    for verb, fn in (("tensor", cmd_tensor), ("limpl", cmd_limpl)):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("left")
        s.add_argument("right")
        s.set_defaults(fn=fn)

    s = sub.add_parser("with", parents=[common], help="cartesian product")
    s.add_argument("pcs", nargs="+")
    s.set_defaults(fn=cmd_with)

    s = sub.add_parser("apply", parents=[common])
    s.add_argument("matrix")
    s.add_argument("vector")
    s.set_defaults(fn=cmd_apply)

    s = sub.add_parser("compose", parents=[common], help="first then second")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(fn=cmd_compose)

    s = sub.add_parser("bang", parents=[common], help="truncated exponential")
    s.add_argument("pcs")
    s.add_argument("--point", help="vector file to promote")
    s.add_argument("--refute", help="functional to test against the dual ball")
    s.set_defaults(fn=cmd_bang, truncate_default=2)

    s = sub.add_parser("stable-eval", parents=[common])
    s.add_argument("stable")
    s.add_argument("vector")
    s.set_defaults(fn=cmd_stable_eval)

    s = sub.add_parser("stability-check", parents=[common])
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--samples", type=int, default=10)
    s.set_defaults(fn=cmd_stability, truncate_default=3)

    s = sub.add_parser("coherence", parents=[common])
    s.add_argument("--instances", type=int, default=100)
    s.set_defaults(fn=cmd_coherence, max_dim_default=3)

    s = sub.add_parser("stream", parents=[common])
    s.add_argument("--alphabet", type=int, required=True)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--max-leaves", type=int, default=1000)
    s.set_defaults(fn=cmd_stream)

    s = sub.add_parser("kernel", parents=[common])
    s.add_argument("action", choices=["compose", "from-matrix", "to-matrix"])
    s.add_argument("files", nargs="+")
    s.add_argument("--write-pcs", metavar="DIR", help="also write dom.pcs and cod.pcs here")
    s.set_defaults(fn=cmd_kernel)

    s = sub.add_parser("suite", parents=[common])
    s.add_argument("name", choices=list(SUITES) + ["all"])
    s.add_argument("--instances", type=int, default=None)
    s.set_defaults(fn=cmd_suite)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if a.truncate is None and hasattr(a, "truncate_default"):
        a.truncate = a.truncate_default
    if a.max_dim is None and hasattr(a, "max_dim_default"):
        a.max_dim = a.max_dim_default
    out: list[str] = []
    code = 0
    try:
        a.fn(a, out)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=stderr)
        code = 1
    except WebMismatch as exc:
        print(f"web mismatch: {exc}", file=stderr)
        code = 2
    except TruncationError as exc:
        print(f"truncation error: {exc}", file=stderr)
        code = 2
    except (InputError, NotInBall, NotSubstochastic, DegenerateCoordinate, Inconsistent,
            InexactBall, SizeBoundExceeded) as exc:
        print(f"input error: {exc}", file=stderr)
        code = 2
    if out:
        print("\n".join(out), file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
