"""Command-line entry point: one subcommand per operation, JSON reports.

Exit codes: 0 success, 1 malformed input, 2 precondition violation,
3 search exhausted or numerical conditioning failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConditioningError, PreconditionError, SearchExhaustedError
from .norms import BasisFamily, eval_norm, norm_from_json
from .orlicz import F, constant_block, modular
from .seqcore import BlockStructure, Sampler, SeqVector, to_jsonable

SAMPLED = {"ubc", "absolute", "shift", "equiv", "twisted", "verify", "split-ufdd", "lemma36-check",
           "hermitian"}


class UsageError(Exception):
    """Malformed command line, config or JSON input (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------ input parsing

def _load(text: str):
    """Inline JSON, or ``@path`` / an existing file path holding JSON."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    elif not text.lstrip().startswith(("[", "{", '"')) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from None


def _matrix(obj) -> np.ndarray:
    """Row-major matrix; entries are reals or [re, im] pairs."""
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 3 and arr.shape[-1] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim != 2:
        raise UsageError("expected a matrix (list of rows)")
    return arr


def _matrices(obj) -> list[np.ndarray]:
    return [_matrix(m) for m in obj]


def _complex_list(obj) -> list[complex]:
    out = []
    for z in obj:
        out.append(complex(z[0], z[1]) if isinstance(z, (list, tuple)) else complex(z))
    return out


def _vector(obj) -> SeqVector:
    if isinstance(obj, dict):
        return SeqVector.from_json(obj)
    return SeqVector.from_dense(np.asarray(obj, dtype=float))


def _norm(text: str | None, default="l2"):
    if text is None:
        return norm_from_json(default)
    if text.lstrip().startswith("{") or text.startswith("@"):
        return norm_from_json(_load(text))
    return norm_from_json(text)


def _basis(text: str, norm_text: str | None) -> BasisFamily:
    obj = _load(text)
    if isinstance(obj, dict):
        norm = norm_from_json(obj["norm"]) if "norm" in obj and norm_text is None else _norm(norm_text)
        vecs = obj["vectors"]
    else:
        norm, vecs = _norm(norm_text), obj
    vs = [_vector(v) for v in vecs]
    return BasisFamily.from_vectors(vs, norm)


def _sampler(args) -> Sampler:
    return Sampler(args.seed, count=args.count, strategy=args.strategy)


# ------------------------------------------------------------------ handlers

def cmd_norm(args):
    x = _vector(_load(args.vector))
    norm = _norm(args.norm)
    out = {"norm": eval_norm(x, norm)}
    if args.modular:
        out["modular"] = modular(x, F)
    return out


def cmd_ubc(args):
    from .uncond import EXHAUSTIVE_LIMIT, ubc_estimate

    b = _basis(args.basis, args.norm)
    if args.exhaustive_signs and len(b) > EXHAUSTIVE_LIMIT:
        raise PreconditionError(f"exhaustive signs need at most {EXHAUSTIVE_LIMIT} vectors")
    return ubc_estimate(b, _sampler(args))


def cmd_absolute(args):
    from .uncond import absoluteness_estimate

    return absoluteness_estimate(BlockStructure.from_json(_load(args.blocks)), _norm(args.norm), _sampler(args))


def cmd_hermitian(args):
    from .uncond import hermitian_stress

    return hermitian_stress(BlockStructure.from_json(_load(args.blocks)), _norm(args.norm), _sampler(args))


def cmd_shift(args):
    from .uncond import shift_constant

    return shift_constant(_basis(args.basis, args.norm), _sampler(args))


def cmd_equiv(args):
    from .uncond import equivalence_constant

    return equivalence_constant(_basis(args.basis1, args.norm), _basis(args.basis2, args.norm), _sampler(args))


def cmd_match(args):
    from .uncond import prop26_matching

    return prop26_matching(_matrix(_load(args.matrix)))


def cmd_extract(args):
    from .uncond import extract_block_basis

    bs = BlockStructure.from_json(_load(args.blocks))
    P = _matrix(_load(args.projection)).real
    return extract_block_basis(bs, P, _norm(args.norm) if args.norm else None)


def cmd_jointbasis(args):
    from .uncond import joint_basis

    g2 = _matrices(_load(args.grams2))
    gE = _matrices(_load(args.gramsE))
    return {"bases": joint_basis(None, [g.real for g in g2], [g.real for g in gE])}


def cmd_twisted(args):
    from .sweeps import twisted_growth

    sizes = [int(v) for v in args.sizes.split(",")]
    rows = twisted_growth(sizes, args.f, args.seed, count=args.count, rounds=args.rounds)
    return {"rows": rows, "_csv": (["n", "ubc", "absoluteness", "splitting", "exhaustive_signs"],
                                   [[r.n, r.ubc, r.absoluteness, r.splitting, r.exhaustive_signs]
                                    for r in rows])}


def cmd_split(args):
    from .opalg import cluster_split

    eigs = _complex_list(_load(args.eigs))
    return cluster_split(eigs, args.delta, args.n)


def cmd_eig(args):
    from .opalg import eigenvalues

    return {"eigenvalues": eigenvalues(_matrix(_load(args.matrix)))}


def cmd_triangularize(args):
    from .opalg import algebra_closure, triangularize, upper_residual

    alg = algebra_closure(_matrices(_load(args.generators)))
    U = triangularize(alg)
    return {"basis": U, "algebra_dim": alg.dim,
            "residual": upper_residual(U, alg.trace_zero_basis())}


def cmd_project(args):
    from .opalg import cluster_split, eigenvalues, spectral_projection

    S = _matrix(_load(args.matrix))
    eigs = eigenvalues(S)
    if args.group is not None:
        from .opalg import SpectrumSplit

        split = SpectrumSplit.from_groups(eigs, _load(args.group))
    else:
        if args.delta is None:
            raise UsageError("project needs --delta or --group")
        split = cluster_split(eigs, args.delta, S.shape[0])
    res = spectral_projection(S, split, detail=True)
    return {"P": res.P, "rank": res.rank, "split": split, "polish_sweeps": res.polish_sweeps,
            "idempotency": res.idempotency, "commutator": res.commutator}


def cmd_split_ufdd(args):
    from .opalg import split_uniform_ufdd

    bs = BlockStructure.from_json(_load(args.blocks))
    P = _matrix(_load(args.projection))
    return split_uniform_ufdd(bs, P, args.depth, _sampler(args))


def cmd_lemma36(args):
    from .opalg import algebra_closure, triangular_distance_check

    decomp = _matrices(_load(args.decomp))
    alg = algebra_closure(_matrices(_load(args.algebra)))
    b, bound, M = triangular_distance_check(decomp, alg, _sampler(args), grid=args.grid)
    return {"distance": b, "bound": bound, "M": M, "holds": b >= bound}


def cmd_verify(args):
    from . import verify

    s = _sampler(args)
    if args.lemma == "41":
        return verify.lemma41_check(args.p, s, hunt=args.hunt)
    if args.lemma == "310":
        return verify.lemma310_check(args.p, args.m, s)
    if args.lemma == "42":
        rng = s.rng(42)
        worst, viol = 0.0, []
        for _ in range(s.count):
            k = int(rng.integers(1, 9))
            blocks, at = [], 1
            for _ in range(k):
                m = int(rng.integers(1, 9))
                blocks.append(constant_block(m, at, rng.choice([-1.0, 1.0], size=m)))
                at += m
            r = verify.lemma42_modular_identity(blocks, rng.uniform(-1, 1, size=k))
            worst = min(worst, r.worst_slack)
            viol += r.violators
        return verify.VerifyReport(s.count, worst, viol[:10], verify.TOL, 0, {}, {"lemma": "42"})
    if args.lemma == "24":
        if args.blocks is None:
            raise UsageError("verify --lemma 24 needs --blocks")
        return verify.thm24_sandwich(args.space, BlockStructure.from_json(_load(args.blocks)), s)
    raise UsageError(f"unknown lemma {args.lemma}")


# ------------------------------------------------------------------ parser

def _add_sampling(p, count=256):
    p.add_argument("--seed", type=int, default=None, help="required for sampled operations")
    p.add_argument("--count", type=int, default=count)
    p.add_argument("--strategy", choices=["sphere", "extreme", "grid"], default="sphere")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="banachlab", description="Finite-section Banach space computations.")
    ap.add_argument("--version", action="version", version=f"banachlab {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_, sampled=False, count=256):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=fn)
        p.add_argument("--out", default=None, help="report path (default: stdout)")
        p.add_argument("--csv", default=None, help="CSV path for sweeps")
        if sampled:
            _add_sampling(p, count)
        return p

    p = add("norm", cmd_norm, "evaluate a norm")
    p.add_argument("--vector", required=True)
    p.add_argument("--norm", default=None)
    p.add_argument("--modular", action="store_true")

    p = add("ubc", cmd_ubc, "unconditional basis constant", True)
    p.add_argument("--basis", required=True)
    p.add_argument("--norm", default=None)
    p.add_argument("--exhaustive-signs", action="store_true")

    for name, fn, text in [("absolute", cmd_absolute, "absoluteness constant of a block structure"),
                           ("hermitian", cmd_hermitian, "Hermitian block-multiplier constant")]:
        p = add(name, fn, text, True)
        p.add_argument("--blocks", required=True)
        p.add_argument("--norm", default=None)

    p = add("shift", cmd_shift, "shift constant", True)
    p.add_argument("--basis", required=True)
    p.add_argument("--norm", default=None)

    p = add("equiv", cmd_equiv, "equivalence constant of two families", True)
    p.add_argument("--basis1", required=True)
    p.add_argument("--basis2", required=True)
    p.add_argument("--norm", default=None)

    p = add("match", cmd_match, "max-product permutation")
    p.add_argument("--matrix", required=True)

    p = add("extract", cmd_extract, "block basis from a projection")
    p.add_argument("--blocks", required=True)
    p.add_argument("--projection", required=True)
    p.add_argument("--norm", default=None)

    p = add("jointbasis", cmd_jointbasis, "simultaneous diagonalisation per block")
    p.add_argument("--grams2", required=True)
    p.add_argument("--gramsE", required=True)

    p = add("twisted", cmd_twisted, "growth sweep on twisted-sum sections", True, count=64)
    p.add_argument("--sizes", default="4,16,64,256")
    p.add_argument("--f", default="identity", choices=["identity", "zero", "clamp"])
    p.add_argument("--rounds", type=int, default=50)

    p = add("split", cmd_split, "cluster eigenvalues into two groups")
    p.add_argument("--eigs", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, default=None)

    p = add("eig", cmd_eig, "eigenvalues")
    p.add_argument("--matrix", required=True)

    p = add("triangularize", cmd_triangularize, "common triangularizing basis")
    p.add_argument("--generators", required=True)

    p = add("project", cmd_project, "spectral projection as a polynomial in S")
    p.add_argument("--matrix", required=True)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--group", default=None, help="JSON list of eigenvalue indices")

    p = add("split-ufdd", cmd_split_ufdd, "per-block projections of a uniform decomposition", True, count=64)
    p.add_argument("--blocks", required=True)
    p.add_argument("--projection", required=True)
    p.add_argument("--depth", type=int, default=3)

    p = add("lemma36-check", cmd_lemma36, "distance of a decomposition to a triangular algebra", True,
            count=1024)
    p.add_argument("--decomp", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--grid", type=int, default=None)

    p = add("verify", cmd_verify, "sampled inequality verifiers", True, count=10_000)
    p.add_argument("--lemma", required=True, choices=["41", "310", "42", "24"])
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--hunt", action="store_true")
    p.add_argument("--space", default="l2", choices=["l1", "l2", "max"])
    p.add_argument("--blocks", default=None)

    p = sub.add_parser("run", help="run an experiment config file")
    p.add_argument("config")
    p.set_defaults(handler=None)
    return ap


# ------------------------------------------------------------------ experiment configs

CONFIG_KEYS = {"command", "params", "seed", "out"}


def config_to_argv(cfg: dict) -> list[str]:
    """Translate an experiment config into subcommand arguments."""
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if "command" not in cfg:
        raise UsageError("config needs a 'command'")
    argv = [str(cfg["command"])]
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise UsageError("'params' must be an object")
    for key, val in params.items():
        flag = "--" + key.replace("_", "-")
        if val is True:
            argv.append(flag)
        elif val is False or val is None:
            continue
        else:
            argv += [flag, val if isinstance(val, str) else json.dumps(val)]
    if "seed" in cfg:
        argv += ["--seed", str(cfg["seed"])]
    if "out" in cfg:
        argv += ["--out", str(cfg["out"])]
    return argv


def _report(args, argv, result) -> dict:
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("handler", "out", "csv")}
    data = to_jsonable(result)
    if isinstance(data, dict):
        data.pop("_csv", None)
    return {"tool": "banachlab", "version": __version__, "command": args.command,
            "argv": argv, "inputs": inputs, "seed": getattr(args, "seed", None),
            "result": data, "timestamp": datetime.now(timezone.utc).isoformat()}


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in r])


def _dispatch(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("a subcommand is required")
    if args.command == "run":
        cfg = _load(args.config if args.config.startswith("@") or not Path(args.config).is_file()
                    else "@" + args.config)
        return _dispatch(config_to_argv(cfg))
    if args.command in SAMPLED and args.seed is None:
        raise UsageError(f"{args.command} is sampled and needs --seed")
    result = args.handler(args)
    csv_data = result.pop("_csv", None) if isinstance(result, dict) else None
    report = _report(args, argv, result)
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    if csv_data is not None:
        path = Path(args.csv) if args.csv else (Path(args.out).with_suffix(".csv") if args.out else None)
        if path is not None:
            _write_csv(path, *csv_data)
        else:
            _write_csv(Path("/dev/stderr"), *csv_data)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return _dispatch(argv)
    except UsageError as exc:
        print(f"banachlab: error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"banachlab: precondition violated: {exc}", file=sys.stderr)
        return 2
    except (SearchExhaustedError, ConditioningError) as exc:
        print(f"banachlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (KeyError, TypeError, ValueError) as exc:
        print(f"banachlab: error: malformed input ({exc})", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
