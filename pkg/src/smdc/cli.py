"""Command line front end: ``smdc encode | decode | verify | region``.

Failures print one JSON object ``{"error": ..., "message": ...}`` on stderr
and exit with status 2; ``verify`` exits 1 when some audit row fails.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import regions
from .errors import InsufficientShares, SMDCError, ShapeError
from .io import (
    bundle_to_files,
    digits_per_octet,
    layers_from_file,
    load_config,
    octets_to_symbols,
    pad_to_blocks,
    read_share,
    scheme_from_share,
    symbols_to_octets,
    write_share,
)
from .schemes import KeyMaterial
from .verifier import full_audit


def _sources_from_args(items, scheme):
    """Map ``--in`` entries (``alpha=path`` or bare paths in level order) to levels."""
    levels = scheme.source_levels()
    out = {}
    bare = [it for it in items if "=" not in it]
    for it in items:
        if "=" in it:
            a, path = it.split("=", 1)
            out[int(a)] = Path(path)
    free = [a for a in levels if a not in out]
    if len(bare) > len(free):
        raise ShapeError(f"{len(bare)} unlabelled inputs for levels {free}")
    out.update(zip(free, (Path(p) for p in bare)))
    extra = set(out) - set(levels)
    if extra:
        raise ShapeError(f"levels {sorted(extra)} carry no symbols in this instance")
    return out


def cmd_encode(args) -> int:
    cfg = load_config(args.config)
    scheme = cfg.build()
    q = scheme.q
    paths = _sources_from_args(args.inputs, scheme)
    data = {a: p.read_bytes() for a, p in paths.items()}
    syms = {a: octets_to_symbols(d, q) for a, d in data.items()}
    n_blocks = max([math.ceil(syms[a].size / scheme.profile.length(a)) for a in syms] + [1])
    X = {a: pad_to_blocks(syms.get(a, np.zeros(0, np.int64)), scheme.profile.length(a), n_blocks)
         for a in scheme.source_levels()}
    seed = cfg.seed if args.seed is None else args.seed
    key = KeyMaterial.generate(scheme.key_length, q, seed, batch=(n_blocks,))
    bundle = scheme.encode(X, key)
    octets = [len(data.get(a, b"")) for a in range(1, scheme.L + 1)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for sf in bundle_to_files(bundle, scheme, n_blocks, octets):
        path = out / f"share_{sf.index}.smdc"
        write_share(path, sf)
        written.append(str(path))
    print(json.dumps({"shares": written, "blocks": n_blocks, "key_symbols": scheme.key_length * n_blocks}))
    return 0


def cmd_decode(args) -> int:
    files = [read_share(p) for p in args.shares]
    first = files[0]
    for sf in files[1:]:
        same = (sf.q, sf.L, sf.s, sf.n_blocks, sf.descriptor, sf.octets) == \
               (first.q, first.L, first.s, first.n_blocks, first.descriptor, first.octets)
        if not same:
            raise ShapeError(f"share {sf.index} belongs to a different encoding")
    idx = [sf.index for sf in files]
    if len(set(idx)) != len(idx):
        raise ShapeError(f"duplicate encoder indices {sorted(idx)}")
    scheme = scheme_from_share(first)
    if len(files) < scheme.profile.first_level():
        raise InsufficientShares(
            f"{len(files)} share(s) reconstruct nothing; need at least {scheme.profile.first_level()}")
    shares = {sf.index: layers_from_file(sf, scheme) for sf in files}
    result = scheme.decode(shares)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for a, x in result.items():
        if scheme.profile.length(a) == 0:
            continue
        path = out / f"source_{a}.bin"
        path.write_bytes(symbols_to_octets(x, scheme.q, first.octets[a - 1]))
        written.append(str(path))
    print(json.dumps({"sources": written, "levels": sorted(result)}))
    return 0


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    report = full_audit(cfg.build(), args.mode)
    doc = report.to_dict()
    text = json.dumps(doc, indent=2)
    if args.report:
        Path(args.report).write_text(text)
    print(text)
    return 0 if report.passed else 1


def _values(text: str) -> list[Fraction]:
    return [Fraction(v.strip()) for v in text.split(",") if v.strip()]


def _frac(v: Fraction) -> list[int]:
    return [v.numerator, v.denominator]


def cmd_region(args) -> int:
    H = _values(args.H)
    problem = args.problem
    if problem == "sumrate":
        L = args.L or len(H)
        s = args.s or 1
        lo = regions.min_sum_rate(L, s, H, args.variant)
        hi = regions.sup_sum_rate(L, s, H, args.variant)
        doc = {"L": L, "s": s, "variant": args.variant, "min_sum_rate": _frac(lo),
               "superposition_sum_rate": _frac(hi), "gap": _frac(hi - lo)}
    else:
        if problem == "rss":
            if len(H) != 1 or not args.L or not args.k:
                raise ShapeError("rss needs --L, --k and a single --H value")
            reg = regions.region_rss(args.L, args.k, H[0])
        elif problem == "sup1":
            reg = regions.region_sup1(len(H), H)
        elif problem == "mss32":
            if len(H) != 2:
                raise ShapeError("mss32 takes --H H2,H3")
            reg = regions.region_mss32(*H)
        else:
            if len(H) != 3:
                raise ShapeError("smdc32 takes --H H1,H2,H3")
            reg = regions.region_smdc32(*H)
        doc = regions.to_dict(reg, with_corners=args.corners and reg.L == 3)
    if args.json:
        print(json.dumps(doc))
    else:
        print(_render(doc))
    return 0


def _render(doc: dict) -> str:
    def f(p):
        return str(Fraction(*p))

    if "inequalities" not in doc:
        return "\n".join(f"{k}: {f(v) if isinstance(v, list) else v}" for k, v in doc.items())
    lines = [f"{doc['label']} (L={doc['L']})"]
    for row in doc["inequalities"]:
        lhs = " + ".join(("" if a == [1, 1] else f"{f(a)}*") + f"R{i + 1}"
                         for i, a in enumerate(row["a"]) if a[0])
        lines.append(f"  {lhs} >= {f(row['b'])}")
    for c in doc.get("corners", []):
        lines.append("  corner (" + ", ".join(f(v) for v in c) + ")")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smdc", description="Sliding secure SMDC and multilevel secret sharing")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="encode source files into L share files")
    e.add_argument("--config", required=True)
    e.add_argument("--in", dest="inputs", nargs="+", required=True,
                   help="source files, as LEVEL=PATH or bare paths in level order")
    e.add_argument("--out", required=True)
    e.add_argument("--seed", type=int, default=None)
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="reconstruct sources from share files")
    d.add_argument("--shares", nargs="+", required=True)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="audit every decodability and secrecy constraint")
    v.add_argument("--config", required=True)
    v.add_argument("--mode", choices=("exhaustive", "rank", "both"), default="both")
    v.add_argument("--report", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("region", help="print a rate region or sum-rate bounds")
    r.add_argument("--problem", choices=("rss", "sup1", "mss32", "smdc32", "sumrate"), required=True)
    r.add_argument("--H", required=True, help="comma separated entropies, fractions allowed")
    r.add_argument("--L", type=int)
    r.add_argument("--k", type=int)
    r.add_argument("--s", type=int)
    r.add_argument("--variant", choices=("mss", "sliding"), default="mss")
    r.add_argument("--corners", action="store_true")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_region)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SMDCError, OSError, ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
