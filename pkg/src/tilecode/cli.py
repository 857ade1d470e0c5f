"""Command line: ``tilecode {encode,flow,export,table}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .encoder import EncoderConfig, bits_of, encode_chain, fold_fragment, letter
from .export import flow_to_svg, tetrahedra_to_obj
from .flow import PeakSet, SmoothnessViolation, derivative_code, trace
from .lattice import OrderedSimplex, flat_class
from .pdbio import EmptyInput, MalformedLine, parse_pdb

log = logging.getLogger("tilecode")

EXIT_OK, EXIT_ERROR, EXIT_EMPTY = 0, 1, 2
BLOCK = 10
BLOCKS_PER_ROW = 6
DEFAULT_START_AXES = {3: (1, 2), 4: (3, 4, 1)}


class CliError(Exception):
    def __init__(self, message: str, status: int = EXIT_ERROR):
        super().__init__(message)
        self.status = status


def _blocks(s: str) -> list[str]:
    return [s[i : i + BLOCK] for i in range(0, len(s), BLOCK)]


def format_listing(sequence: str, codes: str) -> str:
    """Sequence row over code row, in blocks of ten."""
    seq_b, code_b = _blocks(sequence), _blocks(codes)
    rows = []
    for i in range(0, len(seq_b), BLOCKS_PER_ROW):
        rows.append(" ".join(seq_b[i : i + BLOCKS_PER_ROW]))
        rows.append(" ".join(code_b[i : i + BLOCKS_PER_ROW]))
        rows.append("")
    return "\n".join(rows[:-1])


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_traces(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    try:
        return parse_pdb(text)
    except (MalformedLine, EmptyInput) as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_encode(args) -> int:
    traces = _read_traces(args.pdb)
    if args.chain is not None:
        traces = [t for t in traces if t.chain_id == args.chain]
    if not traces:
        log.warning("no chain matches %r in %s", args.chain, args.pdb)
        return EXIT_EMPTY
    cfg = EncoderConfig(scale=args.scale)
    encoded = [(t, encode_chain(t, cfg)) for t in traces]
    for _, enc in encoded:
        for w in enc.warnings:
            log.warning(w)
    if args.format == "json":
        doc = {
            "scale": args.scale,
            "chains": [
                {
                    "chain_id": t.chain_id,
                    "sequence": enc.sequence,
                    "codes": enc.codes,
                    "records": [r.as_dict() for r in enc.records],
                    "warnings": enc.warnings,
                }
                for t, enc in encoded
            ],
        }
        text = json.dumps(doc, indent=1) + "\n"
    else:
        parts = []
        for t, enc in encoded:
            parts.append(f"> chain {t.chain_id or '-'} ({len(enc.records)} residues)")
            parts.append(format_listing(enc.sequence, enc.codes))
        text = "\n".join(parts) + "\n"
    _write(text, args.out)
    return EXIT_OK


def parse_start(spec: str | None, peaks: PeakSet) -> OrderedSimplex:
    """``None`` (default start), axes like ``"3 4 1"`` at the first peak, or ``"1,1,0,1[3,4,1]"``."""
    first = peaks.peaks[0]
    if spec is None:
        return OrderedSimplex(first, DEFAULT_START_AXES[peaks.dim])
    if "[" in spec:
        s = OrderedSimplex.parse(spec)
        if s.dim != peaks.dim:
            raise CliError(f"start {spec!r} has dimension {s.dim}, peaks have {peaks.dim}")
        return s
    try:
        axes = tuple(int(t) for t in spec.replace(",", " ").split())
        return OrderedSimplex(first, axes)
    except ValueError as exc:
        raise CliError(f"bad --start {spec!r}: {exc}") from None


def _trace_from_args(args):
    try:
        peaks = PeakSet.parse(Path(args.peaks).read_text(), dim=args.dim)
    except OSError as exc:
        raise CliError(f"cannot read {args.peaks}: {exc}") from None
    except ValueError as exc:
        raise CliError(f"{args.peaks}: {exc}") from None
    start = parse_start(args.start, peaks)
    try:
        return trace(peaks, flat_class(start), max_steps=args.max_steps)
    except SmoothnessViolation as exc:
        raise CliError(f"{exc} (step {exc.step})") from None


def trajectory_document(traj, initial: str = "D") -> dict:
    code = derivative_code(traj, initial)
    return {
        "closed": traj.closed,
        "truncated": traj.truncated,
        "length": len(traj),
        "code": code,
        "steps": [
            {
                "step": i,
                "flat_class": s.flat.key,
                "gradient": s.gradient.letter,
                "derivative": code[i],
                "simplex": str(s.simplex),
                "direction": s.direction.value,
            }
            for i, s in enumerate(traj.steps)
        ],
    }


def cmd_flow(args) -> int:
    traj = _trace_from_args(args)
    doc = trajectory_document(traj, args.initial)
    if args.format == "json":
        text = json.dumps(doc, indent=1) + "\n"
    else:
        lines = [f"{s['step']}\t{s['flat_class']}\t{s['gradient']}\t{s['derivative']}" for s in doc["steps"]]
        status = f"closed, length {doc['length']}" if traj.closed else f"truncated after {doc['length']} steps"
        lines += [status, f"code {doc['code']}"]
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return EXIT_OK


def _read_fragment(args) -> np.ndarray:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    if any(line.startswith("ATOM") for line in text.splitlines()):
        traces = _read_traces(args.input)
        if args.chain is not None:
            traces = [t for t in traces if t.chain_id == args.chain]
        if not traces:
            raise CliError("no matching chain", EXIT_EMPTY)
        tr = traces[0]
        ids = [r.res_id for r in tr.residues]
        if args.residue is None:
            if len(ids) != 5:
                raise CliError("--residue is required unless the chain has exactly five residues")
            centre = 2
        elif args.residue in ids:
            centre = ids.index(args.residue)
        else:
            raise CliError(f"residue {args.residue} not found in chain {tr.chain_id}")
        if centre < 2 or centre + 2 >= len(ids) or any(tr.gaps[centre - 2 : centre + 2]):
            raise CliError(f"residue {ids[centre]} has no unbroken five-residue window")
        return tr.coords[centre - 2 : centre + 3]
    try:
        pts = np.loadtxt(path, ndmin=2)
    except ValueError as exc:
        raise CliError(f"{path}: {exc}") from None
    if pts.shape != (5, 3):
        raise CliError(f"{path}: expected five rows of x y z, got shape {pts.shape}")
    return pts


def cmd_export(args) -> int:
    if args.what == "flow-svg":
        if args.dim != 3:
            raise CliError("flow-svg draws triangle flows; use --dim 3")
        args.peaks = args.input
        text = flow_to_svg(_trace_from_args(args))
    else:
        fold = fold_fragment(_read_fragment(args), EncoderConfig(scale=args.scale))
        names = [f"T{k:+d}" if k else "T0" for k in range(-2, 3)]
        text = f"# 5-tile code {fold.code.bits} ({fold.code.letter}), gradients {fold.code.gradients}\n"
        text += tetrahedra_to_obj(fold.tetrahedra, names)
    _write(text, args.out)
    return EXIT_OK


def cmd_table(args) -> int:
    lines = ["bits\tY\tletter"] + [f"{bits_of(y)}\t{y}\t{letter(bits_of(y))}" for y in range(32)]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tilecode", description="Tetrahedron-flow 5-tile codes of protein backbones.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="5-tile codes of every residue of a PDB file")
    e.add_argument("pdb")
    e.add_argument("--chain")
    e.add_argument("--scale", type=float, default=EncoderConfig.scale)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--out")
    e.set_defaults(func=cmd_encode)

    def flow_args(q, with_dim_default=None):
        q.add_argument("--dim", type=int, choices=(3, 4), required=with_dim_default is None, default=with_dim_default)
        q.add_argument("--start", help="axes at the first peak ('3 4 1') or a simplex ('1,1,0,1[3,4,1]')")
        q.add_argument("--max-steps", type=int, default=1000)

    f = sub.add_parser("flow", help="trace a lattice flow from a peak-set file")
    f.add_argument("peaks")
    flow_args(f)
    f.add_argument("--initial", choices=("U", "D"), default="D")
    f.add_argument("--format", choices=("text", "json"), default="text")
    f.add_argument("--out")
    f.set_defaults(func=cmd_flow)

    x = sub.add_parser("export", help="SVG of a triangle flow or OBJ of a folded fragment")
    x.add_argument("--what", choices=("flow-svg", "fold-obj"), required=True)
    x.add_argument("input", help="peak-set file (flow-svg) or PDB / five-row xyz file (fold-obj)")
    flow_args(x, with_dim_default=3)
    x.add_argument("--chain")
    x.add_argument("--residue", help="centre residue id for fold-obj")
    x.add_argument("--scale", type=float, default=EncoderConfig.scale)
    x.add_argument("--out")
    x.set_defaults(func=cmd_export)

    t = sub.add_parser("table", help="all 32 codes with their values and letters")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if getattr(args, "scale", 1.0) <= 0:
        log.error("--scale must be positive")
        return EXIT_ERROR
    if getattr(args, "max_steps", 1) < 1:
        log.error("--max-steps must be at least 1")
        return EXIT_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        log.error("%s", exc)
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
