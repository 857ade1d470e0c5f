"""Fixed-column PDB reader producing C-alpha traces, one per chain."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

THREE_TO_ONE = {
    "ALA": "A", "ARG": "R", "ASN": "N", "ASP": "D", "CYS": "C",
    "GLN": "Q", "GLU": "E", "GLY": "G", "HIS": "H", "ILE": "I",
    "LEU": "L", "LYS": "K", "MET": "M", "PHE": "F", "PRO": "P",
    "SER": "S", "THR": "T", "TRP": "W", "TYR": "Y", "VAL": "V",
}  # fmt: skip

CA_DISTANCE_RANGE = (2.0, 4.5)


class MalformedLine(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")


class EmptyInput(ValueError):
    pass


def three_to_one(res_name: str) -> str:
    return THREE_TO_ONE.get(res_name.strip().upper(), "X")


@dataclass(frozen=True)
class AtomRecord:
    serial: int
    atom_name: str
    alt_loc: str
    res_name: str
    chain_id: str
    res_seq: int
    i_code: str
    x: float
    y: float
    z: float

    @property
    def xyz(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def to_line(self) -> str:
        """Serialize as a fixed-column ATOM record."""
        name = self.atom_name if len(self.atom_name) >= 4 else f" {self.atom_name:<3}"
        return (
            f"ATOM  {self.serial:5d} {name:4s}{self.alt_loc or ' ':1s}{self.res_name:>3s} "
            f"{self.chain_id or ' ':1s}{self.res_seq:4d}{self.i_code or ' ':1s}   "
            f"{self.x:8.3f}{self.y:8.3f}{self.z:8.3f}"
        )


def parse_atom_line(line: str, lineno: int = 0) -> AtomRecord:
    line = line.rstrip("\n")
    if len(line) < 54:
        raise MalformedLine(lineno, line, "ATOM record shorter than 54 columns")
    try:
        rec = AtomRecord(
            serial=int(line[6:11]),
            atom_name=line[12:16].strip(),
            alt_loc=line[16].strip(),
            res_name=line[17:20].strip(),
            chain_id=line[21].strip(),
            res_seq=int(line[22:26]),
            i_code=line[26].strip(),
            x=float(line[30:38]),
            y=float(line[38:46]),
            z=float(line[46:54]),
        )
    except ValueError as exc:
        raise MalformedLine(lineno, line, str(exc)) from None
    if not rec.atom_name:
        raise MalformedLine(lineno, line, "empty atom name")
    if not np.all(np.isfinite(rec.xyz)):
        raise MalformedLine(lineno, line, "non-finite coordinate")
    return rec


@dataclass(frozen=True)
class Residue:
    res_seq: int
    i_code: str
    res_name: str
    ca: np.ndarray = field(compare=False)

    @property
    def res_id(self) -> str:
        return f"{self.res_seq}{self.i_code}"

    @property
    def one_letter(self) -> str:
        return three_to_one(self.res_name)


@dataclass
class CaTrace:
    chain_id: str
    residues: list[Residue]
    gaps: list[bool]  # gaps[i]: break between residues i and i + 1

    @property
    def sequence(self) -> str:
        return "".join(r.one_letter for r in self.residues)

    @property
    def coords(self) -> np.ndarray:
        return np.array([r.ca for r in self.residues]).reshape(-1, 3)

    def segments(self) -> list[tuple[int, int]]:
        """Maximal unbroken runs as half-open index ranges."""
        out, start = [], 0
        for i, g in enumerate(self.gaps):
            if g:
                out.append((start, i + 1))
                start = i + 1
        if self.residues:
            out.append((start, len(self.residues)))
        return out


def is_gap(a: Residue, b: Residue) -> bool:
    consecutive = b.res_seq == a.res_seq + 1 or (b.res_seq == a.res_seq and b.i_code != a.i_code)
    d = float(np.linalg.norm(b.ca - a.ca))
    lo, hi = CA_DISTANCE_RANGE
    return not consecutive or not lo <= d <= hi


def parse_pdb(text: str) -> list[CaTrace]:
    """C-alpha traces of the first model, in order of first appearance of each chain."""
    if not text.strip():
        raise EmptyInput("no PDB records")
    chains: dict[str, list[Residue]] = {}
    seen: set[tuple[str, int, str]] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("ENDMDL"):
            break
        if not line.startswith("ATOM"):
            continue
        rec = parse_atom_line(line, lineno)
        if rec.atom_name != "CA" or rec.alt_loc not in ("", "A"):
            continue
        key = (rec.chain_id, rec.res_seq, rec.i_code)
        if key in seen:
            continue
        seen.add(key)
        chains.setdefault(rec.chain_id, []).append(Residue(rec.res_seq, rec.i_code, rec.res_name, rec.xyz))
    return [
        CaTrace(cid, res, [is_gap(a, b) for a, b in zip(res, res[1:])])
        for cid, res in chains.items()
    ]


def read_pdb(path: str | Path) -> list[CaTrace]:
    return parse_pdb(Path(path).read_text())


def format_trace(trace: CaTrace, start_serial: int = 1) -> str:
    """CA-only PDB text for a trace; parse_pdb reads it back unchanged."""
    lines = []
    for k, r in enumerate(trace.residues):
        x, y, z = (float(c) for c in r.ca)
        rec = AtomRecord(start_serial + k, "CA", "", r.res_name, trace.chain_id, r.res_seq, r.i_code, x, y, z)
        lines.append(rec.to_line())
    return "\n".join(lines) + "\n"
