"""Volume reports: a plain record that renders as text or JSON."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .dilog import ComplexVolume, Flattening, complex_volume
from .torus import TorusPattern, torus_complex_volume, torus_volume
from .twobridge import (
    BridgePattern,
    bridge_complex_volume,
    bridge_volume,
    double_twist_tetrahedra,
)

__all__ = ["TetraRecord", "VolumeReport", "torus_report", "bridge_report", "num"]

SIG_DIGITS = 12


def num(x: float) -> float:
    """Round to 12 significant digits so that printed and parsed values agree."""
    x = float(x)
    if not math.isfinite(x):
        return x
    r = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if r == 0 else r


@dataclass
class TetraRecord:
    k: int
    flip: str
    slot: int | None
    z: list[float]
    p: int
    q: int
    sign: int

    @classmethod
    def build(cls, k: int, flip: str, slot: int | None, f: Flattening, sign: int) -> "TetraRecord":
        return cls(k, flip, slot, [num(f.z.real), num(f.z.imag)], f.p, f.q, sign)


@dataclass
class VolumeReport:
    """Everything printed for one computation.

    The JSON form has exactly the keys ``input``, ``tetrahedra``, ``volume``,
    ``cs``, ``cs_modulus``, ``residuals`` and ``solver``.
    """

    input: dict[str, Any]
    tetrahedra: list[TetraRecord]
    volume: float
    cs: float
    cs_modulus: str
    residuals: dict[str, float]
    solver: dict[str, Any]
    note: str = field(default="", compare=False)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("note")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "VolumeReport":
        d = json.loads(text)
        d["tetrahedra"] = [TetraRecord(**t) for t in d["tetrahedra"]]
        return cls(**d)

    def to_text(self) -> str:
        lines = [self._title(), ""]
        lines.append(f"{'k':>3} {'flip':>4} {'slot':>4}  {'z':<40} {'p':>3} {'q':>3} {'sign':>4}")
        for t in self.tetrahedra:
            z = f"{t.z[0]:.12g} {'-' if t.z[1] < 0 else '+'} {abs(t.z[1]):.12g}i"
            slot = "-" if t.slot is None else str(t.slot)
            lines.append(f"{t.k:>3} {t.flip:>4} {slot:>4}  {z:<40} {t.p:>3} {t.q:>3} {t.sign:>4}")
        lines.append("")
        lines.append("residuals: " + ", ".join(f"{k} {v:.1e}" for k, v in self.residuals.items()))
        stats = {k: v for k, v in self.solver.items() if k != "warnings"}
        lines.append("solver: " + ", ".join(f"{k} {v}" for k, v in stats.items()))
        for w in self.solver.get("warnings", []):
            lines.append(f"warning: {w}")
        lines.append("")
        suffix = f", {self.note}" if self.note else ""
        lines.append(f"Vol = {self.volume:.12g}  CS = {self.cs:.12g} (mod {self.cs_modulus}{suffix})")
        return "\n".join(lines)

    def _title(self) -> str:
        inp = self.input
        if inp["family"] == "torus":
            return f"Once-punctured torus bundle, monodromy {inp['word']}"
        cf = ",".join(str(a) for a in inp["cf"])
        return f"Two-bridge link K({inp['q']}/{inp['p']}), continued fraction [{cf}], flips {inp['word']}"


def _residuals(res: dict[str, float]) -> dict[str, float]:
    return {k: num(v) for k, v in res.items()}


def _solver(stats: dict[str, Any], warnings: Sequence[str], seed: int) -> dict[str, Any]:
    out = {k: v for k, v in stats.items()}
    out["seed"] = seed
    out["warnings"] = list(warnings)
    return out


def _finish(cv: ComplexVolume, volume: float) -> tuple[float, float, str]:
    return num(volume), num(cv.cs), cv.modulus


def torus_report(pat: TorusPattern, unoriented: bool = False, seed: int = 0) -> VolumeReport:
    """Report for a solved torus bundle."""
    word = pat.word.letters
    if unoriented:
        cv = torus_complex_volume(pat, "unoriented")
        flats, signs, note = pat.alt_flats, [1] * pat.c, "unoriented"
    else:
        cv = torus_complex_volume(pat, "oriented")
        flats, signs, note = pat.flats, pat.signs, "oriented"
    tets = [TetraRecord.build(k + 1, ch, None, f, s) for k, (ch, f, s) in enumerate(zip(word, flats, signs))]
    vol, cs, modulus = _finish(cv, torus_volume(pat))
    return VolumeReport(
        input={"family": "torus", "word": word},
        tetrahedra=tets,
        volume=vol,
        cs=cs,
        cs_modulus=modulus,
        residuals=_residuals(pat.residuals),
        solver=_solver(pat.stats, pat.warnings, seed),
        note=note,
    )


def bridge_report(pat: BridgePattern, oriented: bool, seed: int = 0) -> VolumeReport:
    """Report for a solved two-bridge link.

    With ``oriented=True`` (only valid for continued fractions ``[a+1, 2]``)
    the tetrahedra carry orientation signs and CS is defined modulo
    ``pi^2``; otherwise all signs are ``+1`` and CS is modulo ``pi^2/6``.
    """
    spec = pat.spec
    if oriented:
        tets_o = double_twist_tetrahedra(pat)
        cv = complex_volume([t.flat for t in tets_o], [t.sign for t in tets_o], "pi^2")
        tets = [TetraRecord.build(t.k, spec.word[t.k - 1], t.slot, t.flat, t.sign) for t in tets_o]
        note, path = "double-twist oriented", "double_twist_oriented"
    else:
        cv = bridge_complex_volume(pat)
        tets = [
            TetraRecord.build(k + 1, ch, i + 1, f, 1)
            for k, (ch, pair) in enumerate(zip(spec.word, pat.flats))
            for i, f in enumerate(pair)
        ]
        note, path = "", "general"
    vol, cs, modulus = _finish(cv, bridge_volume(pat))
    stats = dict(pat.stats)
    stats["eps_case"] = pat.eps_case
    return VolumeReport(
        input={
            "family": "two_bridge",
            "p": spec.p,
            "q": spec.q,
            "cf": list(spec.cf),
            "word": spec.word,
            "case": spec.case,
            "path": path,
        },
        tetrahedra=tets,
        volume=vol,
        cs=cs,
        cs_modulus=modulus,
        residuals=_residuals(pat.residuals),
        solver=_solver(stats, pat.warnings, seed),
        note=note,
    )
