"""JSON round-tripping for modular data, invariants and nimreps.

Artifacts carry a ``datum`` reference ({"algebra": ..., ...}) from which the modular data is
rebuilt, so a loaded artifact can be handed straight to its verifier.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .cyclotomic import CycMatrix
from .modular_data import ModularDatum, su_datum

__all__ = ["build_datum", "datum_to_json", "datum_from_json", "invariant_to_json", "invariant_from_json",
           "nimrep_to_json", "nimrep_from_json", "dumps", "load_artifact"]


def build_datum(ref: dict, conductor_cap: int | None = None) -> ModularDatum:
    alg = ref["algebra"]
    if alg == "su":
        kw = {} if conductor_cap is None else {"cap": conductor_cap}
        return su_datum(int(ref["n"]), int(ref["level"]), **kw)
    if alg == "double":
        from .doubles import dihedral_datum, zn_datum
        kind, n = parse_group(ref["group"])
        return (zn_datum(n) if kind == "cyclic" else dihedral_datum(n)).datum
    if alg == "torus":
        from .lattice_cft import EvenLattice, discriminant, torus_datum
        return torus_datum(discriminant(EvenLattice.of(ref["gram"])))
    raise ValueError(f"unknown algebra {alg!r}")


def parse_group(tag: str) -> tuple[str, int]:
    """'Z5' -> cyclic of order 5; 'D3' -> the dihedral group of order 4*3 (r, s with s of order 6)."""
    tag = tag.strip()
    kind = {"Z": "cyclic", "D": "dihedral"}.get(tag[:1].upper())
    if kind is None or not tag[1:].isdigit():
        raise ValueError(f"group tag must look like Z5 or D3, got {tag!r}")
    return kind, int(tag[1:])


def _label(x) -> str:
    return str(x)


def datum_to_json(d: ModularDatum, ref: dict | None = None) -> dict:
    return {
        "kind": "modular_datum",
        "datum": ref,
        "name": d.name,
        "primaries": [_label(p) for p in d.primaries],
        "conductor": d.W.N,
        "W": d.W.data.tolist(),
        "s2": int(d.s2),
        "t": [str(x) for x in d.t],
        "conj": list(d.conj),
    }


def datum_from_json(obj: dict) -> ModularDatum:
    W = CycMatrix(int(obj["conductor"]), np.array(obj["W"], dtype=np.int64))
    return ModularDatum(obj["name"], list(obj["primaries"]), W, int(obj["s2"]),
                        tuple(Fraction(x) for x in obj["t"]), tuple(obj["conj"]))


def invariant_to_json(Z, d: ModularDatum, ref: dict, name: str = "") -> dict:
    return {"kind": "modular_invariant", "datum": ref, "name": name,
            "primaries": [_label(p) for p in d.primaries], "Z": np.asarray(Z).astype(int).tolist()}


def invariant_from_json(obj: dict):
    from .invariants import ModularInvariant
    return ModularInvariant(np.array(obj["Z"], dtype=np.int64), obj.get("name", ""))


def nimrep_to_json(N, d: ModularDatum, ref: dict) -> dict:
    return {"kind": "nimrep", "datum": ref, "name": N.name,
            "primaries": [_label(p) for p in d.primaries],
            "boundary": [_label(b) for b in N.boundary], "mats": np.asarray(N.mats).astype(int).tolist()}


def nimrep_from_json(obj: dict):
    from .nimreps import Nimrep
    return Nimrep(list(obj["boundary"]), np.array(obj["mats"], dtype=np.int64), name=obj.get("name", ""))


def _default(o: Any):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o, key=str)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, default=_default) + "\n"


def load_artifact(obj: dict):
    """Rebuild (artifact, datum) from a JSON object produced by the CLI."""
    kind = obj.get("kind")
    if kind == "modular_datum":
        return datum_from_json(obj), None
    d = build_datum(obj["datum"])
    if kind == "modular_invariant":
        return invariant_from_json(obj), d
    if kind == "nimrep":
        return nimrep_from_json(obj), d
    raise ValueError(f"unknown artifact kind {kind!r}")
