"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 cap exceeded, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import ConfigError, RunConfig
from .cyclotomic import ConductorOverflow
from .invariants import SearchCapExceeded
from .serialize import (build_datum, datum_to_json, dumps, invariant_to_json, load_artifact,
                        nimrep_to_json, parse_group)

EXIT_OK, EXIT_VERIFY, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 64
FIXTURES = Path(__file__).parent / "fixtures"


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# helpers

def _ref(args) -> dict:
    alg = args.algebra
    if alg == "su":
        if args.n is None or args.level is None:
            raise UsageError("--algebra su needs --n and --level")
        return {"algebra": "su", "n": args.n, "level": args.level}
    if alg == "double":
        if not args.group:
            raise UsageError("--algebra double needs --group (e.g. Z3, D2)")
        parse_group(args.group)
        return {"algebra": "double", "group": args.group}
    if alg == "torus":
        return {"algebra": "torus", "gram": _gram(args)}
    raise UsageError(f"unknown algebra {alg!r}")


def _gram(args) -> list:
    if not args.gram:
        raise UsageError("--gram is required, e.g. --gram '[[2]]'")
    try:
        g = json.loads(args.gram)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--gram is not JSON: {exc}") from None
    if isinstance(g, int):
        g = [[g]]
    return g


def _lattice(args):
    from .lattice_cft import EvenLattice, LatticeError
    try:
        return EvenLattice.of(_gram(args))
    except LatticeError as exc:
        raise UsageError(str(exc)) from None


def su2_ade_name(d, Z) -> str | None:
    """Name an SU(2) invariant by the A-D-E diagram whose exponents are its diagonal."""
    from .nimreps import ade_nimrep, exponents
    if d.lie is None or d.lie[0] != 2:
        return None
    k = d.lie[1]
    h = k + 2
    cands = [f"A{h - 1}"]
    if k % 2 == 0 and k >= 4:
        cands.append(f"D{k // 2 + 2}")
    cands += {10: ["E6"], 16: ["E7"], 28: ["E8"]}.get(k, [])
    diag = np.diag(np.asarray(Z))
    for c in cands:
        if np.array_equal(exponents(d, ade_nimrep(c, k)), diag):
            return c
    return None


def _nimrep(args, d, cfg: RunConfig):
    from . import nimreps as nm
    kind = args.kind
    if kind in ("verlinde", "a"):
        return nm.verlinde_nimrep(d)
    if d.lie is None:
        raise UsageError(f"nimrep {kind} needs --algebra su")
    n, k = d.lie
    if kind in ("d", "e6", "e7", "e8"):
        if n != 2:
            raise UsageError("A-D-E nimreps are SU(2) only")
        diag = f"D{k // 2 + 2}" if kind == "d" else kind.upper()
        try:
            return nm.ade_nimrep(diag, k)
        except nm.NimrepError as exc:
            raise UsageError(str(exc)) from None
    if kind == "theorem4":
        if args.d is None or not nm.case_a(n, k, args.d):
            raise UsageError("theorem4 needs --d with (n, k, d) in Case A")
        return nm.theorem4_nimrep(n, k, args.d, datum=d)
    if kind == "so3":
        from .repring import so3_nimrep
        return so3_nimrep(k, d)[1]
    if kind == "su3cc":
        from .repring import su3_cc_nimrep
        if n != 3:
            raise UsageError("su3cc needs --n 3")
        return su3_cc_nimrep(k, d)[1]
    raise UsageError(f"unknown nimrep {kind!r}")


# ---------------------------------------------------------------------------
# commands

def cmd_datum(args, cfg):
    from .modular_data import check_modular
    ref = _ref(args)
    d = build_datum(ref, cfg.conductor_cap)
    rep = check_modular(d)
    out = datum_to_json(d, ref)
    out["check_modular"] = bool(rep.ok)
    if not rep.ok:
        raise VerificationFailed(out)
    return out


def cmd_invariants(args, cfg):
    from .invariants import enumerate_invariants, verify_invariant
    if args.action == "verify":
        return _verify_file(args)
    ref = _ref(args)
    d = build_datum(ref, cfg.conductor_cap)
    bounds = None
    if args.algebra == "torus":
        bounds = np.ones((d.size, d.size), dtype=np.int64)
    invs = enumerate_invariants(d, bounds=bounds, cap_size=cfg.cap("invariants"),
                                node_cap=cfg.cap("invariant_nodes"))
    items = []
    for inv in invs:
        ok = verify_invariant(d, inv.Z).ok
        it = invariant_to_json(inv.Z, d, ref, su2_ade_name(d, inv.Z) or inv.name)
        it["verified"] = bool(ok)
        items.append(it)
    if args.format == "csv":
        return _csv([it["Z"] for it in items], d)
    out = {"kind": "invariant_list", "datum": ref, "primaries": [str(p) for p in d.primaries],
           "count": len(items), "invariants": items}
    if not all(it["verified"] for it in items):
        raise VerificationFailed(out)
    return out


def _csv(mats, d) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for m, Z in enumerate(mats):
        w.writerow([f"# invariant {m}"] + [str(p) for p in d.primaries])
        for p, row in zip(d.primaries, Z):
            w.writerow([str(p)] + list(row))
    return buf.getvalue()


def _verify_file(args):
    from .invariants import verify_invariant
    from .modular_data import check_modular
    from .nimreps import verify_nimrep
    if not args.file:
        raise UsageError("verify needs --file")
    obj = json.loads(Path(args.file).read_text())
    art, d = load_artifact(obj)
    kind = obj["kind"]
    if kind == "modular_datum":
        ok = check_modular(art).ok
    elif kind == "modular_invariant":
        ok = verify_invariant(d, art.Z).ok
    else:
        ok = verify_nimrep(d, art).ok
    out = {"kind": kind, "verified": bool(ok)}
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_nimrep(args, cfg):
    from .nimreps import exponents, to_dot, verify_nimrep
    if args.kind == "verify":
        return _verify_file(args)
    args.algebra = args.algebra or "su"
    ref = _ref(args)
    d = build_datum(ref, cfg.conductor_cap)
    N = _nimrep(args, d, cfg)
    ok = verify_nimrep(d, N).ok
    out = nimrep_to_json(N, d, ref)
    out["verified"] = bool(ok)
    out["exponents"] = exponents(d, N).tolist()
    if args.dot:
        lam = d.fundamental_indices()[0] if d.lie else 0
        Path(args.dot).write_text(to_dot(N, lam))
    if args.format == "dot":
        lam = d.fundamental_indices()[0] if d.lie else 0
        return to_dot(N, lam)
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_charges(args, cfg):
    from .charges import charge_group
    from .nimreps import verify_nimrep
    args.algebra = args.algebra or "su"
    ref = _ref(args)
    d = build_datum(ref, cfg.conductor_cap)
    args.kind = args.nimrep
    N = _nimrep(args, d, cfg)
    if not verify_nimrep(d, N).ok:
        raise VerificationFailed({"nimrep": N.name, "verified": False})
    res = charge_group(d, N)
    return {"kind": "charge_group", "datum": ref, "nimrep": N.name,
            "invariant_factors": list(res.group.invariant_factors),
            "generators": [list(map(int, g)) for g in res.generators]}


def cmd_double(args, cfg):
    from . import doubles as db
    if args.action == "datum":
        args.algebra = "double"
        return cmd_datum(args, cfg)
    if args.action == "zp":
        rows = []
        for c in db.zp_classify(_need(args.p, "--p")):
            rows.append({"name": c.record.name, "columns": c.record.columns(), "derived": c.derived,
                         "matches_table": c.matches_table, "alpha_ok": c.alpha_ok,
                         "lagrangian_ok": c.lagrangian_ok, "Z": c.invariant.Z.tolist()})
        out = {"kind": "zp_table", "p": args.p, "count": len(rows), "rows": rows}
        if not all(r["alpha_ok"] and r["lagrangian_ok"] for r in rows):
            raise VerificationFailed(out)
        return out
    if args.action == "zpn":
        c = db.zpn_census(_need(args.p, "--p"), _need(args.nu, "--nu"), enumerate_all=args.enumerate,
                          cap_size=cfg.cap("double"))
        return {"kind": "zpn_census", **c.as_dict()}
    if args.action == "dihedral":
        n = _need(args.n, "--n")
        fd = db.dihedral_datum(n)
        rep = db.dihedral_parity_report(fd, corrected=args.corrected)
        return {"kind": "dihedral_parity", "n": n, "corrected": args.corrected, "ok": rep.ok,
                "currents_found": rep.currents_found,
                "mismatches": [m.as_dict() if hasattr(m, "as_dict") else list(m) for m in rep.mismatches],
                "fixed_point_mismatches": [m.as_dict() for m in rep.fixed_point_mismatches]}
    if args.action == "so":
        from .invariants import verify_invariant
        n = _need(args.n, "--n")
        fd = db.dihedral_datum(n)
        th = db.dihedral_so_theory(n, fd)
        target = db.dihedral_sc_invariant(n, 1, 0, 0, fd).Z
        return {"kind": "dihedral_so", "n": n, "boundary": th.nimrep.size,
                "full_system": len(th.full_system),
                "matches_Z100": bool(np.array_equal(th.matched_invariant, target)),
                "verified": bool(verify_invariant(fd.datum, th.matched_invariant).ok)}
    raise UsageError(f"unknown double action {args.action!r}")


def _need(x, flag):
    if x is None:
        raise UsageError(f"{flag} is required")
    return x


def cmd_torus(args, cfg):
    from .lattice_cft import (classify_invariants, classify_nimreps, discriminant, theorem2_pipeline,
                              torus_datum)
    L = _lattice(args)
    D = discriminant(L)
    ref = {"algebra": "torus", "gram": [list(r) for r in L.gram]}
    base = {"datum": ref, "discriminant": list(D.orders),
            "q": {str(x): str(D.q(x)) for x in D.elements()}}
    if args.action == "discriminant":
        return {"kind": "discriminant_form", **base}
    if args.action == "nimreps":
        items = [{"E": sorted(map(str, E)), "boundary": N.size} for E, N in classify_nimreps(L)]
        return {"kind": "torus_nimreps", **base, "count": len(items), "nimreps": items}
    invs = classify_invariants(D, cap=cfg.cap("torus"))
    items = []
    for inv in invs:
        it = {"D_plus": sorted(map(str, inv.D_plus)), "D_minus": sorted(map(str, inv.D_minus)),
              "Z": inv.invariant.Z.tolist()}
        if args.action == "pipeline":
            rec = theorem2_pipeline(D, inv)
            it.update({"E": sorted(map(str, rec.E)), "boundary": rec.nimrep.size,
                       "full_system": len(rec.full_system), "neutral": len(rec.neutral),
                       "charge_group": list(rec.charge.group.invariant_factors), **rec.meta})
        items.append(it)
    out = {"kind": "torus_invariants", **base, "count": len(items), "invariants": items}
    if args.action == "pipeline" and not all(it["recovers_Z"] and it["nimrep_ok"] for it in items):
        raise VerificationFailed(out)
    return out


def cmd_repring(args, cfg):
    from . import repring as rr
    from .modular_data import su_datum
    from .nimreps import verify_nimrep
    k = _need(args.level, "--level")
    if args.action == "su2verl":
        mod, N, iso = rr.su2_verlinde_nimrep(k)
        return {"kind": "quotient_module", "basis": [f"a^{b[1]}" for b in mod.basis],
                "a+a^-1": mod.actions["a+a^-1"].tolist(), "fusion_isomorphism": iso}
    if args.action == "so3nim":
        d = su_datum(2, k)
        mod, N = rr.so3_nimrep(k, d)
        return {"kind": "quotient_module", "basis": N.boundary, "kappa_1": mod.actions["kappa_1"].tolist(),
                "nimrep_verified": bool(verify_nimrep(d, N).ok)}
    if args.action == "so3neutral":
        ns = rr.so3_neutral(k)
        return {"kind": "quotient_module", "basis": ns.module.labels, "embedding": ns.embedding.tolist(),
                "intertwines": ns.intertwines}
    if args.action == "su3cc":
        d = su_datum(3, k)
        mod, N = rr.su3_cc_nimrep(k, d)
        return {"kind": "quotient_module", "basis": N.boundary,
                "sigma_(1,0)": mod.actions["sigma_(1,0)"].tolist(),
                "nimrep_verified": bool(verify_nimrep(d, N).ok)}
    raise UsageError(f"unknown repring action {args.action!r}")


# ---------------------------------------------------------------------------
# golden fixtures

def _fx_ade():
    from .invariants import enumerate_invariants
    from .modular_data import su_datum
    out = {}
    for k in (3, 4, 5, 6, 7, 8, 10, 12, 14, 16, 28):
        d = su_datum(2, k)
        out[str(k)] = sorted(su2_ade_name(d, inv.Z) or "?" for inv in enumerate_invariants(d))
    return out


def _fx_table1():
    from .doubles import zp_classify
    return {str(p): [{"name": c.record.name, "columns": c.record.columns(), "derived": c.derived}
                     for c in zp_classify(p)] for p in (2, 3, 5)}


def _fx_dihedral():
    from .doubles import dihedral_current_table, dihedral_datum
    out = {}
    for n in (2, 3, 4):
        fd = dihedral_datum(n)
        d = fd.datum
        cur = {j.index: j for j in d.simple_currents}
        rows = []
        for h in (0, 1):
            for i in (0, 1):
                for j in (0, 1):
                    z = d.index((("s", h * n), ("psi", i, j)))
                    J = cur[z]
                    for x, lab in enumerate(d.primaries):
                        printed, par = dihedral_current_table(n, h, i, j, lab)
                        rows.append({"z": [h, i, j], "label": str(lab), "printed_image": str(printed),
                                     "printed_parity": par, "S_image": str(d.primaries[J.perm[x]]),
                                     "S_parity": int(2 * J.Q[x]) % 2})
        out[str(n)] = rows
    return out


def _fx_torus():
    from .lattice_cft import EvenLattice, classify_invariants
    out = {}
    for N in range(1, 13):
        invs = classify_invariants(EvenLattice.of([[2 * N]]))
        out[str(N)] = [{"D_plus": sorted(map(str, i.D_plus)), "D_minus": sorted(map(str, i.D_minus)),
                        "Z": i.invariant.Z.tolist()} for i in invs]
    return out


GOLDEN = {"ade": ("su2_ade.json", _fx_ade), "table1": ("table1.json", _fx_table1),
          "dihedral": ("dihedral_tables.json", _fx_dihedral), "torus": ("torus_rank1.json", _fx_torus)}


def cmd_reproduce(args, cfg):
    names = list(GOLDEN) if args.target == "all" else [args.target]
    if any(n not in GOLDEN for n in names):
        raise UsageError(f"reproduce target must be one of {['all', *GOLDEN]}")
    root = Path(args.fixtures) if args.fixtures else FIXTURES
    report = {}
    for name in names:
        fname, fn = GOLDEN[name]
        text = dumps(fn())
        path = root / fname
        if args.update:
            root.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            report[name] = "written"
        elif not path.exists():
            report[name] = "missing"
        else:
            report[name] = "same" if path.read_text() == text else "differs"
    out = {"kind": "reproduce", "fixtures": report}
    if any(v in ("missing", "differs") for v in report.values()):
        raise VerificationFailed(out)
    return out


# ---------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--algebra", choices=("su", "double", "torus"))
    p.add_argument("--n", type=int)
    p.add_argument("--level", "--k", dest="level", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--gram")
    p.add_argument("--group")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "dot"))
    p.add_argument("--seed", type=int)
    p.add_argument("--cap-conductor", type=int)
    p.add_argument("--cap-search", type=int)
    p.add_argument("--config")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cftbench", description=__doc__)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("datum")
    _common(p)
    p.set_defaults(func=cmd_datum)
    p = sub.add_parser("invariants")
    p.add_argument("action", choices=("enumerate", "verify"))
    p.add_argument("--file")
    _common(p)
    p.set_defaults(func=cmd_invariants)
    p = sub.add_parser("nimrep")
    p.add_argument("kind", choices=("verlinde", "a", "d", "e6", "e7", "e8", "theorem4", "so3", "su3cc",
                                    "verify"))
    p.add_argument("--dot")
    p.add_argument("--file")
    _common(p)
    p.set_defaults(func=cmd_nimrep)
    p = sub.add_parser("charges")
    p.add_argument("--nimrep", default="verlinde",
                   choices=("verlinde", "a", "d", "e6", "e7", "e8", "theorem4", "so3", "su3cc"))
    _common(p)
    p.set_defaults(func=cmd_charges)
    p = sub.add_parser("double")
    p.add_argument("action", choices=("datum", "zp", "zpn", "dihedral", "so"))
    p.add_argument("--p", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--corrected", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_double)
    p = sub.add_parser("torus")
    p.add_argument("action", choices=("discriminant", "classify", "nimreps", "pipeline"))
    _common(p)
    p.set_defaults(func=cmd_torus)
    p = sub.add_parser("repring")
    p.add_argument("action", choices=("su2verl", "so3nim", "so3neutral", "su3cc"))
    _common(p)
    p.set_defaults(func=cmd_repring)
    p = sub.add_parser("reproduce")
    p.add_argument("target", nargs="?", default="all")
    p.add_argument("--update", action="store_true")
    p.add_argument("--fixtures")
    _common(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def _config(args) -> RunConfig:
    cfg = RunConfig.load(getattr(args, "config", None))
    caps = {}
    if getattr(args, "cap_search", None):
        caps = {"invariants": args.cap_search, "torus": args.cap_search, "double": args.cap_search}
    return cfg.override(conductor_cap=getattr(args, "cap_conductor", None), seed=getattr(args, "seed", None),
                        output=getattr(args, "out", None), format=getattr(args, "format", None),
                        search_caps=caps)


def _emit(result, cfg: RunConfig, stream):
    text = result if isinstance(result, str) else dumps(result)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        stream.write(text)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        cfg = _config(args)
        args.format = cfg.format
        result = args.func(args, cfg)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ConfigError as exc:
        stderr.write(f"config error: {exc}\n")
        return EXIT_USAGE
    except VerificationFailed as exc:
        try:
            _emit(exc.payload, cfg, stdout)
        except Exception:
            pass
        stderr.write("verification failed\n")
        return EXIT_VERIFY
    except (SearchCapExceeded, ConductorOverflow) as exc:
        stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except _lattice_cap_error() as exc:
        stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    _emit(result, cfg, stdout)
    return EXIT_OK


def _lattice_cap_error():
    from .lattice_cft import LatticeCapExceeded
    return LatticeCapExceeded


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
