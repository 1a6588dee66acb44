"""Command line entry point ``fuscat``.

Exit status is 0 for a true verdict or valid input, 1 for a false verdict or
invalid input, and 2 for usage and data errors. ``--format machine`` prints
the same report as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .characters import character_table, rep_fusion_ring
from .cohomology import cyclic_representative, h3_order, is_coboundary, is_cocycle, cocycle_witness
from .equivariantization import (check_equivariant_sequence, equivariant_simples, forgetful_functor,
                                 validate_action)
from .errors import FuscatError
from .functors import (fp_index, index2_check, is_dominant, kernel_simples, monad_checks,
                       normality_witnesses, validate_functor, verify_exact_sequence)
from .fusion_ring import fpdim, validate
from .groups import conjugacy_classes, is_simple, normal_subgroups
from .pointed import build_pointed_exact_sequence, is_simple_eno, is_simple_pointed
from .tolerances import from_env

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class Report:
    """Ordered fields plus a verdict; rendered as text or JSON."""

    def __init__(self, command: str, tols):
        self.command = command
        self.fields: dict = {"command": command, "tolerances": {"obj": tols.obj, "agg": tols.agg}}
        self.verdict = True

    def __setitem__(self, key, value):
        self.fields[key] = _plain(value)

    def render(self, fmt: str) -> str:
        self.fields["verdict"] = bool(self.verdict)
        if fmt == "machine":
            return json.dumps(self.fields, sort_keys=True)
        lines = []
        for key, value in self.fields.items():
            if key == "tolerances":
                lines.append(f"tolerances: obj={value['obj']:g}, agg={value['agg']:g}")
            elif isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"  {k}: {_text(v)}" for k, v in value.items())
            elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
                lines.append(f"{key}:")
                lines.extend(f"  {_text(v)}" for v in value)
            else:
                lines.append(f"{key}: {_text(value)}")
        return "\n".join(lines)


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _text(value) -> str:
    if isinstance(value, float):
        return f"{value:.10f}"
    if isinstance(value, dict):
        return ", ".join(f"{k}={{{_text(v)}}}" if isinstance(v, dict) else f"{k}={_text(v)}"
                         for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_text(v) for v in value) + "]"
    return str(value)


def _pick(ws: io.Workspace, kind: str, id: str | None) -> tuple[str, object]:
    id = ws.only(kind) if id is None else id
    return id, ws.get(id, kind)


# ---------------------------------------------------------------- commands

def cmd_validate(args, tols):
    ws = io.load(args.file, strict=False)
    rep = Report("validate", tols)
    entries = {}
    for id in ws.ids():
        report = ws.failures.get(id)
        entries[id] = {"kind": ws.kinds[id], "valid": report is None,
                       "issues": [] if report is None else [str(i) for i in report.issues]}
        if report is not None:
            rep.verdict = False
    rep["entities"] = entries
    return rep


def cmd_fpdim(args, tols):
    ws = io.load(args.file)
    rep = Report("fpdim", tols)
    ids = [args.ring] if args.ring else ws.ids("ring")
    rings = {}
    for id in ids:
        ring = ws.get(id, "ring")
        fp = fpdim(ring)
        rings[id] = {"dims": {lab: d for lab, d in zip(ring.labels, fp.dims)}, "total": fp.total}
    rep["rings"] = rings
    return rep


def cmd_functor_check(args, tols):
    ws = io.load(args.file)
    id, f = _pick(ws, "functor", args.functor)
    rep = Report("functor-check", tols)
    rep["functor"] = id
    valid = validate_functor(f)
    rep["valid"] = valid.ok
    rep["issues"] = [str(i) for i in valid.issues]
    fpC, fpD = fpdim(f.source), fpdim(f.target)
    dominant = is_dominant(f)
    rep["dominant"] = dominant
    rep["kernel"] = [f.source.labels[x] for x in sorted(kernel_simples(f, fpC, tols.obj))]
    wit = normality_witnesses(f, fpC, tols.obj)
    rep["normal"] = not wit
    rep["normality_witnesses"] = [f.source.labels[x] for x in wit]
    if dominant:
        rep["fp_index"] = fp_index(f, fpC, fpD, tols.agg)
    m = monad_checks(f, fpC, fpD, tols)
    rep["monad"] = {"normal": m.monad_normal, "agrees": m.agrees, "fpdim_T1": m.fpdim_T1,
                    "index_residual": m.index_residual, "max_TX_residual": m.max_TX_residual}
    rep.verdict = valid.ok and m.passed
    return rep


def cmd_exact_check(args, tols):
    ws = io.load(args.file)
    emb_id, emb = _pick(ws, "functor", args.embed)
    f_id, f = _pick(ws, "functor", args.functor)
    r = verify_exact_sequence(emb, f, tols)
    rep = Report("exact-check", tols)
    rep["embedding"] = emb_id
    rep["functor"] = f_id
    for key in ("embedding_valid", "image_equals_kernel", "dominant", "normal"):
        rep[key] = getattr(r, key)
    rep["kernel"] = [f.source.labels[x] for x in r.kernel]
    rep["image"] = [f.source.labels[x] for x in r.image]
    rep["fpdim"] = {"sub": r.fpdim_sub, "mid": r.fpdim_mid, "quot": r.fpdim_quot}
    rep["multiplicativity"] = (f"{r.fpdim_mid:.10g} = {r.fpdim_sub:.10g} x {r.fpdim_quot:.10g}"
                               if r.multiplicativity_residual < tols.agg else
                               f"{r.fpdim_mid:.10g} != {r.fpdim_sub:.10g} x {r.fpdim_quot:.10g}")
    rep["multiplicativity_residual"] = r.multiplicativity_residual
    rep["fpdimy_max_residual"] = r.fpdimy_max_residual
    rep["consistent"] = r.consistent
    rep["notes"] = r.notes
    rep.verdict = r.verdict
    return rep


def cmd_index2_check(args, tols):
    ws = io.load(args.file)
    id, f = _pick(ws, "functor", args.functor)
    r = index2_check(f, tols=tols)
    rep = Report("index2-check", tols)
    rep["functor"] = id
    rep["fp_index"] = r.fp_index
    rep["J"] = None if r.J is None else f.source.labels[r.J]
    rep["J_invertible"] = r.J_invertible
    rep["J_squared_unit"] = r.J_squared_unit
    rep["normal"] = r.normal
    rep["kernel"] = [f.source.labels[x] for x in r.kernel]
    rep.verdict = r.passed
    return rep


def cmd_group(args, tols):
    ws = io.load(args.file)
    id, g = _pick(ws, "group", args.group)
    rep = Report("group", tols)
    rep["group"] = id
    rep["order"] = g.order
    rep["class_sizes"] = [len(c) for c in conjugacy_classes(g)]
    rep["normal_subgroups"] = [list(n) for n in normal_subgroups(g)]
    rep["simple"] = is_simple(g)
    t = character_table(g, args.seed)
    rep["seed"] = args.seed
    rep["degrees"] = t.degrees
    rep["orthogonality_residual"] = t.orthogonality_residual()
    rep["characters"] = [[_complex_text(v) for v in row] for row in t.values]
    return rep


def _complex_text(v: complex) -> str:
    re, im = round(v.real, 10) + 0.0, round(v.imag, 10) + 0.0
    return f"{re:g}" if im == 0 else f"{re:g}{im:+g}i"


def cmd_repring(args, tols):
    ws = io.load(args.file)
    id, g = _pick(ws, "group", args.group)
    t = character_table(g, args.seed)
    ring = rep_fusion_ring(t)
    valid = validate(ring)
    rep = Report("repring", tols)
    rep["group"] = id
    rep["seed"] = args.seed
    rep["valid"] = valid.ok
    rep["ring"] = io.ring_document(ring, f"rep{id}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.dumps_pretty(io.ring_document(ring, f"rep{id}")) + "\n")
        rep["written"] = args.out
    rep.verdict = valid.ok
    return rep


def cmd_pointed_simple(args, tols):
    ws = io.load(args.file)
    id, p = _pick(ws, "pointed", args.pointed)
    r = is_simple_pointed(p)
    rep = Report("pointed simple-check", tols)
    rep["pointed"] = id
    rep["order"] = p.group.order
    rep["simple"] = r.simple
    rep["witness"] = None if r.witness is None else list(r.witness)
    rep["restrictions"] = [{"subgroup": list(h), "coboundary": triv} for h, triv in r.checked]
    rep["simple_eno"] = is_simple_eno(p)
    rep.verdict = r.simple
    return rep


def cmd_pointed_build(args, tols):
    seq_ws = io.load(args.groups)
    sid, ext = _pick(seq_ws, "group_sequence", args.sequence)
    coc_ws = io.load(args.cocycle)
    cid, alpha = _pick(coc_ws, "cocycle", args.cocycle_id)
    s = build_pointed_exact_sequence(ext, alpha, tols)
    rep = Report("pointed build-seq", tols)
    rep["sequence"] = sid
    rep["cocycle"] = cid
    rep["orders"] = {"sub": ext.kernel.order, "mid": ext.group.order, "quot": ext.quotient.order}
    rep["embedding"] = s.embedding.m
    rep["quotient"] = s.quotient.m
    rep["middle_cocycle_zero"] = s.middle.alpha.is_zero()
    rep["multiplicativity_residual"] = s.report.multiplicativity_residual
    rep["verdict_exact"] = s.report.verdict
    if args.out:
        g_doc = io.group_document(ext.group, "G")
        with open(args.out, "w") as fh:
            fh.write(io.dumps_pretty({"kind": "workspace", "entities": [
                g_doc, io.cocycle_document(s.middle.alpha, "G", "inflated"),
                io.pointed_document("G", "inflated", "middle")]}) + "\n")
        rep["written"] = args.out
    rep.verdict = s.report.verdict
    return rep


def cmd_cocycle_check(args, tols):
    ws = io.load(args.file, strict=False)
    id = args.cocycle or ws.only("cocycle")
    if id in ws.failures:
        rep = Report("cocycle check", tols)
        rep["cocycle"] = id
        rep["is_cocycle"] = False
        rep["issues"] = [str(i) for i in ws.failures[id].issues]
        rep.verdict = False
        return rep
    a = ws.get(id, "cocycle")
    rep = Report("cocycle check", tols)
    rep["cocycle"] = id
    rep["order"] = a.group.order
    rep["modulus"] = a.modulus
    rep["is_cocycle"] = is_cocycle(a)
    rep["coboundary"] = is_coboundary(a)
    rep["working_modulus"] = a.modulus * a.group.order
    rep.verdict = True
    return rep


def cmd_cocycle_h3(args, tols):
    ws = io.load(args.file)
    id, g = _pick(ws, "group", args.group)
    modulus = args.modulus or g.order
    rep = Report("cocycle h3", tols)
    rep["group"] = id
    rep["modulus"] = modulus
    rep["h3_order"] = h3_order(g, modulus)
    return rep


def cmd_cocycle_cyclic(args, tols):
    a = cyclic_representative(args.n, args.q)
    doc = io.cocycle_document(a, io.group_document(a.group), f"omega{args.q}_Z{args.n}")
    rep = Report("cocycle cyclic", tols)
    rep["n"] = args.n
    rep["q"] = args.q
    rep["is_cocycle"] = cocycle_witness(a) is None
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.dumps_pretty(doc) + "\n")
        rep["written"] = args.out
    else:
        rep["document"] = doc
    return rep


def cmd_equivariantize(args, tols):
    ws = io.load(args.file)
    id, a = _pick(ws, "action", args.action)
    rep = Report("equivariantize", tols)
    rep["action"] = id
    valid = validate_action(a)
    rep["valid"] = valid.ok
    es = equivariant_simples(a, seed=args.seed, tol=tols.agg)
    u = forgetful_functor(a, es)
    chk = check_equivariant_sequence(a, es, u, tols, seed=args.seed)
    rep["simples"] = [{"orbit": [a.ring.labels[x] for x in e.orbit], "irrep": e.irrep,
                       "degree": e.degree, "fpdim": e.fpdim} for e in es.entries]
    rep["fpdim_total"] = es.total
    rep["expected_total"] = a.group.order * es.ring_fpdim
    rep["forgetful"] = u.m
    rep["kernel"] = list(chk.kernel)
    rep["kernel_is_rep_G"] = chk.kernel_is_unit_orbit and chk.degrees_match
    rep["dominant"] = chk.dominant
    rep["normal"] = chk.normal
    rep.verdict = valid.ok and chk.passed
    return rep


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS,
                        help="report format (default text)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="start of the character-table perturbation sequence (default 0)")

    p = argparse.ArgumentParser(prog="fuscat", parents=[common],
                                description="Fusion rings, tensor functors and exact sequences at K-level.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "validate every entity in a workspace")
    sp.add_argument("file")
    sp = add("fpdim", cmd_fpdim, "Frobenius-Perron dimensions of rings")
    sp.add_argument("file")
    sp.add_argument("--ring")
    sp = add("functor-check", cmd_functor_check, "dominance, kernel, normality, FP index and monad")
    sp.add_argument("file")
    sp.add_argument("--functor")
    sp = add("exact-check", cmd_exact_check, "check an exact sequence of functors")
    sp.add_argument("file")
    sp.add_argument("--embed", required=True)
    sp.add_argument("--functor", required=True)
    sp = add("index2-check", cmd_index2_check, "index-2 structure of a dominant functor")
    sp.add_argument("file")
    sp.add_argument("--functor")
    sp = add("group", cmd_group, "classes, normal subgroups and character table")
    sp.add_argument("file")
    sp.add_argument("--group")
    sp = add("repring", cmd_repring, "representation ring of a group")
    sp.add_argument("file")
    sp.add_argument("--group")
    sp.add_argument("--out")
    sp = add("equivariantize", cmd_equivariantize, "simples of the equivariantization")
    sp.add_argument("file")
    sp.add_argument("--action")

    pp = sub.add_parser("pointed", parents=[common], help="pointed categories")
    psub = pp.add_subparsers(dest="pointed_command", metavar="subcommand")
    psub.required = True
    sp = psub.add_parser("simple-check", parents=[common], help="simplicity with a witness")
    sp.set_defaults(func=cmd_pointed_simple)
    sp.add_argument("file")
    sp.add_argument("--pointed")
    sp = psub.add_parser("build-seq", parents=[common], help="exact sequence from a group extension")
    sp.set_defaults(func=cmd_pointed_build)
    sp.add_argument("--groups", required=True)
    sp.add_argument("--cocycle", required=True)
    sp.add_argument("--sequence")
    sp.add_argument("--cocycle-id")
    sp.add_argument("--out")

    cp = sub.add_parser("cocycle", parents=[common], help="3-cocycles")
    csub = cp.add_subparsers(dest="cocycle_command", metavar="subcommand")
    csub.required = True
    sp = csub.add_parser("check", parents=[common], help="cocycle and coboundary tests")
    sp.set_defaults(func=cmd_cocycle_check)
    sp.add_argument("file")
    sp.add_argument("--cocycle")
    sp = csub.add_parser("h3", parents=[common], help="order of H^3(G, Z/M)")
    sp.set_defaults(func=cmd_cocycle_h3)
    sp.add_argument("file")
    sp.add_argument("--group")
    sp.add_argument("--modulus", type=int)
    sp = csub.add_parser("cyclic", parents=[common], help="standard cocycle omega_q on Z/n")
    sp.set_defaults(func=cmd_cocycle_cyclic)
    sp.add_argument("n", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    fmt = getattr(args, "format", "text")
    args.seed = getattr(args, "seed", 0)
    try:
        tols = from_env()
        report = args.func(args, tols)
    except (FuscatError, ValueError, OSError) as exc:
        if fmt == "machine":
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.render(fmt))
    return EXIT_TRUE if report.verdict else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
