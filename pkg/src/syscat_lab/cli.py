"""The ``syscat-lab`` command line."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import bounds as B
from . import cdga
from . import experiments as X
from . import lattice as L
from .errors import SyscatError
from .mesh import ChordComplex, dump_mesh, load_mesh, named_surface, optimize_ratio, systole_h1z2, systolic_ratio


class Output:
    """Human-readable lines followed by a machine-readable key: value block."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.values: dict[str, object] = {}

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def put(self, key: str, value) -> None:
        self.values[key] = value

    def render(self) -> str:
        if self.fmt == "csv":
            out = [",".join(("key", "value"))]
            out += [f"{k},{_fmt(v)}" for k, v in self.values.items()]
            return "\n".join(out) + "\n"
        body = list(self.lines)
        if self.values:
            body += ["", "---"] + [f"{k}: {_fmt(v)}" for k, v in self.values.items()]
        return "\n".join(body) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    if v is None:
        return "none"
    return str(v)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


# ---- mesh ----------------------------------------------------------------

def _load_surface(args):
    if args.builtin:
        return named_surface(args.builtin)
    return load_mesh(_read(args.file))


def cmd_mesh(args, out: Output) -> int:
    mesh = _load_surface(args)
    out.say(f"surface: {mesh.surface_name}; V={mesh.n_vertices} E={mesh.n_edges} F={len(mesh.faces)}")
    out.put("surface", mesh.surface_name)
    out.put("vertices", mesh.n_vertices)
    out.put("euler_characteristic", mesh.euler_characteristic)
    out.put("z2_betti1", mesh.z2_betti1)
    out.put("orientable", mesh.orientable)
    if args.action == "info":
        return 0
    chords = not args.edge_metric
    if args.action == "systole":
        rep = systolic_ratio(mesh, args.levels, chords=chords, b1_cap=args.b1_cap)
        if chords:
            points, _ = ChordComplex(mesh, args.levels, b1_cap=args.b1_cap).shortest_loop()
            out.say("shortest loop through edge points (u, v, t):")
            for p in points:
                out.say(f"  ({p.u}, {p.v}, {p.t:.6g})")
        elif args.levels == 0:
            loop = systole_h1z2(mesh, b1_cap=args.b1_cap)
            out.say(f"shortest loop (vertices): {' '.join(map(str, loop.cycle))}")
        _report(out, rep)
        return 0
    if args.action == "ratio":
        _report(out, systolic_ratio(mesh, args.levels, chords=chords, b1_cap=args.b1_cap))
        return 0
    history: list = []
    best, rep = optimize_ratio(
        mesh, args.iterations, args.step, args.seed, levels=args.levels, chords=chords,
        b1_cap=args.b1_cap, history=history,
    )
    out.say(f"sweeps run: {len(history) - 1}; start ratio {history[0][1]:.6f}")
    _report(out, rep)
    out.put("sweeps", len(history) - 1)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "optimized.mesh").write_text(dump_mesh(best), encoding="utf-8")
        series = X._history_series("optimize", history)
        (d / series.filename).write_text(X.render_csv(series), encoding="utf-8")
        out.say(f"wrote {d / 'optimized.mesh'} and {d / series.filename}")
    return 0


def _report(out: Output, rep) -> None:
    out.say(f"systolic ratio sys^2/area = {rep.ratio:.6f} ({rep.metric} metric, levels {rep.refinement_level})")
    out.say(f"note: {rep.bound_note}")
    for key in ("area", "sysh1_z2", "pisys1_upper", "ratio", "refinement_level", "metric"):
        out.put(key, getattr(rep, key))


# ---- lattice -------------------------------------------------------------

def cmd_lattice(args, out: Output) -> int:
    if args.file:
        lat = L.parse_lattice(_read(args.file))
        sv = L.shortest_vector(lat)
        r = L.check_hermite_bound(lat)
        out.say(f"rank {lat.rank}, covolume {L.covolume(lat):.9g}")
        out.say(f"shortest vector {sv.coeffs} of length {sv.length:.9g} ({sv.n_minimizers} minimal vectors)")
        out.say(f"sys^b = {r.lhs:.9g} <= gamma_b^(b/2) covol = {r.rhs:.9g}: {'holds' if r.holds else 'VIOLATED'}")
        out.put("rank", lat.rank)
        out.put("covolume", L.covolume(lat))
        out.put("shortest_coeffs", sv.coeffs)
        out.put("shortest_length", sv.length)
        out.put("n_minimal", sv.n_minimizers)
        out.put("lhs", r.lhs)
        out.put("rhs", r.rhs)
        out.put("holds", r.holds)
        out.put("equality", r.equality)
        return 0 if r.holds else 1
    if args.rank is None:
        raise SyscatError("--random needs --rank")
    cfg = X.ExperimentConfig(
        "lattice-sweep", seed=args.seed if args.seed is not None else 1, samples=args.random,
        rank=args.rank, parallel=args.parallel,
    )
    rows = [r for s in X.run_experiment(cfg).series for r in s.rows]
    violations = sum(1 for r in rows if not r[5])
    worst = max(r[4] for r in rows)
    out.say(f"{len(rows)} random rank-{args.rank} lattices: {violations} violations, largest lhs/rhs {worst:.9g}")
    out.put("samples", len(rows))
    out.put("violations", violations)
    out.put("max_lhs_over_rhs", worst)
    return 0 if violations == 0 else 1


# ---- algebra ---------------------------------------------------------------

def _load_algebra(args) -> cdga.FreeCDGA:
    if args.file:
        A = cdga.parse_cdga(_read(args.file))
        if args.field:
            A = A.with_field(_field(args.field))
        return A
    F = _field(args.field) if args.field else cdga.QQ
    return cdga.builtin_model(args.model, F, args.cap)


def _field(text: str) -> cdga.Field:
    t = text.strip().upper().replace("_", "")
    if t == "Q":
        return cdga.QQ
    if t.startswith("Z") and t[1:].isdigit():
        return cdga.Field(int(t[1:]))
    raise SyscatError(f"unknown field {text!r}; use Q or Z<p>")


def _class(A, text: str):
    return cdga.class_of(A, A.parse_poly(text))


def cmd_algebra(args, out: Output) -> int:
    A = _load_algebra(args)
    out.say(f"algebra over {A.field.name}: " + ", ".join(f"{n}:{d}" for n, d in zip(A.names, A.degrees)))
    if args.action == "cohomology":
        top = args.top if args.top is not None else A.degree_cap - 1
        betti = cdga.betti_numbers(A, top)
        for n, b in enumerate(betti):
            if b:
                reps = cdga.cohomology(A, n).representatives()
                out.say(f"H^{n}: dim {b}; basis " + ", ".join(A.format(r) for r in reps))
        out.put("field", A.field.name)
        out.put("betti", betti)
    elif args.action == "cuplength":
        out.put("cup_length", cdga.cup_length(A))
    elif args.action == "e0":
        top = args.top if args.top is not None else A.formal_dim
        if top is None:
            raise SyscatError("e0 needs --top (or a 'dim' line in the algebra file)")
        e0, witness = cdga.toomer_witness(A, top)
        out.say(f"top class witness of word length {e0}: {A.format(witness)}")
        out.put("e0", e0)
        out.put("witness", A.format(witness))
    else:
        if not (args.u and args.v and args.w):
            raise SyscatError("massey needs --u, --v and --w cocycles")
        coset = cdga.massey_triple(A, _class(A, args.u), _class(A, args.v), _class(A, args.w))
        out.say(f"<{args.u}, {args.v}, {args.w}> in degree {coset.degree}")
        out.say(f"representative cocycle: {A.format(coset.cocycle)}")
        out.say(f"indeterminacy dimension: {len(coset.indeterminacy)}")
        out.put("degree", coset.degree)
        out.put("representative", A.format(coset.cocycle))
        out.put("indeterminacy_dim", len(coset.indeterminacy))
        out.put("nontrivial", coset.nontrivial)
    return 0


# ---- bounds ------------------------------------------------------------------

def _interval(out: Output, label: str, iv: B.BoundInterval) -> None:
    out.say(f"{label} in [{iv.lo}, {iv.hi}]")
    for t in iv.trace:
        out.say(f"  {t.side} {t.value}  {t.rule}: {t.citation}")
    out.put(f"{label}_lo", iv.lo)
    out.put(f"{label}_hi", iv.hi)
    out.put(f"{label}_rules", " ".join(iv.rule_ids) or "none")
    if iv.conjectural_lo is not None:
        out.say(f"  conjecturally {label} >= {iv.conjectural_lo}")
        for t in iv.conjectural_trace:
            out.say(f"  (conjecture) {t.side} {t.value}  {t.rule}: {t.citation}")
        out.put(f"{label}_conjectural_lo", iv.conjectural_lo)


def cmd_bounds(args, out: Output) -> int:
    desc = B.parse_descriptor(_read(args.file))
    cat, sys_ = B.all_bounds(desc, conjecture_mode=args.conjectures)
    out.say(f"manifold {desc.name or '(unnamed)'} of dimension {desc.dim}")
    _interval(out, "cat", cat)
    _interval(out, "syscat", sys_)
    iq = B.iq_modified_syscat_lower(desc)
    if iq is not None:
        out.say(f"IQ-modified systolic category >= {iq}")
        out.put("iq_modified_syscat_lo", iq)
    return 0


def cmd_constants(args, out: Output) -> int:
    if args.which == "massey":
        if args.n is None or args.p1 is None or args.p2 is None:
            raise SyscatError("constants massey needs --n, --p1 and --p2")
        s = B.massey_inequality_spec(args.n, args.p1, args.p2)
        out.say(s.statement)
        for key in ("n", "p1", "p2", "p3", "A1", "A2"):
            out.put(key, getattr(s, key))
        out.put("constant", s.constant)
    elif args.which == "hermite":
        if args.rank is None:
            raise SyscatError("constants hermite needs --rank")
        out.put("rank", args.rank)
        out.put("gamma", L.hermite_constant(args.rank))
    else:
        if args.n is None:
            raise SyscatError("constants gromov-cpn needs --n")
        out.say(B.GROMOV_CN_MAGNITUDE)
        out.put("n", args.n)
        out.put("constant", B.gromov_cpn_constant(args.n))
    return 0


def cmd_known(args, out: Output) -> int:
    k = B.lookup_known(args.name)
    out.say(k.title)
    for c in k.citations:
        out.say(f"  {c}")
    out.put("key", k.key)
    out.put("cat", f"[{k.cat[0]},{k.cat[1]}]")
    out.put("syscat", "unknown" if k.syscat is None else f"[{k.syscat[0]},{k.syscat[1]}]")
    for key, v in k.extra.items():
        out.put(key, v)
    return 0


def cmd_experiment(args, out: Output) -> int:
    cfg = X.ExperimentConfig(args.name, output_dir=Path(args.out or "."), parallel=args.parallel)
    overrides = {
        k: getattr(args, k)
        for k in ("seed", "levels", "iterations", "step", "samples", "rank", "perturbations")
        if getattr(args, k, None) is not None
    }
    if "seed" not in overrides:
        overrides["seed"] = X.DEFAULT_SEEDS.get(args.name, cfg.seed)
    cfg = replace(cfg, **overrides)
    report = X.run_experiment(cfg)
    text = X.render_text(report)
    out.say(text.rstrip("\n"))
    if args.out:
        for fmt in ("text", "csv") if args.format == "csv" else ("text",):
            for p in X.emit_report(report, fmt, cfg.output_dir):
                out.say(f"wrote {p}")
    out.fmt = "text"  # the report itself is the machine-readable block
    return 0 if report.passed else 1


# ---- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    common.add_argument("--out", default=argparse.SUPPRESS, metavar="DIR", help="directory for output files")
    common.add_argument("--format", choices=("text", "csv"), default=argparse.SUPPRESS)
    common.add_argument(
        "--parallel", type=int, default=argparse.SUPPRESS, metavar="N",
        help="worker processes for independent samples (capped by SYSCAT_LAB_THREADS)",
    )

    p = argparse.ArgumentParser(prog="syscat-lab", description="Systolic geometry and category toolkit.")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, metavar="DIR")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mesh", parents=[common], help="systoles of triangulated surfaces")
    m.add_argument("action", choices=("info", "systole", "ratio", "optimize"))
    src = m.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--builtin", metavar="NAME")
    m.add_argument("--levels", type=int, default=0)
    m.add_argument("--iterations", type=int, default=100)
    m.add_argument("--step", type=float, default=0.02)
    m.add_argument("--b1-cap", type=int, default=6)
    m.add_argument("--edge-metric", action="store_true", help="restrict loops to edges of the subdivided mesh")

    lt = sub.add_parser("lattice", parents=[common], help="flat tori and the Hermite bound")
    lt.add_argument("action", choices=("check",))
    src = lt.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--random", type=int, metavar="N")
    lt.add_argument("--rank", type=int)

    a = sub.add_parser("algebra", parents=[common], help="cohomology of free CDGAs")
    a.add_argument("action", choices=("cohomology", "cuplength", "massey", "e0"))
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--model", help="su6, 'cp N' or 'torus N'")
    a.add_argument("--field", help="Q or Z<p> (overrides the file)")
    a.add_argument("--cap", type=int)
    a.add_argument("--top", type=int, help="top degree (cohomology range, or fundamental class for e0)")
    a.add_argument("--u")
    a.add_argument("--v")
    a.add_argument("--w")

    b = sub.add_parser("bounds", parents=[common], help="cat and syscat intervals from a descriptor")
    b.add_argument("--file", required=True)
    b.add_argument("--conjectures", action="store_true", help="also report conjectural lower bounds")

    c = sub.add_parser("constants", parents=[common], help="explicit constants")
    c.add_argument("which", choices=("massey", "hermite", "gromov-cpn"))
    c.add_argument("--n", type=int)
    c.add_argument("--p1", type=int)
    c.add_argument("--p2", type=int)
    c.add_argument("--rank", type=int)

    k = sub.add_parser("known", parents=[common], help="table of known cases")
    k.add_argument("name", help=", ".join(B.KNOWN_NAMES) + " or cp<n>")

    e = sub.add_parser("experiment", parents=[common], help="run a seeded experiment")
    e.add_argument("name", choices=X.EXPERIMENTS)
    e.add_argument("--levels", type=int)
    e.add_argument("--iterations", type=int)
    e.add_argument("--step", type=float)
    e.add_argument("--samples", type=int)
    e.add_argument("--rank", type=int)
    e.add_argument("--perturbations", type=int)
    return p


COMMANDS = {
    "mesh": cmd_mesh,
    "lattice": cmd_lattice,
    "algebra": cmd_algebra,
    "bounds": cmd_bounds,
    "constants": cmd_constants,
    "known": cmd_known,
    "experiment": cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "mesh" and args.seed is None:
        args.seed = 0
    out = Output(args.format)
    try:
        args.parallel = X.thread_cap(args.parallel)
        code = COMMANDS[args.command](args, out)
    except (SyscatError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"syscat-lab: error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(out.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
