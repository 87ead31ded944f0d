"""Batch front end: verify theorems, enumerate pairs, run lemma suites.

Usage::

    nakcot --task verify-main2 --n 9 --m 4 --W @w.txt --out report.json --dot ar.dot
    nakcot --task enumerate --n 2 --m 2 cotorsion

Reports are JSON documents validated against ``data/report.schema.json``;
they contain no timing unless ``--timing`` is given, so repeated runs are
byte-identical.  Exit codes: 0 pass, 1 fail (counterexample in the report),
2 bad input, 3 a theorem hypothesis is rejected.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from . import lemmas
from .core.algebra import Interval, NakayamaAlgebra, parse_interval
from .core.category import ModCat, modcat
from .core.labels import load_label_dictionary
from .cotorsion import (
    Check,
    CotorsionPair,
    HypothesisRejected,
    InvariantError,
    TheoremReport,
    enumerate_cotorsion_pairs,
    hereditary_check,
    nested_pairs,
    relative_hereditary,
    tower_levels,
    verify_main1,
    verify_main5,
)
from .subcat import calculus
from .subcat.base import Certainty, Subcat, left_perp, right_perp
from .subcat.calculus import SummandClosureError, sigma
from .subcat.ses import configure
from .tautilt import build_quotient_ctx, enumerate_stt, two_rigid, two_term, verify_main2

SCHEMA_VERSION = "1.0"
TASKS = ("enumerate", "verify-main1", "verify-main2", "verify-main5", "lemma-suite")
KINDS = ("cotorsion", "stt")
EXACT = Certainty.EXHAUSTIVE.value

HYPOTHESES = {
    "I_properly_in_W": "I ⊊ W",
    "two_rigid": "W is 2-rigid",
    "hereditary": "(U, V) is hereditary",
    "cotorsion_pair": "(U, V) is a cotorsion pair of mod A",
    "W_is_coheart": "W is the co-heart of a hereditary cotorsion pair",
    "0<i<j": "0 < i < j",
}


class BadInput(ValueError):
    pass


def load_schema(name: str) -> dict:
    with resources.files("nakcot.data").joinpath(f"{name}.schema.json").open() as fh:
        return json.load(fh)


def _hypothesis_text(name: str) -> str:
    m = re.fullmatch(r"sigma(\d+)_pair", name)
    if m:
        return f"(^perp Sigma^{m.group(1)} V, Sigma^{m.group(1)} V) is a cotorsion pair"
    return HYPOTHESES.get(name, name)


# -- job specification -----------------------------------------------------


@dataclass
class JobSpec:
    n: int
    m: int
    char: int
    task: str
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": {"n": self.n, "m": self.m, "char": self.char},
            "task": self.task,
            "inputs": dict(self.inputs),
            "options": dict(self.options),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "JobSpec":
        validate_spec(d)
        a = d["algebra"]
        return cls(a["n"], a["m"], a["char"], d["task"], dict(d["inputs"]), dict(d["options"]))

    @property
    def alg(self) -> NakayamaAlgebra:
        return NakayamaAlgebra(self.n, self.m, self.char)

    def opt(self, key: str, default=None):
        v = self.options.get(key)
        return default if v is None else v


def validate_spec(d: dict) -> None:
    try:
        jsonschema.validate(d, load_schema("jobspec"))
    except jsonschema.ValidationError as exc:
        raise BadInput(f"job spec: {exc.message}") from None


def read_label_list(text: str) -> list[str]:
    """Comma or whitespace separated labels; ``@path`` reads them from a file (text or JSON list)."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            body = path.read_text()
        except OSError as exc:
            raise BadInput(f"cannot read {path}: {exc.strerror}") from None
        stripped = body.strip()
        if stripped.startswith("["):
            try:
                items = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise BadInput(f"{path}: {exc}") from None
            return [str(x) for x in items]
        body = "\n".join(line.split("#", 1)[0] for line in body.splitlines())
        return [t for t in re.split(r"[\s,]+", body) if t]
    return [t for t in re.split(r"[\s,]+", text) if t]


def resolve_labels(tokens: list[str], alg: NakayamaAlgebra) -> list[str]:
    """Canonical ``top:len`` labels in indecomposable order; figure labels only for (9, 4)."""
    cat = modcat(alg)
    figure = load_label_dictionary() if (alg.n, alg.m) == (9, 4) else {}
    out: set[Interval] = set()
    for tok in tokens:
        if tok in figure:
            iv = figure[tok]
        else:
            try:
                iv = parse_interval(tok)
            except ValueError:
                hint = "" if figure else " (figure labels are only defined for n=9, m=4)"
                raise BadInput(f"unknown label {tok!r}{hint}") from None
        if not iv.valid_for(alg):
            raise BadInput(f"label {tok!r} is not an indecomposable of A(n={alg.n}, m={alg.m})")
        out.add(iv)
    return [iv.label for iv in sorted(out, key=cat.idx)]


def _positional(args: argparse.Namespace) -> None:
    args.kind = None
    for w in args.words:
        if w in TASKS:
            if args.task not in (None, w):
                raise BadInput(f"task given twice: {args.task} and {w}")
            args.task = w
        elif w in KINDS:
            args.kind = w
        else:
            raise BadInput(f"unexpected argument {w!r}")
    if args.kind is not None and args.task != "enumerate":
        raise BadInput(f"{args.kind!r} only applies to the enumerate task")


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    _positional(args)
    if args.spec:
        try:
            raw = json.loads(Path(args.spec).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise BadInput(f"cannot load job spec {args.spec}: {exc}") from None
        spec = JobSpec.from_dict(raw)
        _check_spec_labels(spec)
        return spec
    if args.task is None:
        raise BadInput("--task is required")
    if args.n is None or args.m is None:
        raise BadInput("--n and --m are required")
    try:
        alg = NakayamaAlgebra(args.n, args.m, args.char)
    except ValueError as exc:
        raise BadInput(str(exc)) from None
    inputs: dict = {}
    for key in ("W", "U", "V"):
        raw = getattr(args, key)
        inputs[key] = resolve_labels(read_label_list(raw), alg) if raw is not None else None
    amb = args.ambient
    if amb is None:
        inputs["ambient"] = None
    else:
        m = re.fullmatch(r"\s*G\s*(?:\((.*)\))?\s*", amb, re.S)
        if m:
            inputs["ambient"] = "G"
            if m.group(1) is not None:
                if inputs["W"] is not None:
                    raise BadInput("give W either inside G(...) or with --W, not both")
                inputs["W"] = resolve_labels(read_label_list(m.group(1)), alg)
        else:
            inputs["ambient"] = resolve_labels(read_label_list(amb), alg)
    inputs["kind"] = (args.kind or "cotorsion") if args.task == "enumerate" else None
    chars = None
    if args.chars:
        try:
            chars = [int(c) for c in args.chars.split(",") if c.strip()]
        except ValueError:
            raise BadInput("--chars takes a comma separated list of primes") from None
    options = {
        "i": args.i,
        "j": args.j,
        "seed": args.seed,
        "exhaustive_threshold": args.exhaustive_threshold,
        "convention": args.convention,
        "characteristics": chars,
        "samples": args.samples,
        "ignore_hypothesis": args.ignore_hypothesis,
        "prune": not args.no_prune,
        "certificates": args.certificates,
    }
    options = {k: v for k, v in options.items() if v is not None}
    spec = JobSpec(alg.n, alg.m, alg.char, args.task, inputs, options)
    validate_spec(spec.to_dict())
    return spec


def _check_spec_labels(spec: JobSpec) -> None:
    alg = spec.alg
    for key in ("W", "U", "V", "ambient"):
        v = spec.inputs.get(key)
        if isinstance(v, list):
            spec.inputs[key] = resolve_labels(v, alg)
    if spec.task == "enumerate" and spec.inputs.get("kind") is None:
        spec.inputs["kind"] = "cotorsion"


# -- outcome ----------------------------------------------------------------


@dataclass
class Outcome:
    hypotheses: list[dict] = field(default_factory=list)
    verdicts: list[dict] = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    counterexample: dict | None = None
    notes: list[str] = field(default_factory=list)
    graphs: dict[str, str] = field(default_factory=dict)
    ignored: bool = False
    seconds: float = 0.0

    def claim(self, name: str, value: bool, certainty: str = EXACT, detail=None, hypothesis: bool = False):
        d = {"name": name, "value": bool(value), "certainty": certainty}
        if hypothesis:
            d["statement"] = _hypothesis_text(name)
        if detail is not None:
            d["detail"] = detail
        (self.hypotheses if hypothesis else self.verdicts).append(d)

    @property
    def rejected(self) -> list[str]:
        return [h["statement"] for h in self.hypotheses if not h["value"]]

    @property
    def status(self) -> str:
        if self.rejected and not (self.ignored and self.verdicts):
            return "rejected"
        return "pass" if all(v["value"] for v in self.verdicts) else "fail"

    @property
    def certainty(self) -> str:
        probabilistic = any(v["certainty"] != EXACT for v in self.verdicts)
        return Certainty.PROBABILISTIC.value if probabilistic else EXACT

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "rejected": 3}[self.status]


def build_report(spec: JobSpec, out: Outcome, timing: bool = False) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "job": spec.to_dict(),
        "status": out.status,
        "exit_code": out.exit_code,
        "hypotheses": out.hypotheses,
        "rejected_hypotheses": out.rejected,
        "verdicts": out.verdicts,
        "certainty": out.certainty,
        "certificates": out.certificates,
        "counterexample": out.counterexample,
        "timing": {"seconds": round(out.seconds, 3)} if timing else None,
        "notes": out.notes,
    }
    jsonschema.validate(report, load_schema("report"))
    return report


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- subcategory inputs -------------------------------------------------------


def _subcat(cat: ModCat, labels: list[str] | None) -> Subcat | None:
    if labels is None:
        return None
    return Subcat.of(cat, [parse_interval(t) for t in labels])


def _pair_from_inputs(spec: JobSpec, cat: ModCat) -> CotorsionPair | None:
    U, V = _subcat(cat, spec.inputs.get("U")), _subcat(cat, spec.inputs.get("V"))
    if U is None and V is None:
        return None
    if V is None:
        V = right_perp(U)
    if U is None:
        U = left_perp(V)
    return CotorsionPair(Subcat.full(cat), U, V)


def _pair_from_heart(W: Subcat, out: Outcome) -> CotorsionPair | None:
    cands = [p for p in enumerate_cotorsion_pairs(Subcat.full(W.cat)) if p.heart == W]
    her = []
    for p in cands:
        try:
            if hereditary_check(p).verdict:
                her.append(p)
        except InvariantError:
            pass
    pick = her or cands
    if not pick:
        return None
    if len(pick) > 1:
        out.notes.append(f"{len(pick)} pairs have co-heart W; using U = {pick[0].U!r}")
    return pick[0]


def _absorb(out: Outcome, rep: TheoremReport, claim_names: dict[str, str] | None = None) -> None:
    """Move a theorem report into the outcome: preconditions become hypotheses."""
    for c in rep.preconditions:
        out.claim(c.name, c.passed, detail=c.detail, hypothesis=True)
    for c in rep.subchecks:
        out.claim(c.name, c.passed, detail=c.detail)
    cert = rep.certainty.value
    if rep.bijection is not None:
        out.claim("bijection", rep.bijection, cert)
    out.certificates = rep.to_dict()
    out.counterexample = rep.counterexample
    out.notes.extend(rep.notes)


# -- DOT -----------------------------------------------------------------------

PALETTE = ("#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69")


def _dot_quote(s: str) -> str:
    # backslash escapes such as \n are intended line breaks
    return '"' + s.replace('"', '\\"') + '"'


def _legend(spec: JobSpec, lines: list[str]) -> list[str]:
    head = [
        f"// nakcot graph, schema {SCHEMA_VERSION}",
        f"// legend: convention={spec.opt('convention', 'usage')}; algebra n={spec.n} m={spec.m} char={spec.char}",
        "// legend: arrows 1->2->...->n; node top:len is the interval module with top S_top",
    ]
    return head + [f"// legend: {ln}" for ln in lines]


def ar_quiver_dot(spec: JobSpec, cat: ModCat, sets: list[tuple[str, Subcat]]) -> str:
    """AR quiver on the printed grid with one fill colour per membership set."""
    figure = {}
    if (cat.alg.n, cat.alg.m) == (9, 4):
        figure = {iv: name for name, iv in load_label_dictionary().items()}
    colours = {name: PALETTE[k % len(PALETTE)] for k, (name, _) in enumerate(sets)}
    legend = [f"fill {colours[name]} = {name}" for name, _ in sets] + ["white = no set"]
    lines = _legend(spec, legend)
    lines += ["digraph ar_quiver {", "  node [shape=ellipse, style=filled, fontsize=10];"]
    coords = cat.ar_coordinates
    for iv in cat.ind:
        col, length = coords[iv]
        inside = [name for name, s in sets if iv in s]
        fill = ":".join(colours[n] for n in inside) if inside else "white"
        style = "wedged" if len(inside) > 1 else "filled"
        label = iv.label + (f"\\n{figure[iv]}" if iv in figure else "")
        attrs = [
            f"label={_dot_quote(label)}",
            f"pos={_dot_quote(f'{col},{length}!')}",
            f"style={style}",
            f"fillcolor={_dot_quote(fill)}",
            f"tooltip={_dot_quote(', '.join(inside) or '-')}",
        ]
        lines.append(f"  {_dot_quote(iv.label)} [{', '.join(attrs)}];")
    for i, j in sorted(cat.irreducible_arrows):
        lines.append(f"  {_dot_quote(cat.ind[i].label)} -> {_dot_quote(cat.ind[j].label)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _set_name(labels: list[str]) -> str:
    return "{" + ", ".join(labels) + "}"


def bijection_dot(spec: JobSpec, title: str, left: str, right: str, edges: list[tuple[str, str]]) -> str:
    lines = _legend(spec, [f"left column = {left}", f"right column = {right}", "edge = the verified map"])
    lines += [f"digraph {title} {{", "  rankdir=LR;", "  node [shape=box, fontsize=9];"]
    lids = {s: f"L{k}" for k, s in enumerate(dict.fromkeys(a for a, _ in edges))}
    rids = {s: f"R{k}" for k, s in enumerate(dict.fromkeys(b for _, b in edges))}
    lines.append("  subgraph cluster_left { label=" + _dot_quote(left) + ";")
    lines += [f"    {i} [label={_dot_quote(s)}];" for s, i in lids.items()]
    lines.append("  }")
    lines.append("  subgraph cluster_right { label=" + _dot_quote(right) + ";")
    lines += [f"    {i} [label={_dot_quote(s)}];" for s, i in rids.items()]
    lines.append("  }")
    lines += [f"  {lids[a]} -> {rids[b]};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(spec: JobSpec, title: str, items: list[tuple[str, int]]) -> str:
    """Inclusion lattice: an edge a -> b when a < b with nothing strictly between."""
    lines = _legend(spec, ["node = one element; edge a -> b: a is covered by b under inclusion"])
    lines += [f"digraph {title} {{", "  rankdir=BT;", "  node [shape=box, fontsize=9];"]
    for k, (label, _) in enumerate(items):
        lines.append(f"  N{k} [label={_dot_quote(label)}];")
    bits = [b for _, b in items]

    def below(a: int, b: int) -> bool:
        return a != b and a & ~b == 0

    for a in range(len(items)):
        for b in range(len(items)):
            if below(bits[a], bits[b]) and not any(
                below(bits[a], bits[c]) and below(bits[c], bits[b]) for c in range(len(items))
            ):
                lines.append(f"  N{a} -> N{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- tasks ----------------------------------------------------------------------


def run_main1(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    pair = _pair_from_inputs(spec, cat)
    if pair is None:
        raise BadInput("verify-main1 needs --U or --V")
    i = spec.opt("i", 1)
    rep = verify_main1(pair, i)
    _absorb(out, rep)
    if rep.status != "rejected":
        out.claim("counts_equal", rep.counts["intermediate_pairs"] == rep.counts["pairs_in_W_i"])
    ie = min(i, max(cat.global_dimension, 1))
    Wi = tower_levels(pair.heart, ie)[-1]
    out.graphs["ar"] = ar_quiver_dot(spec, cat, [("U", pair.U), ("V", pair.V), (f"W_{ie}", Wi)])
    edges = [(_pair_label(f["source"]), _pair_label(f["image"])) for f in rep.forward]
    out.graphs["bijection"] = bijection_dot(
        spec, "main1", "intermediate pairs (U', V')", f"cotorsion pairs in W_{ie}", edges
    )


def _pair_label(d: dict, names: tuple[str, str] = ("U", "V")) -> str:
    return f"{names[0]}={_set_name(d['U'])}\\n{names[1]}={_set_name(d['V'])}"


def run_main2(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    W = _subcat(cat, spec.inputs.get("W"))
    if W is None:
        raise BadInput("verify-main2 needs --W")
    ignore = spec.opt("ignore_hypothesis", False)
    conv = spec.opt("convention", "usage")
    rep = verify_main2(W, enforce_hypothesis=not ignore, prune=spec.opt("prune", True), convention=conv)
    _absorb(out, rep)
    if rep.counts:
        out.claim("counts_equal", rep.counts["cotorsion_pairs_in_G"] == rep.counts["support_tau_tilting"])
    G = two_term(W, conv)
    out.graphs["ar"] = ar_quiver_dot(spec, cat, [("W", W), ("G", G), ("Sigma W", sigma(W))])
    edges = [(_pair_label(f["pair"], ("X", "Y")), _set_name(f["image"])) for f in rep.forward]
    out.graphs["bijection"] = bijection_dot(
        spec, "main2", "cotorsion pairs (X, Y) in G", "support tau-tilting classes of G/[Sigma W]", edges
    )


def run_main5(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    i, j = spec.opt("i", 1), spec.opt("j", 2)
    pair = _pair_from_inputs(spec, cat)
    if pair is None:
        W = _subcat(cat, spec.inputs.get("W"))
        if W is None:
            raise BadInput("verify-main5 needs --U, --V or --W")
        pair = _pair_from_heart(W, out)
        if pair is None:
            out.claim("W_is_coheart", False, hypothesis=True)
            return
    rep = verify_main5(pair, i, j, enforce_hypothesis=not spec.opt("ignore_hypothesis", False))
    _absorb(out, rep)
    levels = tower_levels(pair.heart, j)
    S = sigma(levels[j - i - 1], i)
    out.graphs["ar"] = ar_quiver_dot(
        spec, cat, [(f"W_{i}", levels[i]), (f"W_{j}", levels[j]), (f"Sigma^{i} W_{j - i - 1}", S)]
    )


def run_enumerate(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    kind = spec.inputs.get("kind") or "cotorsion"
    W = _subcat(cat, spec.inputs.get("W"))
    conv = spec.opt("convention", "usage")
    amb_in = spec.inputs.get("ambient")
    if kind == "stt" or amb_in == "G":
        if W is None:
            raise BadInput("the 2-term subcategory G needs --W (or --ambient 'G(labels)')")
        rigid = two_rigid(W)
        out.claim("two_rigid", rigid, hypothesis=True)
        if not rigid:
            return
    if kind == "stt":
        G = two_term(W, conv)
        ctx = build_quotient_ctx(G, W, sigma(W))
        try:
            res = enumerate_stt(ctx, prune=spec.opt("prune", True))
        except InvariantError as exc:
            out.claim("lemma_p5", False, detail=str(exc))
            out.counterexample = {"kind": "deciders_disagree", "detail": str(exc)}
            return
        out.claim("lemma_p5", True, detail={"subsets_examined": res.examined})
        items = [c.to_dict(ctx) for c in res.candidates]
        if not spec.opt("certificates", False):
            for d in items:
                d.pop("witnesses")
        out.certificates = {
            "ambient": G.labels,
            "count": len(items),
            "tau_rigid_classes": len(res.rigid_classes),
            "support_tau_tilting": items,
        }
        out.graphs["lattice"] = hasse_dot(spec, "stt_classes", [(_set_name(d["members"]), c.key) for d, c in zip(items, res.candidates)])
        return
    full = Subcat.full(cat)
    if amb_in == "G":
        amb = two_term(W, conv)
    elif isinstance(amb_in, list):
        amb = _subcat(cat, amb_in)
    else:
        amb = full
    pairs = enumerate_cotorsion_pairs(amb)
    items = []
    for p in pairs:
        try:
            if amb == full:
                her = hereditary_check(p).verdict
            else:
                her = relative_hereditary(p).verdict
        except (ValueError, InvariantError):
            her = None
        d = p.to_dict(certificates=spec.opt("certificates", False))
        d["co_heart"] = p.heart.labels
        d["hereditary"] = her
        items.append(d)
    out.claim("no_nested_pairs", not nested_pairs(pairs))
    out.certificates = {"ambient": amb.labels, "count": len(items), "cotorsion_pairs": items}
    out.graphs["lattice"] = hasse_dot(spec, "cotorsion_pairs", [(_pair_label(d), p.U.bits) for d, p in zip(items, pairs)])


def run_lemma_suite(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    prev = calculus.DEBUG
    calculus.DEBUG = True  # summand-closure assertions on every construction
    try:
        _lemma_suite(spec, cat, out)
        out.claim("summand_closure", True)
    except SummandClosureError as exc:
        out.claim("summand_closure", False, detail=str(exc))
        out.counterexample = {"kind": "summand_closure", "detail": str(exc)}
    finally:
        calculus.DEBUG = prev


def _lemma_suite(spec: JobSpec, cat: ModCat, out: Outcome) -> None:
    full = Subcat.full(cat)
    pairs = enumerate_cotorsion_pairs(full)
    checks: list[Check] = [lemmas.y1_suite(pairs), lemmas.y2_suite(full), lemmas.imp_suite(pairs)]
    checks.append(lemmas.wakamatsu_suite(cat, spec.opt("samples", 100), spec.opt("seed", 0)))
    chars = spec.opt("characteristics")
    if chars:
        checks.append(lemmas.characteristic_suite(cat.alg.n, cat.alg.m, chars))
    if cat.alg.n <= 4 and cat.alg.m <= 3:
        checks.append(lemmas.cone_oracle_suite(cat))
    W = _subcat(cat, spec.inputs.get("W"))
    if W is not None:
        rigid = two_rigid(W)
        out.claim("two_rigid", rigid, hypothesis=True)
        if rigid:
            G = two_term(W, spec.opt("convention", "usage"))
            ctx = build_quotient_ctx(G, W, sigma(W))
            checks += lemmas.quotient_suites(ctx, prune=spec.opt("prune", True))
    for c in checks:
        out.claim(c.name, c.passed, detail=c.detail)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        out.counterexample = {"kind": "lemma", "failed": failed}
    out.certificates = {"cotorsion_pairs": len(pairs), "suites": [c.name for c in checks]}


RUNNERS = {
    "verify-main1": run_main1,
    "verify-main2": run_main2,
    "verify-main5": run_main5,
    "enumerate": run_enumerate,
    "lemma-suite": run_lemma_suite,
}


def run(spec: JobSpec) -> Outcome:
    configure(exhaustive_dim=spec.opt("exhaustive_threshold"), seed=spec.opt("seed"))
    out = Outcome(ignored=spec.opt("ignore_hypothesis", False))
    cat = modcat(spec.alg)
    t0 = time.perf_counter()
    try:
        RUNNERS[spec.task](spec, cat, out)
    except HypothesisRejected as exc:
        out.claim(exc.hypothesis, False, detail=exc.detail, hypothesis=True)
        out.ignored = False
    out.seconds = time.perf_counter() - t0
    return out


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nakcot", description=__doc__.split("\n\n")[0])
    p.add_argument("words", nargs="*", metavar="TASK|KIND",
                   help=f"optional task ({', '.join(TASKS)}) and, for enumerate, cotorsion or stt")
    p.add_argument("--task", choices=TASKS)
    p.add_argument("--spec", help="JSON job spec (replaces the algebra, task and input flags)")
    p.add_argument("--n", type=int, help="number of vertices of the linear quiver")
    p.add_argument("--m", type=int, help="paths of length m are zero")
    p.add_argument("--char", type=int, default=2, help="field characteristic (prime, default 2)")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    for key in ("W", "U", "V"):
        p.add_argument(f"--{key}", help="labels top:len separated by commas, or @file")
    p.add_argument("--ambient", help="labels, @file, G (the 2-term subcategory of --W) or G(labels)")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--dot", help="graph path; a bijection graph goes next to it as *_bijection.dot")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive-threshold", type=int, default=None,
                   help="largest Ext^1 dimension over which extension classes are enumerated exhaustively")
    p.add_argument("--convention", choices=("usage", "definition"), default="usage",
                   help="tower level of the proper 2-term subcategory (usage: Cone(W, W))")
    p.add_argument("--chars", help="comma separated characteristics compared by lemma-suite")
    p.add_argument("--samples", type=int, help="random subcategories for the Wakamatsu suite (default 100)")
    p.add_argument("--ignore-hypothesis", action="store_true",
                   help="evaluate the conclusions even when I ⊊ W fails")
    p.add_argument("--no-prune", action="store_true", help="enumerate every subset of the quotient")
    p.add_argument("--certificates", action="store_true", help="include approximation certificates")
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")
    return p


def _write_dot(path: str, graphs: dict[str, str]) -> None:
    target = Path(path)
    main = graphs.get("ar") or graphs.get("lattice")
    if main:
        target.write_text(main)
    if "bijection" in graphs:
        target.with_name(target.stem + "_bijection.dot").write_text(graphs["bijection"])


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        spec = spec_from_args(args)
    except BadInput as exc:
        print(f"nakcot: {exc}", file=sys.stderr)
        return 2
    try:
        out = run(spec)
    except BadInput as exc:
        print(f"nakcot: {exc}", file=sys.stderr)
        return 2
    report = build_report(spec, out, timing=args.timing)
    text = dump_json(report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.dot:
        _write_dot(args.dot, out.graphs)
    summary = f"{spec.task}: {report['status']}"
    if report["status"] == "rejected":
        summary += "; hypothesis " + "; hypothesis ".join(report["rejected_hypotheses"])
    elif report["status"] == "fail":
        summary += f"; failed: {', '.join(v['name'] for v in report['verdicts'] if not v['value'])}"
    print(summary, file=sys.stderr)
    return report["exit_code"]


if __name__ == "__main__":
    raise SystemExit(main())
