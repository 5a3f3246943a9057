"""Command-line front end.

Exit codes: 0 success, 2 validation failure (with a report), 1 usage or
parse error.
"""

from __future__ import annotations

import argparse
import os
import re
import random
import sys
from fractions import Fraction

from .classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    RepClass,
    TemperedDatum,
    classify_rep,
    irreducible_induced,
)
from .errors import GeneraError, ParseError
from .groups import IDENTITY, BaseRep, CuspidalAtom, Family, GroupFamily
from .lifting import (
    HNRepDatum,
    check_gamma_identity,
    descend_ds,
    descend_generic,
    descend_tempered,
    gamma_bag,
    lift_ds,
    lift_generic,
    lift_tempered,
    parameter_to_representation,
)
from .mustar import extract, mu_star
from .params import c_canonicalize, classify_parameter, decompose
from .segments import Multisegment
from .workspace import Workspace, datum_to_json, dumps, read_json

EXIT_OK, EXIT_PARSE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Result:
    """A command outcome: exit code, JSON payload and text lines."""

    def __init__(self, code: int, payload: dict, lines: list[str]):
        self.code, self.payload, self.lines = code, payload, lines


def _load(args, *extra) -> Workspace:
    docs = []
    for path, key in [(getattr(args, "input", None), None), (getattr(args, "table", None), "table"),
                      (getattr(args, "base_lifts", None), "base_lifts")] + list(extra):
        if not path:
            continue
        doc = read_json(path)
        if isinstance(doc, list):
            if key is None:
                raise ParseError(f"{path}: expected a JSON object")
            doc = {key: doc}
        docs.append(doc)
    return Workspace.load(docs)


def _datum(ws: Workspace, path: str | None = None):
    if path is not None:
        doc = read_json(path)
        return ws.parse_datum(doc.get("datum", doc) if isinstance(doc, dict) else doc)
    if ws.datum is None:
        raise ParseError("the input has no datum")
    return ws.parse_datum(ws.datum)


def _render(obj) -> str:
    return obj.render() if hasattr(obj, "render") else str(obj)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> Result:
    ws = _load(args)
    obj = _datum(ws)
    if hasattr(obj, "summands"):
        return _param_classify(obj)
    if isinstance(obj, HNRepDatum):
        raise ParseError("classify takes group-side data; use descend for H_N data")
    c = classify_rep(obj, ws.reducibility())
    payload = {"datum": _render(obj), **c.to_json()}
    lines = [f"class: {c.cls.value}"]
    for v in c.report.violations:
        lines.append(f"violation {v.code}: {v.message}" + (f" [{v.subject}]" if v.subject else ""))
    lines += [f"note: {n}" for n in c.report.notes]
    if c.report.normal_form is not None and hasattr(c.report.normal_form, "render"):
        lines.append(f"normal form: {c.report.normal_form.render()}")
    return Result(EXIT_INVALID if c.cls is RepClass.Invalid else EXIT_OK, payload, lines)


def _parse_induced(ws: Workspace, text: str, group: GroupFamily | None = None):
    """``"d([0,1]@t) x base(s0)"``; unknown atoms default to self-dual gl1 of type R and an
    unknown base takes the rank left over in ``group``."""
    parts = [p.strip() for p in text.split(" x ")]
    last = parts[-1]
    if not (last.startswith("base(") and last.endswith(")")):
        raise ParseError("the induced representation must end with base(<id>)")
    for name in re.findall(r"@([A-Za-z_][\w]*)", " ".join(parts[:-1])):
        if name not in ws.atoms:
            ws.atoms[name] = CuspidalAtom.selfdual(name, 1, "R", IDENTITY)
    segs = [ws.segment(p) for p in parts[:-1]]
    bid = last[5:-1].strip()
    if bid not in ws.bases and group is not None:
        rest = group.rank - sum(s.rank for s in segs)
        ws.bases[bid] = BaseRep.make(bid, group.family, rest)
    return Multisegment(segs), ws.base(bid)


def cmd_mu_star(args) -> Result:
    ws = _load(args)
    group = None
    if args.group is not None:
        if args.rank is None:
            raise UsageError("--group needs --rank")
        group = GroupFamily(Family(args.group), args.rank)
    lam, base = _parse_induced(ws, args.induced, group)
    g = mu_star(lam, base, group)
    fam = base.group.family
    if args.normalize:
        g = g.normalized(fam)
    if args.slice:
        g = extract(g, args.slice, fam)
    if args.slice == "min":
        rows = sorted(((" ".join(f"{e}@{a.render()}" for a, e in w), slot.render(), c) for (w, slot), c in g.items()))
        lines = [f"{c} [{w}] ; {s}" for w, s, c in rows]
        payload = {"words": [{"word": w, "base": s, "coef": c} for w, s, c in rows]}
        return Result(EXIT_OK, payload, lines)
    terms = [{"coef": c, "term": t.render()} for t, c in g]
    return Result(EXIT_OK, {"induced": args.induced, "slice": args.slice, "terms": terms}, g.lines() or ["0"])


def cmd_irreducible(args) -> Result:
    ws = _load(args)
    obj = _datum(ws)
    if isinstance(obj, (TemperedDatum, DiscreteSeriesDatum)):
        obj = LanglandsDatum((), obj if isinstance(obj, TemperedDatum) else TemperedDatum(obj))
    if not isinstance(obj, LanglandsDatum):
        raise ParseError("irreducible takes a langlands datum")
    dec = irreducible_induced(obj.std, obj.temp, ws.reducibility())
    lines = [dec.name]
    if dec.irreducible:
        lines += [f"{s}: {c}" for s, c in dec.reasons]
    else:
        lines.append(f"{dec.condition}: {dec.detail} ({', '.join(dec.pair)})")
    return Result(EXIT_OK, {"datum": obj.render(), **dec.to_json()}, lines)


_LEVEL_TYPES = {"ds": DiscreteSeriesDatum, "tempered": TemperedDatum, "generic": LanglandsDatum}


def cmd_lift(args) -> Result:
    ws = _load(args)
    lifts = ws.base_lifts()
    obj = _datum(ws)
    want = _LEVEL_TYPES[args.level]
    if args.level == "tempered" and isinstance(obj, DiscreteSeriesDatum):
        obj = TemperedDatum(obj)
    if args.level == "generic" and isinstance(obj, TemperedDatum):
        obj = LanglandsDatum((), obj)
    if not isinstance(obj, want):
        raise ParseError(f"--level {args.level} needs a {want.__name__}")
    rho = {"ds": lift_ds, "tempered": lift_tempered, "generic": lift_generic}[args.level](obj, lifts)
    return Result(EXIT_OK, {"level": args.level, "lift": datum_to_json(rho), "render": rho.render()}, [rho.render()])


def cmd_descend(args) -> Result:
    ws = _load(args)
    lifts = ws.base_lifts()
    rho = _datum(ws)
    if not isinstance(rho, HNRepDatum):
        raise ParseError("descend takes an hn datum")
    payload: dict = {"level": args.level}
    if args.level == "ds":
        out = descend_ds(rho, lifts)
    elif args.level == "tempered":
        out = descend_tempered(rho, lifts)
    else:
        out, clauses = descend_generic(rho, lifts)
        payload["clauses"] = [{"segment": s.render(), "clause": c} for s, c in zip(out.std, clauses)]
    payload.update(descent=datum_to_json(out), render=out.render())
    lines = [out.render()] + [f"{c['segment']}: {c['clause']}" for c in payload.get("clauses", [])]
    return Result(EXIT_OK, payload, lines)


def _param_classify(p) -> Result:
    c = classify_parameter(p)
    return Result(EXIT_OK, {"parameter": p.render(), "class": c.value}, [f"class: {c.value}"])


def cmd_param(args) -> Result:
    ws = _load(args)
    p = _datum(ws)
    if not hasattr(p, "summands"):
        raise ParseError("param takes a parameter")
    if args.action == "classify":
        return _param_classify(p)
    if args.action == "decompose":
        temp, pairs = decompose(p)
        payload = {"tempered": datum_to_json(temp), "pairs": [t.to_json() for t in pairs]}
        lines = [f"tempered: {temp.render()}"] + [f"pair: {t.atom.id} q={t.to_json()['q']} w={t.w}" for t in pairs]
        return Result(EXIT_OK, payload, lines)
    if args.action == "canon":
        q = c_canonicalize(p, ws.galois)
        return Result(EXIT_OK, {"canonical": datum_to_json(q), "render": q.render()}, [q.render()])
    rep = parameter_to_representation(p, ws.base_lifts())
    lines = [rep.datum.render(), f"generic: {str(rep.generic).lower()}"]
    payload = {"datum": datum_to_json(rep.datum), "generic": rep.generic, "render": rep.datum.render()}
    return Result(EXIT_OK, payload, lines)


def cmd_gamma_check(args) -> Result:
    ws = _load(args, (args.left, None), (args.right, None))
    lifts = ws.base_lifts()
    left, right = _datum(ws, args.left), _datum(ws, args.right)
    if isinstance(left, HNRepDatum) and not isinstance(right, HNRepDatum):
        left, right = right, left
    if not isinstance(right, HNRepDatum):
        raise ParseError("gamma-check needs one hn datum")
    ok = check_gamma_identity(left, right, lifts)
    payload = {"equal": ok, "left": gamma_bag(left, lifts).render(), "right": gamma_bag(right).render()}
    lines = [f"equal: {str(ok).lower()}", f"left:  {payload['left']}", f"right: {payload['right']}"]
    return Result(EXIT_OK if ok else EXIT_INVALID, payload, lines)


def cmd_selftest(args) -> Result:
    seed = int(os.environ.get("GENERA_SEED", "0"))
    trials = args.trials
    results = run_selftest(seed, trials)
    lines = [f"seed: {seed}"] + [f"{name}: {ok}/{n} passed" for name, ok, n in results]
    payload = {"seed": seed, "suites": [{"name": name, "passed": ok, "total": n} for name, ok, n in results]}
    code = EXIT_OK if all(ok == n for _, ok, n in results) else EXIT_INVALID
    return Result(code, payload, lines)


def run_selftest(seed: int, trials: int = 40) -> list:
    """Randomized invariant suites; the output depends only on seed and trials."""
    from . import checks, samples
    from .segments import Segment

    rng = random.Random(seed)
    lifts = samples.standard_lifts()
    suites = []

    def run(name, fn):
        ok = 0
        for _ in range(trials):
            try:
                ok += bool(fn())
            except GeneraError:
                pass
        suites.append((name, ok, trials))

    atoms = [CuspidalAtom.selfdual(f"a{i}", 1, "R", IDENTITY) for i in range(3)]

    def rand_seg(max_len=3):
        return Segment(rng.choice(atoms), Fraction(rng.randint(-5, 5), 2), rng.randint(0, max_len))

    run("hopf", lambda: checks.hopf_laws(rand_seg(4)))

    def stages():
        fam = rng.choice(samples.FAMILY_ORDER)
        base = BaseRep.make("s", fam, 0, omega=IDENTITY)
        lo1, lo2 = rng.randint(-2, 2), rng.randint(-2, 2)
        s1 = Segment.from_ends(rng.choice(atoms), lo1, rng.randint(lo1, 2))
        s2 = Segment.from_ends(rng.choice(atoms), lo2, rng.randint(lo2, 2))
        return checks.induction_in_stages(s1, s2, base)

    run("stages", stages)

    def ds():
        d, table = samples.random_ds(rng)
        return checks.bound_words_pass(d) and checks.ds_mutations_flagged(d, table)

    run("ds", ds)

    def cascade():
        d, table = samples.random_langlands(rng)
        return checks.cascade_invariant(d, table)

    run("cascade", cascade)
    ds_all = list(samples.exhaustive_ds(lifts, max_atoms=2))

    def lift():
        d = rng.choice(ds_all)
        return checks.ds_round_trip(d, lifts) and checks.gamma_holds(d, lift_ds(d, lifts), lifts)

    run("lift", lift)

    def params():
        p = samples.random_parameter(rng, lifts)
        ok = checks.parameter_paths_agree(p, lifts) and checks.decompose_reassemble(p)
        if p.group.family in (Family.SO_even_split, Family.SO_even_qs):
            ok = ok and checks.canon_stable(p, {a.id: a for a in samples.GALOIS_ATOMS})
        return ok

    run("params", params)
    return suites


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _common(p: argparse.ArgumentParser, *flags: str) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    for f in flags:
        p.add_argument(f"--{f}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genera", description="Segment combinatorics, Jacquet modules and lifting for p-adic groups.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", help="classify a group-side datum or a parameter")
    _common(p, "input", "table", "base-lifts")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("mu-star", help="Jacquet ledger of an induced representation")
    _common(p, "input", "group", "slice")
    p.add_argument("--rank", type=int)
    p.add_argument("--induced", required=True, help='e.g. "d([0,1]@t) x base(s0)"')
    p.add_argument("--normalize", action="store_true", help="bring second slots to Weyl normal form")
    p.set_defaults(fn=cmd_mu_star)

    p = sub.add_parser("irreducible", help="decide irreducibility of a standard module")
    _common(p, "input", "table", "base-lifts")
    p.set_defaults(fn=cmd_irreducible)

    for name, fn in (("lift", cmd_lift), ("descend", cmd_descend)):
        p = sub.add_parser(name, help=f"{name} a datum")
        _common(p, "input", "base-lifts")
        p.add_argument("--level", choices=("ds", "tempered", "generic"), default="ds")
        p.set_defaults(fn=fn)

    p = sub.add_parser("param", help="parameter operations")
    p.add_argument("action", choices=("classify", "decompose", "canon", "to-rep"))
    _common(p, "input", "base-lifts")
    p.set_defaults(fn=cmd_param)

    p = sub.add_parser("gamma-check", help="compare gamma bags of a group datum and an H_N datum")
    _common(p, "left", "right", "base-lifts")
    p.set_defaults(fn=cmd_gamma_check)

    p = sub.add_parser("selftest", help="run the randomized invariant suites (seed from GENERA_SEED)")
    _common(p)
    p.add_argument("--trials", type=int, default=40)
    p.set_defaults(fn=cmd_selftest)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    fmt, out = "text", None
    try:
        args = parser.parse_args(argv)
        fmt, out = args.format, args.out
        res = args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"genera: usage error: {exc}\n")
        return EXIT_PARSE
    except ParseError as exc:
        res = Result(EXIT_PARSE, {"error": exc.code, "message": exc.message}, [f"error {exc.code}: {exc.message}"])
    except GeneraError as exc:
        res = Result(EXIT_INVALID, {"error": exc.code, "message": exc.message}, [f"error {exc.code}: {exc.message}"])
    except (KeyError, ValueError, TypeError) as exc:
        res = Result(EXIT_PARSE, {"error": "ParseError", "message": str(exc)}, [f"error ParseError: {exc}"])
    if fmt == "json":
        payload = dict(res.payload)
        payload["exit"] = res.code
        text = dumps(payload) + "\n"
    else:
        text = "\n".join(res.lines) + "\n"
    if res.code == EXIT_PARSE and not out:
        sys.stderr.write(text)
    else:
        _emit(text, out)
    return res.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
