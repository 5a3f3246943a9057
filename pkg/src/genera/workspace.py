"""JSON loading and dumping of atoms, bases, tables, base lifts and data.

A workspace is the union of one or more JSON documents.  Each document may
carry any of the keys ``character_relations``, ``atoms``, ``galois_atoms``,
``bases``, ``table``, ``base_lifts`` and ``datum``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .classify import (
    DiscreteSeriesDatum,
    LanglandsDatum,
    ReducibilityEntry,
    ReducibilityTable,
    TemperedDatum,
)
from .errors import GeneraError, ParseError
from .groups import (
    BaseRep,
    CharacterSymbol,
    CuspidalAtom,
    Family,
    GroupFamily,
    Kind,
    exponent,
    pole_type,
    render_exponent,
)
from .lifting import BaseLiftTable, HNRepDatum
from .params import GaloisAtom, ParameterSummand, WeilParameter
from .segments import Multisegment, Segment, parse_atom_ref, parse_segment, segment_from_json


def read_json(path: str | Path) -> Any:
    """Parse a JSON file; syntax errors become ParseError with the position."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _req(obj: dict, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{what}: missing field {key!r}")
    return obj[key]


@dataclass
class Workspace:
    orders: dict = field(default_factory=lambda: {"eta": 2})
    atoms: dict = field(default_factory=dict)
    galois: dict = field(default_factory=dict)
    bases: dict = field(default_factory=dict)
    table: ReducibilityTable | None = None
    lifts: BaseLiftTable | None = None
    datum: Any = None

    # ------------------------------------------------------------------ loading

    @classmethod
    def load(cls, docs: Iterable[Any]) -> "Workspace":
        ws = cls()
        docs = list(docs)
        for d in docs:
            ws._relations(d)
        for d in docs:
            ws._atoms(d)
        for d in docs:
            ws._bases(d)
        for d in docs:
            ws._tables(d)
        for d in docs:
            if isinstance(d, dict) and "datum" in d:
                ws.datum = d["datum"]
        return ws

    @classmethod
    def from_files(cls, paths: Iterable[str | Path]) -> "Workspace":
        return cls.load(read_json(p) for p in paths if p)

    def _relations(self, d):
        for r in d.get("character_relations", []) if isinstance(d, dict) else []:
            self.orders[str(_req(r, "gen", "relation"))] = int(_req(r, "order", "relation"))

    def character(self, text) -> CharacterSymbol:
        return CharacterSymbol.parse(str(text), self.orders)

    def _atoms(self, d):
        if not isinstance(d, dict):
            return
        for a in d.get("atoms", []):
            aid = str(_req(a, "id", "atom"))
            dual = str(a.get("dual", aid))
            omega = None
            if a.get("omega") is not None:
                omega = self.character(a["omega"])
            elif dual == aid:
                self.orders.setdefault(f"w[{aid}]", 2)
            atom = CuspidalAtom(aid, int(a.get("gl_rank", 1)), dual, pole_type(a.get("pole_type")), omega)
            self.atoms[aid] = atom
            if dual != aid and dual not in self.atoms:
                self.atoms[dual] = atom.dual()
        for a in d.get("galois_atoms", []):
            aid = str(_req(a, "id", "galois atom"))
            det = self.character(a["det"]) if a.get("det") is not None else None
            atom = GaloisAtom(aid, int(a.get("dim", 1)), bool(a.get("bounded", True)), a.get("dual", aid),
                              a.get("pole_type"), det, a.get("c_image"))
            self.galois[aid] = atom
            if not atom.is_self_dual and atom.dual_id not in self.galois:
                self.galois[atom.dual_id] = atom.dual()

    def _bases(self, d):
        if not isinstance(d, dict):
            return
        for b in d.get("bases", []):
            bid = str(_req(b, "id", "base"))
            omega = self.character(b["omega"]) if b.get("omega") is not None else None
            self.bases[bid] = BaseRep.make(
                bid, Family(_req(b, "family", "base")), int(b.get("rank", 0)), eps=str(b.get("eps", "0")),
                omega=omega, c_fixed=b.get("c_fixed"), generic=bool(b.get("generic", True)))

    def _tables(self, d):
        entries = d.get("table") if isinstance(d, dict) else None
        if entries is not None:
            self.table = self.table or ReducibilityTable()
            for e in entries:
                self.table.add(ReducibilityEntry(self.atom(_req(e, "atom", "entry")), self.base(_req(e, "base", "entry")),
                                                 Kind(_req(e, "kind", "entry"))))
        lifts = d.get("base_lifts") if isinstance(d, dict) else None
        if lifts is not None:
            self.lifts = self.lifts or BaseLiftTable()
            for e in lifts:
                self.lifts.add(self.base(_req(e, "base", "lift")), [self.atom(x) for x in _req(e, "atoms", "lift")])

    # --------------------------------------------------------------- resolution

    def atom(self, text) -> CuspidalAtom:
        def resolve(name):
            if name not in self.atoms:
                raise ParseError(f"unknown atom {name!r}")
            return self.atoms[name]

        return parse_atom_ref(str(text), resolve, self.orders)

    def galois_atom(self, name) -> GaloisAtom:
        if name not in self.galois:
            raise ParseError(f"unknown galois atom {name!r}")
        return self.galois[name]

    def base(self, text) -> BaseRep:
        text = str(text).strip()
        mark = "e"
        for pre in ("c·", "c*", "c."):
            if text.startswith(pre):
                mark, text = "c", text[len(pre):]
        if text not in self.bases:
            raise ParseError(f"unknown base {text!r}")
        b = self.bases[text]
        return b.c_act() if mark == "c" else b

    def segment(self, obj) -> Segment:
        if isinstance(obj, str):
            return parse_segment(obj, lambda n: self.atom(n), self.orders)
        return segment_from_json(obj, lambda n: self.atom(n), self.orders)

    def segments(self, objs) -> list:
        return [self.segment(o) for o in objs or []]

    def reducibility(self) -> ReducibilityTable:
        if self.table is not None:
            return self.table
        if self.lifts is not None:
            from .lifting import table_from_lift

            return table_from_lift(self.lifts)
        raise ParseError("a reducibility table or base lifts are required")

    def base_lifts(self) -> BaseLiftTable:
        if self.lifts is None:
            raise ParseError("base lifts are required")
        return self.lifts

    # -------------------------------------------------------------------- data

    def parse_datum(self, obj: Any = None):
        obj = self.datum if obj is None else obj
        if obj is None:
            raise ParseError("no datum given")
        if not isinstance(obj, dict):
            raise ParseError("a datum must be a JSON object")
        kind = obj.get("kind")
        if kind is None and "summands" in obj:
            kind = "parameter"
        if kind == "base":
            return self.base(_req(obj, "base", "base datum"))
        if kind == "ds":
            return self._ds(obj)
        if kind == "tempered":
            return self._tempered(obj)
        if kind == "langlands":
            temp = _req(obj, "temp", "langlands datum")
            return LanglandsDatum(tuple(self.segments(obj.get("std"))), self._tempered(temp))
        if kind == "hn":
            group = GroupFamily(Family(_req(obj, "group", "hn datum")), int(_req(obj, "rank", "hn datum")))
            return HNRepDatum(group, Multisegment(self.segments(obj.get("balanced"))), tuple(self.segments(obj.get("std"))))
        if kind == "parameter":
            return self._parameter(obj)
        raise ParseError(f"unknown datum kind {kind!r}")

    def _ds(self, obj) -> DiscreteSeriesDatum:
        base = self.base(_req(obj, "base", "ds datum"))
        if obj.get("c_mark") == "c":
            base = base.c_act()
        chi0 = self.character(obj.get("chi0", "1"))
        return DiscreteSeriesDatum(base, tuple(self.segments(obj.get("segments"))), chi0)

    def _tempered(self, obj) -> TemperedDatum:
        if obj.get("kind") == "ds":
            return TemperedDatum(self._ds(obj))
        return TemperedDatum(self._ds(_req(obj, "ds", "tempered datum")), tuple(self.segments(obj.get("balanced"))))

    def _parameter(self, obj) -> WeilParameter:
        group = GroupFamily(Family(_req(obj, "group", "parameter")), int(_req(obj, "rank", "parameter")))
        summands = []
        for s in _req(obj, "summands", "parameter"):
            summands.append(ParameterSummand(self.galois_atom(_req(s, "atom", "summand")), exponent(str(s.get("shift", "0"))),
                                             int(s.get("sl2_dim", 1)), int(s.get("mult", 1))))
        return WeilParameter(group, tuple(summands), bool(obj.get("c_class_rep", False)))

    # ----------------------------------------------------------------- dumping

    def to_json(self) -> dict:
        out: dict = {}
        orders = dict(self.orders)
        chars = [a.omega for a in self.atoms.values()] + [a.det_class for a in self.galois.values()]
        chars += [b.central_char for b in self.bases.values()]
        for ch in chars:
            for (name, order), _ in ch.monomial:
                if order:
                    orders[name] = order
        rel = sorted((g, o) for g, o in orders.items() if o)
        out["character_relations"] = [{"gen": g, "order": o} for g, o in rel]
        out["atoms"] = [atom_to_json(a) for _, a in sorted(self.atoms.items())]
        if self.galois:
            out["galois_atoms"] = [galois_to_json(a) for _, a in sorted(self.galois.items())]
        out["bases"] = [base_to_json(b) for _, b in sorted(self.bases.items())]
        if self.table is not None:
            out["table"] = [e.to_json() for e in self.table]
        if self.lifts is not None:
            out["base_lifts"] = [{"base": b.id, "atoms": [a.render() for a in atoms]} for b, atoms in self.lifts]
        return out


def atom_to_json(a: CuspidalAtom) -> dict:
    return {"id": a.id, "gl_rank": a.gl_rank, "dual": a.dual_id,
            "pole_type": a.pole_type.value if a.pole_type else None, "omega": a.omega.render()}


def galois_to_json(a: GaloisAtom) -> dict:
    return {"id": a.id, "dim": a.dim, "bounded": a.bounded, "dual": a.dual_id,
            "pole_type": a.pole_type.value if a.pole_type else None, "det": a.det_class.render(), "c_image": a.c_image}


def base_to_json(b: BaseRep) -> dict:
    out = {"id": b.id, "family": b.group.family.value, "rank": b.rank, "omega": b.central_char.unitary().render(),
           "c_fixed": b.c_fixed, "generic": b.generic, "eps": render_exponent(b.exponent)}
    return out


def _segs(segs) -> list:
    return [s.to_json() for s in segs]


def datum_to_json(obj) -> dict:
    """Inverse of Workspace.parse_datum."""
    if isinstance(obj, BaseRep):
        return {"kind": "base", "base": obj.render()}
    if isinstance(obj, DiscreteSeriesDatum):
        return {"kind": "ds", "base": obj.base.id, "c_mark": obj.base.c_mark, "chi0": obj.chi0.render(),
                "segments": _segs(obj.segments)}
    if isinstance(obj, TemperedDatum):
        return {"kind": "tempered", "ds": datum_to_json(obj.ds), "balanced": _segs(obj.balanced)}
    if isinstance(obj, LanglandsDatum):
        return {"kind": "langlands", "std": _segs(obj.std), "temp": datum_to_json(obj.temp)}
    if isinstance(obj, HNRepDatum):
        return {"kind": "hn", "group": obj.group.family.value, "rank": obj.group.rank,
                "balanced": _segs(obj.balanced), "std": _segs(obj.std)}
    if isinstance(obj, WeilParameter):
        out = obj.to_json()
        out["kind"] = "parameter"
        if obj.c_class_rep:
            out["c_class_rep"] = True
        return out
    raise GeneraError(f"cannot serialize {type(obj).__name__}")
