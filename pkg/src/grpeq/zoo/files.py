"""JSON group files.

A document is an object with a ``kind`` tag and kind-specific fields::

    finite        {"perms": [[2, 1], ...]} or {"table": [[0, 1], [1, 0]]}
    free_abelian  {"rank": r}
    free          {"rank": r, "bound": B, "names": ["a", "b"]}
    product       {"factors": [doc, ...]}
    extension     {"base": doc, "quotient": {"perms": [...], "labels": {...}},
                   "action": [{"q": qlit, "auto": auto}],
                   "cocycle": [{"p": qlit, "q": qlit, "value": literal}]}

Any document may carry ``labels`` (name -> element literal),
``automorphisms`` (name -> automorphism) and ``recsets`` (name -> list of
boxes).  The canonical form is ``json.dumps(doc, sort_keys=True, indent=2)``.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..combinators import (DirectProduct, ExtBox, Extension, ExtensionAuto, Finite, FiniteAuto,
                           FiniteBox, Free, FreeAbelian, FreeAuto, FreeBox, GroupStructure,
                           MatrixAuto, ProductAuto, ProductBox, RecSet)
from ..combinators.structures import quotient_from_literal
from ..core import GroupEqError
from ..freegrp import FiniteQuotientHom
from ..lattice import CongruenceBox
from ..permfin import Perm, closure, from_table

KINDS = ("finite", "free_abelian", "free", "product", "extension")


class GroupFileError(GroupEqError):
    """Malformed group document; the message carries a location."""


def dumps(G: GroupStructure) -> str:
    return json.dumps(to_doc(G), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> GroupStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_doc(doc)


def save_group(G: GroupStructure, path) -> None:
    Path(path).write_text(dumps(G), encoding="utf-8")


def load_group(path) -> GroupStructure:
    return loads(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# finite groups


def _finite_group_doc(FG) -> dict:
    if FG.source_perms is not None:
        degree = FG.elements[0].degree
        return {"perms": [p.one_based() for p in FG.source_perms], "degree": degree}
    return {"table": FG.table.tolist()}


def _finite_group(doc: dict, where: str):
    if "perms" in doc:
        perms = [Perm.from_one_based(p) for p in doc["perms"]]
        return closure(perms, degree=doc.get("degree"))
    if "table" in doc:
        return from_table(doc["table"])
    raise GroupFileError(f"{where}: finite group needs 'perms' or 'table'")


# --------------------------------------------------------------------------
# automorphisms


def auto_to_doc(G: GroupStructure, f):
    if f is None:
        return None
    f = G.normalize_auto(f)
    if isinstance(G, Finite):
        return {"table": list(f.table)}
    if isinstance(G, FreeAbelian):
        return {"matrix": [list(r) for r in f.matrix]}
    if isinstance(G, Free):
        return {"images": [G.to_literal(w) for w in f.images]}
    if isinstance(G, DirectProduct):
        return {"perm": list(f.perm),
                "components": [auto_to_doc(G.factors[f.perm[i]], c)
                               for i, c in enumerate(f.components)]}
    if isinstance(G, Extension):
        return {"qmap": [_q_literal(G, q) for q in f.qmap],
                "shifts": [G.base.to_literal(k) for k in f.shifts],
                "base": auto_to_doc(G.base, f.base_auto)}
    raise GroupFileError(f"cannot serialise automorphisms of {G.kind}")


def auto_from_doc(G: GroupStructure, doc, where: str):
    if doc is None:
        return None
    try:
        if isinstance(G, Finite):
            return FiniteAuto(tuple(int(x) for x in doc["table"]))
        if isinstance(G, FreeAbelian):
            return MatrixAuto(tuple(tuple(int(x) for x in r) for r in doc["matrix"]))
        if isinstance(G, Free):
            return FreeAuto(tuple(G.from_literal(w) for w in doc["images"]))
        if isinstance(G, DirectProduct):
            perm = tuple(int(x) for x in doc["perm"])
            comps = tuple(auto_from_doc(G.factors[perm[i]], c, f"{where}.components[{i}]")
                          for i, c in enumerate(doc["components"]))
            return ProductAuto(perm, comps)
        if isinstance(G, Extension):
            qmap = tuple(quotient_from_literal(G.quotient, q, G.quotient_labels)
                         for q in doc["qmap"])
            shifts = tuple(G.base.from_literal(k) for k in doc["shifts"])
            return ExtensionAuto(qmap, shifts, auto_from_doc(G.base, doc.get("base"),
                                                             f"{where}.base"), G.base)
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupFileError(f"{where}: bad automorphism ({exc})") from None
    raise GroupFileError(f"{where}: cannot read automorphisms of {G.kind}")


# --------------------------------------------------------------------------
# recognisable sets


def box_to_doc(G: GroupStructure, box):
    if box is None:
        return None
    if isinstance(G, Finite):
        return {"elements": [G.to_literal(x) for x in sorted(box.elements)]}
    if isinstance(G, FreeAbelian):
        return {"residue": list(box.residue), "basis": [list(b) for b in box.basis]}
    if isinstance(G, Free):
        H = box.hom.group
        return {"targets": [H.elements[t].one_based() for t in box.hom.targets],
                "allowed": sorted(H.elements[a].one_based() for a in box.allowed)}
    if isinstance(G, DirectProduct):
        return {"components": [box_to_doc(F, b) for F, b in zip(G.factors, box.components)]}
    if isinstance(G, Extension):
        return {"q": _q_literal(G, box.q), "k": box_to_doc(G.base, box.k)}
    raise GroupFileError(f"cannot serialise boxes of {G.kind}")


def box_from_doc(G: GroupStructure, doc, where: str):
    if doc is None:
        return None
    try:
        if isinstance(G, Finite):
            return FiniteBox(frozenset(G.from_literal(x) for x in doc["elements"]))
        if isinstance(G, FreeAbelian):
            return CongruenceBox(tuple(doc["residue"]), tuple(tuple(b) for b in doc["basis"]))
        if isinstance(G, Free):
            perms = [Perm.from_one_based(p) for p in doc["targets"]]
            H = closure(perms)
            hom = FiniteQuotientHom(H, tuple(H.index_of(p) for p in perms))
            allowed = frozenset(H.index_of(Perm.from_one_based(p)) for p in doc["allowed"])
            return FreeBox(hom, allowed)
        if isinstance(G, DirectProduct):
            comps = doc["components"]
            if len(comps) != len(G.factors):
                raise ValueError("wrong number of components")
            return ProductBox(tuple(box_from_doc(F, b, f"{where}.components[{i}]")
                                    for i, (F, b) in enumerate(zip(G.factors, comps))))
        if isinstance(G, Extension):
            q = quotient_from_literal(G.quotient, doc["q"], G.quotient_labels)
            return ExtBox(q, box_from_doc(G.base, doc.get("k"), f"{where}.k"))
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupFileError(f"{where}: bad box ({exc})") from None
    raise GroupFileError(f"{where}: cannot read boxes of {G.kind}")


# --------------------------------------------------------------------------
# structures


def _quotient_element(Q, q: int):
    return Q.elements[q].one_based() if isinstance(Q.elements[q], Perm) else q


def _q_literal(G: Extension, q: int):
    for name in sorted(G.quotient_labels):
        if G.quotient_labels[name] == q:
            return name
    return _quotient_element(G.quotient, q)


def to_doc(G: GroupStructure) -> dict:
    if isinstance(G, Finite):
        doc = {"kind": "finite", **_finite_group_doc(G.group)}
    elif isinstance(G, FreeAbelian):
        doc = {"kind": "free_abelian", "rank": G.rank}
    elif isinstance(G, Free):
        doc = {"kind": "free", "rank": G.rank, "bound": G.bound, "names": list(G.names)}
    elif isinstance(G, DirectProduct):
        doc = {"kind": "product", "factors": [to_doc(F) for F in G.factors]}
    elif isinstance(G, Extension):
        Q = G.quotient
        quot = _finite_group_doc(Q)
        if G.quotient_labels:
            quot["labels"] = {k: _quotient_element(Q, v) for k, v in G.quotient_labels.items()}
        doc = {"kind": "extension", "base": to_doc(G.base), "quotient": quot,
               "action": [{"q": _q_literal(G, q), "auto": auto_to_doc(G.base, a)}
                          for q, a in enumerate(G.action) if a is not None],
               "cocycle": [{"p": _q_literal(G, p), "q": _q_literal(G, q),
                            "value": G.base.to_literal(c)}
                           for (p, q), c in sorted(G.cocycle.items())
                           if not G.base.is_identity(c)]}
    else:
        raise GroupFileError(f"cannot serialise {type(G).__name__}")
    if G.labels:
        doc["labels"] = {k: G.to_literal(v) for k, v in G.labels.items()}
    if G.automorphisms:
        doc["automorphisms"] = {k: auto_to_doc(G, f) for k, f in G.automorphisms.items()}
    if G.recsets:
        doc["recsets"] = {k: [box_to_doc(G, b) for b in r.boxes] for k, r in G.recsets.items()}
    return doc


def _need(doc: dict, key: str, where: str):
    if key not in doc:
        raise GroupFileError(f"{where}: missing field {key!r}")
    return doc[key]


def from_doc(doc, where: str = "$") -> GroupStructure:
    if not isinstance(doc, dict):
        raise GroupFileError(f"{where}: expected an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise GroupFileError(f"{where}: unknown kind {kind!r}")
    if kind == "finite":
        G: GroupStructure = Finite(_finite_group(doc, where))
    elif kind == "free_abelian":
        G = FreeAbelian(int(_need(doc, "rank", where)))
    elif kind == "free":
        G = Free(int(_need(doc, "rank", where)), int(doc.get("bound", 4)), doc.get("names"))
    elif kind == "product":
        G = DirectProduct([from_doc(f, f"{where}.factors[{i}]")
                           for i, f in enumerate(_need(doc, "factors", where))])
    else:
        G = _extension_from_doc(doc, where)
    try:
        for name, lit in doc.get("labels", {}).items():
            G.labels[name] = G.from_literal(lit)
    except (TypeError, ValueError) as exc:
        raise GroupFileError(f"{where}.labels: {exc}") from None
    for name, a in doc.get("automorphisms", {}).items():
        G.register_automorphism(name, auto_from_doc(G, a, f"{where}.automorphisms.{name}"))
    for name, boxes in doc.get("recsets", {}).items():
        G.recsets[name] = RecSet(tuple(box_from_doc(G, b, f"{where}.recsets.{name}[{i}]")
                                       for i, b in enumerate(boxes)))
    return G


def _extension_from_doc(doc: dict, where: str) -> Extension:
    base = from_doc(_need(doc, "base", where), f"{where}.base")
    qdoc = _need(doc, "quotient", where)
    Q = _finite_group(qdoc, f"{where}.quotient")
    qlabels = {}
    for name, lit in qdoc.get("labels", {}).items():
        try:
            qlabels[name] = quotient_from_literal(Q, lit)
        except (TypeError, ValueError) as exc:
            raise GroupFileError(f"{where}.quotient.labels: {exc}") from None
    def qlit(x, at):
        try:
            return quotient_from_literal(Q, x, qlabels)
        except (ValueError, TypeError) as exc:
            raise GroupFileError(f"{at}: {exc}") from None

    action: list = [None] * Q.order
    for i, entry in enumerate(doc.get("action", [])):
        at = f"{where}.action[{i}]"
        action[qlit(_need(entry, "q", at), at)] = auto_from_doc(base, entry.get("auto"), at)
    cocycle = {}
    for i, entry in enumerate(doc.get("cocycle", [])):
        at = f"{where}.cocycle[{i}]"
        p, q = qlit(_need(entry, "p", at), at), qlit(_need(entry, "q", at), at)
        try:
            cocycle[(p, q)] = base.from_literal(_need(entry, "value", at))
        except (TypeError, ValueError) as exc:
            raise GroupFileError(f"{at}: {exc}") from None
    G = Extension(base, Q, action, cocycle)
    G.quotient_labels = qlabels
    return G
