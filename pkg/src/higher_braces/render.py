"""Deterministic text, LaTeX and JSON rendering of expressions.

Terms appear in canonical word order in every format, so identical inputs
render byte-identically.  The JSON form round-trips exactly: it carries a
degree table for the generators alongside the structural atom tree.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Atom, Expr, Gen, Nabla, word_key
from .errors import UsageError

TEXT = "text"
LATEX = "latex"
JSON = "json"
FORMATS = (TEXT, LATEX, JSON)


def _atom_text(atom: Atom) -> str:
    if isinstance(atom, Gen):
        return f"a{atom.index}"
    return "∇(" + _word_text(atom.word) + ")"


def _word_text(word) -> str:
    return " ".join(_atom_text(a) for a in word)


def _atom_latex(atom: Atom) -> str:
    if isinstance(atom, Gen):
        return f"a_{{{atom.index}}}"
    return r"\nabla(" + _word_latex(atom.word) + ")"


def _word_latex(word) -> str:
    return " ".join(_atom_latex(a) for a in word)


def _coeff_text(c: Fraction) -> str:
    return str(c)


def _coeff_latex(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return sign + r"\tfrac{%d}{%d}" % (abs(c.numerator), c.denominator)


def _join_terms(pieces: list[tuple[Fraction, str]], coeff_fmt) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (coeff, body) in enumerate(pieces):
        mag = abs(coeff)
        prefix = "" if mag == 1 else f"{coeff_fmt(mag)} "
        if k == 0:
            lead = "-" if coeff < 0 else ""
            out.append(f"{lead}{prefix}{body}")
        else:
            sep = " - " if coeff < 0 else " + "
            out.append(f"{sep}{prefix}{body}")
    return "".join(out)


def render_text(expr: Expr) -> str:
    pieces = [
        (c, _word_text(w))
        for w, c in sorted(expr.terms.items(), key=lambda kv: word_key(kv[0]))
    ]
    return _join_terms(pieces, _coeff_text)


def render_latex(expr: Expr) -> str:
    pieces = [
        (c, _word_latex(w))
        for w, c in sorted(expr.terms.items(), key=lambda kv: word_key(kv[0]))
    ]
    return _join_terms(pieces, _coeff_latex)


def _atom_obj(atom: Atom):
    if isinstance(atom, Gen):
        return {"gen": atom.index}
    return {"nabla": [_atom_obj(a) for a in atom.word]}


def _collect_degrees(atom: Atom, degrees: dict) -> None:
    if isinstance(atom, Gen):
        degrees[str(atom.index)] = atom.degree
    else:
        for a in atom.word:
            _collect_degrees(a, degrees)


def render_json(expr: Expr) -> str:
    degrees: dict = {}
    terms = []
    for word, coeff in sorted(expr.terms.items(), key=lambda kv: word_key(kv[0])):
        for atom in word:
            _collect_degrees(atom, degrees)
        terms.append(
            {"coeff": str(coeff), "word": [_atom_obj(a) for a in word]}
        )
    doc = {"flavor": expr.flavor, "degrees": degrees, "terms": terms}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _obj_atom(obj, degrees: dict) -> Atom:
    if not isinstance(obj, dict):
        raise UsageError(f"malformed atom {obj!r}")
    if "gen" in obj:
        index = int(obj["gen"])
        return Gen(index, int(degrees.get(str(index), 0)))
    if "nabla" in obj:
        return Nabla(tuple(_obj_atom(a, degrees) for a in obj["nabla"]))
    raise UsageError(f"malformed atom {obj!r}")


def parse_json(text: str) -> Expr:
    try:
        doc = json.loads(text)
        flavor = doc["flavor"]
        degrees = doc.get("degrees", {})
        raw = [
            (
                tuple(_obj_atom(a, degrees) for a in term["word"]),
                Fraction(term["coeff"]),
            )
            for term in doc["terms"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed expression document: {exc}") from exc
    return Expr.from_terms(flavor, raw)


def render(expr: Expr, fmt: str) -> str:
    if fmt == TEXT:
        return render_text(expr)
    if fmt == LATEX:
        return render_latex(expr)
    if fmt == JSON:
        return render_json(expr)
    raise UsageError(f"unknown format {fmt!r}")
