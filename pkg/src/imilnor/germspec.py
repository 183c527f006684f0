"""Reading and writing germ specification files.

A file holds one or more ``germ`` blocks::

    # the F4 germ and a stabilisation of it
    germ F4 {
      n=2 p=3
      vars=[x, z]
      comps=["z^2", "z^5 + x^3*z"]
      stab { param=s comps=["z^2", "z^5 + x*s*z^3 + (x^3 - 5*x*s - s)*z"] }
      expect { mu_image=4 mu_slice=2 sigma=6 }
    }

The last entry of ``vars`` is the corank variable ``z``; the others are the
unfolding coordinates ``x``.  ``comps`` lists ``h_n, ..., h_p``; the
components ``x`` are implicit.  Values inside ``expect`` are integers,
rationals ``a/b`` or quoted polynomials.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .multipoints import MapGerm
from .parse import ParseError, parse_polynomial
from .poly import Polynomial
from .stabilisation import StabilisationFamily

ExpectValue = Union[int, Fraction, Polynomial]


class SpecSemanticError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{where}{message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class StabSpec:
    param: str
    comps: Tuple[Polynomial, ...]


@dataclass(frozen=True)
class GermSpec:
    name: str
    n: int
    p: int
    variables: Tuple[str, ...]
    comps: Tuple[Polynomial, ...]
    stab: Optional[StabSpec] = None
    expect: Dict[str, ExpectValue] = field(default_factory=dict)

    def germ(self) -> MapGerm:
        return MapGerm(self.n, self.p, self.variables[:-1], self.variables[-1], self.comps, self.name)

    def family(self) -> Optional[StabilisationFamily]:
        if self.stab is None:
            return None
        return StabilisationFamily(self.germ(), self.stab.param, self.stab.comps)


# lexer ------------------------------------------------------------------------

_LEX = re.compile(
    r"""
    (?P<WS>[ \t\r]+) |
    (?P<NL>\n) |
    (?P<COMMENT>\#[^\n]*) |
    (?P<STRING>"[^"\n]*") |
    (?P<NUMBER>-?\d+(?:/\d+)?) |
    (?P<IDENT>[A-Za-z_][A-Za-z_0-9\-]*) |
    (?P<PUNCT>[{}\[\]=,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> List[_Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "NL":
            line += 1
            line_start = m.end()
        elif kind not in ("WS", "COMMENT"):
            out.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(_Tok("END", "", line, pos - line_start + 1))
    return out


class _SpecParser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None, text: Optional[str] = None) -> _Tok:
        t = self.tok
        if (kind and t.kind != kind) or (text is not None and t.text != text):
            want = repr(text) if text is not None else kind.lower()
            raise ParseError(f"expected {want}, found {t.text or 'end of input'!r}", t.line, t.col)
        self.i += 1
        return t

    def parse_all(self) -> List[GermSpec]:
        specs = []
        while self.tok.kind != "END":
            specs.append(self.germ())
        if not specs:
            raise ParseError("no germ block found", self.tok.line, self.tok.col)
        return specs

    def block(self) -> Dict[str, Tuple[_Tok, object]]:
        """``{ key=value ... }`` where values are scalars, lists or nested blocks."""
        self.take("PUNCT", "{")
        entries: Dict[str, Tuple[_Tok, object]] = {}
        while not (self.tok.kind == "PUNCT" and self.tok.text == "}"):
            key = self.take("IDENT")
            if self.tok.kind == "PUNCT" and self.tok.text == "{":
                value: object = self.block()
            else:
                self.take("PUNCT", "=")
                value = self.value()
            if key.text in entries:
                raise ParseError(f"duplicate key {key.text!r}", key.line, key.col)
            entries[key.text] = (key, value)
        self.take("PUNCT", "}")
        return entries

    def value(self):
        t = self.tok
        if t.kind == "PUNCT" and t.text == "[":
            self.take()
            items = []
            while not (self.tok.kind == "PUNCT" and self.tok.text == "]"):
                items.append(self.scalar())
                if self.tok.kind == "PUNCT" and self.tok.text == ",":
                    self.take()
                elif not (self.tok.kind == "PUNCT" and self.tok.text == "]"):
                    raise ParseError(f"expected ',' or ']', found {self.tok.text!r}", self.tok.line, self.tok.col)
            self.take("PUNCT", "]")
            return items
        return self.scalar()

    def scalar(self) -> _Tok:
        t = self.tok
        if t.kind in ("STRING", "NUMBER", "IDENT"):
            return self.take()
        raise ParseError(f"expected a value, found {t.text or 'end of input'!r}", t.line, t.col)

    def germ(self) -> GermSpec:
        self.take("IDENT", "germ")
        name = self.take("IDENT")
        start = name
        entries = self.block()
        return _build(name.text, start, entries)


def _need(entries, key: str, where: _Tok):
    if key not in entries:
        raise SpecSemanticError(f"missing {key!r}", where.line, where.col)
    return entries[key]


def _int(tok_val, key: str) -> int:
    key_tok, v = tok_val
    if not isinstance(v, _Tok) or v.kind != "NUMBER" or "/" in v.text:
        raise SpecSemanticError(f"{key} must be an integer", key_tok.line, key_tok.col)
    return int(v.text)


def _poly_from(tok: _Tok, allowed) -> Polynomial:
    if tok.kind != "STRING":
        raise SpecSemanticError("polynomials must be quoted strings", tok.line, tok.col)
    try:
        return parse_polynomial(tok.text[1:-1], allowed, line=tok.line, column=tok.col + 1)
    except ParseError as exc:
        if exc.message.startswith("unknown variable"):
            raise SpecSemanticError(exc.message, exc.line, exc.column) from None
        raise


def _build(name: str, start: _Tok, entries) -> GermSpec:
    known = {"n", "p", "vars", "comps", "stab", "expect"}
    for key, (kt, _) in entries.items():
        if key not in known:
            raise SpecSemanticError(f"unknown key {key!r}", kt.line, kt.col)
    n = _int(_need(entries, "n", start), "n")
    p = _int(_need(entries, "p", start), "p")
    vkey, vlist = _need(entries, "vars", start)
    if not isinstance(vlist, list) or not all(t.kind == "IDENT" for t in vlist):
        raise SpecSemanticError("vars must be a list of identifiers", vkey.line, vkey.col)
    variables = tuple(t.text for t in vlist)
    if len(set(variables)) != len(variables):
        raise SpecSemanticError("vars must be distinct", vkey.line, vkey.col)
    if not p > n >= 1:
        raise SpecSemanticError(f"need p > n >= 1, got n={n}, p={p}", start.line, start.col)
    if len(variables) != n:
        raise SpecSemanticError(f"need {n} source variables, got {len(variables)}", vkey.line, vkey.col)
    ckey, clist = _need(entries, "comps", start)
    if not isinstance(clist, list):
        raise SpecSemanticError("comps must be a list", ckey.line, ckey.col)
    if len(clist) != p - n + 1:
        raise SpecSemanticError(
            f"a germ C^{n} -> C^{p} in normal form needs {p - n + 1} components after the unfolding "
            f"variables, got {len(clist)}",
            ckey.line,
            ckey.col,
        )
    comps = tuple(_poly_from(t, variables) for t in clist)
    for t, h in zip(clist, comps):
        if h.constant_term() != 0:
            raise SpecSemanticError(f"component {h} does not vanish at the origin", t.line, t.col)

    stab = None
    if "stab" in entries:
        skey, sblock = entries["stab"]
        if not isinstance(sblock, dict):
            raise SpecSemanticError("stab must be a block", skey.line, skey.col)
        pkey, ptok = _need(sblock, "param", skey)
        if not isinstance(ptok, _Tok) or ptok.kind != "IDENT":
            raise SpecSemanticError("param must be an identifier", pkey.line, pkey.col)
        if ptok.text in variables:
            raise SpecSemanticError(f"parameter {ptok.text!r} clashes with a source variable", ptok.line, ptok.col)
        sckey, sclist = _need(sblock, "comps", skey)
        if not isinstance(sclist, list) or len(sclist) != len(comps):
            raise SpecSemanticError(f"stab needs {len(comps)} components", sckey.line, sckey.col)
        scomps = tuple(_poly_from(t, variables + (ptok.text,)) for t in sclist)
        for t, h, h0 in zip(sclist, scomps, comps):
            if h.subs({ptok.text: 0}) != h0:
                raise SpecSemanticError(f"stabilisation component does not restrict to {h0} at {ptok.text}=0", t.line, t.col)
        stab = StabSpec(ptok.text, scomps)

    expect: Dict[str, ExpectValue] = {}
    if "expect" in entries:
        ekey, eblock = entries["expect"]
        if not isinstance(eblock, dict):
            raise SpecSemanticError("expect must be a block", ekey.line, ekey.col)
        poly_vars = variables + ((stab.param,) if stab else ())
        for key, (kt, v) in eblock.items():
            if not isinstance(v, _Tok):
                raise SpecSemanticError(f"expected value for {key!r} must be a scalar", kt.line, kt.col)
            if v.kind == "NUMBER":
                num = Fraction(v.text)
                expect[key] = int(num) if num.denominator == 1 else num
            elif v.kind == "STRING":
                expect[key] = _poly_from(v, poly_vars)
            else:
                raise SpecSemanticError(f"bad expected value for {key!r}", v.line, v.col)

    spec = GermSpec(name, n, p, variables, comps, stab, expect)
    try:
        spec.germ()
    except ValueError as exc:
        raise SpecSemanticError(str(exc), start.line, start.col) from None
    return spec


def parse_germ_specs(text: str) -> List[GermSpec]:
    return _SpecParser(text).parse_all()


def parse_germ_spec(text: str) -> GermSpec:
    """Parse text holding exactly one germ block.

    >>> spec = parse_germ_spec('germ E6 { n=1 p=2 vars=[z] comps=["z^3","z^4"] }')
    >>> str(spec.germ())
    '(z) -> (z^3, z^4)'
    """
    specs = parse_germ_specs(text)
    if len(specs) != 1:
        raise ParseError(f"expected one germ block, found {len(specs)}")
    return specs[0]


def _fmt_value(v: ExpectValue) -> str:
    if isinstance(v, Polynomial):
        return f'"{v}"'
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def format_germ_spec(spec: GermSpec) -> str:
    lines = [f"germ {spec.name} {{", f"  n={spec.n} p={spec.p}"]
    lines.append("  vars=[" + ", ".join(spec.variables) + "]")
    lines.append("  comps=[" + ", ".join(f'"{c}"' for c in spec.comps) + "]")
    if spec.stab:
        comps = ", ".join(f'"{c}"' for c in spec.stab.comps)
        lines.append(f"  stab {{ param={spec.stab.param} comps=[{comps}] }}")
    if spec.expect:
        lines.append("  expect {")
        for k, v in spec.expect.items():
            lines.append(f"    {k}={_fmt_value(v)}")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
