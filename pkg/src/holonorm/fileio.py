"""Text formats for fields, hypersurfaces and series.

Exact rational syntax "p/q" and coefficient "(re,im)" survive
serialization byte-for-byte; serialize(parse(x)) is the canonical form of
x (terms sorted by total degree, then exponents).

Field file:        Hypersurface file:      Series file:
  vars: z w          vars: z zbar u          vars: t
  cap: 10            cap: 10                 cap: 6
  dz:                (1/1,0/1) 1 1 1         (1/1,0/1) 1
  (0/1,1/1) 1 1
  dw:
  (1/1,0/1) 0 2
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Series
from .backend import GaussRational
from .errors import ParseError
from .field import JetMap, VectorField
from .hypersurface import HS_VARS, RealHypersurface
from .normalform import VF_VARS


def format_rational(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


def format_gauss(c: GaussRational) -> str:
    return f"({c.rn}/{c.rd},{c.imn}/{c.imd})"


def parse_rational(text: str, line=None) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}", line)


def parse_gauss(text: str, line=None) -> GaussRational:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"coefficient must look like (re,im), got {text!r}", line)
    body = text[1:-1]
    parts = body.split(",")
    if len(parts) != 2:
        raise ParseError(f"coefficient must have two parts, got {text!r}", line)
    return GaussRational(parse_rational(parts[0], line), parse_rational(parts[1], line))


def _parse_header(lines, expected_vars=None):
    """Returns (vars, cap, index of first body line)."""
    idx = 0
    vars_ = None
    cap = None
    while idx < len(lines) and (vars_ is None or cap is None):
        raw = lines[idx]
        stripped = raw.strip()
        idx += 1
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("vars:"):
            vars_ = tuple(stripped[len("vars:"):].split())
        elif stripped.startswith("cap:"):
            try:
                cap = int(stripped[len("cap:"):].strip())
            except ValueError:
                raise ParseError("cap must be an integer", idx)
        else:
            raise ParseError(f"expected header line, got {stripped!r}", idx)
    if vars_ is None or cap is None:
        raise ParseError("missing 'vars:' or 'cap:' header")
    if expected_vars is not None and vars_ != tuple(expected_vars):
        raise ParseError(f"expected variables {expected_vars}, got {vars_}")
    return vars_, cap, idx


def _parse_terms(lines, start, vars_, cap, stop_on_section=False):
    terms = {}
    idx = start
    while idx < len(lines):
        raw = lines[idx]
        stripped = raw.strip()
        if stop_on_section and stripped.endswith(":"):
            break
        idx += 1
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 1 + len(vars_):
            raise ParseError(
                f"term line needs a coefficient and {len(vars_)} exponents",
                idx,
            )
        coeff = parse_gauss(parts[0], idx)
        try:
            exps = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise ParseError("exponents must be integers", idx)
        if any(e < 0 for e in exps):
            raise ParseError("exponents must be nonnegative", idx)
        if exps in terms:
            raise ParseError(f"duplicate exponent tuple {exps}", idx)
        if sum(exps) > cap:
            raise ParseError(f"term {exps} exceeds the cap {cap}", idx)
        terms[exps] = coeff
    return terms, idx


def parse_series_text(text: str, expected_vars=None) -> Series:
    lines = text.splitlines()
    vars_, cap, idx = _parse_header(lines, expected_vars)
    terms, _ = _parse_terms(lines, idx, vars_, cap)
    return Series(vars_, cap, terms, exact=False)


def parse_field_text(text: str) -> VectorField:
    lines = text.splitlines()
    vars_, cap, idx = _parse_header(lines, VF_VARS)
    sections = {}
    while idx < len(lines):
        stripped = lines[idx].strip()
        idx += 1
        if not stripped or stripped.startswith("#"):
            continue
        if stripped in ("dz:", "dw:"):
            name = stripped[:-1]
            if name in sections:
                raise ParseError(f"duplicate section {stripped}", idx)
            terms, idx = _parse_terms(lines, idx, vars_, cap, stop_on_section=True)
            sections[name] = terms
        else:
            raise ParseError(f"expected 'dz:' or 'dw:', got {stripped!r}", idx)
    return VectorField(
        Series(vars_, cap, sections.get("dz", {}), exact=False),
        Series(vars_, cap, sections.get("dw", {}), exact=False),
    )


def parse_hypersurface_text(text: str) -> RealHypersurface:
    return RealHypersurface(parse_series_text(text, HS_VARS))


def parse_field(path) -> VectorField:
    with open(path, encoding="utf-8") as fh:
        return parse_field_text(fh.read())


def parse_hypersurface(path) -> RealHypersurface:
    with open(path, encoding="utf-8") as fh:
        return parse_hypersurface_text(fh.read())


def parse_series(path, expected_vars=None) -> Series:
    with open(path, encoding="utf-8") as fh:
        return parse_series_text(fh.read(), expected_vars)


def _sorted_terms(series: Series):
    return sorted(series.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))


def serialize_series(series: Series) -> str:
    out = [f"vars: {' '.join(series.vars)}", f"cap: {series.cap}"]
    for exps, coeff in _sorted_terms(series):
        out.append(f"{format_gauss(coeff)} {' '.join(str(e) for e in exps)}")
    return "\n".join(out) + "\n"


def serialize_field(x: VectorField) -> str:
    cap = min(x.p.cap, x.q.cap)
    out = [f"vars: {' '.join(x.vars)}", f"cap: {cap}", "dz:"]
    for exps, coeff in _sorted_terms(x.p):
        out.append(f"{format_gauss(coeff)} {' '.join(str(e) for e in exps)}")
    out.append("dw:")
    for exps, coeff in _sorted_terms(x.q):
        out.append(f"{format_gauss(coeff)} {' '.join(str(e) for e in exps)}")
    return "\n".join(out) + "\n"


def serialize_hypersurface(m: RealHypersurface) -> str:
    return serialize_series(m.psi)


def jetmap_lines(h: JetMap):
    out = []
    for name, comp in (("z", h.f), ("w", h.g)):
        for exps, coeff in _sorted_terms(comp):
            out.append(
                f"transform.{name}: {format_gauss(coeff)} "
                f"{' '.join(str(e) for e in exps)}"
            )
    return out
