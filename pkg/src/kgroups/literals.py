"""Text literals for fields, curves, places, symbols, groups and points.

    GF(q)  GF(p^m)  GF(p^m; f0,f1,...,1)
    P1(GF(q))  E(GF(q); a,b)
    v(pi)  v(inf)  v(x0,y0)  v(O)
    {f1, f2, ...}@K
    Gm^n x E(GF(q); a,b)
    ((f1,...,fn),(x,y))  ((f1,...,fn),O)

Field elements are integers or coefficient lists ``[c0, c1, ...]`` in the
generator of the field. Function-field elements are arithmetic expressions in
``t`` (on P1) or ``x, y`` (on E) using + - * / and integer powers (``^`` or ``**``).
"""
import ast
import re

from . import poly
from .errors import KGroupsError, ParseError
from .finite_field import is_prime, make_extension, prime_factors, standard_field
from .function_field import Curve, elliptic_curve, rational_line
from .milnor import MilnorSymbol
from .semiabelian import SemiAbelian


def split_top(text, sep):
    """Split on ``sep`` outside any brackets."""
    out, depth, cur = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and text.startswith(sep, i):
            out.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        cur.append(ch)
        i += 1
    out.append("".join(cur))
    return [s.strip() for s in out]


def _call(text, name):
    """Body of ``name(...)`` or None."""
    text = text.strip()
    if not text.startswith(name + "(") or not text.endswith(")"):
        return None
    body = text[len(name) + 1:-1]
    depth = 0
    for ch in body:
        depth += ch in "([{"
        depth -= ch in ")]}"
        if depth < 0:
            return None
    return body if depth == 0 else None


def _int(text, what):
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {text!r}") from None


# -- fields --------------------------------------------------------------------


def parse_field(text):
    body = _call(text, "GF")
    if body is None:
        raise ParseError(f"not a field literal: {text!r}")
    parts = split_top(body, ";")
    if len(parts) > 2:
        raise ParseError(f"field literal has too many ';': {text!r}")
    size = parts[0]
    if "^" in size:
        p_txt, m_txt = size.split("^", 1)
        p, m = _int(p_txt, "characteristic"), _int(m_txt, "degree")
    else:
        q = _int(size, "field order")
        ps = prime_factors(q) if q > 1 else []
        if len(ps) != 1:
            raise ParseError(f"{q} is not a prime power")
        p, m = ps[0], 0
        while q > 1:
            q //= p
            m += 1
    if not is_prime(p):
        raise ParseError(f"{p} is not prime")
    if m < 1:
        raise ParseError("extension degree must be positive")
    try:
        if len(parts) == 1:
            return standard_field(p, m)
        coeffs = [_int(c, "modulus coefficient") for c in parts[1].split(",")]
        if len(coeffs) != m + 1:
            raise ParseError(f"modulus of GF({p}^{m}) needs {m + 1} coefficients")
        return make_extension(p, coeffs)
    except KGroupsError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _element_node(F, node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return F.element(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_element_node(F, node.operand)
    if isinstance(node, ast.List):
        cs = []
        for e in node.elts:
            v = _element_node(prime_of(F), e)
            cs.append(v.code)
        if len(cs) > F.m:
            raise ParseError(f"too many coefficients for {F}")
        return F.element(cs)
    raise ParseError(f"not a field element: {ast.unparse(node)}")


def prime_of(F):
    return F if F.m == 1 else standard_field(F.p, 1)


def parse_element(F, text):
    try:
        node = ast.parse(text.strip(), mode="eval").body
    except SyntaxError:
        raise ParseError(f"not a field element: {text!r}") from None
    return _element_node(F, node)


# -- curves and function-field elements ---------------------------------------------


def parse_curve(text):
    body = _call(text, "P1")
    if body is not None:
        return rational_line(parse_field(body))
    body = _call(text, "E")
    if body is None:
        raise ParseError(f"not a curve literal: {text!r}")
    parts = split_top(body, ";")
    if len(parts) != 2:
        raise ParseError(f"expected E(GF(q); a,b), got {text!r}")
    F = parse_field(parts[0])
    ab = split_top(parts[1], ",")
    if len(ab) != 2:
        raise ParseError("an elliptic curve needs two coefficients a,b")
    a, b = parse_element(F, ab[0]), parse_element(F, ab[1])
    try:
        return elliptic_curve(F, a, b)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_field_or_curve(text):
    text = text.strip()
    if text.startswith("GF("):
        return parse_field(text)
    return parse_curve(text)


def _names(C):
    if isinstance(C, Curve):
        return {"t": C.t} if not C.is_elliptic else {"x": C.x, "y": C.y}
    return {}


def _eval(C, node, names):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return _const(C, node.value)
    if isinstance(node, ast.List):
        F = C.base if isinstance(C, Curve) else C
        return _const(C, _element_node(F, node))
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ParseError(f"unknown name {node.id!r} (allowed: {', '.join(sorted(names)) or 'none'})")
        return names[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(C, node.operand, names)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            return _eval(C, node.left, names) ** _exponent(node.right)
        lhs, rhs = _eval(C, node.left, names), _eval(C, node.right, names)
        if isinstance(node.op, ast.Add):
            return lhs + rhs
        if isinstance(node.op, ast.Sub):
            return lhs - rhs
        if isinstance(node.op, ast.Mult):
            return lhs * rhs
        if isinstance(node.op, ast.Div):
            return lhs / rhs
    raise ParseError(f"unsupported expression: {ast.unparse(node)}")


def _const(C, v):
    if isinstance(C, Curve):
        return C.const(v)
    return C.element(v)


def _exponent(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_exponent(node.operand)
    raise ParseError(f"exponents must be integer literals: {ast.unparse(node)}")


def _parse_expr(text):
    try:
        return ast.parse(text.strip().replace("^", "**"), mode="eval").body
    except SyntaxError:
        raise ParseError(f"cannot parse {text!r}") from None


def parse_function(C, text):
    """An element of the function field of ``C`` (or of a finite field ``C``)."""
    try:
        return _eval(C, _parse_expr(text), _names(C))
    except ZeroDivisionError:
        raise ParseError(f"division by zero in {text!r}") from None
    except KGroupsError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{text!r}: {exc}") from None


# -- places ---------------------------------------------------------------------


def parse_place(C, text):
    body = _call(text, "v")
    if body is None:
        raise ParseError(f"not a place literal: {text!r}")
    body = body.strip()
    if body == "inf":
        if C.is_elliptic:
            raise ParseError("use v(O) for the origin of an elliptic curve")
        return C.infinite_place()
    if body == "O":
        if not C.is_elliptic:
            raise ParseError("use v(inf) for the infinite place of P1")
        return C.infinite_place()
    parts = split_top(body, ",")
    F = C.base
    if len(parts) == 2:
        if not C.is_elliptic:
            raise ParseError("point places v(x0,y0) live on elliptic curves")
        x0, y0 = parse_element(F, parts[0]), parse_element(F, parts[1])
        if y0 * y0 != x0 ** 3 + F.code_element(C.a) * x0 + F.code_element(C.b):
            raise ParseError(f"({x0},{y0}) is not on {C}")
        return C.place_of_point((x0.code, y0.code), C.m0)
    # v(pi): pi a polynomial in the coordinate of the line (t, or x on E)
    var = "x" if C.is_elliptic else "t"
    line = rational_line(F, tower=C.tower)
    f = _eval(line, _parse_expr(body.replace(var, "t")), {"t": line.t})
    if f.den != [1] or len(f.num) < 2:
        raise ParseError(f"v(pi) needs a non-constant polynomial in {var}")
    pi = poly.monic(F, f.num)
    if not poly.is_irreducible(F, pi):
        raise ParseError(f"{body} is not irreducible over {F}")
    places = C.places_over(pi)
    if len(places) != 1:
        raise ParseError(f"{len(places)} places lie over {body}; name one by a point v(x0,y0)")
    return places[0]


# -- symbols, groups, points -------------------------------------------------------


def parse_symbol(text, field=None):
    """``{f1, ..., fn}`` optionally followed by ``@K``; ``field`` is the default K."""
    body = text.strip()
    head, at, tail = body.rpartition("@")
    if at and head.rstrip().endswith("}"):
        body, field = head.strip(), parse_field_or_curve(tail)
    if field is None:
        raise ParseError("symbol needs a field: use {...}@K or --field")
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"not a symbol literal: {text!r}")
    inner = body[1:-1].strip()
    entries = [parse_function(field, e) for e in split_top(inner, ",")] if inner else []
    if not entries:
        raise ParseError("empty symbol")
    try:
        return MilnorSymbol(field, entries)
    except KGroupsError as exc:
        raise ParseError(str(exc)) from None


def parse_group(text, base=None, tower=None):
    """``Gm^n x E(...)``, ``Gm^n``, ``Gm`` or ``E(...)``."""
    n, E = 0, None
    for part in split_top(text, " x "):
        part = part.strip()
        m = re.fullmatch(r"Gm(?:\^(\d+))?", part)
        if m:
            n += int(m.group(1) or 1)
        elif part.startswith("E("):
            if E is not None:
                raise ParseError("at most one elliptic factor")
            E = parse_curve(part)
        else:
            raise ParseError(f"not a group factor: {part!r}")
    if E is not None:
        if base is not None and E.base != base:
            raise ParseError(f"{E} is not defined over {base}")
        if tower is not None and E.tower is not tower:
            E = elliptic_curve(E.base, E.base.code_element(E.a), E.base.code_element(E.b), tower=tower)
        return SemiAbelian(n, E)
    if base is None:
        raise ParseError(f"the group {text!r} needs a base field")
    return SemiAbelian(n, None, base, tower=tower)


def parse_point(G, field, text):
    """A point of ``G`` over a finite field or a function field."""
    node = _parse_expr(text)
    names = _names(field)
    full = (isinstance(node, ast.Tuple) and len(node.elts) == 2
            and (isinstance(node.elts[0], ast.Tuple) or isinstance(node.elts[1], ast.Name) and node.elts[1].id == "O"))
    if G.E is None and not full:
        torus_nodes = node.elts if isinstance(node, ast.Tuple) else [node]
        ell_node = None
    else:
        if not isinstance(node, ast.Tuple) or len(node.elts) != 2:
            raise ParseError("points are written ((f1,...,fn),(x,y)) or ((f1,...,fn),O)")
        tn, ell_node = node.elts
        torus_nodes = tn.elts if isinstance(tn, ast.Tuple) else [tn]
        if isinstance(ell_node, ast.Name) and ell_node.id == "O":
            ell_node = None
    try:
        torus = [_eval(field, t, names) for t in torus_nodes]
        ell = None
        if ell_node is not None:
            if not isinstance(ell_node, ast.Tuple) or len(ell_node.elts) != 2:
                raise ParseError("the elliptic coordinate is (x,y) or O")
            ell = tuple(_eval(field, c, names) for c in ell_node.elts)
        return G.point(field, torus, ell)
    except (ValueError, KGroupsError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad point {text!r}: {exc}") from None


__all__ = ["split_top", "parse_field", "parse_element", "parse_curve", "parse_field_or_curve",
           "parse_function", "parse_place", "parse_symbol", "parse_group", "parse_point"]
