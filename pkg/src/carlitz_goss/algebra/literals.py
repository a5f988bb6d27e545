"""Polynomial literal grammar shared by the CLI and the JSON encodings.

Variables: ``t`` for theta, ``u`` for the generator of the coefficient field,
``z`` for the deformation variable.  Integer coefficients, ``+ - * ^`` and
parentheses, e.g. ``t^2+2*t+1`` or ``(u+1)*t+u``.
"""

from __future__ import annotations

import re

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([tuz])|(\*\*|[-+*^()]))")

# a parsed literal is a dict {(t_exp, u_exp, z_exp): int}


def _padd(a, b, sign=1):
    out = dict(a)
    for key, c in b.items():
        out[key] = out.get(key, 0) + sign * c
    return {k: c for k, c in out.items() if c}


def _pmul(a, b):
    out = {}
    for (t1, u1, z1), c1 in a.items():
        for (t2, u2, z2), c2 in b.items():
            key = (t1 + t2, u1 + u2, z1 + z2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            self.tokens.append(m.group(1) or m.group(2) or m.group(3))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty polynomial literal")
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input in {self.text!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = {k: -c for k, c in acc.items()}
        while self.peek() in ("+", "-"):
            op = self.take()
            acc = _padd(acc, self.term(), -1 if op == "-" else 1)
        return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                acc = _pmul(acc, self.factor())
            elif tok is not None and (tok in "tuz(" or tok.isdigit()):
                acc = _pmul(acc, self.factor())  # implicit product such as 2t
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ParseError("exponent must be a non-negative integer")
            result = {(0, 0, 0): 1}
            for _ in range(int(tok)):
                result = _pmul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of literal")
        if tok.isdigit():
            return {(0, 0, 0): int(tok)} if int(tok) else {}
        if tok == "t":
            return {(1, 0, 0): 1}
        if tok == "u":
            return {(0, 1, 0): 1}
        if tok == "z":
            return {(0, 0, 1): 1}
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {tok!r}")


def parse_terms(text: str) -> dict:
    return _Parser(text).parse()


def parse_prime_poly(text: str, p: int, var: str = "u") -> tuple[int, ...]:
    """Coefficient vector over F_p of a one-variable literal in ``var``."""
    terms = parse_terms(text)
    idx = "tuz".index(var)
    out = {}
    for key, c in terms.items():
        if any(e for j, e in enumerate(key) if j != idx):
            raise ParseError(f"only the variable {var!r} is allowed in {text!r}")
        out[key[idx]] = (out.get(key[idx], 0) + c) % p
    deg = max(out, default=-1)
    return tuple(out.get(i, 0) for i in range(deg + 1))


def field_value(field, u_coeffs: dict) -> int:
    """Encode sum c_j u^j into a field code (reducing by the modulus)."""
    deg = max(u_coeffs, default=-1)
    vec = [u_coeffs.get(j, 0) % field.p for j in range(deg + 1)]
    if field.k == 1:
        # u is the image of X in F_p[X]/(X): it is zero
        return vec[0] if vec else 0
    return field.from_vec(vec + [0] * max(0, field.k - len(vec)))


def parse_bivariate(text: str, field) -> dict:
    """Literal -> {(t_exp, z_exp): field code}."""
    grouped: dict = {}
    for (te, ue, ze), c in parse_terms(text).items():
        grouped.setdefault((te, ze), {})
        grouped[(te, ze)][ue] = grouped[(te, ze)].get(ue, 0) + c
    out = {}
    for key, uc in grouped.items():
        v = field_value(field, uc)
        if v:
            out[key] = v
    return out


# --- formatting ----------------------------------------------------------------


def format_coeff_vector(vec, var: str) -> str:
    """Render sum vec[i] var^i (integers) highest degree first."""
    parts = []
    for i in range(len(vec) - 1, -1, -1):
        c = vec[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


def format_ff(field, value: int) -> str:
    return format_coeff_vector(field.to_vec(value), "u")


def _coef_times(cstr: str, mono: str, simple: bool) -> str:
    if not mono:
        return cstr
    if cstr == "1":
        return mono
    if simple:
        return f"{cstr}*{mono}"
    return f"({cstr})*{mono}"


def format_terms(field, terms) -> str:
    """Render an iterable of ``(mono, code)`` pairs, already ordered."""
    parts = []
    for mono, code in terms:
        if not code:
            continue
        cstr = format_ff(field, code)
        simple = "+" not in cstr
        parts.append(_coef_times(cstr, mono, simple))
    return "+".join(parts) if parts else "0"


def mono_str(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"
