"""Terms and identities in the signature {*, \\}.

Grammar (whitespace ignored)::

    term     := var | '(' term '*' term ')' | '(' term '\\' term ')'
              | 'L[' term ']^' int '(' term ')'
    identity := term ('=' | '≈') term
    var      := [a-z][a-z0-9]*

``L[u]^k(v)`` is sugar for k-fold left multiplication by u (division for
negative k) and is expanded while parsing.  Binary nodes are always
parenthesized when printed, so ``parse_term(str(t)) == t``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from ._accel import NUMBA_ENABLED
from .algebra import FiniteLeftQuasigroup
from .errors import InputError, TermSyntaxError, TooLarge, UnboundVariable
from .kernels import terms as _tk

MAX_ASSIGNMENTS = 10**8
MAX_EXPONENT = 64

_VAR_RE = re.compile(r"[a-z][a-z0-9]*")
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Op:
    op: str  # "*" or "\\"
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"({self.left}{self.op}{self.right})"


Term = Union[Var, Op]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs}={self.rhs}"


def mul(a: Term, b: Term) -> Op:
    return Op("*", a, b)


def div(a: Term, b: Term) -> Op:
    return Op("\\", a, b)


def L(u: Term, k: int, v: Term) -> Term:
    """L_u^k(v), built by the recursion L^{k+1} = u*L^k and L^{k-1} = u\\L^k."""
    out = v
    for _ in range(abs(k)):
        out = Op("*" if k > 0 else "\\", u, out)
    return out


def variables(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        else:
            stack.append(s.left)
            stack.append(s.right)
    return out


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max(depth(t.left), depth(t.right))


def rightmost_variable(t: Term) -> str:
    while isinstance(t, Op):
        t = t.right
    return t.name


def substitute(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    return Op(t.op, substitute(t.left, mapping), substitute(t.right, mapping))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str):
        self.skip()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos:self.pos + len(s)] or "end of input"
            raise TermSyntaxError(f"expected {s!r}, found {found!r}", self.pos)
        self.pos += len(s)

    def term(self) -> Term:
        c = self.peek()
        if c == "(":
            self.pos += 1
            left = self.term()
            c = self.peek()
            if c not in ("*", "\\"):
                raise TermSyntaxError(f"expected '*' or '\\', found {c or 'end of input'!r}", self.pos)
            self.pos += 1
            right = self.term()
            self.expect(")")
            return Op(c, left, right)
        if c == "L":
            self.pos += 1
            self.expect("[")
            u = self.term()
            self.expect("]")
            k = 1
            if self.peek() == "^":
                self.pos += 1
                self.skip()
                m = _INT_RE.match(self.text, self.pos)
                if not m:
                    raise TermSyntaxError("expected an integer exponent", self.pos)
                k = int(m.group())
                if abs(k) > MAX_EXPONENT:
                    raise TermSyntaxError(f"exponent {k} exceeds {MAX_EXPONENT}", self.pos)
                self.pos = m.end()
            self.expect("(")
            v = self.term()
            self.expect(")")
            return L(u, k, v)
        m = _VAR_RE.match(self.text, self.pos)
        if not m:
            raise TermSyntaxError(f"unexpected {c or 'end of input'!r}", self.pos)
        self.pos = m.end()
        return Var(m.group())

    def end(self):
        self.skip()
        if self.pos != len(self.text):
            raise TermSyntaxError(f"trailing input {self.text[self.pos:]!r}", self.pos)


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.end()
    return t


def parse_identity(text: str) -> Identity:
    p = _Parser(text)
    lhs = p.term()
    p.skip()
    if p.text.startswith("=", p.pos):
        p.pos += 1
    elif p.text.startswith("≈", p.pos):
        p.pos += 1
    else:
        raise TermSyntaxError("expected '='", p.pos)
    rhs = p.term()
    p.end()
    return Identity(lhs, rhs)


def as_identity(x: Union[str, Identity]) -> Identity:
    return parse_identity(x) if isinstance(x, str) else x


def as_term(x: Union[str, Term]) -> Term:
    return parse_term(x) if isinstance(x, str) else x


def eval_term(Q: FiniteLeftQuasigroup, t: Union[str, Term], assignment: Mapping[str, int]) -> int:
    t = as_term(t)
    mul_t, div_t = Q.mul, Q.ldiv

    def ev(s):
        if isinstance(s, Var):
            try:
                return int(assignment[s.name])
            except KeyError:
                raise UnboundVariable(s.name) from None
        a, b = ev(s.left), ev(s.right)
        return int(mul_t[a, b] if s.op == "*" else div_t[a, b])

    return ev(t)


def compile_term(t: Term, order: list[str]) -> np.ndarray:
    """Postfix code with variables numbered by their position in ``order``."""
    index = {v: i for i, v in enumerate(order)}
    code: list[int] = []

    def emit(s):
        if isinstance(s, Var):
            code.append(index[s.name])
        else:
            emit(s.left)
            emit(s.right)
            code.append(_tk.MUL if s.op == "*" else _tk.LDIV)

    emit(t)
    return np.asarray(code, dtype=np.int64)


def satisfies_identity(Q: FiniteLeftQuasigroup, identity: Union[str, Identity],
                       max_assignments: int = MAX_ASSIGNMENTS) -> tuple[bool, Optional[dict[str, int]]]:
    """Exhaustive check; returns (holds, first counterexample or None).

    Assignments are scanned lexicographically with variables sorted by name.
    """
    ident = as_identity(identity)
    names = ident.variables
    if Q.order ** len(names) > max_assignments:
        raise TooLarge(f"{Q.order}^{len(names)} assignments exceed {max_assignments}")
    lhs = compile_term(ident.lhs, names)
    rhs = compile_term(ident.rhs, names)
    if NUMBA_ENABLED:
        out = np.zeros(max(len(names), 1), dtype=np.int64)
        bad = _tk.identity_counterexample(Q.mul, Q.ldiv, lhs, rhs, len(names), out)
        cex = tuple(int(v) for v in out[:len(names)]) if bad else None
    else:
        cex = _tk.identity_counterexample_numpy(Q.mul, Q.ldiv, lhs, rhs, len(names))
    if cex is None:
        return True, None
    return False, dict(zip(names, cex))


def is_malcev_term_for(Q: FiniteLeftQuasigroup, t: Union[str, Term]) -> bool:
    """True iff t(x,x,y) = y and t(y,x,x) = y hold in Q."""
    t = as_term(t)
    extra = variables(t) - {"x", "y", "z"}
    if extra:
        raise InputError(f"Mal'cev term may only use x, y, z (found {sorted(extra)})")
    x, y = Var("x"), Var("y")
    first = Identity(substitute(t, {"x": x, "y": x, "z": y}), y)
    second = Identity(substitute(t, {"x": y, "y": x, "z": x}), y)
    return satisfies_identity(Q, first)[0] and satisfies_identity(Q, second)[0]


@dataclass(frozen=True)
class CanonicalIdentity:
    identity: Identity
    x_r: str
    y_r: str

    @property
    def projection_satisfies(self) -> bool:
        """P_2 satisfies the identity iff both sides end in the same variable."""
        return self.x_r == self.y_r


def canonical_form(identity: Union[str, Identity]) -> CanonicalIdentity:
    """Move the right side's outer left translations over to the left.

    u*r on the right becomes u\\(...) on the left and vice versa, until the
    right side is a bare variable.
    """
    ident = as_identity(identity)
    lhs, rhs = ident.lhs, ident.rhs
    while isinstance(rhs, Op):
        lhs = Op("\\" if rhs.op == "*" else "*", rhs.left, lhs)
        rhs = rhs.right
    return CanonicalIdentity(Identity(lhs, rhs), rightmost_variable(lhs), rhs.name)


def to_sugar(t: Term) -> str:
    """Print with L[u]^k(v) runs collapsed; parses back to the same tree."""
    if isinstance(t, Var):
        return t.name
    u = t.left
    k = 0
    s = t
    sign = 1 if t.op == "*" else -1
    while isinstance(s, Op) and s.left == u and (1 if s.op == "*" else -1) == sign:
        k += sign
        s = s.right
    if abs(k) == 1:
        return f"({to_sugar(t.left)}{t.op}{to_sugar(t.right)})"
    return f"L[{to_sugar(u)}]^{k}({to_sugar(s)})"
