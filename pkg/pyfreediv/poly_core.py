"""Exact multivariate polynomials over the rationals.

Polynomials are sympy ``PolyElement`` objects over ``QQ``. Their terms are
kept sorted by the ring's monomial order, coefficients are exact rationals and
exponent vectors are tuples of Python integers. This module adds the text
grammar, the canonical printer and the transformations used to build
divisors: derivatives, homogenization, cones, weights and gcds.
"""
import logging
import re
from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import MonomialOrder, grevlex, lex, monomial_key
from sympy.polys.rings import PolyElement, PolyRing

from .errors import (
    InexactDivisionError,
    InvariantViolation,
    ParseError,
    PreconditionError,
    RingMismatchError,
)

LOGGER = logging.getLogger(__name__)

Ring = PolyRing
Polynomial = PolyElement
Monomial = tuple
Rational = QQ.dtype

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()])")

_ORDER_NAMES = {"degrevlex": "grevlex", "grevlex": "grevlex", "lex": "lex"}


def _split_names(variables):
    if isinstance(variables, str):
        names = [v.strip() for v in variables.split(",") if v.strip()]
    else:
        names = [str(v) for v in variables]
    if not names:
        raise PreconditionError("variable list must be nonempty")
    for name in names:
        if not _IDENTIFIER.match(name):
            raise PreconditionError(f"invalid variable name {name!r}")
    if len(set(names)) != len(names):
        raise PreconditionError(f"variable names must be unique, got {names}")
    return names


def polynomial_ring(variables, order="degrevlex", block=None):
    """Create a polynomial ring over QQ.

    Args:
        variables: Comma separated names or a sequence of names.
        order: ``degrevlex``, ``lex`` or ``block``.
        block: Split index for the block order; the first ``block`` variables
            form the first (eliminated) block.

    Returns:
        A sympy ``PolyRing``.
    """
    names = _split_names(variables)
    if order == "block":
        if block is None or not 0 < block < len(names):
            raise PreconditionError(f"block split {block} out of range for {len(names)} variables")
        return product_ring([("grevlex", names[:block]), ("grevlex", names[block:])])
    if order not in _ORDER_NAMES:
        raise PreconditionError(f"unknown monomial order {order!r}")
    return PolyRing(names, QQ, grevlex if _ORDER_NAMES[order] == "grevlex" else lex)


class BlockOrder(MonomialOrder):
    """Product of graded or lex orders on consecutive blocks of variables.

    Args:
        blocks: Sequence of ``(order_name, size)``; earlier blocks dominate.
    """

    alias = "block"
    is_global = True

    def __init__(self, blocks):
        self.blocks = tuple((name, int(size)) for name, size in blocks)
        bounds = []
        start = 0
        for name, size in self.blocks:
            bounds.append((monomial_key(_ORDER_NAMES[name]), start, start + size))
            start += size
        self._bounds = tuple(bounds)

    def __call__(self, monomial):
        return tuple(order(monomial[start:stop]) for order, start, stop in self._bounds)

    def __repr__(self):
        return f"BlockOrder({self.blocks})"

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and self.blocks == other.blocks

    def __hash__(self):
        return hash((BlockOrder, self.blocks))


def product_ring(blocks):
    """Ring ordered by a product of per-block orders.

    Args:
        blocks: Sequence of ``(order_name, block_names)``; the ring variables
            are the concatenated blocks and earlier blocks dominate.
    """
    blocks = [(name, list(block)) for name, block in blocks if block]
    names = _split_names([n for _, block in blocks for n in block])
    return PolyRing(names, QQ, BlockOrder((name, len(block)) for name, block in blocks))


def variable_names(ring):
    return tuple(str(s) for s in ring.symbols)


def order_tag(ring):
    if ring.order == grevlex:
        return "degrevlex"
    if ring.order == lex:
        return "lex"
    return "block"


def fresh_name(ring_or_names, stem):
    """Return ``stem`` or ``stem_k`` not clashing with existing variables."""
    taken = set(variable_names(ring_or_names)) if isinstance(ring_or_names, PolyRing) else set(ring_or_names)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}_{k}" in taken:
        k += 1
    return f"{stem}_{k}"


def extend_ring(ring, names):
    """Append variables to a degrevlex or lex ring, keeping its order."""
    if order_tag(ring) == "block":
        raise PreconditionError("cannot extend a block-ordered ring")
    existing = variable_names(ring)
    clash = [n for n in names if n in existing]
    if clash:
        raise PreconditionError(f"variable(s) {', '.join(clash)} already in the ring {existing}")
    return PolyRing(list(existing) + _split_names(list(names)), QQ, ring.order)


def coerce(f, ring):
    """Map ``f`` into ``ring`` by variable names."""
    if f.ring == ring:
        return f
    source = variable_names(f.ring)
    missing = [k for k, name in enumerate(source) if name not in variable_names(ring)]
    if any(m[k] for k in missing for m in f.itermonoms()):
        absent = sorted(source[k] for k in missing)
        raise RingMismatchError(f"{format_poly(f)} uses variables {absent} absent from the target ring")
    position = [source.index(name) if name in source else None for name in variable_names(ring)]
    return ring.from_dict(
        {tuple(m[p] if p is not None else 0 for p in position): c for m, c in f.items()}
    )


class _Parser:
    """Recursive descent parser for the polynomial grammar.

    expression := term (('+'|'-') term)*
    term       := unary (['*'|'/'] unary)*      (juxtaposition multiplies)
    unary      := ('+'|'-') unary | power
    power      := atom ['^' integer]
    atom       := integer | name | '(' expression ')'
    """

    def __init__(self, text, ring):
        self.ring = ring
        self.names = dict(zip(variable_names(ring), ring.gens))
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            match = _TOKEN.match(text, pos)
            if match is None:
                raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
            tokens.append((match.lastgroup, match.group()))
            pos = match.end()
        return tokens

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _next(self):
        token = self._peek()
        if token[0] is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return token

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self._expression()
        if self.pos != len(self.tokens):
            raise ParseError(f"unexpected token {self._peek()[1]!r}")
        return value

    def _expression(self):
        value = self._term()
        while self._peek()[1] in ("+", "-"):
            _, op = self._next()
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self):
        value = self._unary()
        while True:
            kind, tok = self._peek()
            if tok == "*":
                self._next()
                value = value * self._unary()
            elif tok == "/":
                self._next()
                divisor = self._unary()
                if not divisor.is_ground or not divisor:
                    raise ParseError("division is only allowed by nonzero constants")
                value = value.quo_ground(divisor.LC)
            elif kind in ("number", "name") or tok == "(":
                value = value * self._unary()
            else:
                return value

    def _unary(self):
        if self._peek()[1] in ("+", "-"):
            _, op = self._next()
            operand = self._unary()
            return operand if op == "+" else -operand
        return self._power()

    def _power(self):
        base = self._atom()
        if self._peek()[1] == "^":
            self._next()
            kind, tok = self._next()
            if tok == "-":
                raise ParseError("negative exponents are not polynomial")
            if kind != "number":
                raise ParseError(f"exponent must be a nonnegative integer, got {tok!r}")
            return base ** int(tok)
        return base

    def _atom(self):
        kind, tok = self._next()
        if kind == "number":
            return self.ring.ground_new(int(tok))
        if kind == "name":
            if tok not in self.names:
                raise ParseError(f"unknown variable {tok!r}; ring variables are {tuple(self.names)}")
            return self.names[tok]
        if tok == "(":
            value = self._expression()
            if self._next()[1] != ")":
                raise ParseError("missing closing parenthesis")
            return value
        raise ParseError(f"malformed expression near {tok!r}")


def parse_poly(text, ring):
    """Parse polynomial text into ``ring``.

    Args:
        text: Expression in ``+ - * ^``, integer or ``p/q`` literals and ring variables.
        ring: Target ring.

    Returns:
        The canonical polynomial.
    """
    return _Parser(text, ring).parse()


def _format_rational(c):
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_poly(f):
    """Canonical text of ``f``: terms in descending ring order, ``^`` for powers."""
    if not f:
        return "0"
    names = variable_names(f.ring)
    out = []
    for monom, coeff in f.terms():
        body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e)
        size = abs(coeff)
        if not body:
            body = _format_rational(size)
        elif size != 1:
            body = f"{_format_rational(size)}*{body}"
        if not out:
            out.append(f"-{body}" if coeff < 0 else body)
        else:
            out.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(out)


def check_same_ring(*polys):
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise RingMismatchError("operands belong to different rings: " + "; ".join(str(r.symbols) for r in rings))


def exact_div(f, g):
    check_same_ring(f, g)
    if not g:
        raise InexactDivisionError("division by the zero polynomial")
    quotient, remainder = f.div(g)
    if remainder:
        raise InexactDivisionError(f"{format_poly(g)} does not divide {format_poly(f)}")
    return quotient


def arithmetic(op, f, g):
    """Exact ring operation ``op`` in ``add``, ``sub``, ``mul``, ``exact_div``."""
    check_same_ring(f, g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "exact_div":
        return exact_div(f, g)
    raise PreconditionError(f"unknown operation {op!r}")


def _variable_index(ring, var):
    if isinstance(var, str):
        if var not in variable_names(ring):
            raise PreconditionError(f"unknown variable {var!r}")
        return variable_names(ring).index(var)
    if not 0 <= var < ring.ngens:
        raise PreconditionError(f"variable index {var} out of range for {ring.ngens} variables")
    return var


def partial_derivative(f, var):
    return f.diff(f.ring.gens[_variable_index(f.ring, var)])


def gradient(f):
    return tuple(f.diff(x) for x in f.ring.gens)


def total_degree(f):
    """Largest total degree of a term; -1 for the zero polynomial."""
    return max((sum(m) for m in f.itermonoms()), default=-1)


def is_homogeneous(f):
    return len({sum(m) for m in f.itermonoms()}) <= 1


def homogeneous_component(f, degree):
    return f.ring.from_dict({m: c for m, c in f.items() if sum(m) == degree})


def homogenize(f, newvar):
    """Homogenize ``f`` with a new last variable ``newvar``."""
    if not f:
        raise PreconditionError("cannot homogenize the zero polynomial")
    ring = extend_ring(f.ring, [newvar])
    d = total_degree(f)
    return ring.from_dict({m + (d - sum(m),): c for m, c in f.items()})


def dehomogenize(F, var):
    """Set variable ``var`` to 1 and drop it from the ring."""
    ring = F.ring
    if ring.ngens < 2:
        raise PreconditionError("cannot drop the only variable of the ring")
    return F.evaluate(ring.gens[_variable_index(ring, var)], 1)


def cone(f, newvar):
    """Return ``newvar`` times the homogenization of ``f``."""
    if is_homogeneous(f):
        LOGGER.warning(f"cone of the homogeneous polynomial {format_poly(f)}")
    F = homogenize(f, newvar)
    return F * F.ring.gens[-1]


@dataclass(frozen=True)
class WeightVector:
    """Rational weights ``a`` and their integer form ``(w, degree)``.

    Args:
        weights: Rational weights a_1..a_n.
        integer_weights: Coprime integers w_i with a_i = w_i / degree.
        degree: Positive rational, integral for every input seen in practice.
    """

    weights: tuple
    integer_weights: tuple
    degree: Rational

    @classmethod
    def from_rationals(cls, weights):
        weights = tuple(QQ.convert(a) for a in weights)
        common = lcm(*(int(a.denominator) for a in weights))
        scaled = [int(a.numerator) * (common // int(a.denominator)) for a in weights]
        g = gcd(*scaled) or 1
        return cls(weights, tuple(w // g for w in scaled), QQ(common, g))

    @property
    def exceeds_half(self):
        return any(a > QQ(1, 2) for a in self.weights)

    def to_dict(self):
        return {
            "rational": [_format_rational(a) for a in self.weights],
            "integer": list(self.integer_weights),
            "degree": _format_rational(self.degree),
        }


@dataclass(frozen=True)
class WeightClassification:
    kind: str
    weights: WeightVector = None

    @property
    def is_eulerian(self):
        return self.kind in ("weighted_homogeneous", "eulerian_with_zero_weights")

    def to_dict(self):
        out = {"kind": self.kind}
        if self.weights is not None:
            out.update(self.weights.to_dict())
        return out


def euler_residual(f, weights):
    """Return f - sum a_i x_i f_{x_i}."""
    residual = f
    for a, x in zip(weights, f.ring.gens):
        residual = residual - (x * f.diff(x)).mul_ground(QQ.convert(a))
    return residual


def _solve_from_rref(rows, pivots, ncols):
    solution = [QQ.zero] * ncols
    for row, p in zip(rows, pivots):
        solution[p] = row[ncols]
    return solution


def _unique_solution(monoms, columns):
    """Solve sum_{j in columns} a_j e_j = 1 over all exponent vectors, if unique."""
    k = len(columns)
    rows = [[QQ(m[j]) for j in columns] + [QQ.one] for m in monoms]
    rref, pivots = DomainMatrix(rows, (len(rows), k + 1), QQ).rref()
    if k in pivots or len(pivots) != k:
        return None
    return _solve_from_rref(rref.to_list(), pivots, k)


def weighted_weights(f):
    """Classify ``f`` by the solutions of sum_i a_i e_i = 1 over its exponents.

    A variable absent from ``f`` takes weight 1/2 on top of the barycenter of the
    vertices, so x^2 in K[x,y] is weighted homogeneous with weights (1/2, 1/2).

    Returns:
        A :class:`WeightClassification` with kind ``weighted_homogeneous``,
        ``eulerian_with_zero_weights`` or ``none``.
    """
    if not f:
        raise PreconditionError("weights of the zero polynomial are undefined")
    n = f.ring.ngens
    monoms = sorted(set(f.itermonoms()))
    rows = [[QQ(e) for e in m] + [QQ.one] for m in monoms]
    rref, pivots = DomainMatrix(rows, (len(rows), n + 1), QQ).rref()
    if n in pivots:
        return WeightClassification("none")
    rank = len(pivots)
    if rank == n:
        solution = _solve_from_rref(rref.to_list(), pivots, n)
    else:
        # vertices of {a >= 0 : E a = 1}; their barycenter has maximal support
        vertices = []
        for zeros in combinations(range(n), n - rank):
            keep = [j for j in range(n) if j not in zeros]
            values = _unique_solution(monoms, keep)
            if values is None:
                continue
            vertex = [QQ.zero] * n
            for j, v in zip(keep, values):
                vertex[j] = v
            if all(v >= 0 for v in vertex) and vertex not in vertices:
                vertices.append(vertex)
        if not vertices:
            return WeightClassification("none")
        solution = [sum(column, QQ.zero) / QQ(len(vertices)) for column in zip(*vertices)]
        # unused variables span the recession cone {a >= 0 : E a = 0}
        unused = [j for j in range(n) if not any(m[j] for m in monoms)]
        solution = [a + QQ(1, 2) if j in unused else a for j, a in enumerate(solution)]
    if any(a < 0 for a in solution):
        return WeightClassification("none")
    if euler_residual(f, solution):
        raise InvariantViolation(f"weights {solution} do not satisfy the Euler identity of {format_poly(f)}")
    kind = "weighted_homogeneous" if all(a > 0 for a in solution) else "eulerian_with_zero_weights"
    vector = WeightVector.from_rationals(solution)
    if vector.exceeds_half:
        LOGGER.warning(f"weight above 1/2 for {format_poly(f)}: {[_format_rational(a) for a in vector.weights]}")
    return WeightClassification(kind, vector)


def multivariate_gcd(f, g):
    """Monic gcd computed as f*g / lcm with <lcm> = <f> intersect <g>."""
    from .groebner import Ideal, intersect

    check_same_ring(f, g)
    if not f and not g:
        raise PreconditionError("gcd(0, 0) is undefined")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    meet = intersect(Ideal([f]), Ideal([g])).basis()
    if len(meet) != 1:
        raise InvariantViolation(f"intersection of principal ideals has {len(meet)} basis elements")
    return exact_div(f * g, meet[0]).monic()
