# -*- coding: utf-8 -*-

"""
laurent implements exact Laurent polynomials in the five variables x1..x5
with arbitrary-precision integer coefficients.

Steps:
1- Store a polynomial as a map exponent-vector -> nonzero coefficient
2- Provide ring operations, powers by repeated squaring and exact division
3- Evaluate at rational points and apply the x1<->x5, x2<->x4 swap
4- Serialize to and parse from the canonical text form
"""

import heapq
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

from dp2_cluster.errors import NotDivisible, ParseError

NVARS = 5

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

ZERO_EXP: Exponent = (0,) * NVARS


# Helpers --------------------------------------------------------------------------------------------------------------
def _exp_add (e: Exponent, f: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(e, f))


def _exp_sub (e: Exponent, f: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(e, f))


def _divides (e: Exponent, f: Exponent) -> bool:
    '''
    True when the monomial x^e divides x^f inside the polynomial ring
    :param e:
    :param f:
    :return: bool
    '''
    return all(a <= b for a, b in zip(e, f))


def _neg_key (e: Exponent) -> Exponent:
    return tuple(-a for a in e)


# LaurentPoly ----------------------------------------------------------------------------------------------------------
class LaurentPoly:
    '''
    Immutable Laurent polynomial. Two equal polynomials have identical term maps.
    '''

    __slots__ = ('_terms', '_hash')

    def __init__ (self, terms: Mapping[Exponent, int] = None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                if coef:
                    exp = tuple(exp)
                    if len(exp) != NVARS:
                        raise ValueError(f'exponent {exp} must have {NVARS} entries')
                    clean[exp] = int(coef)
        self._terms: Dict[Exponent, int] = clean
        self._hash = None

    # constructors
    @classmethod
    def zero (cls) -> 'LaurentPoly':
        return cls()

    @classmethod
    def one (cls) -> 'LaurentPoly':
        return cls({ZERO_EXP: 1})

    @classmethod
    def const (cls, value: int) -> 'LaurentPoly':
        return cls({ZERO_EXP: value})

    @classmethod
    def var (cls, i: int) -> 'LaurentPoly':
        '''
        The variable x_i, 1-based
        :param i:
        :return: LaurentPoly
        '''
        if not 1 <= i <= NVARS:
            raise ValueError(f'variable index {i} outside 1..{NVARS}')
        exp = [0] * NVARS
        exp[i - 1] = 1
        return cls({tuple(exp): 1})

    @classmethod
    def monomial (cls, exponents: Sequence[int], coef: int = 1) -> 'LaurentPoly':
        return cls({tuple(exponents): coef})

    # inspection
    def items (self) -> Iterator[Tuple[Exponent, int]]:
        '''Terms in canonical (descending lex) order.'''
        for exp in sorted(self._terms, reverse=True):
            yield exp, self._terms[exp]

    def coefficient (self, exponents: Sequence[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    def __len__ (self) -> int:
        return len(self._terms)

    def is_zero (self) -> bool:
        return not self._terms

    def is_monomial (self) -> bool:
        return len(self._terms) == 1

    def monomial_exponent (self) -> Exponent:
        if not self.is_monomial():
            raise ValueError('not a monomial')
        return next(iter(self._terms))

    def has_positive_coefficients (self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def min_exponents (self) -> Exponent:
        if not self._terms:
            return ZERO_EXP
        return tuple(min(e[i] for e in self._terms) for i in range(NVARS))

    # equality and hashing
    def __eq__ (self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__ (self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ring operations
    @staticmethod
    def _coerce (other) -> 'LaurentPoly':
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        raise TypeError(f'cannot combine LaurentPoly with {type(other).__name__}')

    def __add__ (self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        out = dict(self._terms)
        for exp, coef in other._terms.items():
            out[exp] = out.get(exp, 0) + coef
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__ (self) -> 'LaurentPoly':
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__ (self, other) -> 'LaurentPoly':
        return self + (-self._coerce(other))

    def __rsub__ (self, other) -> 'LaurentPoly':
        return self._coerce(other) - self

    def __mul__ (self, other) -> 'LaurentPoly':
        other = self._coerce(other)
        out: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = _exp_add(e1, e2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__ (self, power: int) -> 'LaurentPoly':
        if power < 0:
            if not self.is_monomial():
                raise NotDivisible('negative power of a non-monomial')
            (exp, coef), = self._terms.items()
            if abs(coef) != 1:
                raise NotDivisible('negative power of a monomial with coefficient other than +-1')
            # coef is +-1, its own inverse
            return LaurentPoly({tuple(power * a for a in exp): coef ** (-power)})
        result = LaurentPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __truediv__ (self, other) -> 'LaurentPoly':
        return div_exact(self, self._coerce(other))

    # named operations
    def shift (self, exponents: Sequence[int]) -> 'LaurentPoly':
        '''
        Multiply by the monomial x^exponents
        :param exponents:
        :return: LaurentPoly
        '''
        exponents = tuple(exponents)
        return LaurentPoly({_exp_add(e, exponents): c for e, c in self._terms.items()})

    def eval_at (self, values: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(v) for v in values]
        for exp, coef in self._terms.items():
            term = Fraction(coef)
            for v, a in zip(vals, exp):
                if a:
                    term *= v ** a
            total += term
        return total

    def swap_reflect (self) -> 'LaurentPoly':
        return LaurentPoly({tuple(reversed(e)): c for e, c in self._terms.items()})

    def __str__ (self) -> str:
        return to_text(self)

    def __repr__ (self) -> str:
        return f'LaurentPoly({to_text(self)!r})'


# Operations -----------------------------------------------------------------------------------------------------------
def add (p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul (p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def product (factors: Iterable[LaurentPoly]) -> LaurentPoly:
    result = LaurentPoly.one()
    for f in factors:
        result = result * f
    return result


def div_exact (p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    '''
    Exact quotient p / q. Both are shifted into the polynomial ring (q with no
    monomial content) and divided by lex long division.
    :param p: dividend
    :param q: nonzero divisor
    :return: r with r * q == p
    '''
    if q.is_zero():
        raise ZeroDivisionError('division by the zero polynomial')
    if p.is_zero():
        return LaurentPoly.zero()

    if q.is_monomial():
        (qexp, qcoef), = q._terms.items()
        out = {}
        for exp, coef in p._terms.items():
            quot, rem = divmod(coef, qcoef)
            if rem:
                raise NotDivisible(f'coefficient {coef} is not divisible by {qcoef}')
            out[_exp_sub(exp, qexp)] = quot
        return LaurentPoly(out)

    alpha = p.min_exponents()
    beta = q.min_exponents()
    rem = {_exp_sub(e, alpha): c for e, c in p._terms.items()}
    divisor = {_exp_sub(e, beta): c for e, c in q._terms.items()}
    lead_exp = max(divisor)
    lead_coef = divisor[lead_exp]

    heap = [_neg_key(e) for e in rem]
    heapq.heapify(heap)
    quotient: Dict[Exponent, int] = {}
    while rem:
        top = _neg_key(heapq.heappop(heap))
        coef = rem.get(top)
        if not coef:
            continue
        if not _divides(lead_exp, top):
            raise NotDivisible(f'leading term {top} is not divisible by {lead_exp}')
        factor, r = divmod(coef, lead_coef)
        if r:
            raise NotDivisible(f'coefficient {coef} is not divisible by {lead_coef}')
        shift = _exp_sub(top, lead_exp)
        quotient[shift] = factor
        for exp, c in divisor.items():
            key = _exp_add(exp, shift)
            new = rem.get(key, 0) - factor * c
            if new:
                if key not in rem:
                    heapq.heappush(heap, _neg_key(key))
                rem[key] = new
            else:
                rem.pop(key, None)
    return LaurentPoly(quotient).shift(_exp_sub(alpha, beta))


def eval_integers (p: LaurentPoly, values: Sequence[Scalar]) -> Fraction:
    '''
    Exact rational evaluation
    :param p:
    :param values: five nonzero rationals
    :return: Fraction
    '''
    if len(values) != NVARS or any(Fraction(v) == 0 for v in values):
        raise ValueError('five nonzero values are required')
    return p.eval_at(values)


def at_ones (p: LaurentPoly) -> int:
    return sum(c for _, c in p.items())


def swap_reflect (p: LaurentPoly) -> LaurentPoly:
    return p.swap_reflect()


def x (i: int) -> LaurentPoly:
    return LaurentPoly.var(i)


# Text format ----------------------------------------------------------------------------------------------------------
def _monomial_text (exp: Exponent) -> str:
    factors = []
    for i, a in enumerate(exp, start=1):
        if a > 0:
            factors.append(f'x{i}' if a == 1 else f'x{i}^{a}')
    for i, a in enumerate(exp, start=1):
        if a < 0:
            factors.append(f'x{i}^{a}')
    return '*'.join(factors)


def to_text (p: LaurentPoly) -> str:
    '''
    Canonical text: terms in descending lex order of exponents, positive
    exponents before negative ones inside a term, unit coefficients omitted.
    :param p:
    :return: text
    '''
    if p.is_zero():
        return '0'
    pieces = []
    for idx, (exp, coef) in enumerate(p.items()):
        mono = _monomial_text(exp)
        mag = abs(coef)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f'{mag}*{mono}'
        if idx == 0:
            pieces.append(body if coef > 0 else f'-{body}')
        else:
            pieces.append(f' + {body}' if coef > 0 else f' - {body}')
    return ''.join(pieces)


_TOKEN = re.compile(r'\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+)(?:\^(?P<pow>-?\d+))?)|(?P<op>[+\-*]))')


def parse (text: str) -> LaurentPoly:
    '''
    Parse the canonical text form. Repeated factors such as x3*x3*x4 are accepted.
    :param text:
    :return: LaurentPoly
    '''
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ParseError(f'unexpected character {stripped[pos]!r}', pos)
        token = m.group(0)
        tokens.append((pos + len(token) - len(token.lstrip()), m))
        pos = m.end()
    if not tokens:
        raise ParseError('empty polynomial', 0)

    result = LaurentPoly.zero()
    sign = 1
    i = 0
    expect_term = True
    while i < len(tokens):
        start, m = tokens[i]
        op = m.group('op')
        if expect_term and op in ('+', '-'):
            if op == '-':
                sign = -sign
            i += 1
            continue
        if not expect_term:
            if op not in ('+', '-'):
                raise ParseError('expected + or -', start)
            sign = 1 if op == '+' else -1
            expect_term = True
            i += 1
            continue
        coef, exp, i = _parse_term(tokens, i)
        result = result + LaurentPoly({exp: sign * coef})
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError('dangling operator', len(stripped))
    return result


def _parse_term (tokens: list, i: int) -> Tuple[int, Exponent, int]:
    coef = 1
    exp = [0] * NVARS
    need_factor = True
    while i < len(tokens):
        start, m = tokens[i]
        if need_factor:
            if m.group('num') is not None:
                coef *= int(m.group('num'))
            elif m.group('var') is not None:
                idx = int(m.group('idx'))
                if not 1 <= idx <= NVARS:
                    raise ParseError(f'variable x{idx} outside x1..x{NVARS}', start)
                exp[idx - 1] += int(m.group('pow')) if m.group('pow') else 1
            else:
                raise ParseError('expected a factor', start)
            need_factor = False
            i += 1
        elif m.group('op') == '*':
            need_factor = True
            i += 1
        else:
            break
    if need_factor:
        raise ParseError('expected a factor after *', tokens[-1][0])
    return coef, tuple(exp), i
