# -*- coding: utf-8 -*-

"""
somos is the closed-form side: the bi-infinite Somos-5 Laurent family,
the constants A and B, the exponent function g, the rho-word cluster
formula and the classification of every toric cluster variable.

Steps:
1- Extend the seed window x1..x5 forward and backward by exact division
2- Expand A and B into canonical Laurent form
3- Build formula clusters and classified variables A^e B^f x_i
"""

import re
import threading
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from dp2_cluster.errors import ParseError
from dp2_cluster.laurent import LaurentPoly

_lock = threading.RLock()
_memo: Dict[int, LaurentPoly] = {i: LaurentPoly.var(i) for i in range(1, 6)}
_int_memo: Dict[int, int] = {i: 1 for i in range(1, 6)}


# Types ----------------------------------------------------------------------------------------------------------------
class Family(Enum):
    EVEN = 'even'
    ODD = 'odd'


@dataclass(frozen=True)
class ClassifiedVariable:
    '''
    Even (m, n): A^{n^2} B^{n(n-1)} x_{2m}; Odd (m, n): A^{n(n-1)} B^{n^2} x_{2m-1}
    '''
    family: Family
    m: int
    n: int

    @property
    def index (self) -> int:
        return 2 * self.m if self.family is Family.EVEN else 2 * self.m - 1

    @property
    def exponents (self) -> Tuple[int, int]:
        n = self.n
        if self.family is Family.EVEN:
            return n * n, n * (n - 1)
        return n * (n - 1), n * n

    def __str__ (self) -> str:
        e_a, e_b = self.exponents
        parts = []
        if e_a:
            parts.append('A' if e_a == 1 else f'A^{e_a}')
        if e_b:
            parts.append('B' if e_b == 1 else f'B^{e_b}')
        parts.append(f'x{self.index}')
        return ' '.join(parts)


@dataclass(frozen=True)
class VariableSpec:
    '''A^e_a B^e_b x_index; index None means no x factor.'''
    e_a: int
    e_b: int
    index: Optional[int]


# Sequence -------------------------------------------------------------------------------------------------------------
def x (n: int) -> LaurentPoly:
    '''
    x_n of the Somos-5 Laurent family
    :param n: any integer
    :return: LaurentPoly
    '''
    with _lock:
        if n in _memo:
            return _memo[n]
        if n > 5:
            for j in range(max(_memo) + 1, n + 1):
                _memo[j] = (_memo[j - 1] * _memo[j - 4] + _memo[j - 2] * _memo[j - 3]) / _memo[j - 5]
        else:
            for j in range(min(_memo) - 1, n - 1, -1):
                _memo[j] = (_memo[j + 1] * _memo[j + 4] + _memo[j + 2] * _memo[j + 3]) / _memo[j + 5]
        return _memo[n]


def integer_x (n: int) -> int:
    '''x_n at x1 = ... = x5 = 1, by the integer recurrence'''
    with _lock:
        if n in _int_memo:
            return _int_memo[n]
        m = _int_memo
        if n > 5:
            for j in range(max(m) + 1, n + 1):
                m[j] = (m[j - 1] * m[j - 4] + m[j - 2] * m[j - 3]) // m[j - 5]
        else:
            for j in range(min(m) - 1, n - 1, -1):
                m[j] = (m[j + 1] * m[j + 4] + m[j + 2] * m[j + 3]) // m[j + 5]
        return m[n]


def somos_integers (lo: int, hi: int) -> List[int]:
    return [integer_x(n) for n in range(lo, hi + 1)]


@lru_cache(maxsize=None)
def constant_A () -> LaurentPoly:
    return (x(1) * x(5) + x(3) * x(3)) / (x(2) * x(4))


@lru_cache(maxsize=None)
def constant_B () -> LaurentPoly:
    return (x(2) * x(6) + x(4) * x(4)) / (x(3) * x(5))


@lru_cache(maxsize=256)
def _power (which: str, e: int) -> LaurentPoly:
    base = constant_A() if which == 'A' else constant_B()
    return base ** e


def g (s: int, k: int) -> int:
    '''
    Exponent function of the cluster formula; depends on the parity of k only
    :param s: >= 0
    :param k:
    :return: int
    '''
    if s < 0:
        raise ValueError('s must be non-negative')
    if k % 2 == 0:
        return (s // 2) * ((s + 1) // 2)
    return ((s - 1) // 2) * (s // 2)


def g_identities_hold (s: int, k: int) -> bool:
    '''
    Second differences of g in s: +1 lands on the A exponent when k+s is odd
    and on the B exponent when k+s is even
    :param s: >= 1
    :param k:
    :return: bool
    '''
    bump_a, bump_b = (1, 0) if (k + s) % 2 else (0, 1)
    return (g(s + 1, k) == 2 * g(s, k) - g(s - 1, k) + bump_a
            and g(s + 1, k + 1) == 2 * g(s, k + 1) - g(s - 1, k + 1) + bump_b)


def monomial_in_ab (e_a: int, e_b: int) -> LaurentPoly:
    return _power('A', e_a) * _power('B', e_b)


def formula_cluster (k: int, s: int) -> Tuple[LaurentPoly, ...]:
    '''
    Cluster of rho1^k (rho3 rho1)^s, with rho1^k meaning rho2^-k for k < 0
    :param k:
    :param s: >= 0
    :return: 5-tuple
    '''
    if s < 0:
        raise ValueError('s must be non-negative')
    outer = monomial_in_ab(g(s + 1, k), g(s + 1, k + 1))
    inner = monomial_in_ab(g(s, k), g(s, k + 1))
    return (outer * x(k + s + 1), inner * x(k + s + 2), outer * x(k + s + 3),
            inner * x(k + s + 4), outer * x(k + s + 5))


def classify (v: ClassifiedVariable) -> LaurentPoly:
    e_a, e_b = v.exponents
    return monomial_in_ab(e_a, e_b) * x(v.index)


def classify_at_ones (v: ClassifiedVariable) -> int:
    e_a, e_b = v.exponents
    return 2 ** e_a * 3 ** e_b * integer_x(v.index)


def lemma_identity (n: int, constant: str = 'A') -> bool:
    '''
    x_{2n-1} x_{2n+3} + x_{2n+1}^2 = A x_{2n} x_{2n+2}, or the B form one index up
    :param n:
    :param constant: 'A' or 'B'
    :return: bool
    '''
    i = 2 * n - 1 if constant == 'A' else 2 * n
    lhs = x(i) * x(i + 4) + x(i + 2) * x(i + 2)
    factor = constant_A() if constant == 'A' else constant_B()
    return lhs == factor * x(i + 1) * x(i + 3)


# Variable specs -------------------------------------------------------------------------------------------------------
_TUPLE_SPEC = re.compile(r'^\(\s*(even|odd)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$', re.IGNORECASE)
_FACTOR = re.compile(r'\s*(?:(A|B)(?:\^(\d+))?|x(-?\d+))')


def parse_variable (text: str) -> VariableSpec:
    '''
    Accepts x6, x-2, A, B, A^2 B x5 and (even,3,1)
    :param text:
    :return: VariableSpec
    '''
    stripped = text.strip()
    m = _TUPLE_SPEC.match(stripped)
    if m:
        v = ClassifiedVariable(Family(m.group(1).lower()), int(m.group(2)), int(m.group(3)))
        return VariableSpec(*v.exponents, v.index)
    e_a = e_b = 0
    index = None
    pos = 0
    while pos < len(stripped):
        m = _FACTOR.match(stripped, pos)
        if not m:
            raise ParseError(f'unexpected text {stripped[pos:]!r}', pos)
        if m.group(3) is not None:
            if index is not None:
                raise ParseError('only one x factor is allowed', m.start(3) - 1)
            index = int(m.group(3))
        elif m.group(1) == 'A':
            e_a += int(m.group(2) or 1)
        else:
            e_b += int(m.group(2) or 1)
        pos = m.end()
    if pos == 0:
        raise ParseError('empty variable spec', 0)
    return VariableSpec(e_a, e_b, index)


def evaluate (spec: VariableSpec) -> LaurentPoly:
    value = monomial_in_ab(spec.e_a, spec.e_b)
    return value * x(spec.index) if spec.index is not None else value


def evaluate_at_ones (spec: VariableSpec) -> int:
    value = 2 ** spec.e_a * 3 ** spec.e_b
    return value * integer_x(spec.index) if spec.index is not None else value


def exponents (v: ClassifiedVariable) -> Tuple[int, int, int]:
    '''(e_A, e_B, index) of a classified variable'''
    e_a, e_b = v.exponents
    return e_a, e_b, v.index
