# -*- coding: utf-8 -*-

"""
casework replays the case fixtures of the inductive proof. Each fixture names
a Kuo variant, four points on G(C) and the six cluster variables of one
recurrence; casework rebuilds the contour chain and checks every stage.

Steps:
1- Load the effect catalog and the case fixtures
2- Derive G and C1..C6 from slot 1 by undoing and applying point effects
3- Search p1..p4 on G(C) by side, color, hint and forced flag until every G - S_i reproduces C_i
4- Run the shape, deletion, kuo, t_products and recurrence stages
5- Compare the fixture's template and transcribed T against what was computed
"""

import glob
import json
import logging
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from dp2_cluster.config import fixture_path, load_config
from dp2_cluster.contour import (SIDES, Contour, ExtractedGraph, Special, contour_for, extract, graphs_equal, hat,
                                 peel, shape)
from dp2_cluster.errors import (CapExceeded, CaseFailure, Dp2Error, InvalidFixture, NotDivisible, ParseError,
                                PreconditionViolated)
from dp2_cluster.laurent import LaurentPoly, product
from dp2_cluster.matching import KuoVariant, c_value, covering_monomial, edge_weight, graph_monomial, kuo_check, weight
from dp2_cluster.somos import ClassifiedVariable, Family, classify
from dp2_cluster.tiling import BLACK, WHITE, BraneTiling, NodeKey, dp2_tiling

STAGES = ('shape', 'deletion', 'kuo', 't_products', 'recurrence', 'transcription')
HINTS = ('left', 'right', 'top', 'bottom')


# Linear forms ---------------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class RoundedTerm:
    sign: int
    mode: str
    k: int
    n: int
    c: int
    div: int

    def value (self, n: int, k: int) -> int:
        num = self.k * k + self.n * n + self.c
        q = num // self.div if self.mode == 'floor' else -((-num) // self.div)
        return self.sign * q


@dataclass(frozen=True)
class LinearForm:
    '''Integer form in n and k, with optional floor(./d) and ceil(./d) terms.'''
    text: str
    k: int
    n: int
    c: int
    rounded: Tuple[RoundedTerm, ...] = ()

    def __call__ (self, n: int, k: int) -> int:
        return self.k * k + self.n * n + self.c + sum(term.value(n, k) for term in self.rounded)

    def __str__ (self) -> str:
        return self.text


_ROUNDED = re.compile(r'([+-]?)\s*(floor|ceil)\(\s*\(?([^()/]*)\)?\s*/\s*(\d+)\s*\)')
_LINEAR_TERM = re.compile(r'\s*([+-])?\s*(\d+)?\s*([kn])?\s*')


def _parse_linear (text: str) -> Tuple[int, int, int]:
    coefs = {'k': 0, 'n': 0, None: 0}
    text = text.strip()
    pos = 0
    while pos < len(text):
        m = _LINEAR_TERM.match(text, pos)
        if m.group(2) is None and m.group(3) is None:
            raise ParseError(f'unexpected text {text[pos:]!r}', pos)
        if pos and m.group(1) is None:
            raise ParseError(f'missing operator before {text[pos:]!r}', pos)
        sign = -1 if m.group(1) == '-' else 1
        coefs[m.group(3)] += sign * int(m.group(2) or 1)
        pos = m.end()
    return coefs['k'], coefs['n'], coefs[None]


def parse_form (text) -> LinearForm:
    '''
    Accepts forms such as "k-3n+1" and "-ceil((k+5n-5)/2)-1"
    :param text: str or int
    :return: LinearForm
    '''
    text = str(text)
    rounded = []
    for m in _ROUNDED.finditer(text):
        if int(m.group(4)) == 0:
            raise ParseError('division by zero', m.start(4))
        k, n, c = _parse_linear(m.group(3))
        rounded.append(RoundedTerm(-1 if m.group(1) == '-' else 1, m.group(2), k, n, c, int(m.group(4))))
    k, n, c = _parse_linear(_ROUNDED.sub('', text))
    return LinearForm(text, k, n, c, tuple(rounded))


# Effects --------------------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class Effect:
    delta: Tuple[int, int, int, int, int]
    next: Special


class EffectCatalog:
    '''
    Change of (a,b,c,d,e) and of the special state when one boundary vertex
    of the given side and color is removed.
    '''

    def __init__ (self, table: Dict[Tuple[str, str], Dict[Special, Effect]]):
        self.table = table

    def effect (self, side: str, color: str, state: Special) -> Effect:
        try:
            return self.table[side, color][state]
        except KeyError:
            raise InvalidFixture(f'no effect for a {color} point on side {side}') from None

    def apply (self, c: Contour, side: str, color: str) -> Contour:
        effect = self.effect(side, color, c.special)
        return c.moved(effect.delta, effect.next)

    def undo (self, c: Contour, side: str, color: str) -> Contour:
        '''Inverse of apply: the state whose effect lands on c.special is the previous one.'''
        for state in Special:
            effect = self.effect(side, color, state)
            if effect.next is c.special:
                return c.moved(tuple(-d for d in effect.delta), state)
        raise InvalidFixture(f'no effect for side {side} {color} ends in state {c.special.value}')


def parse_effects (data: dict) -> EffectCatalog:
    table = {}
    try:
        for entry in data['effects']:
            key = (entry['side'], entry['color'])
            if key[0] not in SIDES or key[1] not in (WHITE, BLACK):
                raise InvalidFixture(f'bad effect key {key}')
            if key in table:
                raise InvalidFixture(f'duplicate effect {key}')
            states = {}
            for state in Special:
                raw = entry[state.value]
                delta = tuple(int(d) for d in raw['delta'])
                if len(delta) != 5:
                    raise InvalidFixture(f'effect {key} {state.value} needs five entries')
                da, db, dc, dd, de = delta
                if da + db != dd or da + de != dc:
                    raise InvalidFixture(f'effect {key} {state.value} does not preserve closure')
                states[state] = Effect(delta, Special(raw['next']))
            table[key] = states
    except (KeyError, TypeError, ValueError) as error:
        raise InvalidFixture(f'malformed effect catalog: {error}') from error
    if len(table) != 2 * len(SIDES):
        raise InvalidFixture(f'effect catalog has {len(table)} entries, expected {2 * len(SIDES)}')
    return EffectCatalog(table)


@lru_cache(maxsize=8)
def load_effects (path: str) -> EffectCatalog:
    try:
        with open(path) as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise InvalidFixture(f'cannot read effect catalog {path}: {error}') from error
    catalog = parse_effects(data)
    logging.info('Loaded effect catalog %s', path)
    return catalog


# Case fixtures --------------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class PointSpec:
    side: str
    color: str
    hint: Optional[str]
    forced: Optional[bool]


@dataclass(frozen=True)
class SlotSpec:
    '''n is the theorem parameter: A^{n^2+n} B^{n^2} x_{2m-1} in the odd family.'''
    family: Family
    m: LinearForm
    n: LinearForm

    def variable (self, n: int, k: int) -> ClassifiedVariable:
        t = self.n(n, k)
        return ClassifiedVariable(self.family, self.m(n, k), t if self.family is Family.EVEN else -t)


@dataclass(frozen=True)
class TemplateBranch:
    sides: Tuple[LinearForm, ...]
    special: Optional[Special]
    parity_of: Optional[LinearForm] = None
    parity: Optional[int] = None

    def applies (self, n: int, k: int) -> bool:
        return self.parity_of is None or self.parity_of(n, k) % 2 == self.parity

    def contour (self, n: int, k: int) -> Contour:
        return Contour.of([form(n, k) for form in self.sides], self.special)


@dataclass(frozen=True)
class CaseFixture:
    id: str
    title: str
    kuo: KuoVariant
    shape: Tuple[str, ...]
    range: Tuple[LinearForm, ...]
    template: Tuple[TemplateBranch, ...]
    points: Tuple[PointSpec, ...]
    subsets: Tuple[Tuple[int, ...], ...]
    slots: Tuple[SlotSpec, ...]
    transcribed: Dict[Special, Tuple[LaurentPoly, ...]]
    samples: Tuple[Tuple[int, int], ...]

    def in_range (self, n: int, k: int) -> bool:
        return all(form(n, k) >= 0 for form in self.range)

    def check_range (self, n: int, k: int) -> None:
        if not self.in_range(n, k):
            failing = [str(form) for form in self.range if form(n, k) < 0]
            raise PreconditionViolated(f'case {self.id} does not cover n = {n}, k = {k}: {failing} < 0')

    def variables (self, n: int, k: int) -> List[ClassifiedVariable]:
        return [slot.variable(n, k) for slot in self.slots]

    def template_contour (self, n: int, k: int) -> Optional[Contour]:
        for branch in self.template:
            if branch.applies(n, k):
                return branch.contour(n, k)
        return None


def t_balanced (t: Sequence[LaurentPoly]) -> bool:
    '''T1 T2 == T3 T4 == T5 T6'''
    return t[0] * t[1] == t[2] * t[3] == t[4] * t[5]


_T_FACTOR = re.compile(r'\s*x([1-5])(?:\^(\d+))?\s*')


def parse_monomial (text: str) -> LaurentPoly:
    '''"x3^2 x4" or "1"'''
    text = str(text).strip()
    exps = [0] * 5
    if text == '1':
        return LaurentPoly.one()
    pos = 0
    while pos < len(text):
        m = _T_FACTOR.match(text, pos)
        if not m:
            raise ParseError(f'not an x-product: {text!r}', pos)
        exps[int(m.group(1)) - 1] += int(m.group(2) or 1)
        pos = m.end()
    if pos == 0:
        raise ParseError('empty x-product', 0)
    return LaurentPoly.monomial(exps)


def _parse_branch (raw: dict) -> TemplateBranch:
    sides = tuple(parse_form(s) for s in raw['sides'])
    if len(sides) != 5:
        raise InvalidFixture('a template branch has five sides')
    special = raw.get('special', 'parity')
    special = None if special == 'parity' else Special(special)
    when = raw.get('when')
    if not when:
        return TemplateBranch(sides, special)
    (parity, form), = when.items()
    return TemplateBranch(sides, special, parse_form(form), 1 if parity == 'odd' else 0)


def parse_case_fixture (data: dict) -> CaseFixture:
    '''
    Build and validate a case fixture
    :param data: the fixture's JSON document
    :return: CaseFixture
    '''
    try:
        points = tuple(PointSpec(p['side'], p['color'], p.get('hint'), p.get('forced')) for p in data['points'])
        subsets = tuple(tuple(int(i) for i in s) for s in data['S'])
        slots = tuple(SlotSpec(Family(s['family']), parse_form(s['m']), parse_form(s['n'])) for s in data['slots'])
        transcribed = {Special(state): tuple(parse_monomial(t) for t in values)
                       for state, values in data.get('T', {}).items()}
        fixture = CaseFixture(
            id=data['id'],
            title=data.get('title', data['id']),
            kuo=KuoVariant(data['kuo']),
            shape=tuple(data['shape']),
            range=tuple(parse_form(f) for f in data['range']),
            template=tuple(_parse_branch(b) for b in data.get('template', [])),
            points=points,
            subsets=subsets,
            slots=slots,
            transcribed=transcribed,
            samples=tuple((int(n), int(k)) for n, k in data.get('samples', [])),
        )
    except (KeyError, TypeError, ValueError, ParseError) as error:
        raise InvalidFixture(f'malformed case fixture: {error}') from error

    if len(points) != 4 or len(subsets) != 6 or len(slots) != 6:
        raise InvalidFixture(f'case {fixture.id} needs four points, six subsets and six slots')
    for p in points:
        if p.side not in SIDES or p.color not in (WHITE, BLACK) or (p.hint and p.hint not in HINTS):
            raise InvalidFixture(f'case {fixture.id} has a bad point {p}')
    if any(i not in (1, 2, 3, 4) for s in subsets for i in s):
        raise InvalidFixture(f'case {fixture.id} has a subset outside p1..p4')
    sizes = [len(s) for s in subsets]
    if not sizes[0] + sizes[1] == sizes[2] + sizes[3] == sizes[4] + sizes[5] == 4:
        raise InvalidFixture(f'case {fixture.id}: each pair of subsets must remove four points in total')
    if len(fixture.shape) != 5 or any(set(signs) - set('+-0') for signs in fixture.shape):
        raise InvalidFixture(f'case {fixture.id} has a bad shape {fixture.shape}')
    if any(len(values) != 6 for values in transcribed.values()):
        raise InvalidFixture(f'case {fixture.id} needs six transcribed T per branch')
    for state, values in transcribed.items():
        if not t_balanced(values):
            raise InvalidFixture(f'case {fixture.id}: transcribed T for {state.value} is not balanced')
    for n, k in fixture.samples:
        if not fixture.in_range(n, k):
            raise InvalidFixture(f'case {fixture.id} sample ({n}, {k}) is out of range')
    return fixture


def load_case_fixture (path: str) -> CaseFixture:
    try:
        with open(path) as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise InvalidFixture(f'cannot read case fixture {path}: {error}') from error
    return parse_case_fixture(data)


def load_case_fixtures (config: dict = None) -> List[CaseFixture]:
    '''
    Every *.json under fixture_meta.cases_dir, in file name order
    :param config:
    :return: list of CaseFixture
    '''
    config = config or load_config()
    paths = sorted(glob.glob(os.path.join(fixture_path(config, 'cases_dir'), '*.json')))
    fixtures = [load_case_fixture(path) for path in paths]
    logging.info('Loaded %d case fixtures', len(fixtures))
    return fixtures


def default_catalog (config: dict = None) -> EffectCatalog:
    return load_effects(fixture_path(config or load_config(), 'effects_file'))


# Chain ----------------------------------------------------------------------------------------------------------------
def case_chain (fixture: CaseFixture, n: int, k: int, catalog: EffectCatalog) -> Tuple[Contour, List[Contour]]:
    '''
    G from slot 1 by undoing the S1 effects, then C_i = G with the S_i effects applied in index order
    :param fixture:
    :param n:
    :param k:
    :param catalog:
    :return: (G, [C1..C6])
    '''
    first = fixture.slots[0].variable(n, k)
    if first.m < 2:
        raise PreconditionViolated(f'case {fixture.id} at ({n}, {k}) starts below k = 2')
    g = contour_for(first)
    for i in reversed(fixture.subsets[0]):
        p = fixture.points[i - 1]
        g = catalog.undo(g, p.side, p.color)
    chain = []
    for subset in fixture.subsets:
        c = g
        for i in subset:
            p = fixture.points[i - 1]
            c = catalog.apply(c, p.side, p.color)
        chain.append(c)
    return g, chain


# Point selection ------------------------------------------------------------------------------------------------------
def _distance2 (p, s0, s1) -> Fraction:
    dx, dy = s1[0] - s0[0], s1[1] - s0[1]
    length2 = dx * dx + dy * dy
    if length2 == 0:
        u = Fraction(0)
    else:
        u = min(Fraction(1), max(Fraction(0), Fraction((p[0] - s0[0]) * dx + (p[1] - s0[1]) * dy) / length2))
    qx, qy = s0[0] + u * dx - p[0], s0[1] + u * dy - p[1]
    return qx * qx + qy * qy


def _hint_key (pos, hint: Optional[str]) -> Fraction:
    # left/right use the horizontal axis of the drawn triangular lattice
    x, y = pos[0] + Fraction(pos[1]) / 2, Fraction(pos[1])
    return {'right': -x, 'left': x, 'top': -y, 'bottom': y}.get(hint, Fraction(0))


def rank_candidates (e: ExtractedGraph, spec: PointSpec, exclude=()) -> List[NodeKey]:
    '''
    Vertices of G(C) of the declared color, best first
    :param e:
    :param spec:
    :param exclude: already chosen points
    :return: list of node keys
    '''
    in_forced = {node for f in e.forced for node in (f.u, f.v)}
    s0, s1 = e.side_segments[spec.side]

    def key (node):
        pos = e.graph.nodes[node]['pos']
        flag_miss = spec.forced is not None and (node in in_forced) != spec.forced
        return flag_miss, _distance2(pos, s0, s1), _hint_key(pos, spec.hint), node

    return sorted((node for node, color in e.graph.nodes(data='color') if color == spec.color and node not in exclude),
                  key=key)


# Runs -----------------------------------------------------------------------------------------------------------------
@dataclass
class CaseVerdict:
    case: str
    n: int
    k: int
    stage: str
    passed: bool
    detail: str = ''

    def to_json (self) -> dict:
        return {'case': self.case, 'n': self.n, 'k': self.k, 'stage': self.stage, 'pass': self.passed,
                'detail': self.detail}


class CaseRun:
    '''One fixture at one (n, k): the chain, G(C), the chosen points and cached extractions.'''

    def __init__ (self, fixture: CaseFixture, n: int, k: int, tiling: BraneTiling, catalog: EffectCatalog,
                  config: dict):
        fixture.check_range(n, k)
        self.fixture = fixture
        self.n = n
        self.k = k
        self.tiling = tiling
        self.catalog = catalog
        matching_meta = config['matching_meta']
        self.cap = matching_meta['fixture_cap']
        self.limit = matching_meta['point_search_limit']
        self.assignment_limit = matching_meta['assignment_limit']
        self.variables = fixture.variables(n, k)
        self.g, self.chain = case_chain(fixture, n, k, catalog)
        self.extracted = extract(self.g, tiling)
        self.monomial = graph_monomial(self.extracted)
        self._points: Optional[List[NodeKey]] = None
        self._chain_extracts: Dict[int, ExtractedGraph] = {}
        self._forced_weights: Dict[Tuple[int, FrozenSet[NodeKey]], Optional[LaurentPoly]] = {}

    def chain_extract (self, i: int) -> ExtractedGraph:
        if i not in self._chain_extracts:
            self._chain_extracts[i] = extract(self.chain[i], self.tiling)
        return self._chain_extracts[i]

    @property
    def points (self) -> List[NodeKey]:
        if self._points is None:
            self._points = self._select_points()
        return self._points

    @property
    def t_values (self) -> List[LaurentPoly]:
        return self.t_monomials(self.points)

    def removed (self, i: int, points: Sequence[NodeKey]) -> FrozenSet[NodeKey]:
        return frozenset(points[j - 1] for j in self.fixture.subsets[i])

    def forced_weight (self, i: int, removed: FrozenSet[NodeKey]) -> Optional[LaurentPoly]:
        '''
        Weight of the forced edges of G(C) - removed, or None when its hat is not the hat of C_i
        :param i: 0-based subset index
        :param removed:
        :return: LaurentPoly monomial or None
        '''
        key = (i, removed)
        if key not in self._forced_weights:
            g = self.extracted.graph.copy()
            g.remove_nodes_from(removed)
            h, forced = peel(g)
            same = graphs_equal(h, self.chain_extract(i).hat)
            self._forced_weights[key] = product(edge_weight(f.faces) for f in forced) if same else None
        return self._forced_weights[key]

    def t_monomials (self, points: Sequence[NodeKey]) -> List[LaurentPoly]:
        '''
        T_i = m(G(C)) wt(forced edges of G(C) - S_i) / m(C_i). The hats agree, so their weights cancel.
        :param points: p1..p4
        :return: T1..T6
        '''
        values = []
        for i in range(6):
            forced = self.forced_weight(i, self.removed(i, points))
            if forced is None:
                raise CaseFailure(self.fixture.id, f'G - S{i + 1} does not reproduce C{i + 1}')
            values.append(self.monomial * forced / covering_monomial(self.chain_extract(i))[1])
        return values

    def _assignments (self, ranked: Sequence[Sequence[NodeKey]]) -> Iterator[Tuple[NodeKey, ...]]:
        '''Point choices in rank order; each S_i is checked once its last point is placed.'''
        subsets = self.fixture.subsets
        due = [[i for i, s in enumerate(subsets) if s and max(s) == level] for level in range(1, 5)]

        def extend (chosen: Tuple[NodeKey, ...]) -> Iterator[Tuple[NodeKey, ...]]:
            if len(chosen) == 4:
                yield chosen
                return
            for node in ranked[len(chosen)]:
                if node in chosen:
                    continue
                picked = chosen + (node,)
                if all(self.forced_weight(i, self.removed(i, picked)) is not None for i in due[len(chosen)]):
                    yield from extend(picked)

        if all(self.forced_weight(i, frozenset()) is not None for i, s in enumerate(subsets) if not s):
            yield from extend(())

    def _select_points (self) -> List[NodeKey]:
        '''
        First point choice, in rank order, whose T reproduce the transcription for G's
        special state; else the first balanced one; else the first that passes deletion.
        :return: p1..p4
        '''
        ranked = []
        for i, spec in enumerate(self.fixture.points, start=1):
            candidates = rank_candidates(self.extracted, spec)[:self.limit]
            if not candidates:
                raise CaseFailure(self.fixture.id, f'G(C) has no {spec.color} vertex for p{i}')
            ranked.append(candidates)

        transcribed = self.fixture.transcribed.get(self.g.special)
        first = balanced = None
        for count, points in enumerate(self._assignments(ranked), start=1):
            t = self.t_monomials(points)
            if t_balanced(t):
                if transcribed is None or tuple(t) == transcribed:
                    logging.debug('Case %s (%d, %d) points %s', self.fixture.id, self.n, self.k, points)
                    return list(points)
                balanced = balanced or points
            first = first or points
            if count >= self.assignment_limit:
                break

        if first is None:
            raise CaseFailure(self.fixture.id, f'at n = {self.n}, k = {self.k} no choice among the best {self.limit} '
                                               f'candidates per point makes every G - S_i reproduce C_i')
        chosen = balanced or first
        logging.info('Case %s (%d, %d): no point choice gives %s, using %s', self.fixture.id, self.n, self.k,
                     'balanced T' if balanced is None else 'the transcribed T', chosen)
        return list(chosen)

    def deleted (self, i: int) -> nx.Graph:
        g = self.extracted.graph.copy()
        g.remove_nodes_from(self.removed(i, self.points))
        return g


# Stages ---------------------------------------------------------------------------------------------------------------
def _t_text (values: Sequence[LaurentPoly]) -> str:
    return '[' + ', '.join(str(t) for t in values) + ']'


def _stage_shape (run: CaseRun) -> Tuple[bool, str]:
    problems = []
    signs = str(shape(run.g))
    if any(sign not in allowed for sign, allowed in zip(signs, run.fixture.shape)):
        problems.append(f'G = {run.g} has shape {signs}')
    for i, (c, v) in enumerate(zip(run.chain, run.variables), start=1):
        if v.m >= 2 and c != contour_for(v):
            problems.append(f'C{i} = {c} but {v} has contour {contour_for(v)}')
    if problems:
        return False, '; '.join(problems)
    return True, f'G = {run.g}'


def _stage_deletion (run: CaseRun) -> Tuple[bool, str]:
    failing = [i for i in range(6) if not graphs_equal(hat(run.deleted(i)), run.chain_extract(i).hat)]
    if failing:
        return False, 'hat(G - S_i) differs from the chain graph for i in ' + str([i + 1 for i in failing])
    return True, f'points {[list(p) for p in run.points]}'


def _stage_kuo (run: CaseRun) -> Tuple[bool, str]:
    holds = kuo_check(run.extracted.graph, run.points, run.fixture.kuo, run.fixture.subsets, run.cap)
    return holds, f'{run.fixture.kuo.value} identity {"holds" if holds else "fails"}'


def _stage_t_products (run: CaseRun) -> Tuple[bool, str]:
    products = []
    for i in range(6):
        c = c_value(run.chain_extract(i), run.cap)
        if c.is_zero():
            return False, f'c(C{i + 1}) is zero'
        try:
            t = (run.monomial * weight(run.deleted(i), run.cap)) / c
        except NotDivisible:
            return False, f'T{i + 1} is not a Laurent polynomial'
        if not t.is_monomial():
            return False, f'T{i + 1} = {t} is not a monomial'
        products.append(t)
    return t_balanced(products), f'T = {_t_text(products)}'


def _stage_recurrence (run: CaseRun) -> Tuple[bool, str]:
    expected = [classify(v) for v in run.variables]
    failing = [i + 1 for i in range(6) if c_value(run.chain_extract(i), run.cap) != expected[i]]
    identity = expected[0] * expected[1] == expected[2] * expected[3] + expected[4] * expected[5]
    if failing or not identity:
        return False, f'c(C_i) != classify(slot_i) for i in {failing}; recurrence identity {identity}'
    return True, ', '.join(str(v) for v in run.variables)


def _stage_transcription (run: CaseRun) -> Tuple[bool, str]:
    problems = []
    template = run.fixture.template_contour(run.n, run.k)
    if run.fixture.template and template is None:
        problems.append('no template branch applies')
    elif template is not None and template != run.g:
        problems.append(f'template gives {template} but G = {run.g}')
    transcribed = run.fixture.transcribed.get(run.g.special)
    if transcribed is not None and tuple(run.t_values) != transcribed:
        problems.append(f'T = {_t_text(run.t_values)} but the transcription has {_t_text(transcribed)}')
    if problems:
        return False, '; '.join(problems)
    if transcribed is None:
        return True, f'template agrees; no transcribed T for {run.g.special.value}'
    return True, f'template and T = {_t_text(transcribed)} agree'


STAGE_CHECKS = {
    'shape': _stage_shape,
    'deletion': _stage_deletion,
    'kuo': _stage_kuo,
    't_products': _stage_t_products,
    'recurrence': _stage_recurrence,
    'transcription': _stage_transcription,
}


def verify_case_fixture (fixture: CaseFixture, n: int, k: int, tiling: BraneTiling = None, config: dict = None,
                         catalog: EffectCatalog = None, stages: Sequence[str] = STAGES) -> List[CaseVerdict]:
    '''
    Run the requested stages of one fixture at (n, k)
    :param fixture:
    :param n:
    :param k:
    :param tiling:
    :param config:
    :param catalog:
    :param stages: subset of STAGES, in order
    :return: one CaseVerdict per stage
    '''
    config = config or load_config()
    tiling = tiling or dp2_tiling()
    catalog = catalog or default_catalog(config)
    run = CaseRun(fixture, n, k, tiling, catalog, config)
    verdicts = []
    for stage in stages:
        try:
            passed, detail = STAGE_CHECKS[stage](run)
        except CapExceeded as error:
            passed, detail = False, f'cap: {error}'
        except Dp2Error as error:
            passed, detail = False, f'{type(error).__name__}: {error}'
        log = logging.info if passed else logging.warning
        log('Case %s (%d, %d) %s: %s', fixture.id, n, k, stage, 'pass' if passed else 'FAIL')
        verdicts.append(CaseVerdict(fixture.id, n, k, stage, passed, detail))
    return verdicts


def sweep_cases (config: dict = None, tiling: BraneTiling = None, fixtures: Sequence[CaseFixture] = None,
                 stages: Sequence[str] = STAGES) -> Iterator[dict]:
    '''
    Every fixture at each of its samples, as verdict dicts
    :param config:
    :param tiling:
    :param fixtures: default every packaged fixture
    :param stages:
    :return: iterator of {case, n, k, stage, pass, detail}
    '''
    config = config or load_config()
    tiling = tiling or dp2_tiling()
    catalog = default_catalog(config)
    for fixture in fixtures if fixtures is not None else load_case_fixtures(config):
        for n, k in fixture.samples:
            for verdict in verify_case_fixture(fixture, n, k, tiling, config, catalog, stages):
                yield verdict.to_json()
