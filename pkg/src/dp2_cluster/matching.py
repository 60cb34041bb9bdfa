# -*- coding: utf-8 -*-

"""
matching turns extracted graphs into Laurent polynomials and checks the
main theorem against the closed-form classification.

Steps:
1- Count and enumerate perfect matchings by memoized vertex elimination
2- Weigh matchings with 1/(x_i x_j) per edge and build covering monomials
3- Check Kuo condensation identities on vertex-deleted graphs
4- Verify c(G) = classify(v) per variable, or over a thread-pooled grid
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from dp2_cluster.contour import ExtractedGraph, contour_for, extract, peel, reflect_case
from dp2_cluster.errors import CapExceeded, OutOfRange, PreconditionViolated
from dp2_cluster.laurent import LaurentPoly, product, swap_reflect
from dp2_cluster.somos import ClassifiedVariable, Family, classify, classify_at_ones, integer_x
from dp2_cluster.tiling import WHITE, BraneTiling, NodeKey, dp2_tiling

Edge = Tuple[NodeKey, NodeKey]
PerfectMatching = FrozenSet[Edge]

DEFAULT_CAP = 250000


# Types ----------------------------------------------------------------------------------------------------------------
class KuoVariant(Enum):
    BALANCED = 'balanced'
    UNBALANCED = 'unbalanced'
    NON_ALTERNATING = 'non-alternating'


# S1..S6 as 1-based point indices: w(G-S1) w(G-S2) = w(G-S3) w(G-S4) + w(G-S5) w(G-S6)
KUO_SUBSETS = {
    KuoVariant.BALANCED: ((), (1, 2, 3, 4), (1, 2), (3, 4), (1, 4), (2, 3)),
    KuoVariant.UNBALANCED: ((2,), (1, 3, 4), (1,), (2, 3, 4), (3,), (1, 2, 4)),
    KuoVariant.NON_ALTERNATING: ((1, 4), (2, 3), (), (1, 2, 3, 4), (1, 3), (2, 4)),
}


@dataclass(frozen=True)
class CoveringMonomialReport:
    a: Tuple[int, int, int, int, int]
    b: Tuple[int, int, int, int, int]
    c3: int

    @property
    def exponents (self) -> Tuple[int, ...]:
        return tuple(ai - bi + (self.c3 if j == 2 else 0) for j, (ai, bi) in enumerate(zip(self.a, self.b)))


@dataclass
class MainTheoremVerdict:
    variable: ClassifiedVariable
    contour: str
    reflected: bool
    passed: bool
    matchings: int
    expected_matchings: int
    expected: LaurentPoly
    computed: LaurentPoly

    def to_json (self) -> dict:
        report = {
            'family': self.variable.family.value,
            'm': self.variable.m,
            'n': self.variable.n,
            'variable': str(self.variable),
            'contour': self.contour,
            'reflected': self.reflected,
            'pass': self.passed,
            'matchings': self.matchings,
        }
        if not self.passed:
            report['expected'] = str(self.expected)
            report['computed'] = str(self.computed)
            report['expected_matchings'] = self.expected_matchings
        return report


# Helpers --------------------------------------------------------------------------------------------------------------
def _adjacency (graph: nx.Graph) -> Dict[NodeKey, Tuple[NodeKey, ...]]:
    return {node: tuple(sorted(graph.neighbors(node))) for node in graph}


def _branch (remaining: FrozenSet[NodeKey], adj) -> Tuple[NodeKey, List[NodeKey]]:
    '''Vertex with the fewest available partners, and those partners.'''
    best, options = None, None
    for node in sorted(remaining):
        available = [w for w in adj[node] if w in remaining]
        if options is None or len(available) < len(options):
            best, options = node, available
            if len(options) <= 1:
                break
    return best, options


def _color_balanced (graph: nx.Graph) -> bool:
    whites = sum(1 for _, color in graph.nodes(data='color') if color == WHITE)
    return 2 * whites == graph.number_of_nodes()


def edge_weight (faces: Sequence[int]) -> LaurentPoly:
    '''1/(x_i x_j) for an edge between faces i and j'''
    exps = [0] * 5
    for label in faces:
        exps[label - 1] -= 1
    return LaurentPoly.monomial(exps)


def _edge (u: NodeKey, v: NodeKey) -> Edge:
    return (u, v) if u <= v else (v, u)


# Enumeration ----------------------------------------------------------------------------------------------------------
def count_matchings (graph: nx.Graph) -> int:
    '''
    Number of perfect matchings
    :param graph:
    :return: int
    '''
    if not _color_balanced(graph):
        return 0
    graph, _ = peel(graph)
    adj = _adjacency(graph)
    memo: Dict[FrozenSet[NodeKey], int] = {}

    def count (remaining):
        if not remaining:
            return 1
        if remaining in memo:
            return memo[remaining]
        v, options = _branch(remaining, adj)
        total = sum(count(remaining - {v, w}) for w in options)
        memo[remaining] = total
        return total

    return count(frozenset(graph))


def _check_cap (graph: nx.Graph, cap: Optional[int]) -> int:
    n = count_matchings(graph)
    if cap is not None and n > cap:
        raise CapExceeded(cap, n)
    return n


def enumerate_matchings (graph: nx.Graph, cap: Optional[int] = DEFAULT_CAP) -> List[PerfectMatching]:
    '''
    Every perfect matching, in a deterministic order
    :param graph:
    :param cap: raise CapExceeded above this many matchings
    :return: list of edge sets
    '''
    if _check_cap(graph, cap) == 0:
        return []
    adj = _adjacency(graph)

    def walk (remaining) -> Iterator[List[Edge]]:
        if not remaining:
            yield []
            return
        v, options = _branch(remaining, adj)
        for w in options:
            for rest in walk(remaining - {v, w}):
                yield [_edge(v, w)] + rest

    return [frozenset(edges) for edges in walk(frozenset(graph))]


def _weight_of (graph: nx.Graph) -> LaurentPoly:
    adj = _adjacency(graph)
    weights = {_edge(u, v): edge_weight(d['faces']) for u, v, d in graph.edges(data=True)}
    memo: Dict[FrozenSet[NodeKey], LaurentPoly] = {}

    def weigh (remaining):
        if not remaining:
            return LaurentPoly.one()
        if remaining in memo:
            return memo[remaining]
        v, options = _branch(remaining, adj)
        total = LaurentPoly.zero()
        for w in options:
            rest = weigh(remaining - {v, w})
            if not rest.is_zero():
                total = total + weights[_edge(v, w)] * rest
        memo[remaining] = total
        return total

    return weigh(frozenset(graph))


def weight (graph: nx.Graph, cap: Optional[int] = DEFAULT_CAP) -> LaurentPoly:
    '''
    Sum over perfect matchings of the product of edge weights
    :param graph: nodes with a color, edges with their two face labels
    :param cap:
    :return: LaurentPoly, zero when there is no perfect matching
    '''
    if _check_cap(graph, cap) == 0:
        return LaurentPoly.zero()
    hat_graph, forced = peel(graph)
    return product(edge_weight(f.faces) for f in forced) * _weight_of(hat_graph)


def matching_weight (graph: nx.Graph, matching: PerfectMatching) -> LaurentPoly:
    return product(edge_weight(graph.edges[u, v]['faces']) for u, v in matching)


# Covering monomial ----------------------------------------------------------------------------------------------------
def covering_monomial (e: ExtractedGraph) -> Tuple[CoveringMonomialReport, LaurentPoly]:
    '''
    a from enclosed kites, b from both labels of every forced edge, c3 from the special vertex
    :param e:
    :return: (report, x^(a - b) x3^c3)
    '''
    b = [0] * 5
    for f in e.forced:
        for label in f.faces:
            b[label - 1] += 1
    a = tuple(e.enclosed.get(label, 0) for label in range(1, 6))
    report = CoveringMonomialReport(a, tuple(b), e.c3)
    return report, LaurentPoly.monomial(report.exponents)


def graph_monomial (e: ExtractedGraph) -> LaurentPoly:
    '''Covering monomial of G(C) itself: x^a x3^c3'''
    report, _ = covering_monomial(e)
    return LaurentPoly.monomial(tuple(ai + (report.c3 if j == 2 else 0) for j, ai in enumerate(report.a)))


def c_value (e: ExtractedGraph, cap: Optional[int] = DEFAULT_CAP) -> LaurentPoly:
    '''c(G) = w(G) m(G) on the hat graph'''
    return weight(e.hat, cap) * covering_monomial(e)[1]


# Kuo condensation -----------------------------------------------------------------------------------------------------
def kuo_terms (graph: nx.Graph, pts: Sequence[NodeKey], subsets: Sequence[Sequence[int]],
               weigh: Callable[[nx.Graph], LaurentPoly]) -> List[LaurentPoly]:
    '''
    weigh(G - S_i) for the six subsets, points given 1-based
    '''
    values = []
    for subset in subsets:
        g = graph.copy()
        g.remove_nodes_from(pts[i - 1] for i in subset)
        values.append(weigh(g))
    return values


def _check_kuo_colors (graph: nx.Graph, pts: Sequence[NodeKey], subsets) -> None:
    if len(pts) != 4 or len(set(pts)) != 4 or any(p not in graph for p in pts):
        raise PreconditionViolated('four distinct vertices of the graph are required')
    whites = sum(1 for _, color in graph.nodes(data='color') if color == WHITE)
    blacks = graph.number_of_nodes() - whites
    for subset in subsets:
        dw = sum(1 for i in subset if graph.nodes[pts[i - 1]]['color'] == WHITE)
        if whites - dw != blacks - (len(subset) - dw):
            raise PreconditionViolated(f'removing points {list(subset)} leaves an unbalanced graph')


def kuo_check (graph: nx.Graph, pts: Sequence[NodeKey], variant: KuoVariant,
               subsets: Sequence[Sequence[int]] = None, cap: Optional[int] = DEFAULT_CAP) -> bool:
    '''
    w(G-S1) w(G-S2) == w(G-S3) w(G-S4) + w(G-S5) w(G-S6) by direct enumeration
    :param graph:
    :param pts: p1..p4
    :param variant: selects the default subsets
    :param subsets: explicit S1..S6 for relabeled point orders
    :param cap:
    :return: bool
    '''
    subsets = subsets or KUO_SUBSETS[variant]
    _check_kuo_colors(graph, pts, subsets)
    w = kuo_terms(graph, pts, subsets, lambda g: weight(g, cap))
    holds = w[0] * w[1] == w[2] * w[3] + w[4] * w[5]
    logging.debug('Kuo %s identity: %s', variant.value, holds)
    return holds


# Main theorem ---------------------------------------------------------------------------------------------------------
def expected_matching_count (v: ClassifiedVariable) -> int:
    '''classify(v) at x1 = ... = x5 = 1, which counts the matchings of its hat graph'''
    return classify_at_ones(v)


def cap_lower_bound (v: ClassifiedVariable, cap: int) -> Optional[int]:
    '''
    A lower bound on the matching count that exceeds cap, or None if the count fits.
    Walks the integer sequence only as far as needed.
    '''
    e_a, e_b = v.exponents
    factor = 2 ** e_a * 3 ** e_b
    if factor > cap:
        return factor
    index = max(v.index, 6 - v.index)
    # x_3, x_4, ... is non-decreasing and x_{6-i} = x_i
    for j in range(3, index + 1):
        bound = factor * integer_x(j)
        if bound > cap:
            return bound
    return None


def verify_main_theorem (v: ClassifiedVariable, tiling: BraneTiling = None,
                         cap: int = DEFAULT_CAP) -> MainTheoremVerdict:
    '''
    c(hat G(contour_for(v))) == classify(v), and the hat has classify(v)(1, ..., 1) perfect matchings.
    k <= 1 goes through the mirror partner
    :param v:
    :param tiling:
    :param cap:
    :return: MainTheoremVerdict
    '''
    bound = cap_lower_bound(v, cap)
    if bound is not None:
        raise CapExceeded(cap, bound)
    tiling = tiling or dp2_tiling()
    partner, reflected = reflect_case(v)
    c = contour_for(partner)
    e = extract(c, tiling)
    computed = c_value(e, cap)
    if reflected:
        computed = swap_reflect(computed)
    expected = classify(v)
    matchings = count_matchings(e.hat)
    expected_matchings = expected_matching_count(v)
    passed = computed == expected and matchings == expected_matchings
    log = logging.info if passed else logging.warning
    log('Main theorem %s for %s via %s: %d matchings, %d expected', 'holds' if passed else 'FAILS', v, c,
        matchings, expected_matchings)
    return MainTheoremVerdict(v, str(c), reflected, passed, matchings, expected_matchings, expected, computed)


def _sweep_cell (v: ClassifiedVariable, tiling: BraneTiling, cap: int) -> dict:
    row = {'family': v.family.value, 'n': v.n, 'k': v.m, 'index': v.index}
    try:
        verdict = verify_main_theorem(v, tiling, cap)
        row.update(status='pass' if verdict.passed else 'fail', matchings=verdict.matchings)
    except CapExceeded as error:
        row.update(status='cap', matchings=error.count)
    logging.info('Sweep cell %s %s %s: %s', row['family'], row['n'], row['k'], row['status'])
    return row


def sweep (config: dict, tiling: BraneTiling = None, cap: int = None, workers: int = None) -> pd.DataFrame:
    '''
    Main-theorem grid from sweep_meta, one row per (family, n, k)
    :param config:
    :param tiling:
    :param cap: default matching_meta.matching_cap
    :param workers: default sweep_meta.workers
    :return: DataFrame with family, n, k, index, status, matchings
    '''
    sweep_meta = config['sweep_meta']
    cap = cap if cap is not None else config['matching_meta']['matching_cap']
    workers = workers or sweep_meta['workers']
    if sweep_meta['k_min'] < 2:
        raise OutOfRange('the sweep grid starts at k = 2')
    tiling = tiling or dp2_tiling()
    grid = [ClassifiedVariable(Family(family), k, n)
            for family in sweep_meta['families']
            for n in range(sweep_meta['n_min'], sweep_meta['n_max'] + 1)
            for k in range(sweep_meta['k_min'], sweep_meta['k_max'] + 1)]
    logging.info('Sweeping %d cells on %d workers', len(grid), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows = list(executor.map(lambda v: _sweep_cell(v, tiling, cap), grid))
    return pd.DataFrame(rows, columns=['family', 'n', 'k', 'index', 'status', 'matchings'])
