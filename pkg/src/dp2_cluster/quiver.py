# -*- coding: utf-8 -*-

"""
quiver is the seed mutation engine for the five-vertex dP2 quiver.

Steps:
1- Build the Model 1 seed (B-matrix plus the initial cluster x1..x5)
2- Mutate seeds, apply the seven rho-mutations and their words
3- Classify quivers into Model 1 / Model 2 up to relabeling and reversal
4- Search rho normal forms and walk toric mutation words back to Model 1
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from fractions import Fraction
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_edge_match

from dp2_cluster.errors import OutOfRange, ParseError, PreconditionViolated
from dp2_cluster.laurent import LaurentPoly, to_text

NVERTS = 5

# (tail, head, multiplicity), 1-based
MODEL1_ARROWS = ((2, 1, 1), (5, 1, 1), (1, 3, 1), (1, 4, 1), (3, 2, 2),
                 (2, 5, 1), (4, 3, 2), (5, 4, 1), (3, 5, 1))

RhoWord = Tuple[int, ...]
MutationWord = Tuple[int, ...]


# Types ----------------------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class Quiver:
    '''
    Signed adjacency: b[i][j] = #(i->j) - #(j->i), stored 0-based as nested tuples.
    '''
    b: Tuple[Tuple[int, ...], ...]

    def __post_init__ (self):
        m = self.matrix
        if m.shape != (NVERTS, NVERTS):
            raise ValueError(f'B-matrix must be {NVERTS}x{NVERTS}')
        if not (m == -m.T).all():
            raise ValueError('B-matrix must be skew-symmetric')

    @classmethod
    def from_matrix (cls, matrix: np.ndarray) -> 'Quiver':
        return cls(tuple(tuple(int(v) for v in row) for row in matrix))

    @classmethod
    def from_arrows (cls, arrows: Sequence[Tuple[int, int, int]]) -> 'Quiver':
        m = np.zeros((NVERTS, NVERTS), dtype=np.int64)
        for tail, head, mult in arrows:
            m[tail - 1, head - 1] += mult
            m[head - 1, tail - 1] -= mult
        return cls.from_matrix(m)

    @property
    def matrix (self) -> np.ndarray:
        return np.array(self.b, dtype=np.int64)

    def arrows (self) -> List[Tuple[int, int, int]]:
        return [(i + 1, j + 1, self.b[i][j]) for i in range(NVERTS) for j in range(NVERTS) if self.b[i][j] > 0]

    def in_degree (self, i: int) -> int:
        return sum(max(self.b[j][i - 1], 0) for j in range(NVERTS))

    def out_degree (self, i: int) -> int:
        return sum(max(self.b[i - 1][j], 0) for j in range(NVERTS))

    def reversed (self) -> 'Quiver':
        return Quiver.from_matrix(-self.matrix)

    def to_digraph (self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(1, NVERTS + 1))
        for tail, head, mult in self.arrows():
            g.add_edge(tail, head, mult=mult)
        return g


@dataclass(frozen=True)
class Seed:
    '''
    A quiver with its ordered cluster. Cluster entries are LaurentPoly values, or
    Fractions when the engine runs on numbers.
    '''
    quiver: Quiver
    cluster: tuple

    def __str__ (self) -> str:
        return ', '.join(str(v) for v in self.cluster)


class Model(Enum):
    MODEL1 = 'Model1'
    MODEL2 = 'Model2'
    OTHER = 'Other'


# Helpers --------------------------------------------------------------------------------------------------------------
def _cycles_to_map (cycles: Sequence[Sequence[int]]) -> Dict[int, int]:
    '''
    Cycle (a b c) sends a->b, b->c, c->a; vertices not mentioned are fixed.
    :param cycles:
    :return: sigma as a dict on 1..5
    '''
    sigma = {v: v for v in range(1, NVERTS + 1)}
    for cycle in cycles:
        for pos, v in enumerate(cycle):
            sigma[v] = cycle[(pos + 1) % len(cycle)]
    return sigma


# Each rho is a list of steps: an int mutates at that vertex, a tuple of cycles permutes.
RHO_STEPS = {
    1: (1, ((5, 4, 3, 2, 1),)),
    2: (5, ((1, 2, 3, 4, 5),)),
    3: (2, 4, ((2, 4),)),
    4: (2, 1, 4, ((5, 3, 1),)),
    5: (4, 5, 2, ((3, 5, 1),)),
    6: (2, 1, 2, ((5, 3, 1), (2, 4))),
    7: (4, 5, 4, ((1, 3, 5), (2, 4))),
}

RHO_COST = {i: sum(1 for step in steps if isinstance(step, int)) for i, steps in RHO_STEPS.items()}


def _product (values, one):
    return reduce(lambda acc, v: acc * v, values, one)


# Seeds and mutation ---------------------------------------------------------------------------------------------------
def dp2_model1_quiver () -> Quiver:
    return Quiver.from_arrows(MODEL1_ARROWS)


def initial_cluster () -> Tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.var(i) for i in range(1, NVERTS + 1))


def dp2_model1_seed () -> Seed:
    '''
    Model 1 seed with cluster (x1, ..., x5)
    :return: Seed
    '''
    return Seed(dp2_model1_quiver(), initial_cluster())


def numeric_seed (values: Sequence = (1, 1, 1, 1, 1)) -> Seed:
    return Seed(dp2_model1_quiver(), tuple(Fraction(v) for v in values))


def mutate_quiver (q: Quiver, k: int) -> Quiver:
    if not 1 <= k <= NVERTS:
        raise OutOfRange(f'vertex {k} outside 1..{NVERTS}')
    b = q.matrix
    j = k - 1
    col = b[:, j][:, None]
    row = b[j, :][None, :]
    out = b + np.sign(col) * np.maximum(col * row, 0)
    out[j, :] = -b[j, :]
    out[:, j] = -b[:, j]
    return Quiver.from_matrix(out)


def mutate (s: Seed, k: int) -> Seed:
    '''
    Matrix mutation at k plus the binomial exchange relation
    :param s: seed
    :param k: vertex, 1-based
    :return: mutated seed
    '''
    q = s.quiver
    if not 1 <= k <= NVERTS:
        raise OutOfRange(f'vertex {k} outside 1..{NVERTS}')
    one = LaurentPoly.one() if isinstance(s.cluster[0], LaurentPoly) else Fraction(1)
    column = [q.b[i][k - 1] for i in range(NVERTS)]
    incoming = _product((s.cluster[i] ** column[i] for i in range(NVERTS) if column[i] > 0), one)
    outgoing = _product((s.cluster[i] ** -column[i] for i in range(NVERTS) if column[i] < 0), one)
    new_value = (incoming + outgoing) / s.cluster[k - 1]
    cluster = list(s.cluster)
    cluster[k - 1] = new_value
    logging.debug('mutated at %d', k)
    return Seed(mutate_quiver(q, k), tuple(cluster))


def permute (s: Seed, cycles: Sequence[Sequence[int]]) -> Seed:
    '''
    Move the variable at v to sigma(v) and relabel the quiver the same way
    :param s:
    :param cycles:
    :return: Seed
    '''
    sigma = _cycles_to_map(cycles)
    cluster = [None] * NVERTS
    for v in range(1, NVERTS + 1):
        cluster[sigma[v] - 1] = s.cluster[v - 1]
    b = s.quiver.b
    out = [[0] * NVERTS for _ in range(NVERTS)]
    for i in range(NVERTS):
        for j in range(NVERTS):
            out[sigma[i + 1] - 1][sigma[j + 1] - 1] = b[i][j]
    return Seed(Quiver(tuple(tuple(row) for row in out)), tuple(cluster))


def mutate_word (s: Seed, word: Sequence[int]) -> Seed:
    for k in word:
        s = mutate(s, k)
    return s


def is_toric (q: Quiver, i: int) -> bool:
    return q.in_degree(i) == 2 and q.out_degree(i) == 2


def toric_vertices (q: Quiver) -> List[int]:
    return [i for i in range(1, NVERTS + 1) if is_toric(q, i)]


# Models ---------------------------------------------------------------------------------------------------------------
@lru_cache(maxsize=None)
def _reference_graphs () -> Dict[Model, Tuple[nx.DiGraph, nx.DiGraph]]:
    model1 = dp2_model1_quiver()
    model2 = mutate_quiver(model1, 2)
    return {
        Model.MODEL1: (model1.to_digraph(), model1.reversed().to_digraph()),
        Model.MODEL2: (model2.to_digraph(), model2.reversed().to_digraph()),
    }


_EDGE_MATCH = categorical_edge_match('mult', 0)


def same_model (q1: Quiver, q2: Quiver) -> bool:
    g1 = q1.to_digraph()
    return any(DiGraphMatcher(g1, g2, edge_match=_EDGE_MATCH).is_isomorphic()
               for g2 in (q2.to_digraph(), q2.reversed().to_digraph()))


@lru_cache(maxsize=4096)
def classify_model (q: Quiver) -> Model:
    '''
    Model 1 / Model 2 up to vertex relabeling and global arrow reversal
    :param q:
    :return: Model
    '''
    g = q.to_digraph()
    for model, refs in _reference_graphs().items():
        if any(DiGraphMatcher(g, ref, edge_match=_EDGE_MATCH).is_isomorphic() for ref in refs):
            return model
    return Model.OTHER


# Rho mutations --------------------------------------------------------------------------------------------------------
def apply_rho (s: Seed, i: int) -> Seed:
    '''
    Apply rho_i: its mutations in order, then its permutation
    :param s: seed on the standard Model 1 quiver
    :param i: 1..7
    :return: Seed on the same quiver
    '''
    if i not in RHO_STEPS:
        raise OutOfRange(f'rho index {i} outside 1..7')
    if s.quiver != dp2_model1_quiver():
        raise PreconditionViolated('rho-mutations act on the standard Model 1 quiver')
    for step in RHO_STEPS[i]:
        s = mutate(s, step) if isinstance(step, int) else permute(s, step)
    return s


def apply_rho_word (s: Seed, word: Sequence[int]) -> Seed:
    '''Letters act left to right.'''
    for i in word:
        s = apply_rho(s, i)
    return s


def normal_form_word (t: int, k: int, m: int, w: int) -> RhoWord:
    return (t,) * k + (3, 1) * m + (3,) * w


def _cluster_key (cluster: Sequence) -> tuple:
    return tuple(sorted(to_text(v) if isinstance(v, LaurentPoly) else str(v) for v in cluster))


def _numeric_key (cluster: Sequence) -> tuple:
    return tuple(sorted(cluster))


def normal_form_candidates (bound: int) -> Iterator[Tuple[int, int, int, int]]:
    '''
    (t, k, m, w) for rho_t^k (rho3 rho1)^m rho3^w with k, m <= bound, cheapest first
    :param bound:
    :return: iterator of tuples
    '''
    combos = []
    for t, k, m, w in cartesian((1, 2), range(bound + 1), range(bound + 1), (0, 1)):
        if t == 2 and k == 0:
            continue
        combos.append((k + 3 * m + 2 * w, t, k, m, w))
    for _, t, k, m, w in sorted(combos):
        yield t, k, m, w


@lru_cache(maxsize=None)
def _numeric_screen (bound: int) -> Tuple[Tuple[RhoWord, tuple], ...]:
    '''Each candidate word with its cluster at (1,1,1,1,1), cheapest first.'''
    start = numeric_seed()
    return tuple((word, _numeric_key(apply_rho_word(start, word).cluster))
                 for word in (normal_form_word(*combo) for combo in normal_form_candidates(bound)))


def normal_form_of_cluster (cluster: Sequence[LaurentPoly], bound: int) -> Optional[RhoWord]:
    '''
    Search a normal-form word whose cluster equals the given one up to order.
    Candidates are screened at (1,1,1,1,1) and confirmed symbolically.
    :param cluster:
    :param bound: largest k and m tried
    :return: RhoWord or None
    '''
    target_numeric = _numeric_key(tuple(v.eval_at((1,) * NVERTS) for v in cluster))
    target_symbolic = _cluster_key(cluster)
    for word, numeric in _numeric_screen(bound):
        if numeric != target_numeric:
            continue
        if _cluster_key(apply_rho_word(dp2_model1_seed(), word).cluster) == target_symbolic:
            return word
    return None


def normal_form (word: Sequence[int]) -> RhoWord:
    '''
    Normal form rho_t^k (rho3 rho1)^m rho3^w with the same cluster up to permutation
    :param word: rho word over 1..7
    :return: RhoWord
    '''
    if any(i not in RHO_STEPS for i in word):
        raise OutOfRange('rho words use the letters 1..7')
    cluster = apply_rho_word(dp2_model1_seed(), word).cluster
    bound = max(2, sum(RHO_COST[i] for i in word) + 1)
    found = normal_form_of_cluster(cluster, bound)
    if found is None:
        raise PreconditionViolated(f'no normal form found within bound {bound}')
    return found


# Toric walks ----------------------------------------------------------------------------------------------------------
class _MutationCache:
    '''Memoizes (seed, vertex) -> mutated seed for one walk.'''

    def __init__ (self):
        self._cache: Dict[Tuple[Seed, int], Seed] = {}

    def __call__ (self, s: Seed, k: int) -> Seed:
        key = (s, k)
        if key not in self._cache:
            self._cache[key] = mutate(s, k)
        return self._cache[key]


def walk_toric (max_len: int, first_return: bool = False) -> Iterator[Tuple[MutationWord, Seed]]:
    '''
    Breadth-first walk over toric mutation words starting at Model 1.
    :param max_len:
    :param first_return: stop extending a word once it is back in Model 1
    :return: iterator of (word, seed), shortest words first
    '''
    step = _MutationCache()
    frontier = [((), dp2_model1_seed())]
    for depth in range(1, max_len + 1):
        following = []
        for word, s in frontier:
            for k in toric_vertices(s.quiver):
                child = step(s, k)
                new_word = word + (k,)
                yield new_word, child
                if first_return and classify_model(child.quiver) is Model.MODEL1:
                    continue
                following.append((new_word, child))
        logging.debug('toric walk depth %d: %d words', depth, len(following))
        frontier = following


def enumerate_toric_returns (max_len: int, first_return: bool = False,
                             bound: int = 8) -> List[Tuple[MutationWord, Seed]]:
    '''
    Toric mutation words of length <= max_len ending in Model 1
    :param max_len:
    :param first_return:
    :param bound: configured limit on max_len
    :return: list of (word, seed)
    '''
    if max_len > bound:
        raise OutOfRange(f'max_len {max_len} exceeds the configured bound {bound}')
    return [(word, s) for word, s in walk_toric(max_len, first_return)
            if classify_model(s.quiver) is Model.MODEL1]


def model_transitions (max_len: int) -> nx.DiGraph:
    '''
    Counts of toric mutation steps between models over all words of length <= max_len
    :param max_len:
    :return: DiGraph on model names with a 'count' edge attribute
    '''
    graph = nx.DiGraph()
    parents = {(): Model.MODEL1}
    for word, s in walk_toric(max_len):
        tag = classify_model(s.quiver)
        parents[word] = tag
        source = parents[word[:-1]].value
        if graph.has_edge(source, tag.value):
            graph[source][tag.value]['count'] += 1
        else:
            graph.add_edge(source, tag.value, count=1)
    return graph


# Word formats ---------------------------------------------------------------------------------------------------------
def _parse_word (text: str, prefix: str, upper: int) -> Tuple[int, ...]:
    letters = []
    pos = 0
    for token in text.split():
        pos = text.index(token, pos)
        if not token.startswith(prefix) or not token[len(prefix):].isdigit():
            raise ParseError(f'expected {prefix}<n>, got {token!r}', pos)
        value = int(token[len(prefix):])
        if not 1 <= value <= upper:
            raise ParseError(f'{token!r} outside {prefix}1..{prefix}{upper}', pos)
        letters.append(value)
        pos += len(token)
    return tuple(letters)


def parse_rho_word (text: str) -> RhoWord:
    return _parse_word(text, 'r', 7)


def parse_mutation_word (text: str) -> MutationWord:
    return _parse_word(text, 'm', NVERTS)


def format_rho_word (word: Sequence[int]) -> str:
    return ' '.join(f'r{i}' for i in word)


def format_mutation_word (word: Sequence[int]) -> str:
    return ' '.join(f'm{i}' for i in word)
