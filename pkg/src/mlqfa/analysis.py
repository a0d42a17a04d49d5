"""DFA minimization and structural witness detection.

The detectors search the pair graph: nodes are ordered pairs of distinct
states, edges follow the transition function componentwise, and a pair
whose two components are sent to one common target by some symbol is
recorded as a merge event instead of an edge.  Determinism gives every
(node, symbol) exactly one edge or merge event, and also means a pair
that has collapsed can never separate again -- so walks between distinct
pairs never pass through a collapsed intermediate, and the searches below
lose nothing by excluding diagonal nodes from the walk phase.

Witness conventions:

* a merge witness of order k (``CkWitness``) consists of two distinct
  states reached from somewhere by the same k-1 letters and then merged
  by a final common letter; the definition does not require the two path
  sources to differ, but determinism forces it, so the search ranges over
  distinct pairs only;
* detectors expect the minimal DFA; non-minimal input is minimized first
  with a warning rather than rejected;
* returned witnesses always re-validate against their defining equations
  (see the ``holds_in`` methods), and ties are broken by shortest word,
  then lexicographic by symbol order, then lowest state indices.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from math import inf

from .automata import DFA, ValidationError, Word, dfa_run

INFINITE = inf

Pair = tuple[str, str]


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class CkWitness:
    """Five states and a length-k word: q1 and q4 follow the first k-1
    letters to the distinct states q2 and q5, which the final letter sends
    to the common target q3."""

    q1: str
    q2: str
    q3: str
    q4: str
    q5: str
    w: Word

    @property
    def k(self) -> int:
        return len(self.w)

    def holds_in(self, d: DFA) -> bool:
        if self.q2 == self.q5 or not self.w:
            return False
        prefix, last = self.w[:-1], self.w[-1]
        return (dfa_run(d, self.q1, prefix) == self.q2
                and dfa_run(d, self.q4, prefix) == self.q5
                and d.delta[(self.q2, last)] == self.q3
                and d.delta[(self.q5, last)] == self.q3)


@dataclass(frozen=True)
class DkWitness:
    """A merge witness plus a repetition count m with q3 reaching q4 by
    reading the witness word m-1 times."""

    ck: CkWitness
    m: int

    def holds_in(self, d: DFA) -> bool:
        if self.m < 1 or not self.ck.holds_in(d):
            return False
        return dfa_run(d, self.ck.q3, self.ck.w * (self.m - 1)) == self.ck.q4


@dataclass(frozen=True)
class FWitness:
    """Distinct states q1, q2 with a common loop word t and a word z that
    synchronizes both into q2."""

    q1: str
    q2: str
    t: Word
    z: Word

    def holds_in(self, d: DFA) -> bool:
        return (self.q1 != self.q2 and self.t and self.z
                and dfa_run(d, self.q1, self.z) == self.q2
                and dfa_run(d, self.q2, self.z) == self.q2
                and dfa_run(d, self.q1, self.t) == self.q1
                and dfa_run(d, self.q2, self.t) == self.q2)


@dataclass(frozen=True)
class ForbiddenWitness:
    """Distinct states p1, p2 and a word x with x sending both to p2,
    where p2 has both an accepting and a rejecting continuation
    (w1 accepts, w2 rejects)."""

    p1: str
    p2: str
    x: Word
    w1: Word
    w2: Word

    def holds_in(self, d: DFA) -> bool:
        if self.p1 == self.p2:
            return False
        if dfa_run(d, self.p1, self.x) != self.p2:
            return False
        if dfa_run(d, self.p2, self.x) != self.p2:
            return False
        a1 = dfa_run(d, self.p2, self.w1) in d.accepting
        a2 = dfa_run(d, self.p2, self.w2) in d.accepting
        return a1 != a2


@dataclass(frozen=True)
class ClassificationReport:
    minimal_states: int
    minimal_k: int | float
    has_f: bool
    f_witness: FWitness | None
    per_k: dict[int, CkWitness | None]
    mm_over_79: bool


# ---------------------------------------------------------------------------
# minimization


def minimize_dfa(d: DFA) -> DFA:
    """Drop unreachable states, merge indistinguishable ones, and order the
    result by breadth-first discovery from the initial state.

    Idempotent: a DFA already in this canonical form comes back unchanged.
    """
    reachable: list[str] = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(reachable):
        q = reachable[i]
        i += 1
        for s in d.alphabet:
            nxt = d.delta[(q, s)]
            if nxt not in seen:
                seen.add(nxt)
                reachable.append(nxt)

    block_of = {q: (q in d.accepting) for q in reachable}
    while True:
        signature = {
            q: (block_of[q], tuple(block_of[d.delta[(q, s)]] for s in d.alphabet))
            for q in reachable
        }
        renumber: dict = {}
        for q in reachable:  # block ids follow first appearance in BFS order
            renumber.setdefault(signature[q], len(renumber))
        new_blocks = {q: renumber[signature[q]] for q in reachable}
        if len(set(new_blocks.values())) == len(set(block_of.values())):
            block_of = new_blocks
            break
        block_of = new_blocks

    rep: dict[int, str] = {}
    for q in reachable:
        rep.setdefault(block_of[q], q)

    order: list[str] = [rep[block_of[d.initial]]]
    ordered_seen = {block_of[d.initial]}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for s in d.alphabet:
            b = block_of[d.delta[(q, s)]]
            if b not in ordered_seen:
                ordered_seen.add(b)
                order.append(rep[b])

    delta = {(q, s): rep[block_of[d.delta[(q, s)]]] for q in order for s in d.alphabet}
    accepting = frozenset(q for q in order if q in d.accepting)
    return DFA(states=tuple(order), initial=rep[block_of[d.initial]],
               accepting=accepting, alphabet=d.alphabet, delta=delta)


def _minimal_input(d: DFA) -> DFA:
    m = minimize_dfa(d)
    if len(m.states) != len(d.states):
        warnings.warn("input DFA is not minimal; analysis ran on its minimization",
                      stacklevel=3)
        return m
    return d


# ---------------------------------------------------------------------------
# pair graph


@dataclass
class PairGraph:
    """Deterministic graph over ordered pairs of distinct states."""

    nodes: tuple[Pair, ...]
    edges: dict[Pair, dict[str, Pair]]
    merges: dict[Pair, dict[str, str]] = field(default_factory=dict)

    def merge_nodes(self) -> list[Pair]:
        return [p for p in self.nodes if self.merges.get(p)]


def build_pair_graph(d: DFA) -> PairGraph:
    nodes = tuple((p, q) for p in d.states for q in d.states if p != q)
    edges: dict[Pair, dict[str, Pair]] = {}
    merges: dict[Pair, dict[str, str]] = {}
    for node in nodes:
        p, q = node
        for s in d.alphabet:
            tp, tq = d.delta[(p, s)], d.delta[(q, s)]
            if tp == tq:
                merges.setdefault(node, {})[s] = tp
            else:
                edges.setdefault(node, {})[s] = (tp, tq)
    return PairGraph(nodes=nodes, edges=edges, merges=merges)


def _pair_index(d: DFA, node: Pair) -> tuple[int, int]:
    return (d.states.index(node[0]), d.states.index(node[1]))


def _bfs_word(d: DFA, start, targets, successors, min_steps: int = 0):
    """Shortest-then-lexicographic word from start to any target.

    ``successors(node, symbol)`` returns the next node or None; expansion
    follows alphabet order, so the first discovery of a node carries the
    lexicographically least shortest word to it.
    """
    if min_steps == 0 and start in targets:
        return ()
    queue = deque([(start, ())])
    visited = {start}
    while queue:
        node, word = queue.popleft()
        for s in d.alphabet:
            nxt = successors(node, s)
            if nxt is None:
                continue
            w = word + (s,)
            if nxt in targets:
                return w
            if nxt not in visited:
                visited.add(nxt)
                queue.append((nxt, w))
    return None


def _product_successor(d: DFA, node: Pair, s: str) -> Pair:
    return (d.delta[(node[0], s)], d.delta[(node[1], s)])


# ---------------------------------------------------------------------------
# merge-construction detection


def detect_ck(d: DFA, k: int) -> CkWitness | None:
    """Find a merge witness of order k, or None when there is none.

    Search: a pair with a merge event must admit an incoming pair-graph
    walk of exactly k-1 edges; walk labels plus the merge symbol form the
    witness word, chosen lexicographically least (then lowest state
    indices for the surrounding states).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d = _minimal_input(d)
    pg = build_pair_graph(d)
    merge_set = set(pg.merge_nodes())
    if not merge_set:
        return None

    # can_reach[l] = nodes with a walk of exactly l edges into a merge node
    can_reach = [merge_set]
    for _ in range(k - 1):
        prev = can_reach[-1]
        cur = {node for node in pg.nodes
               if any(t in prev for t in pg.edges.get(node, {}).values())}
        if not cur:
            return None
        can_reach.append(cur)

    # choose walk labels greedily for the lexicographically least word
    frontier = can_reach[k - 1]
    frontiers = [frontier]
    labels: list[str] = []
    for pos in range(k - 1):
        for s in d.alphabet:
            nxt = {pg.edges[node][s] for node in frontier
                   if s in pg.edges.get(node, {})}
            nxt &= can_reach[k - 2 - pos]
            if nxt:
                labels.append(s)
                frontier = nxt
                frontiers.append(frontier)
                break

    last = min(s for node in frontier for s in pg.merges.get(node, {}))
    end_candidates = [n for n in frontier if last in pg.merges.get(n, {})]
    end = min(end_candidates, key=lambda n: _pair_index(d, n))
    q3 = pg.merges[end][last]

    # walk back through the stored frontiers to pick the lowest-index source
    chain = [end]
    for pos in range(k - 2, -1, -1):
        s = labels[pos]
        prev = [n for n in frontiers[pos]
                if pg.edges.get(n, {}).get(s) == chain[-1]]
        chain.append(min(prev, key=lambda n: _pair_index(d, n)))
    start = chain[-1]

    witness = CkWitness(q1=start[0], q2=end[0], q3=q3, q4=start[1], q5=end[1],
                        w=tuple(labels) + (last,))
    assert witness.holds_in(d)
    return witness


def ck_to_dk(d: DFA, c: CkWitness) -> DkWitness | None:
    """Upgrade a merge witness with a repetition count.

    The given witness is tried first: the orbit of q3 under w is walked
    for up to |Q| steps looking for q4.  If that fails, all witnesses of
    the same order are searched (the existence claim is per-DFA, not
    per-witness); None only when no witness in the DFA admits a count.
    """
    d = _minimal_input(d)
    if not c.holds_in(d):
        raise ValidationError("witness does not hold in the given DFA")
    cur = c.q3
    for j in range(len(d.states) + 1):
        if cur == c.q4:
            return DkWitness(ck=c, m=j + 1)
        cur = dfa_run(d, cur, c.w)

    k = c.k
    for w in itertools.product(d.alphabet.symbols, repeat=k):
        prefix, last = w[:-1], w[-1]
        fold = {q: dfa_run(d, q, prefix) for q in d.states}
        preimage: dict[str, str] = {}
        for q in d.states:  # first preimage in state order wins
            preimage.setdefault(fold[q], q)
        for q2 in d.states:
            if q2 not in preimage:
                continue
            q1 = preimage[q2]
            q3 = d.delta[(q2, last)]
            cur = q3
            for j in range(len(d.states) + 1):
                q4 = cur
                q5 = fold[q4]
                if q5 != q2 and d.delta[(q5, last)] == q3:
                    witness = DkWitness(
                        ck=CkWitness(q1=q1, q2=q2, q3=q3, q4=q4, q5=q5, w=w),
                        m=j + 1)
                    assert witness.holds_in(d)
                    return witness
                cur = dfa_run(d, cur, w)
    return None


def detect_f(d: DFA) -> FWitness | None:
    """Find distinct states with a common loop word and a synchronizing
    word into the second, or None.

    For each ordered pair in state order: the loop word is the shortest
    cycle through the pair node, and the synchronizing word is the
    shortest walk from the pair node to the diagonal of its second state
    (collapsing anywhere on the way and travelling on the diagonal is
    allowed).
    """
    d = _minimal_input(d)
    pg = build_pair_graph(d)

    def edge_successor(node: Pair, s: str):
        return pg.edges.get(node, {}).get(s)

    for node in sorted(pg.nodes, key=lambda n: _pair_index(d, n)):
        q1, q2 = node
        t = _bfs_word(d, node, {node}, edge_successor, min_steps=1)
        if t is None:
            continue
        z = _bfs_word(d, node, {(q2, q2)},
                      lambda n, s: _product_successor(d, n, s), min_steps=1)
        if z is None:
            continue
        witness = FWitness(q1=q1, q2=q2, t=t, z=z)
        assert witness.holds_in(d)
        return witness
    return None


def detect_forbidden(d: DFA) -> ForbiddenWitness | None:
    """Find distinct states p1, p2 and a word sending both to p2, where p2
    still has both accepting and rejecting continuations."""
    d = _minimal_input(d)
    pg = build_pair_graph(d)

    def dfa_successor(q: str, s: str) -> str:
        return d.delta[(q, s)]

    rejecting = set(d.states) - set(d.accepting)
    for node in sorted(pg.nodes, key=lambda n: _pair_index(d, n)):
        p1, p2 = node
        x = _bfs_word(d, node, {(p2, p2)},
                      lambda n, s: _product_successor(d, n, s), min_steps=1)
        if x is None:
            continue
        w1 = _bfs_word(d, p2, set(d.accepting), dfa_successor)
        w2 = _bfs_word(d, p2, rejecting, dfa_successor)
        if w1 is None or w2 is None:
            continue
        witness = ForbiddenWitness(p1=p1, p2=p2, x=x, w1=w1, w2=w2)
        assert witness.holds_in(d)
        return witness
    return None


def minimal_k(d: DFA, cap: int | None = None) -> int | float:
    """Smallest order k whose merge witness is absent, or INFINITE.

    The answer is infinite exactly when some merge-event pair admits
    arbitrarily long incoming walks, i.e. survives iterated peeling of
    in-degree-zero nodes from the pair graph.  Otherwise orders
    1, 2, ... are scanned; ``cap`` bounds the scan and defaults to
    |Q|**2 + 1, which is always sufficient because finite incoming-walk
    lengths are below the number of pair nodes.
    """
    d = _minimal_input(d)
    if cap is None:
        cap = len(d.states) ** 2 + 1
    if cap < 1:
        raise ValueError("cap must be >= 1")
    pg = build_pair_graph(d)

    indegree = {node: 0 for node in pg.nodes}
    for node in pg.nodes:
        for tgt in pg.edges.get(node, {}).values():
            indegree[tgt] += 1
    queue = deque(n for n, deg in indegree.items() if deg == 0)
    alive = set(pg.nodes)
    while queue:
        node = queue.popleft()
        alive.discard(node)
        for tgt in pg.edges.get(node, {}).values():
            indegree[tgt] -= 1
            if indegree[tgt] == 0 and tgt in alive:
                queue.append(tgt)
    if any(node in alive for node in pg.merge_nodes()):
        return INFINITE

    for k in range(1, cap + 1):
        if detect_ck(d, k) is None:
            return k
    raise ValidationError(f"no witness-free order found up to cap={cap}")


def classify(d: DFA, max_k: int = 3) -> ClassificationReport:
    """Minimize, then assemble all structural facts in one report."""
    m = minimize_dfa(d)
    per_k = {k: detect_ck(m, k) for k in range(1, max_k + 1)}
    fw = detect_f(m)
    mk = minimal_k(m)
    c1 = per_k[1] if 1 in per_k else detect_ck(m, 1)
    report = ClassificationReport(
        minimal_states=len(m.states),
        minimal_k=mk,
        has_f=fw is not None,
        f_witness=fw,
        per_k=per_k,
        mm_over_79=c1 is None,
    )
    if report.has_f != (report.minimal_k == INFINITE):
        raise ValidationError(
            "detector disagreement: loop/sync witness and unbounded merge "
            "orders must coincide on a minimal DFA")
    return report
