"""Decision procedures for automaton strategies.

The workhorse is a saturated family of relations describing how a
strategy automaton walks the product with the target while input symbols
and replacement subexpressions are handled, calls included.  From the
saturated relations we read off a nondeterministic automaton for the
complement of the winning set; membership, enumeration, domination and
the search for winning reroute sets are all automaton questions on top
of that.
"""

import itertools
import weakref
from collections import deque

from .automata import (
    Dfa,
    Nfa,
    complement,
    determinize,
    minimize,
    subset_witness,
)
from .games import hat
from .play import GeneralStrategy, StrategyFormatError, strongly_regular_automaton


class BudgetExceeded(RuntimeError):
    """A search space is larger than the caller allowed."""


def _resolve_automaton(game, strategy):
    if isinstance(strategy, Dfa):
        return GeneralStrategy(strategy).automaton(game)
    if hasattr(strategy, "automaton"):
        return strategy.automaton(game)
    raise StrategyFormatError(
        "need a strategy object or automaton, got %r" % type(strategy).__name__
    )


def _key_of(node):
    # a bare symbol node and the symbol itself are the same key
    if node[0] == "sym":
        return node[1]
    return node


class _KeyIndex:
    """Subexpression keys of all replacement rules plus the plain symbols.

    parents maps a key to the (parent, role) edges it occurs under, with
    role one of "left", "right" (concatenation), "alt", "body" (star).
    call_groups maps the key of a rule to the symbols having that rule.
    """

    def __init__(self, game):
        self.parents = {}
        self.cat_parts = {}
        self.star_body = {}
        self.keys = set(game.alphabet)
        self.rule_key = {}
        self.call_groups = {}
        for sym in game.function_symbols:
            k = self._walk(game.rules[sym])
            self.rule_key[sym] = k
            self.call_groups.setdefault(k, []).append(sym)
        self.star_keys = [
            k for k in self.keys if isinstance(k, tuple) and k[0] == "star"
        ]
        self.has_eps = ("eps",) in self.keys

    def _walk(self, node):
        k = _key_of(node)
        self.keys.add(k)
        tag = node[0]
        if tag in ("cat", "alt"):
            lk = self._walk(node[1])
            rk = self._walk(node[2])
            if tag == "cat":
                self.parents.setdefault(lk, set()).add((k, "left"))
                self.parents.setdefault(rk, set()).add((k, "right"))
                self.cat_parts[k] = (lk, rk)
            else:
                self.parents.setdefault(lk, set()).add((k, "alt"))
                self.parents.setdefault(rk, set()).add((k, "alt"))
        elif tag == "star":
            bk = self._walk(node[1])
            self.parents.setdefault(bk, set()).add((k, "body"))
            self.star_body[k] = bk
        return k


class Relations:
    """Saturated move, next and inf facts for one strategy on one game.

    States are the reachable (strategy state, target state) pairs, index
    0 the initial one.  For a state i and key r:

      * j in move[(i, r)] says processing r at i can finish in j,
      * (j, a) in next_rel[(i, r)] says it can pass through a
        configuration about to handle symbol a at j,
      * (i, r) in inf says it can go on forever.

    Calls are unfolded: handling a symbol the strategy calls means
    handling the replacement expression from the called state.
    """

    def __init__(self, game, strategy):
        self.game = game
        self.automaton = _resolve_automaton(game, strategy)
        sdfa = self.automaton
        targ = game.target
        keys = _KeyIndex(game)
        self.keys = keys

        # Reachable product pairs, following the move a play would make.
        start = (sdfa.initial, targ.initial)
        self.pairs = [start]
        self.index = {start: 0}
        self.calls = set()
        self.read_to = {}
        self.hat_to = {}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            p, q = self.pairs[i]
            for a in game.alphabet:
                if a in game.rules and sdfa.transitions[(p, a)] in sdfa.accepting:
                    self.calls.add((i, a))
                    dest = (sdfa.transitions[(p, hat(a))], q)
                    self.hat_to[(i, a)] = self._intern(dest, queue)
                else:
                    dest = (sdfa.transitions[(p, a)], targ.transitions[(q, a)])
                    self.read_to[(i, a)] = self._intern(dest, queue)
        self.call_sources = {}
        for (i, a), j in self.hat_to.items():
            self.call_sources.setdefault((a, j), []).append(i)

        self._saturate_move()
        self._saturate_next()
        self._saturate_inf()

    def _intern(self, pair, queue):
        j = self.index.get(pair)
        if j is None:
            j = len(self.pairs)
            self.index[pair] = j
            self.pairs.append(pair)
            queue.append(j)
        return j

    def target_of(self, i):
        return self.pairs[i][1]

    def _saturate_move(self):
        keys = self.keys
        move = {}
        move_into = {}
        work = deque()

        def add(i, k, j):
            bucket = move.setdefault((i, k), set())
            if j not in bucket:
                bucket.add(j)
                move_into.setdefault((k, j), set()).add(i)
                work.append((i, k, j))

        for (i, a), j in self.read_to.items():
            add(i, a, j)
        n = len(self.pairs)
        if keys.has_eps:
            for i in range(n):
                add(i, ("eps",), i)
        for k in keys.star_keys:
            for i in range(n):
                add(i, k, i)

        while work:
            src, k, dst = work.popleft()
            for parent, role in keys.parents.get(k, ()):
                if role == "left":
                    right = keys.cat_parts[parent][1]
                    for j in list(move.get((dst, right), ())):
                        add(src, parent, j)
                elif role == "right":
                    left = keys.cat_parts[parent][0]
                    for i0 in list(move_into.get((left, src), ())):
                        add(i0, parent, dst)
                elif role == "alt":
                    add(src, parent, dst)
                else:
                    # body of a star: compose forwards with the star
                    for j in list(move.get((dst, parent), ())):
                        add(src, parent, j)
            if isinstance(k, tuple) and k[0] == "star":
                body = keys.star_body[k]
                for i0 in list(move_into.get((body, src), ())):
                    add(i0, k, dst)
            for b in keys.call_groups.get(k, ()):
                for i0 in self.call_sources.get((b, src), ()):
                    add(i0, b, dst)

        self.move = move
        self.move_into = move_into

    def _saturate_next(self):
        keys = self.keys
        move_into = self.move_into
        next_rel = {}
        work = deque()

        def add(i, k, j, a):
            bucket = next_rel.setdefault((i, k), set())
            if (j, a) not in bucket:
                bucket.add((j, a))
                work.append((i, k, j, a))

        for i in range(len(self.pairs)):
            for a in self.game.alphabet:
                add(i, a, i, a)
        while work:
            src, k, j, a = work.popleft()
            for parent, role in keys.parents.get(k, ()):
                if role in ("left", "alt"):
                    add(src, parent, j, a)
                elif role == "right":
                    left = keys.cat_parts[parent][0]
                    for i0 in list(move_into.get((left, src), ())):
                        add(i0, parent, j, a)
                else:
                    for i0 in list(move_into.get((parent, src), ())):
                        add(i0, parent, j, a)
            for b in keys.call_groups.get(k, ()):
                for i0 in self.call_sources.get((b, src), ()):
                    add(i0, b, j, a)

        self.next_rel = next_rel

    def _saturate_inf(self):
        keys = self.keys
        move_into = self.move_into
        inf = set()
        work = deque()

        def add(i, k):
            if (i, k) not in inf:
                inf.add((i, k))
                work.append((i, k))

        for i, a in self.calls:
            h = self.hat_to[(i, a)]
            if (i, a) in self.next_rel.get((h, keys.rule_key[a]), ()):
                add(i, a)
        while work:
            src, k = work.popleft()
            for parent, role in keys.parents.get(k, ()):
                if role in ("left", "alt"):
                    add(src, parent)
                elif role == "right":
                    left = keys.cat_parts[parent][0]
                    for i0 in list(move_into.get((left, src), ())):
                        add(i0, parent)
                else:
                    for i0 in list(move_into.get((parent, src), ())):
                        add(i0, parent)
            for b in keys.call_groups.get(k, ()):
                for i0 in self.call_sources.get((b, src), ()):
                    add(i0, b)

        self.inf = inf


def compute_relations(game, strategy):
    """Saturate the move, next and inf relations of a strategy."""
    return Relations(game, strategy)


# Relations are pure functions of (game, strategy); memoize them on object
# identity so repeated queries about the same pair stay cheap.
_relations_cache = {}


def _cached_relations(game, strategy):
    key = (id(game), id(strategy))
    entry = _relations_cache.get(key)
    if entry is not None and entry[0]() is game and entry[1]() is strategy:
        return entry[2]
    rel = Relations(game, strategy)
    try:
        refs = (weakref.ref(game), weakref.ref(strategy))
    except TypeError:
        return rel
    if len(_relations_cache) > 4096:
        _relations_cache.clear()
    _relations_cache[key] = (refs[0], refs[1], rel)
    return rel


def losing_nfa(game, strategy):
    """Nondeterministic automaton for the words the strategy does not win.

    A run follows one play; the extra absorbing state is entered when the
    play can go on forever.  A word is accepted exactly when some play on
    it ends outside the target language or never ends.
    """
    rel = _cached_relations(game, strategy)
    n = len(rel.pairs)
    sink = n
    transitions = {}
    for (i, k), targets in rel.move.items():
        if isinstance(k, str):
            transitions[(i, k)] = set(targets)
    for i, k in rel.inf:
        if isinstance(k, str):
            transitions.setdefault((i, k), set()).add(sink)
    for a in game.alphabet:
        transitions.setdefault((sink, a), set()).add(sink)
    accepting = {sink}
    for i in range(n):
        if rel.target_of(i) not in game.target.accepting:
            accepting.add(i)
    return Nfa(n + 1, game.alphabet, transitions, {0}, accepting)


def _check_word(game, word):
    for a in word:
        if a not in game.alphabet:
            raise ValueError("input symbol %r is not in the alphabet" % (a,))


def is_winning(game, strategy, word):
    """Does the strategy win the word whatever the replacements are?"""
    _check_word(game, word)
    rel = _cached_relations(game, strategy)
    current = {0}
    for a in word:
        nxt = set()
        for i in current:
            if (i, a) in rel.inf:
                return False
            nxt.update(rel.move.get((i, a), ()))
        current = nxt
    accepting = game.target.accepting
    return all(rel.target_of(i) in accepting for i in current)


def winning_set_upto(game, strategy, max_len):
    """The set of winning words of length at most max_len."""
    rel = _cached_relations(game, strategy)
    accepting = game.target.accepting
    out = set()
    layer = [((), frozenset([0]))]
    for length in range(max_len + 1):
        deeper = []
        for word, states in layer:
            if all(rel.target_of(i) in accepting for i in states):
                out.add(word)
            if length == max_len:
                continue
            for a in game.alphabet:
                if any((i, a) in rel.inf for i in states):
                    continue
                succ = set()
                for i in states:
                    succ.update(rel.move.get((i, a), ()))
                deeper.append((word + (a,), frozenset(succ)))
        layer = deeper
    return out


def winning_set_dfa(game, strategy):
    """Minimal deterministic automaton for the full winning set."""
    return minimize(complement(determinize(losing_nfa(game, strategy))))


def is_dominated(game, first, second):
    """Is every word the first strategy wins also won by the second?

    Returns (answer, witness).  The witness is the shortlex least word
    won by the first strategy but not the second, None when dominated.
    """
    d1 = determinize(losing_nfa(game, first))
    d2 = determinize(losing_nfa(game, second))
    witness = subset_witness(d2, d1)
    return witness is None, witness


def exists_winning_sreg(game, word, mode="auto", budget=2 ** 20):
    """Search for a strongly regular strategy winning the given word.

    Returns the strategy, or None when no reroute set wins.  Modes:
    "exhaustive" tries reroute sets in bitmask order, "incremental" by
    size first, "dfs" branches only on the reroute decisions that plays
    actually run into, "auto" picks exhaustive when the whole space fits
    into the budget and dfs otherwise.
    """
    _check_word(game, word)
    pairs = [
        (q, a)
        for q in range(game.target.n_states)
        for a in game.function_symbols
    ]
    k = len(pairs)
    if mode == "auto":
        mode = "exhaustive" if 2 ** k <= budget else "dfs"
    if mode == "dfs":
        return _dfs_sreg(game, word, pairs)
    if mode not in ("exhaustive", "incremental"):
        raise ValueError("unknown mode %r" % (mode,))
    if 2 ** k > budget:
        raise BudgetExceeded(
            "2^%d reroute sets exceed the budget of %d" % (k, budget)
        )
    if mode == "exhaustive":
        candidates = (
            [pairs[b] for b in range(k) if mask >> b & 1]
            for mask in range(2 ** k)
        )
    else:
        candidates = (
            [pairs[b] for b in combo]
            for size in range(k + 1)
            for combo in itertools.combinations(range(k), size)
        )
    for reroutes in candidates:
        strategy = strongly_regular_automaton(game, reroutes)
        if is_winning(game, strategy, word):
            return strategy
    return None


def _dfs_sreg(game, word, pairs):
    """Backtracking search over reroute decisions.

    Undecided transitions default to reading.  A simulation that loses
    reports, in encounter order, the undecided (state, symbol) decisions
    some play ran into; flipping one of those to a call is the only way
    to change anything, so the search branches exactly there.
    """
    rules = game.rules
    accepting = game.target.accepting

    def simulate(decided):
        reroutes = [p for p, call in decided.items() if call]
        strategy = strongly_regular_automaton(game, reroutes)
        rel = compute_relations(game, strategy)
        seen = []
        noted = set()

        def note(i, a):
            p = (rel.target_of(i), a)
            if a in rules and p not in decided and p not in noted:
                noted.add(p)
                seen.append(p)

        current = {0}
        lost = False
        for a in word:
            nxt = set()
            for i in sorted(current):
                note(i, a)
                if (i, a) in rel.calls:
                    h = rel.hat_to[(i, a)]
                    inner = rel.next_rel.get((h, rel.keys.rule_key[a]), ())
                    for j, b in sorted(inner):
                        note(j, b)
                if (i, a) in rel.inf:
                    lost = True
                nxt.update(rel.move.get((i, a), ()))
            current = nxt
        if not lost:
            lost = any(rel.target_of(i) not in accepting for i in current)
        return not lost, seen, strategy

    def search(decided):
        win, seen, strategy = simulate(decided)
        if win:
            return strategy
        # Keeping a reached decision on "read" reproduces the simulation
        # we just ran, so only the flips are new search states.
        for idx, pair in enumerate(seen):
            trial = dict(decided)
            for earlier in seen[:idx]:
                trial[earlier] = False
            trial[pair] = True
            result = search(trial)
            if result is not None:
                return result
        return None

    found = search({})
    if found is not None:
        assert is_winning(game, found, word)
    return found
