"""Finite automata and regular expressions over symbol alphabets.

Symbols are strings, words are tuples of symbols.  A word like ("a", "b")
prints as "ab" when every symbol is a single character.  All DFAs here are
total: every (state, symbol) pair has a transition, with an explicit dead
state where needed.
"""

from collections import deque
import itertools


class RegexSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Regular expressions.
#
# The AST is built from plain tuples so it can be hashed and compared:
#   ("sym", s), ("eps",), ("cat", l, r), ("alt", l, r), ("star", x)
# The concrete syntax uses juxtaposition for concatenation, "+" for union,
# "*" for iteration and parentheses for grouping.  A bare character is a
# symbol; multi-character symbols are written in double quotes, e.g. "(0,2)".
# The empty word has no concrete syntax (rule languages never contain it).

_SPECIAL = set('()+*"')


def tokenize_regex(text):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()+*":
            tokens.append((c, c))
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise RegexSyntaxError("unterminated quoted symbol in %r" % text)
            if j == i + 1:
                raise RegexSyntaxError("empty quoted symbol in %r" % text)
            tokens.append(("sym", text[i + 1:j]))
            i = j + 1
        else:
            tokens.append(("sym", c))
            i += 1
    return tokens


def parse_regex(text):
    """Parse a regular expression into an AST tuple."""
    tokens = tokenize_regex(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def parse_alt():
        nonlocal pos
        node = parse_cat()
        while peek() == "+":
            pos += 1
            node = ("alt", node, parse_cat())
        return node

    def parse_cat():
        nonlocal pos
        node = parse_rep()
        while peek() in ("sym", "("):
            node = ("cat", node, parse_rep())
        return node

    def parse_rep():
        nonlocal pos
        node = parse_atom()
        while peek() == "*":
            pos += 1
            node = ("star", node)
        return node

    def parse_atom():
        nonlocal pos
        kind = peek()
        if kind == "sym":
            sym = tokens[pos][1]
            pos += 1
            return ("sym", sym)
        if kind == "(":
            pos += 1
            if peek() == ")":
                raise RegexSyntaxError("empty group in %r" % text)
            node = parse_alt()
            if peek() != ")":
                raise RegexSyntaxError("missing ) in %r" % text)
            pos += 1
            return node
        raise RegexSyntaxError("unexpected %s in %r" % (kind or "end of input", text))

    if not tokens:
        raise RegexSyntaxError("empty regular expression")
    node = parse_alt()
    if pos != len(tokens):
        raise RegexSyntaxError("trailing %r in %r" % (tokens[pos][1], text))
    return node


def _symbol_text(sym):
    if len(sym) == 1 and sym not in _SPECIAL and not sym.isspace():
        return sym
    if '"' in sym:
        raise ValueError("symbol %r cannot be written in regex syntax" % sym)
    return '"%s"' % sym


def regex_to_text(node):
    """Render an AST back to concrete syntax (inverse of parse_regex)."""

    def render(n, level):
        # level: 0 alt context, 1 cat context, 2 star context
        kind = n[0]
        if kind == "sym":
            return _symbol_text(n[1])
        if kind == "eps":
            raise ValueError("the empty word has no concrete syntax")
        if kind == "alt":
            body = render(n[1], 0) + "+" + render(n[2], 1)
            return "(" + body + ")" if level > 0 else body
        if kind == "cat":
            body = render(n[1], 1) + render(n[2], 2)
            return "(" + body + ")" if level > 1 else body
        if kind == "star":
            return render(n[1], 2) + "*"
        raise ValueError("bad AST node %r" % (n,))

    return render(node, 0)


def regex_symbols(node):
    """The set of symbols that occur in an AST."""
    kind = node[0]
    if kind == "sym":
        return {node[1]}
    if kind == "eps":
        return set()
    if kind == "star":
        return regex_symbols(node[1])
    return regex_symbols(node[1]) | regex_symbols(node[2])


def regex_nullable(node):
    kind = node[0]
    if kind == "sym":
        return False
    if kind == "eps":
        return True
    if kind == "cat":
        return regex_nullable(node[1]) and regex_nullable(node[2])
    if kind == "alt":
        return regex_nullable(node[1]) or regex_nullable(node[2])
    if kind == "star":
        return True
    raise ValueError("bad AST node %r" % (node,))


# ---------------------------------------------------------------------------
# Automata.


class Dfa:
    """Total deterministic automaton.

    transitions maps (state, symbol) to a state and must cover every pair;
    states are 0 .. n_states-1.
    """

    def __init__(self, n_states, alphabet, transitions, initial, accepting):
        self.n_states = n_states
        self.alphabet = tuple(alphabet)
        self.transitions = dict(transitions)
        self.initial = initial
        self.accepting = frozenset(accepting)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate symbols in alphabet")
        if not (0 <= initial < n_states):
            raise ValueError("initial state out of range")
        for q in self.accepting:
            if not 0 <= q < n_states:
                raise ValueError("accepting state %r out of range" % (q,))
        for q in range(n_states):
            for a in self.alphabet:
                if (q, a) not in self.transitions:
                    raise ValueError("missing transition (%r, %r)" % (q, a))
        if len(self.transitions) != n_states * len(self.alphabet):
            extra = set(self.transitions) - {
                (q, a) for q in range(n_states) for a in self.alphabet
            }
            raise ValueError("unexpected transitions: %r" % sorted(extra))

    def step(self, state, symbol):
        return self.transitions[(state, symbol)]

    def run(self, word, state=None):
        q = self.initial if state is None else state
        for a in word:
            q = self.transitions[(q, a)]
        return q

    def accepts(self, word):
        return self.run(word) in self.accepting

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.n_states == other.n_states
            and self.alphabet == other.alphabet
            and self.initial == other.initial
            and self.accepting == other.accepting
            and self.transitions == other.transitions
        )

    def canonical_key(self):
        """Hashable structural key, for use after minimize()."""
        return (
            self.n_states,
            self.alphabet,
            self.initial,
            tuple(sorted(self.accepting)),
            tuple(sorted(self.transitions.items())),
        )

    def __repr__(self):
        return "Dfa(%d states, %d accepting, alphabet %r)" % (
            self.n_states,
            len(self.accepting),
            list(self.alphabet),
        )


class Nfa:
    """Nondeterministic automaton without epsilon transitions.

    transitions maps (state, symbol) to a set of states; missing pairs mean
    no move.  initials is a set of initial states.
    """

    def __init__(self, n_states, alphabet, transitions, initials, accepting):
        self.n_states = n_states
        self.alphabet = tuple(alphabet)
        self.transitions = {k: frozenset(v) for k, v in transitions.items() if v}
        self.initials = frozenset(initials)
        self.accepting = frozenset(accepting)

    def step_set(self, states, symbol):
        out = set()
        for q in states:
            out |= self.transitions.get((q, symbol), frozenset())
        return frozenset(out)

    def accepts(self, word):
        current = self.initials
        for a in word:
            current = self.step_set(current, a)
        return bool(current & self.accepting)

    def __repr__(self):
        return "Nfa(%d states, alphabet %r)" % (self.n_states, list(self.alphabet))


def make_total(n_states, alphabet, transitions, initial, accepting):
    """Build a Dfa from a possibly partial transition map, adding a dead
    state if any transition is missing."""
    alphabet = tuple(alphabet)
    missing = [
        (q, a)
        for q in range(n_states)
        for a in alphabet
        if (q, a) not in transitions
    ]
    trans = dict(transitions)
    total_states = n_states
    if missing:
        dead = n_states
        total_states += 1
        for pair in missing:
            trans[pair] = dead
        for a in alphabet:
            trans[(dead, a)] = dead
    return Dfa(total_states, alphabet, trans, initial, accepting)


def regex_to_nfa(node, alphabet):
    """Glushkov position construction; the result has no epsilon moves."""
    positions = []

    def number(n):
        kind = n[0]
        if kind == "sym":
            positions.append(n[1])
            return ("pos", len(positions), n[1])
        if kind == "eps":
            return n
        if kind == "star":
            return ("star", number(n[1]))
        return (kind, number(n[1]), number(n[2]))

    numbered = number(node)

    def analyze(n):
        # returns (nullable, first, last); fills follow
        kind = n[0]
        if kind == "pos":
            return (False, {n[1]}, {n[1]})
        if kind == "eps":
            return (True, set(), set())
        if kind == "cat":
            n1, f1, l1 = analyze(n[1])
            n2, f2, l2 = analyze(n[2])
            for p in l1:
                follow[p] |= f2
            first = f1 | f2 if n1 else f1
            last = l2 | l1 if n2 else l2
            return (n1 and n2, first, last)
        if kind == "alt":
            n1, f1, l1 = analyze(n[1])
            n2, f2, l2 = analyze(n[2])
            return (n1 or n2, f1 | f2, l1 | l2)
        if kind == "star":
            n1, f1, l1 = analyze(n[1])
            for p in l1:
                follow[p] |= f1
            return (True, f1, l1)
        raise ValueError("bad AST node %r" % (n,))

    follow = {p: set() for p in range(1, len(positions) + 1)}
    nullable, first, last = analyze(numbered)

    transitions = {}
    for p in first:
        transitions.setdefault((0, positions[p - 1]), set()).add(p)
    for p, succs in follow.items():
        for q in succs:
            transitions.setdefault((p, positions[q - 1]), set()).add(q)
    accepting = set(last)
    if nullable:
        accepting.add(0)
    return Nfa(len(positions) + 1, alphabet, transitions, {0}, accepting)


def determinize(nfa):
    """Subset construction.  The result is total; the empty subset becomes a
    dead state when reachable."""
    start = frozenset(nfa.initials)
    index = {start: 0}
    order = [start]
    transitions = {}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for a in nfa.alphabet:
            nxt = nfa.step_set(subset, a)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            transitions[(index[subset], a)] = index[nxt]
    accepting = {i for s, i in index.items() if s & nfa.accepting}
    return Dfa(len(order), nfa.alphabet, transitions, 0, accepting)


def minimize_with_map(dfa):
    """Minimize a total DFA.

    Returns (minimal, mapping) where mapping sends each reachable old state
    to its state in the minimal automaton.  States of the result are
    renumbered canonically: 0 is initial and the rest follow breadth-first
    discovery order in alphabet order, so two minimal automata for the same
    language over the same alphabet are structurally equal.
    """
    reachable = [dfa.initial]
    seen = {dfa.initial}
    for q in reachable:
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in seen:
                seen.add(t)
                reachable.append(t)

    # Moore partition refinement on the reachable part.
    block = {q: (1 if q in dfa.accepting else 0) for q in reachable}
    while True:
        signature = {
            q: (block[q],) + tuple(block[dfa.transitions[(q, a)]] for a in dfa.alphabet)
            for q in reachable
        }
        renumber = {}
        for q in reachable:
            renumber.setdefault(signature[q], len(renumber))
        new_block = {q: renumber[signature[q]] for q in reachable}
        if len(set(new_block.values())) == len(set(block.values())):
            block = new_block
            break
        block = new_block

    # Canonical numbering of blocks by BFS from the initial block.
    rep = {}
    for q in reachable:
        rep.setdefault(block[q], q)
    numbering = {block[dfa.initial]: 0}
    frontier = deque([block[dfa.initial]])
    while frontier:
        b = frontier.popleft()
        q = rep[b]
        for a in dfa.alphabet:
            nb = block[dfa.transitions[(q, a)]]
            if nb not in numbering:
                numbering[nb] = len(numbering)
                frontier.append(nb)

    n = len(numbering)
    transitions = {}
    accepting = set()
    for b, i in numbering.items():
        q = rep[b]
        for a in dfa.alphabet:
            transitions[(i, a)] = numbering[block[dfa.transitions[(q, a)]]]
        if q in dfa.accepting:
            accepting.add(i)
    mapping = {q: numbering[block[q]] for q in reachable}
    return Dfa(n, dfa.alphabet, transitions, 0, accepting), mapping


def minimize(dfa):
    return minimize_with_map(dfa)[0]


def determinize_minimize(nfa):
    return minimize(determinize(nfa))


def pair_product(d1, d2, accept):
    """Product of two total DFAs over the same alphabet, restricted to
    reachable pairs.  accept(in1, in2) decides acceptance from the two
    memberships."""
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabet mismatch: %r vs %r" % (d1.alphabet, d2.alphabet))
    start = (d1.initial, d2.initial)
    index = {start: 0}
    order = [start]
    transitions = {}
    queue = deque([start])
    while queue:
        p1, p2 = pair = queue.popleft()
        for a in d1.alphabet:
            nxt = (d1.transitions[(p1, a)], d2.transitions[(p2, a)])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            transitions[(index[pair], a)] = index[nxt]
    accepting = {
        i
        for (p1, p2), i in index.items()
        if accept(p1 in d1.accepting, p2 in d2.accepting)
    }
    return Dfa(len(order), d1.alphabet, transitions, 0, accepting)


def intersect(d1, d2):
    return pair_product(d1, d2, lambda x, y: x and y)


def union(d1, d2):
    return pair_product(d1, d2, lambda x, y: x or y)


def difference(d1, d2):
    return pair_product(d1, d2, lambda x, y: x and not y)


def complement(dfa):
    return Dfa(
        dfa.n_states,
        dfa.alphabet,
        dfa.transitions,
        dfa.initial,
        set(range(dfa.n_states)) - dfa.accepting,
    )


def _pair_bfs_find(d1, d2, predicate):
    """Breadth-first search over the pair graph of two total DFAs, expanding
    in alphabet order.  Returns the access word of the first visited pair
    satisfying predicate(in1, in2), or None.  Visit order equals shortlex
    order of first-access words, so the returned word is the shortlex least
    word whose memberships satisfy the predicate."""
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabet mismatch: %r vs %r" % (d1.alphabet, d2.alphabet))
    start = (d1.initial, d2.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p1, p2 = pair
        if predicate(p1 in d1.accepting, p2 in d2.accepting):
            word = []
            node = pair
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            return tuple(reversed(word))
        for a in d1.alphabet:
            nxt = (d1.transitions[(p1, a)], d2.transitions[(p2, a)])
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return None


def subset_witness(d1, d2):
    """Shortlex least word in L(d1) \\ L(d2), or None if L(d1) <= L(d2)."""
    return _pair_bfs_find(d1, d2, lambda x, y: x and not y)


def is_subset(d1, d2):
    return subset_witness(d1, d2) is None


def equivalent(d1, d2):
    return is_subset(d1, d2) and is_subset(d2, d1)


def compare_shortlex(d1, d2):
    """Shortlex order on languages.

    Returns (cmp, witness): cmp is -1 when L(d1) < L(d2), 1 when
    L(d1) > L(d2), 0 when equal.  The order compares the shortlex least
    word of the symmetric difference; the language containing it is the
    larger one.  witness is that word (None when equal).
    """
    word = _pair_bfs_find(d1, d2, lambda x, y: x != y)
    if word is None:
        return 0, None
    return (1, word) if d1.accepts(word) else (-1, word)


def shortlex_key(word, alphabet):
    index = {a: i for i, a in enumerate(alphabet)}
    return (len(word), tuple(index[a] for a in word))


def shortlex_min_word(dfa):
    """Shortlex least accepted word, or None for the empty language."""
    parent = {dfa.initial: None}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        if q in dfa.accepting:
            word = []
            node = q
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            return tuple(reversed(word))
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in parent:
                parent[t] = (q, a)
                queue.append(t)
    return None


def is_empty(dfa):
    return shortlex_min_word(dfa) is None


def coaccessible_states(dfa):
    """States from which some accepting state is reachable (in 0+ steps)."""
    incoming = {}
    for (q, a), t in dfa.transitions.items():
        incoming.setdefault(t, set()).add(q)
    result = set(dfa.accepting)
    queue = deque(result)
    while queue:
        q = queue.popleft()
        for p in incoming.get(q, ()):
            if p not in result:
                result.add(p)
                queue.append(p)
    return result


def language_is_finite(dfa):
    """True when L(dfa) is finite: no cycle among states that are both
    reachable and coaccessible."""
    live = coaccessible_states(dfa)
    reachable = {dfa.initial}
    stack = [dfa.initial]
    while stack:
        q = stack.pop()
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in reachable:
                reachable.add(t)
                stack.append(t)
    core = live & reachable
    color = {}

    def has_cycle(q):
        color[q] = 1
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in core:
                continue
            c = color.get(t)
            if c == 1:
                return True
            if c is None and has_cycle(t):
                return True
        color[q] = 2
        return False

    return not any(has_cycle(q) for q in core if q not in color)


def enumerate_upto(automaton, max_len):
    """All accepted words of length <= max_len, in shortlex order.

    Works for Dfa and Nfa.  The word tree is pruned at dead states
    (subsets with no coaccessible member, for an Nfa).
    """
    words = []
    if isinstance(automaton, Dfa):
        live = coaccessible_states(automaton)
        frontier = [((), automaton.initial)]
        for length in range(max_len + 1):
            nxt = []
            for word, q in frontier:
                if q in automaton.accepting:
                    words.append(word)
                if length < max_len:
                    for a in automaton.alphabet:
                        t = automaton.transitions[(q, a)]
                        if t in live:
                            nxt.append((word + (a,), t))
            frontier = nxt
        return words

    nfa = automaton
    live = set(nfa.accepting)
    incoming = {}
    for (q, a), targets in nfa.transitions.items():
        for t in targets:
            incoming.setdefault(t, set()).add(q)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for p in incoming.get(q, ()):
            if p not in live:
                live.add(p)
                queue.append(p)
    frontier = [((), frozenset(nfa.initials))]
    for length in range(max_len + 1):
        nxt = []
        for word, subset in frontier:
            if subset & nfa.accepting:
                words.append(word)
            if length < max_len:
                for a in nfa.alphabet:
                    t = frozenset(s for s in nfa.step_set(subset, a) if s in live)
                    if t:
                        nxt.append((word + (a,), t))
        frontier = nxt
    return words


def all_words_upto(alphabet, max_len):
    """Every word of length <= max_len in shortlex order (alphabet order)."""
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield combo


def is_prefix_free(dfa):
    """Whether no accepted word is a proper prefix of another.

    Returns (True, None) or (False, (word, extension)) where word is
    accepted and word+extension is a longer accepted word; both parts are
    shortlex least among the candidates found first.
    """
    # States with a nonempty path to an accepting state.
    incoming = {}
    for (q, a), t in dfa.transitions.items():
        incoming.setdefault(t, set()).add(q)
    extendable = set()
    queue = deque()
    for f in dfa.accepting:
        for p in incoming.get(f, ()):
            if p not in extendable:
                extendable.add(p)
                queue.append(p)
    while queue:
        q = queue.popleft()
        for p in incoming.get(q, ()):
            if p not in extendable:
                extendable.add(p)
                queue.append(p)

    # First accepting extendable state in shortlex access order.
    parent = {dfa.initial: None}
    order = deque([dfa.initial])
    hit = None
    while order:
        q = order.popleft()
        if q in dfa.accepting and q in extendable:
            hit = q
            break
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in parent:
                parent[t] = (q, a)
                order.append(t)
    if hit is None:
        return True, None
    word = []
    node = hit
    while parent[node] is not None:
        node, a = parent[node]
        word.append(a)
    word = tuple(reversed(word))

    # Shortlex least nonempty continuation from hit back into acceptance.
    cparent = {}
    cqueue = deque()
    for a in dfa.alphabet:
        t = dfa.transitions[(hit, a)]
        if t not in cparent:
            cparent[t] = (None, a)
            cqueue.append(t)
    while cqueue:
        q = cqueue.popleft()
        if q in dfa.accepting:
            ext = []
            node = q
            while node is not None:
                prev, a = cparent[node]
                ext.append(a)
                node = prev
            return False, (word, tuple(reversed(ext)))
        for a in dfa.alphabet:
            t = dfa.transitions[(q, a)]
            if t not in cparent:
                cparent[t] = (q, a)
                cqueue.append(t)
    raise AssertionError("extendable state had no continuation")


def dfa_to_dict(dfa):
    """Plain-dict form of a Dfa, for JSON serialization."""
    return {
        "alphabet": list(dfa.alphabet),
        "states": dfa.n_states,
        "initial": dfa.initial,
        "accepting": sorted(dfa.accepting),
        "transitions": [[q, a, t] for (q, a), t in sorted(dfa.transitions.items())],
    }


def dfa_from_dict(data):
    if not isinstance(data, dict):
        raise ValueError("automaton description must be an object")
    for field in ("alphabet", "states", "initial", "accepting", "transitions"):
        if field not in data:
            raise ValueError("automaton is missing %r" % field)
    transitions = {}
    for entry in data["transitions"]:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
            raise ValueError("bad transition entry %r" % (entry,))
        q, a, t = entry
        if (q, a) in transitions:
            raise ValueError("duplicate transition for state %r on %r" % (q, a))
        transitions[(q, a)] = t
    return Dfa(
        data["states"], data["alphabet"], transitions, data["initial"], data["accepting"]
    )


def nfa_to_dict(nfa):
    triples = []
    for (q, a), targets in sorted(nfa.transitions.items()):
        for t in sorted(targets):
            triples.append([q, a, t])
    return {
        "alphabet": list(nfa.alphabet),
        "states": nfa.n_states,
        "initial": sorted(nfa.initials),
        "accepting": sorted(nfa.accepting),
        "transitions": triples,
        "nondeterministic": True,
    }


def nfa_from_dict(data):
    if not isinstance(data, dict):
        raise ValueError("automaton description must be an object")
    for field in ("alphabet", "states", "initial", "accepting", "transitions"):
        if field not in data:
            raise ValueError("automaton is missing %r" % field)
    transitions = {}
    for entry in data["transitions"]:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
            raise ValueError("bad transition entry %r" % (entry,))
        q, a, t = entry
        transitions.setdefault((q, a), set()).add(t)
    initials = data["initial"]
    if isinstance(initials, int):
        initials = [initials]
    nfa = Nfa(data["states"], data["alphabet"], transitions, initials, data["accepting"])
    for q in nfa.initials | nfa.accepting | {s for s, _ in nfa.transitions}:
        if not 0 <= q < nfa.n_states:
            raise ValueError("state %r out of range" % (q,))
    for targets in nfa.transitions.values():
        for t in targets:
            if not 0 <= t < nfa.n_states:
                raise ValueError("state %r out of range" % (t,))
    symbol_set = set(nfa.alphabet)
    for _, a in nfa.transitions:
        if a not in symbol_set:
            raise ValueError("transition on unknown symbol %r" % (a,))
    return nfa


def _gvquote(label):
    return '"%s"' % str(label).replace("\\", "\\\\").replace('"', '\\"')


def to_dot(automaton, name="automaton"):
    """Graphviz source for a Dfa or Nfa."""
    lines = ["digraph %s {" % name, "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(automaton.n_states):
        shape = "doublecircle" if q in automaton.accepting else "circle"
        lines.append("  %d [shape=%s, label=%s];" % (q, shape, _gvquote(q)))
    if isinstance(automaton, Dfa):
        initials = [automaton.initial]
    else:
        initials = sorted(automaton.initials)
    for q in initials:
        lines.append("  __start -> %d;" % q)
    edges = {}
    for (q, a), target in sorted(automaton.transitions.items()):
        targets = [target] if isinstance(target, int) else sorted(target)
        for t in targets:
            edges.setdefault((q, t), []).append(a)
    for (q, t), symbols in sorted(edges.items()):
        lines.append("  %d -> %d [label=%s];" % (q, t, _gvquote(",".join(symbols))))
    lines.append("}")
    return "\n".join(lines) + "\n"
