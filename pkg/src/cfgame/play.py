"""Plays and one-pass strategies.

Juliet scans the input word left to right.  At each symbol she either
reads it or, for a function symbol, calls it; on a call Romeo picks a
replacement word from the rule language and play continues at its first
symbol.  Juliet wins a finite play when the final word (the read symbols
of the history) lands in the target language.  Plays that never end are
won by nobody.

Juliet's strategies are finite automata over the history alphabet: the
plain symbols plus "^a" for every called function symbol.  A strategy
calls symbol a at history state p exactly when stepping p on a leads to
an accepting state.  Forgetful strategies only look at the read symbols
and are given as automata over the plain alphabet; strongly regular
strategies modify the target automaton itself by rerouting some of its
transitions to a fresh Call state.
"""

import json
from collections import deque

from .automata import (
    Dfa,
    dfa_from_dict,
    dfa_to_dict,
    enumerate_upto,
    language_is_finite,
    shortlex_min_word,
)
from .games import flatten_history, hat


class PlayProtocolError(ValueError):
    """A move violates the rules of the game."""


class StrategyFormatError(ValueError):
    """Raised for malformed strategy descriptions."""


# Play outcomes.
WIN_JULIET = "WinJuliet"
WIN_ROMEO = "WinRomeo"
TRUNCATED = "Truncated"

# Verdicts of brute_force_outcome.
WIN = "Win"
LOSE = "Lose"
DIVERGE = "RomeoCanForceInfinite"


class Play:
    """A finished (or truncated) play record.

    configurations holds (history, remaining) pairs, one per position,
    starting from the initial configuration.  depth is the maximum call
    nesting that occurred.
    """

    def __init__(self, configurations, outcome, depth):
        self.configurations = configurations
        self.outcome = outcome
        self.depth = depth

    @property
    def final_history(self):
        return self.configurations[-1][0]

    @property
    def final_word(self):
        return flatten_history(self.final_history)

    def __repr__(self):
        return "Play(%s, %d moves, depth %d)" % (
            self.outcome,
            len(self.configurations) - 1,
            self.depth,
        )


# ---------------------------------------------------------------------------
# Juliet's strategies.


class GeneralStrategy:
    """A strategy automaton over the full history alphabet."""

    kind = "general"

    def __init__(self, dfa):
        self.dfa = dfa

    def automaton(self, game):
        if set(self.dfa.alphabet) != set(game.hist_alphabet):
            raise StrategyFormatError(
                "strategy alphabet %r does not match the history alphabet %r"
                % (list(self.dfa.alphabet), list(game.hist_alphabet))
            )
        if self.dfa.alphabet == game.hist_alphabet:
            return self.dfa
        return Dfa(
            self.dfa.n_states,
            game.hist_alphabet,
            self.dfa.transitions,
            self.dfa.initial,
            self.dfa.accepting,
        )

    def __eq__(self, other):
        return (
            isinstance(other, GeneralStrategy)
            and other.kind == self.kind
            and other.dfa == self.dfa
        )


class ForgetfulStrategy:
    """A strategy that only sees the read symbols of the history.

    The automaton runs over the plain alphabet; called symbols leave its
    state unchanged.
    """

    kind = "forgetful"

    def __init__(self, dfa):
        self.dfa = dfa

    def automaton(self, game):
        if set(self.dfa.alphabet) != set(game.alphabet):
            raise StrategyFormatError(
                "strategy alphabet %r does not match the game alphabet %r"
                % (list(self.dfa.alphabet), list(game.alphabet))
            )
        transitions = {}
        for q in range(self.dfa.n_states):
            for a in game.alphabet:
                transitions[(q, a)] = self.dfa.transitions[(q, a)]
            for a in game.function_symbols:
                transitions[(q, hat(a))] = q
        return Dfa(
            self.dfa.n_states,
            game.hist_alphabet,
            transitions,
            self.dfa.initial,
            self.dfa.accepting,
        )

    def __eq__(self, other):
        return (
            isinstance(other, ForgetfulStrategy)
            and other.kind == self.kind
            and other.dfa == self.dfa
        )


class StronglyRegularSpec:
    """Which target transitions a strongly regular strategy reroutes to Call."""

    kind = "strongly-regular"

    def __init__(self, reroutes):
        self.reroutes = frozenset((q, a) for q, a in reroutes)

    def automaton(self, game):
        return strongly_regular_automaton(game, self).automaton(game)

    def __eq__(self, other):
        return isinstance(other, StronglyRegularSpec) and other.reroutes == self.reroutes

    def __repr__(self):
        return "StronglyRegularSpec(%r)" % (sorted(self.reroutes),)


class StronglyRegularStrategy(ForgetfulStrategy):
    kind = "strongly-regular"

    def __init__(self, dfa, reroutes):
        ForgetfulStrategy.__init__(self, dfa)
        self.reroutes = frozenset(reroutes)


def strongly_regular_automaton(game, spec):
    """Build the strategy automaton of a strongly regular strategy.

    The result is a forgetful automaton whose states are the target's
    states plus one Call state; rerouted transitions point at Call, which
    is the only accepting state.
    """
    reroutes = spec.reroutes if isinstance(spec, StronglyRegularSpec) else None
    if reroutes is None:
        reroutes = frozenset((q, a) for q, a in spec)
    n = game.target.n_states
    for q, a in reroutes:
        if not (isinstance(q, int) and 0 <= q < n):
            raise StrategyFormatError("reroute state %r out of range" % (q,))
        if a not in game.rules:
            raise StrategyFormatError("reroute on non-function symbol %r" % (a,))
    call = n
    transitions = {}
    for q in range(n):
        for a in game.alphabet:
            if (q, a) in reroutes:
                transitions[(q, a)] = call
            else:
                transitions[(q, a)] = game.target.transitions[(q, a)]
    for a in game.alphabet:
        transitions[(call, a)] = call
    dfa = Dfa(n + 1, game.alphabet, transitions, game.target.initial, {call})
    return StronglyRegularStrategy(dfa, reroutes)


def read_all_strategy(game):
    """The strategy that never calls anything."""
    transitions = {(0, a): 0 for a in game.alphabet}
    return ForgetfulStrategy(Dfa(1, game.alphabet, transitions, 0, ()))


# ---------------------------------------------------------------------------
# Strategy files.  JSON, either
#   {"kind": "general"|"forgetful", "automaton": {...}}    or
#   {"kind": "strongly-regular", "reroutes": [[state, symbol], ...]}


def strategy_to_dict(strategy):
    if strategy.kind == "strongly-regular":
        return {
            "kind": strategy.kind,
            "reroutes": [[q, a] for q, a in sorted(strategy.reroutes)],
        }
    return {"kind": strategy.kind, "automaton": dfa_to_dict(strategy.dfa)}


def strategy_from_dict(data):
    if not isinstance(data, dict):
        raise StrategyFormatError("strategy description must be a JSON object")
    kind = data.get("kind")
    if kind == "strongly-regular":
        reroutes = []
        for entry in data.get("reroutes", ()):
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise StrategyFormatError("bad reroute entry %r" % (entry,))
            reroutes.append((entry[0], entry[1]))
        return StronglyRegularSpec(reroutes)
    if kind in ("general", "forgetful"):
        if "automaton" not in data:
            raise StrategyFormatError("strategy is missing its automaton")
        try:
            dfa = dfa_from_dict(data["automaton"])
        except ValueError as exc:
            raise StrategyFormatError("bad strategy automaton: %s" % exc) from None
        return GeneralStrategy(dfa) if kind == "general" else ForgetfulStrategy(dfa)
    raise StrategyFormatError("unknown strategy kind %r" % (kind,))


def load_strategy(text):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StrategyFormatError("invalid JSON: %s" % exc) from None
    return strategy_from_dict(data)


def dump_strategy(strategy, indent=2):
    return json.dumps(strategy_to_dict(strategy), indent=indent) + "\n"


# ---------------------------------------------------------------------------
# Romeo's strategies: callables (history, called symbol) -> replacement word.


def shortlex_romeo(game):
    """Always reply with the shortlex least replacement word."""
    replies = {
        a: shortlex_min_word(game.replacement_dfa(a)) for a in game.function_symbols
    }

    def tau(history, symbol):
        return replies[symbol]

    return tau


def constant_romeo(table):
    """Reply according to a fixed symbol -> word table."""
    fixed = {a: tuple(w) for a, w in table.items()}

    def tau(history, symbol):
        try:
            return fixed[symbol]
        except KeyError:
            raise PlayProtocolError("no reply configured for %r" % (symbol,)) from None

    return tau


def scripted_romeo(replies):
    """Serve the given replacement words one call at a time, in order."""
    queue = deque(tuple(r) for r in replies)

    def tau(history, symbol):
        if not queue:
            raise PlayProtocolError("reply script exhausted at a call on %r" % (symbol,))
        return queue.popleft()

    return tau


# ---------------------------------------------------------------------------
# The play loop.


def _call_decision(game, dfa, state, symbol):
    if symbol not in game.rules:
        return False
    return dfa.transitions[(state, symbol)] in dfa.accepting


def _callback_decision(sigma, history, symbol):
    answer = sigma(tuple(history), symbol)
    if isinstance(answer, str):
        low = answer.lower()
        if low in ("call", "read"):
            return low == "call"
    elif isinstance(answer, bool):
        return answer
    raise PlayProtocolError("strategy callback returned %r, expected Call or Read" % (answer,))


def run_play(game, sigma, tau, word, step_limit=10000):
    """Play sigma against tau on a word and record what happened.

    sigma is a strategy object, a DFA over the history alphabet, or a
    callback (history, symbol) -> "call"/"read".  tau is a callback
    (history, symbol) -> replacement word.  The play stops after
    step_limit moves with a Truncated outcome.
    """
    if step_limit < 1:
        raise ValueError("step_limit must be at least 1")
    if hasattr(sigma, "automaton"):
        dfa = sigma.automaton(game)
    elif isinstance(sigma, Dfa):
        dfa = GeneralStrategy(sigma).automaton(game)
    else:
        dfa = None
    for a in word:
        if a not in game.alphabet:
            raise PlayProtocolError("input symbol %r is not in the alphabet" % (a,))

    history = []
    state = dfa.initial if dfa is not None else None
    remaining = deque((a, 0) for a in word)
    configurations = [((), tuple(word))]
    depth = 0
    steps = 0
    outcome = None
    while remaining:
        if steps >= step_limit:
            outcome = TRUNCATED
            break
        symbol, d = remaining[0]
        if dfa is not None:
            calls = _call_decision(game, dfa, state, symbol)
        else:
            calls = _callback_decision(sigma, history, symbol)
            if calls and symbol not in game.rules:
                raise PlayProtocolError(
                    "cannot call %r, it has no replacement rule" % (symbol,)
                )
        remaining.popleft()
        if calls:
            reply = tuple(tau(tuple(history), symbol))
            if not game.replacement_dfa(symbol).accepts(reply):
                raise PlayProtocolError(
                    "reply %r is not in the replacement language of %r"
                    % (reply, symbol)
                )
            history.append(hat(symbol))
            if dfa is not None:
                state = dfa.transitions[(state, hat(symbol))]
            for c in reversed(reply):
                remaining.appendleft((c, d + 1))
            depth = max(depth, d + 1)
        else:
            history.append(symbol)
            if dfa is not None:
                state = dfa.transitions[(state, symbol)]
        steps += 1
        configurations.append((tuple(history), tuple(s for s, _ in remaining)))
    if outcome is None:
        final = flatten_history(history)
        outcome = WIN_JULIET if game.target.accepts(final) else WIN_ROMEO
    return Play(configurations, outcome, depth)


# ---------------------------------------------------------------------------
# Brute-force game-tree verdicts, for games whose replacement languages are
# all finite.  Used as an independent oracle by the analysis machinery.


def brute_force_outcome(game, sigma, word):
    """Explore every Romeo reply and classify the word.

    Win: every play ends in the target language.  Lose: Romeo can reach
    a finished play outside it.  RomeoCanForceInfinite: Romeo can keep
    the play going forever, detected by a repeated (strategy state,
    called symbol) pair on the call nesting stack.  Verdicts of Lose and
    RomeoCanForceInfinite can both be true of a word; Lose takes
    precedence.
    """
    for a in game.function_symbols:
        if not language_is_finite(game.replacement_dfa(a)):
            raise ValueError(
                "replacement language of %r is infinite, out of oracle scope" % (a,)
            )
    replies = {
        a: enumerate_upto(game.replacement_dfa(a), game.replacement_dfa(a).n_states)
        for a in game.function_symbols
    }
    dfa = sigma.automaton(game) if hasattr(sigma, "automaton") else sigma
    if not isinstance(dfa, Dfa):
        raise TypeError("brute_force_outcome needs an automaton strategy")
    dfa = GeneralStrategy(dfa).automaton(game)
    target = game.target
    memo = {}

    def sub_play(p, q, symbol, stack):
        """Endpoints and divergence of the sub-play on one symbol.

        Returns (endpoints, can_diverge): all (strategy state, target
        state) pairs some finished sub-play can end in, and whether Romeo
        can make the sub-play go on forever.
        """
        if not _call_decision(game, dfa, p, symbol):
            return (
                frozenset({(dfa.transitions[(p, symbol)], target.transitions[(q, symbol)])}),
                False,
            )
        if (p, symbol) in stack:
            return frozenset(), True
        key = (p, q, symbol, stack)
        if key in memo:
            return memo[key]
        inner = stack | {(p, symbol)}
        endpoints = set()
        diverge = False
        for reply in replies[symbol]:
            current = {(dfa.transitions[(p, hat(symbol))], q)}
            for c in reply:
                step = set()
                for pp, qq in current:
                    ends, div = sub_play(pp, qq, c, inner)
                    step |= ends
                    diverge = diverge or div
                current = step
                if not current:
                    break
            endpoints |= current
        result = (frozenset(endpoints), diverge)
        memo[key] = result
        return result

    reachable = {(dfa.initial, target.initial)}
    can_diverge = False
    for symbol in word:
        step = set()
        for p, q in reachable:
            ends, div = sub_play(p, q, symbol, frozenset())
            step |= ends
            can_diverge = can_diverge or div
        reachable = step
    if any(q not in target.accepting for _, q in reachable):
        return LOSE
    if can_diverge:
        return DIVERGE
    return WIN
