import random

import pytest

from cfgame.automata import Dfa, Nfa
from cfgame.generators import random_game
from cfgame.online import OnlineInstance
from cfgame.play import GeneralStrategy

# shared corpus for the randomized acceptance sweeps: small games whose
# replacement languages are finite, paired with random history automata
CORPUS_SIZE = 500
CORPUS_PARAMS = {
    "constraints": ["finite_replacement"],
    "alphabet": 3,
    "target_states": 4,
    "rule_length": 3,
}


def random_nfa(rng, max_states=3):
    n = rng.randint(1, max_states)
    transitions = {}
    for q in range(n):
        for a in ("0", "1"):
            hits = [p for p in range(n) if rng.random() < 0.55]
            if hits:
                transitions[(q, a)] = set(hits)
    initials = {0}
    accepting = {q for q in range(n) if rng.random() < 0.6}
    return Nfa(n, ("0", "1"), transitions, initials, accepting)


def random_online_instance(rng, max_states=3):
    n = rng.randint(1, max_states)
    transitions = {}
    for q in range(n):
        for a in ("0", "1"):
            count = rng.randint(1, n)
            transitions[(q, a)] = set(rng.sample(range(n), count))
    accepting = {q for q in range(n) if rng.random() < 0.5}
    return OnlineInstance(Nfa(n, ("0", "1"), transitions, {0}, accepting))


def random_regular_strategy(game, rng, max_states=3):
    n = rng.randint(1, max_states)
    alphabet = game.hist_alphabet
    transitions = {(q, a): rng.randrange(n) for q in range(n) for a in alphabet}
    accepting = {q for q in range(n) if rng.random() < 0.4}
    return GeneralStrategy(Dfa(n, alphabet, transitions, 0, accepting))


@pytest.fixture(scope="session")
def game_corpus():
    pairs = []
    for seed in range(CORPUS_SIZE):
        game = random_game(CORPUS_PARAMS, seed)
        rng = random.Random(10_000 + seed)
        pairs.append((game, random_regular_strategy(game, rng)))
    return pairs
