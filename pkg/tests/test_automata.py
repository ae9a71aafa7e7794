import pytest
from hypothesis import given, settings, strategies as st

from cfgame.automata import (
    Dfa,
    Nfa,
    RegexSyntaxError,
    all_words_upto,
    compare_shortlex,
    complement,
    determinize,
    determinize_minimize,
    difference,
    enumerate_upto,
    equivalent,
    intersect,
    is_prefix_free,
    is_subset,
    language_is_finite,
    make_total,
    minimize,
    minimize_with_map,
    parse_regex,
    regex_nullable,
    regex_symbols,
    regex_to_nfa,
    regex_to_text,
    shortlex_min_word,
    subset_witness,
    to_dot,
    union,
)
from oracles import (
    ast_language,
    brute_language,
    brute_min_symdiff,
    brute_prefix_violation,
    nerode_is_minimal,
    words_upto,
)

ALPHABET = ("a", "b")


def regex_asts(alphabet=ALPHABET):
    leaf = st.builds(lambda s: ("sym", s), st.sampled_from(alphabet))
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            st.tuples(st.just("cat"), inner, inner),
            st.tuples(st.just("alt"), inner, inner),
            st.tuples(st.just("star"), inner),
        ),
        max_leaves=6,
    )


@st.composite
def dfas(draw, alphabet=ALPHABET, max_states=4):
    n = draw(st.integers(1, max_states))
    transitions = {
        (q, a): draw(st.integers(0, n - 1)) for q in range(n) for a in alphabet
    }
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(n, alphabet, transitions, 0, accepting)


@st.composite
def nfas(draw, alphabet=ALPHABET, max_states=4):
    n = draw(st.integers(1, max_states))
    transitions = {}
    for q in range(n):
        for a in alphabet:
            targets = draw(st.sets(st.integers(0, n - 1)))
            if targets:
                transitions[(q, a)] = targets
    initials = draw(st.sets(st.integers(0, n - 1), min_size=1))
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Nfa(n, alphabet, transitions, initials, accepting)


# -- parsing ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text,ast",
    [
        ("a", ("sym", "a")),
        ("ab", ("cat", ("sym", "a"), ("sym", "b"))),
        ("aba", ("cat", ("cat", ("sym", "a"), ("sym", "b")), ("sym", "a"))),
        ("a+b", ("alt", ("sym", "a"), ("sym", "b"))),
        ("a+b+a", ("alt", ("alt", ("sym", "a"), ("sym", "b")), ("sym", "a"))),
        ("(a+b)*", ("star", ("alt", ("sym", "a"), ("sym", "b")))),
        ("a*b", ("cat", ("star", ("sym", "a")), ("sym", "b"))),
        ("a**", ("star", ("star", ("sym", "a")))),
        (" a b ", ("cat", ("sym", "a"), ("sym", "b"))),
        ('a"xy"', ("cat", ("sym", "a"), ("sym", "xy"))),
        ('"(0,2)"', ("sym", "(0,2)")),
        ("ab+b", ("alt", ("cat", ("sym", "a"), ("sym", "b")), ("sym", "b"))),
    ],
)
def test_parse_regex(text, ast):
    assert parse_regex(text) == ast


@pytest.mark.parametrize(
    "text",
    ["", "   ", "()", "(a", "a)", "+a", "a+", "*", "a(", '"ab', '""', "(+)"],
)
def test_parse_regex_rejects(text):
    with pytest.raises(RegexSyntaxError):
        parse_regex(text)


@given(regex_asts())
def test_regex_text_round_trip(ast):
    assert parse_regex(regex_to_text(ast)) == ast


@given(regex_asts())
def test_regex_symbols_and_nullable(ast):
    lang = ast_language(ast, 4)
    assert (() in lang) == regex_nullable(ast)
    used = set()
    for w in lang:
        used.update(w)
    # every reported symbol can be forced to appear at some length
    assert used <= regex_symbols(ast)


# -- compilation -----------------------------------------------------------


@given(regex_asts())
@settings(max_examples=150)
def test_glushkov_matches_ast_semantics(ast):
    nfa = regex_to_nfa(ast, ALPHABET)
    dfa = determinize(nfa)
    expected = ast_language(ast, 5)
    assert brute_language(dfa.accepts, ALPHABET, 5) == expected
    assert brute_language(nfa.accepts, ALPHABET, 5) == expected


@given(nfas())
def test_determinize_preserves_language(nfa):
    dfa = determinize(nfa)
    for w in words_upto(ALPHABET, 5):
        assert dfa.accepts(w) == nfa.accepts(w)


@given(dfas())
def test_minimize_preserves_language_and_is_minimal(dfa):
    small = minimize(dfa)
    for w in words_upto(ALPHABET, 5):
        assert small.accepts(w) == dfa.accepts(w)
    assert nerode_is_minimal(small)
    assert small.n_states <= dfa.n_states


@given(dfas())
def test_minimize_is_canonical(dfa):
    small = minimize(dfa)
    assert minimize(small) == small
    # a structurally different automaton for the same language lands on the
    # same canonical form
    assert minimize(union(dfa, dfa)) == small


@given(dfas())
def test_minimize_map_is_consistent(dfa):
    small, mapping = minimize_with_map(dfa)
    assert mapping[dfa.initial] == small.initial
    for q, image in mapping.items():
        for a in ALPHABET:
            assert mapping[dfa.transitions[(q, a)]] == small.transitions[(image, a)]
        assert (q in dfa.accepting) == (image in small.accepting)


@given(regex_asts())
def test_equivalent_asts_minimize_identically(ast):
    doubled = ("alt", ast, ast)
    d1 = determinize_minimize(regex_to_nfa(ast, ALPHABET))
    d2 = determinize_minimize(regex_to_nfa(doubled, ALPHABET))
    assert d1 == d2


# -- boolean operations ----------------------------------------------------


@given(dfas(), dfas())
def test_products_and_complement(d1, d2):
    both = intersect(d1, d2)
    either = union(d1, d2)
    only = difference(d1, d2)
    comp = complement(d1)
    for w in words_upto(ALPHABET, 4):
        assert both.accepts(w) == (d1.accepts(w) and d2.accepts(w))
        assert either.accepts(w) == (d1.accepts(w) or d2.accepts(w))
        assert only.accepts(w) == (d1.accepts(w) and not d2.accepts(w))
        assert comp.accepts(w) != d1.accepts(w)


@given(dfas(), dfas())
@settings(deadline=None, max_examples=60)
def test_subset_and_witness(d1, d2):
    bound = d1.n_states * d2.n_states
    w = subset_witness(d1, d2)
    brute = None
    for cand in words_upto(ALPHABET, bound):
        if d1.accepts(cand) and not d2.accepts(cand):
            brute = cand
            break
    assert w == brute
    assert is_subset(d1, d2) == (brute is None)


@given(dfas(), dfas())
@settings(deadline=None, max_examples=60)
def test_compare_shortlex_against_enumeration(d1, d2):
    bound = d1.n_states * d2.n_states
    cmp_result, witness = compare_shortlex(d1, d2)
    brute = brute_min_symdiff(d1.accepts, d2.accepts, ALPHABET, bound)
    if brute is None:
        assert cmp_result == 0 and witness is None
        assert equivalent(d1, d2)
    else:
        assert witness == brute
        if d1.accepts(witness):
            assert cmp_result == 1
        else:
            assert cmp_result == -1


@given(dfas())
def test_strict_subset_is_shortlex_smaller(dfa):
    # dropping any accepted word makes the language shortlex smaller
    word = shortlex_min_word(dfa)
    if word is None:
        return
    one = make_total(
        len(word) + 1,
        ALPHABET,
        {(i, word[i]): i + 1 for i in range(len(word))},
        0,
        {len(word)},
    )
    smaller = difference(dfa, one)
    cmp_result, witness = compare_shortlex(smaller, dfa)
    assert cmp_result == -1
    assert witness == word


# -- queries ---------------------------------------------------------------


@given(dfas())
def test_shortlex_min_word(dfa):
    got = shortlex_min_word(dfa)
    brute = None
    for w in words_upto(ALPHABET, dfa.n_states):
        if dfa.accepts(w):
            brute = w
            break
    assert got == brute


@given(dfas())
def test_language_is_finite(dfa):
    n = dfa.n_states
    pumped = [
        w
        for w in words_upto(ALPHABET, 2 * n - 1)
        if len(w) >= n and dfa.accepts(w)
    ]
    assert language_is_finite(dfa) == (not pumped)


@given(dfas())
def test_is_prefix_free(dfa):
    flag, witness = is_prefix_free(dfa)
    violation = brute_prefix_violation(
        brute_language(dfa.accepts, ALPHABET, 2 * dfa.n_states)
    )
    assert flag == (violation is None)
    if witness is not None:
        u, v = witness
        assert v
        assert dfa.accepts(u)
        assert dfa.accepts(u + v)


@given(dfas(), st.integers(0, 4))
def test_enumerate_upto_dfa(dfa, max_len):
    got = enumerate_upto(dfa, max_len)
    assert set(got) == brute_language(dfa.accepts, ALPHABET, max_len)
    assert got == sorted(got, key=lambda w: (len(w), w))


@given(nfas(), st.integers(0, 4))
def test_enumerate_upto_nfa(nfa, max_len):
    got = enumerate_upto(nfa, max_len)
    assert set(got) == brute_language(nfa.accepts, ALPHABET, max_len)


def test_all_words_upto_counts():
    words = list(all_words_upto(("x", "y"), 3))
    assert len(words) == 1 + 2 + 4 + 8
    assert words[0] == ()
    assert len(set(words)) == len(words)


# -- construction and export ----------------------------------------------


def test_make_total_adds_dead_state():
    dfa = make_total(2, ALPHABET, {(0, "a"): 1, (1, "a"): 1}, 0, {1})
    assert dfa.n_states == 3
    assert dfa.transitions[(0, "b")] == 2
    assert dfa.transitions[(2, "a")] == 2
    assert not dfa.accepts(("b",))
    assert dfa.accepts(("a",))


def test_make_total_keeps_complete_automata():
    trans = {(0, "a"): 0, (0, "b"): 0}
    dfa = make_total(1, ALPHABET, trans, 0, {0})
    assert dfa.n_states == 1


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa(2, ALPHABET, {(0, "a"): 1}, 0, set())
    with pytest.raises(ValueError):
        Dfa(1, ALPHABET, {(0, "a"): 0, (0, "b"): 0}, 1, set())
    with pytest.raises(ValueError):
        Dfa(1, ALPHABET, {(0, "a"): 0, (0, "b"): 0}, 0, {3})
    with pytest.raises(ValueError):
        Dfa(
            1,
            ALPHABET,
            {(0, "a"): 0, (0, "b"): 0, (1, "a"): 0},
            0,
            set(),
        )


def test_to_dot_smoke():
    dfa = make_total(2, ALPHABET, {(0, "a"): 1, (1, "b"): 0}, 0, {1})
    dot = to_dot(dfa, name="sample")
    assert dot.startswith("digraph sample {")
    assert "doublecircle" in dot
    assert dot.rstrip().endswith("}")
    nfa = Nfa(2, ALPHABET, {(0, "a"): {0, 1}}, {0}, {1})
    assert "0 -> 1" in to_dot(nfa)
