import itertools
import json
import random

import pytest
from hypothesis import given, strategies as st

from biinvariant import balanced
from biinvariant.balanced import (
    BudgetExceeded,
    GraphPresentation,
    Kind,
    LettersOutsideSubset,
    apply_move,
    cancelation_length,
    cancelation_search,
    complete_graph,
    group_inverse,
    is_trivial,
    normal_form,
    parabolic_norm_check,
    parse_graph,
    path_graph,
    random_balanced_rewrite,
    random_presentation,
)
from biinvariant.freenorm import TooLarge, cancelation_norm
from biinvariant.words import Word, concat, format_word, random_word

from conftest import W

AB_EDGE = GraphPresentation(("a", "b"), frozenset([frozenset("ab")]), Kind.ARTIN)


def edgeless(names, kind=Kind.ARTIN):
    return GraphPresentation(tuple(names), frozenset(), kind)


def nf(p, text):
    return format_word(normal_form(p, text))


def test_normal_form_examples():
    assert nf(AB_EDGE, "ba") == "ab"
    assert nf(AB_EDGE, "abAB") == ""
    assert nf(edgeless("s", Kind.COXETER), "ss") == ""


def test_is_trivial_examples():
    assert is_trivial(AB_EDGE, "abAB")
    assert not is_trivial(edgeless("ab"), "abAB")
    st_edge = GraphPresentation(("s", "t"), frozenset([frozenset("st")]), Kind.COXETER)
    assert is_trivial(st_edge, "stst")


def test_coxeter_inverse_letters_normalized():
    p = edgeless("st", Kind.COXETER)
    assert format_word(p.word("sTS")) == "sts"
    assert is_trivial(p, "sS")


def test_graph_validation():
    with pytest.raises(ValueError):
        GraphPresentation(("a", "a"), frozenset(), Kind.ARTIN)
    with pytest.raises(ValueError):
        GraphPresentation(("a",), frozenset([frozenset("a")]), Kind.ARTIN)
    with pytest.raises(ValueError):
        GraphPresentation(("a", "b"), frozenset([frozenset("ac")]), Kind.ARTIN)


def test_parse_graph_text_and_json():
    p = parse_graph("vertices: a b c\nedges: a-b b-c\n", "artin")
    assert p == path_graph("abc")
    q = parse_graph(json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"], "b-c"], "kind": "coxeter"}))
    assert q.kind is Kind.COXETER and q.edges == p.edges
    empty = parse_graph("vertices: x y\nedges:\n", "coxeter")
    assert empty.edges == frozenset()


def test_load_graph(tmp_path):
    f = tmp_path / "g.graph"
    f.write_text("vertices: a b c\nedges: a-b b-c\n")
    assert balanced.load_graph(f) == path_graph("abc")


def test_normal_form_matches_free_reduction_on_edgeless():
    from biinvariant.words import free_reduce
    p = edgeless("ab")
    rng = random.Random(2)
    for _ in range(200):
        w = random_word(rng.randint(0, 16), p.alphabet, rng.getrandbits(32), reduced=False)
        assert normal_form(p, w) == free_reduce(w)


def test_normal_form_abelian():
    p = complete_graph("abc")
    rng = random.Random(3)
    for _ in range(200):
        w = random_word(rng.randint(0, 16), p.alphabet, rng.getrandbits(32), reduced=False)
        e = w.exponent_sums()
        expected = "".join((n if k > 0 else n.upper()) * abs(k) for n, k in zip("abc", e))
        assert nf(p, w) == expected


def _raag_trivial_by_brute(p, codes, depth):
    """Triviality by breadth-first search over balanced moves (small words only)."""
    start = tuple(codes)
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for c in frontier:
            if not c:
                return True
            for i in range(len(c) - 1):
                a, b = c[i] >> 1, c[i + 1] >> 1
                if a != b and p.commute(a, b):
                    d = c[:i] + (c[i + 1], c[i]) + c[i + 2:]
                elif c[i] == c[i + 1] ^ 1:
                    d = c[:i] + c[i + 2:]
                else:
                    continue
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return any(not c for c in frontier)


def test_triviality_agrees_with_move_search():
    # without insertions the move graph is finite; trivial words reach empty
    p = path_graph("abc")
    rng = random.Random(5)
    for _ in range(150):
        w = random_word(rng.choice([2, 4, 6]), p.alphabet, rng.getrandbits(32), reduced=False)
        codes = [l.code for l in w.letters]
        assert is_trivial(p, w) == _raag_trivial_by_brute(p, codes, len(codes) ** 2)


@given(st.integers(0, 2**32), st.sampled_from(["artin", "coxeter"]))
def test_normal_form_idempotent_and_rewrite_stable(seed, kind):
    rng = random.Random(seed)
    p = random_presentation(rng.randint(1, 4), 0.5, kind, seed)
    w = p.word(random_word(rng.randint(0, 12), p.alphabet, seed, reduced=False))
    n1 = normal_form(p, w)
    assert normal_form(p, n1) == n1
    w2 = random_balanced_rewrite(p, w, 8, seed + 1)
    assert normal_form(p, w2) == n1
    assert is_trivial(p, concat(group_inverse(p, w), w2))


def test_cancelation_length_examples():
    assert cancelation_length(AB_EDGE, "ab") == 2
    # free factor: oracle value of acAC in F_2 on {a, c}
    assert cancelation_norm(W("acAC", "ac")) == 2
    assert cancelation_length(path_graph("abc"), "acAC") == 2
    assert cancelation_length(edgeless("st", Kind.COXETER), "sts") == 1


def test_cancelation_search_witness():
    p = path_graph("abc")
    w = p.word("acAbC")
    k, deleted = cancelation_search(p, w)
    assert k == len(deleted)
    survivor = Word(tuple(l for i, l in enumerate(w.letters) if i not in set(deleted)), w.alphabet)
    assert is_trivial(p, survivor)


def _brute_length(p, w):
    n = len(w)
    for k in range(n + 1):
        for drop in itertools.combinations(range(n), k):
            s = set(drop)
            if is_trivial(p, Word(tuple(l for i, l in enumerate(w.letters) if i not in s), w.alphabet)):
                return k
    return n


@pytest.mark.parametrize("kind", ["artin", "coxeter"])
def test_search_matches_exhaustive_deletion(kind):
    rng = random.Random(17)
    for trial in range(60):
        p = random_presentation(rng.randint(2, 4), 0.5, kind, trial)
        w = p.word(random_word(rng.randint(0, 9), p.alphabet, rng.getrandbits(32), reduced=False))
        assert cancelation_length(p, w) == _brute_length(p, w)


def test_edgeless_artin_equals_free_norm():
    p = edgeless("ab")
    rng = random.Random(8)
    for _ in range(100):
        w = random_word(rng.randint(0, 14), p.alphabet, rng.getrandbits(32), reduced=False)
        assert cancelation_length(p, w) == cancelation_norm(w)


def test_complete_artin_is_l1_of_exponents():
    p = complete_graph("abc")
    rng = random.Random(9)
    for _ in range(100):
        w = random_word(rng.randint(0, 14), p.alphabet, rng.getrandbits(32), reduced=False)
        assert cancelation_length(p, w) == sum(abs(e) for e in w.exponent_sums())


def test_length_guard_and_budget():
    p = edgeless("ab")
    long = random_word(30, p.alphabet, 1)
    with pytest.raises(TooLarge):
        cancelation_length(p, long)
    with pytest.raises(BudgetExceeded):
        cancelation_length(p, long, budget=50)
    assert cancelation_length(p, random_word(26, p.alphabet, 1), budget=10**7) == cancelation_norm(
        random_word(26, p.alphabet, 1))


def test_rewrite_examples():
    w = AB_EDGE.word("ab")
    assert random_balanced_rewrite(AB_EDGE, w, 0, 1) == w
    assert format_word(apply_move(AB_EDGE, w, ("swap", 0, None))) == "ba"
    with pytest.raises(ValueError):
        apply_move(edgeless("ab"), w, ("swap", 0, None))
    assert format_word(apply_move(AB_EDGE, w, ("insert", 1, 3))) == "aBbb"
    assert format_word(apply_move(AB_EDGE, AB_EDGE.word("aAb"), ("delete", 0, None))) == "b"


def test_rewrite_respects_max_length():
    p = path_graph("abc")
    w = p.word("abc")
    for seed in range(20):
        assert len(random_balanced_rewrite(p, w, 30, seed, max_length=9)) <= 9


def test_parabolic_examples():
    p = path_graph("abc")
    assert parabolic_norm_check(p, "ac", "acAC") == (2, 2)
    assert parabolic_norm_check(AB_EDGE, "a", "aa") == (2, 2)
    full = parabolic_norm_check(p, "abc", "abCBA")
    assert full[0] == full[1]
    with pytest.raises(LettersOutsideSubset):
        parabolic_norm_check(p, "ac", "ab")


def test_baumslag_solitar_is_not_balanced():
    # x^5 = t x^2 t^-1 in BS(2,5) but the free cancelation lengths differ,
    # so no deletion-count norm can be read off both representatives
    assert cancelation_norm(W("xxxxx", "tx")) == 5
    assert cancelation_norm(W("txxT", "tx")) == 2
