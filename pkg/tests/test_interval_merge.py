import pytest

from samurai import EMPTY, Engine, Interval, ProbeStats
from samurai.interval_merge import default_delta
from samurai.oracle import naive_interval, naive_psi_merge


@pytest.fixture(scope="module")
def banana():
    return Engine.build("banana", delta=2)


def code(engine, ch):
    return engine.idx.encode(ch)[0]


def test_banana_dictionaries(banana):
    tree, mi, idx = banana.tree, banana.mi, banana.idx
    root = mi.gamma[tree.root]
    assert root.keys == [1, 3, 5, 7] and root.values == [1, 3, 5, 7]
    na = tree.node_of_interval(Interval(6, 7))
    assert mi.gamma[na].values == [7]
    assert mi.gamma[na].keys == [idx.psi(7, 2)] == [6]


def test_large_delta_samples_nothing():
    e = Engine.build("mississippi", delta=100)
    assert not e.mi.gamma and not e.mi.hl and not e.mi.hr and not e.mi.child_samples
    assert e.locate_exact("issi", p=2) == naive_interval("mississippi", "issi")


def test_delta_validation():
    with pytest.raises(ValueError):
        Engine.build("banana", delta=1)
    assert default_delta(2) == 4
    assert default_delta(1 << 20) == 400


def test_child(banana):
    tree, mi = banana.tree, banana.mi
    b = mi.child(tree.root, code(banana, "b"))
    assert tree.interval(b) == Interval(5, 5)
    a = tree.node_of_interval(Interval(2, 4))
    assert tree.interval(mi.child(a, code(banana, "n"))) == Interval(3, 4)
    assert mi.child(tree.root, 99) is None


def test_child_with_samples():
    text = bytes(range(1, 200)) * 2
    e = Engine.build(text, delta=4)
    root = e.tree.root
    assert root in e.mi.child_samples
    for c in range(0, e.idx.sigma + 2):
        w = e.mi.child(root, c)
        if c <= e.idx.sigma:     # code 0 is the sentinel edge
            assert e.tree.first_symbol(root, w) == c
        else:
            assert w is None


def test_merge_examples(banana):
    m = banana.merge
    assert m(Interval(2, 4), 1, Interval(6, 7)) == Interval(3, 4)
    assert m(Interval(1, 7), 0, Interval(6, 7)) == Interval(6, 7)
    assert m(Interval(5, 5), 1, Interval(4, 4)) == Interval(5, 5)
    assert m(Interval(6, 7), 2, Interval(5, 5)) == EMPTY
    assert m(EMPTY, 1, Interval(1, 2)) == EMPTY
    for p in (2, 4):
        assert banana.mi.merge(Interval(2, 4), 1, EMPTY, p) == EMPTY


def test_merge_contract_errors(banana):
    with pytest.raises(ValueError):
        banana.merge(Interval(2, 4), 0, Interval(1, 1))
    with pytest.raises(ValueError):
        banana.merge(Interval(3, 4), 5, Interval(1, 1))


def test_all_banana_pairs_parallel(banana):
    text = "banana"
    subs = {text[a:b] for a in range(6) for b in range(a + 1, 7)}
    idx = banana.idx
    for x in subs:
        for y in subs:
            want = naive_interval(text, x + y)
            assert naive_psi_merge(idx, idx.interval_of(x), len(x), idx.interval_of(y)) == want
            for p in (1, 2, 4):
                assert banana.mi.merge(idx.interval_of(x), len(x), idx.interval_of(y), p) == want


def test_space_accounting():
    e = Engine.build("abracadabra" * 20, delta=3)
    g, h = e.mi.space_bounds()
    c = e.mi.counts
    assert c["gamma"] <= g and c["hl"] + c["hr"] <= h
    assert c["gamma_stored"] == sum(len(d) for d in e.mi.gamma.values())
    e.mi.counts["gamma"] = int(g) + 1
    with pytest.raises(AssertionError):
        e.mi.check_space()


def test_merge_stats(banana):
    st = ProbeStats()
    banana.mi.merge(Interval(2, 4), 1, Interval(6, 7), 1, st)
    assert st.merges == 1
