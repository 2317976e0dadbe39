import math
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kirwan.rootdata import Family, build_pair, pairing
from kirwan.weyl import WeylBoundError, WeylGroup


def group(fam, **kw):
    return WeylGroup(build_pair(fam, **kw))


def expected_order(p):
    fam = p.family
    if fam in (Family.SpR, Family.SOstar):
        return math.factorial(p.param("n"))
    if fam is Family.SUpq:
        return math.factorial(p.param("p")) * math.factorial(p.param("q"))
    k = p.param("p") // 2
    return 2 ** k * math.factorial(k) if p.param("p") % 2 else 2 ** (k - 1) * math.factorial(k)


def test_orders(any_pair):
    g = WeylGroup(any_pair)
    assert len(g) == expected_order(any_pair)
    assert len({w.images for w in g}) == len(g)


def test_small_groups():
    assert len(group("sp", n=2)) == 2
    assert len(group("su", p=2, q=1)) == 2
    g = group("su", p=2, q=2)
    assert {g.format(w) for w in g} == {"id", "s1", "s2", "s1*s2"}
    # the U(p)-block reflection is s1, the U(q)-block one is s2
    assert g.act_co(g.simple[0], (1, 2, 3, 4)) == (2, 1, 3, 4)
    assert g.act_co(g.simple[1], (1, 2, 3, 4)) == (1, 2, 4, 3)


def test_closure_and_inverse(any_pair):
    g = WeylGroup(any_pair)
    for u in g:
        assert g.mult(u, g.inverse(u)) == g.identity
        for v in g.elements[:10]:
            assert g.mult(u, v) in set(g.elements)


def test_length_is_inversion_count(any_pair):
    g = WeylGroup(any_pair)
    pos = set(any_pair.compact_pos_roots)
    for w in g:
        assert w.length == sum(1 for a in pos if g.act(w, a) not in pos)
        assert len(g.word(w)) == w.length
        assert g.from_word(g.word(w)) == w


def test_longest(any_pair):
    g = WeylGroup(any_pair)
    assert g.w0.length == len(any_pair.compact_pos_roots)
    assert sum(1 for w in g if w.length == g.w0.length) == 1
    assert g.act(g.w0, any_pair.rho) == tuple(-x for x in any_pair.rho)
    for w in g:
        assert g.mult(g.w0, w).length == g.w0.length - w.length


def test_action_is_group_action(any_pair):
    g = WeylGroup(any_pair)
    mu = tuple(range(1, any_pair.ncoords + 1))
    for u in g.elements[:12]:
        for v in g.elements[-12:]:
            assert g.act(g.mult(u, v), mu) == g.act(u, g.act(v, mu))


def test_pairing_equivariance(any_pair):
    g = WeylGroup(any_pair)
    lam = tuple((-1) ** i * (i + 2) for i in range(any_pair.ncoords))
    mu = tuple(3 * i - 1 for i in range(any_pair.ncoords))
    for w in g:
        assert pairing(lam, g.act(w, mu)) == pairing(g.act_co(g.inverse(w), lam), mu)


def test_parse_and_format():
    g = group("sp", n=3)
    w = g.parse("s1*s2")
    assert g.format(w) == "s1*s2" and g.parse(str(list(w.images))) == w
    assert g.parse("id") == g.identity
    with pytest.raises(ValueError):
        g.parse("s7")
    with pytest.raises(ValueError):
        g.parse("[1,1,1]")


def test_bound():
    with pytest.raises(WeylBoundError):
        WeylGroup(build_pair("sp", n=4), max_size=10)


def test_bound_env(monkeypatch):
    monkeypatch.setenv("KIRWAN_MAX_WEYL", "5")
    with pytest.raises(WeylBoundError):
        WeylGroup(build_pair("sp", n=3))


def test_stabilizer_examples():
    g = group("sp", n=2)
    sub, wl = g.stabilizer((0, -1))
    assert sub == [g.identity] and wl == g.identity
    assert g.act_co(g.simple[0], (0, -1)) == (-1, 0)
    g21 = group("su", p=2, q=1)
    sub, wl = g21.stabilizer((2, -1, -1))
    assert sub == [g21.identity]
    sub, wl = g.stabilizer((0, 0))
    assert len(sub) == len(g) and wl == g.w0


def test_max_coset_reps():
    g = group("sp", n=2)
    assert g.max_coset_reps((0, -1)) == list(g.elements)
    assert g.max_coset_reps((2, 1)) == list(g.elements)
    with pytest.raises(ValueError):
        g.max_coset_reps((1, 2))


def test_coset_decomposition(any_pair):
    from kirwan.pairs import engine
    g = engine(any_pair).group
    for ops in engine(any_pair).admissible:
        reps = g.max_coset_reps(ops.lam)
        sub, wl = g.stabilizer(ops.lam)
        assert len(reps) * len(sub) == len(g)
        for w in reps:
            coset = [g.mult(w, s) for s in sub]
            assert max(c.length for c in coset) == w.length
            assert sum(1 for c in coset if c.length == w.length) == 1


# ---- S_r combinatorics (the U(r) block of su:p=r,q=1)

def sym(r):
    return WeylGroup(build_pair("su", p=r, q=1))


def hat(g, k):
    return g.from_word(list(range(1, k)))          # s1 s2 ... s_{k-1}


def check_(g, r, k):
    return g.from_word(list(range(r - 1, k - 1, -1)))  # s_{r-1} ... s_k


def parabolic_q(g, r):
    """W_Q generated by s2..s_{r-1}, and its longest element."""
    sub = [w for w in g if all(i >= 2 for i in g.word(w))]
    return sub, max(sub, key=lambda w: w.length)


def test_hat_and_check_examples():
    g = sym(5)
    assert hat(g, 3) == g.from_word([1, 2]) and hat(g, 3).length == 2
    assert check_(g, 5, 3) == g.from_word([4, 3]) and check_(g, 5, 3).length == 2


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_hat_check_lengths(r):
    g = sym(r)
    for k in range(1, r + 1):
        assert hat(g, k).length == k - 1
        assert check_(g, r, k).length == r - k


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_right_multiplication_adds_length(r):
    g = sym(r)
    sub, _ = parabolic_q(g, r)
    for w in sub:
        for k in range(1, r):
            assert g.mult(w, g.from_word(list(range(1, k + 1)))).length == w.length + k
            assert g.mult(g.from_word(list(range(k, 0, -1))), w).length == w.length + k


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_longest_times_hat(r):
    g = sym(r)
    _, wq = parabolic_q(g, r)
    for k in range(1, r + 1):
        assert g.mult(g.mult(g.w0, wq), hat(g, k)) == check_(g, r, k)
        inv = g.inverse(hat(g, k))
        assert g.mult(g.mult(g.w0, inv), wq) == g.inverse(hat(g, r - k + 1))


@pytest.mark.parametrize("r", [4, 5, 6])
def test_check_reflection_lengths(r):
    g = sym(r)
    for k in range(1, r):
        ck = check_(g, r, k)
        for i in range(1, k + 1):
            for j in range(k + 1, r + 1):
                alpha = tuple(int(t == i - 1) - int(t == j - 1) for t in range(r + 1))
                up = g.mult(ck, g.reflection(alpha))
                assert (up.length == ck.length + 1) == ((i, j) == (k - 1, k + 1))
        if k >= 2:
            alpha = tuple(int(t == k - 2) - int(t == k) for t in range(r + 1))
            assert g.mult(ck, g.reflection(alpha)) == g.mult(check_(g, r, k + 1), g.from_word([k - 1, k]))
            for i in range(1, k - 1):
                a = tuple(int(t == i - 1) - int(t == k - 1) for t in range(r + 1))
                assert g.mult(ck, g.reflection(a)).length >= ck.length + 2
            a = tuple(int(t == k - 2) - int(t == k - 1) for t in range(r + 1))
            assert g.mult(ck, g.reflection(a)) == check_(g, r, k - 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hat_inverse_moves_lambda1(n):
    # lambda_k = (n+1) e_k - (1, ..., 1) in p+q coordinates
    g = sym(n)
    lam = lambda k: tuple(n if i == k - 1 else -1 for i in range(n + 1))
    for k in range(1, n + 1):
        assert g.act_co(g.inverse(hat(g, k)), lam(1)) == lam(k)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["sp:n=3", "su:p=2,q=2", "so_star:n=4", "so:p=5,q=2", "so:p=4,q=2"]),
       st.data())
def test_random_action_identities(spec, data):
    from kirwan.rootdata import parse_spec
    g = WeylGroup(parse_spec(spec))
    u = data.draw(st.sampled_from(g.elements))
    v = data.draw(st.sampled_from(g.elements))
    mu = data.draw(st.lists(st.integers(-4, 4), min_size=g.pair.ncoords, max_size=g.pair.ncoords))
    assert g.act(g.mult(u, v), mu) == g.act(u, g.act(v, mu))
    assert g.inverse(g.mult(u, v)) == g.mult(g.inverse(v), g.inverse(u))
