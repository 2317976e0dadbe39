import numpy as np
import pytest

from kirwan.oracle import FACET_THRESHOLD, MatrixModel, build_model, validate
from kirwan.polyhedron import HPolyhedron, Row, assemble, instantiate, prune
from kirwan.rootdata import build_pair, pairing

from test_polyhedron import GENERIC

RNG = np.random.default_rng


def p_basis(model):
    """Real basis of p as matrices: each weight vector times 1 and i."""
    out = []
    for v in model._weight_vectors:
        for c in (1.0, 1j):
            if model.pair.family.value == "so":
                b = np.stack([(c * v).real, (c * v).imag], axis=-1).astype(complex)
            else:
                b = c * v
            out.append(model._b_to_x(b))
    return out


def ad_on_p(model, y):
    basis = p_basis(model)
    flat = lambda m: np.concatenate([m.real.ravel(), m.imag.ravel()])
    M = np.array([flat(x) for x in basis]).T
    cols = [np.linalg.lstsq(M, flat(model.bracket(y, x)), rcond=None)[0] for x in basis]
    return np.array(cols).T


def random_g(model, rng):
    """Random element of g = k + p, k-part as a generic Ad(k)-conjugate of a torus element."""
    k = model.random_k(rng, 1)[0]
    t = model.embed_weight(rng.integers(-5, 6, model.pair.ncoords))
    return k @ t @ np.conj(k.T) + model.random_p(rng, 1, 1.0, sparse_fraction=0.0)[0]


def test_z0_matches_embedding(any_pair):
    m = build_model(any_pair)
    assert np.allclose(m.z0, m.embed_weight(any_pair.z0), atol=1e-12)


def test_ad_z0_squares_to_minus_one(any_pair):
    m = build_model(any_pair)
    x = m.random_p(RNG(0), 5, 1.0, sparse_fraction=0.0)
    twice = m.bracket(m.z0, m.bracket(m.z0, x))
    assert np.max(np.abs(twice + x)) < 1e-12


def test_p_weights_are_noncompact_positive_roots(any_pair):
    # eigenvalues of ad(z0 + t h) on p are +-i (1 + t <h, beta>) over beta in R_n^+
    m = build_model(any_pair)
    h = [0.37 * (i + 1) - 0.11 * i * i for i in range(any_pair.ncoords)]
    t = 0.01
    ev = np.linalg.eigvals(ad_on_p(m, m.z0 + t * m.embed_weight(h)))
    h_c = np.array([float(x) for x in any_pair.canonical(h)])
    expected = sorted(1 + t * float(np.dot([float(c) for c in b], h_c))
                      for b in any_pair.noncompact_pos_roots)
    assert np.allclose(ev.real, 0, atol=1e-9)
    assert np.allclose(sorted(ev.imag[ev.imag > 0]), expected, atol=1e-9)


def test_bracket_and_form(any_pair):
    m = build_model(any_pair)
    rng = RNG(1)
    for _ in range(5):
        x, y, z = (random_g(m, rng) for _ in range(3))
        assert np.allclose(m.bracket(x, y), -m.bracket(y, x))
        assert abs(m.inner(m.bracket(x, y), z) + m.inner(y, m.bracket(x, z))) < 1e-9


def test_phi_p_basics(any_pair):
    m = build_model(any_pair)
    rng = RNG(2)
    z = np.zeros((m.N, m.N), complex)
    assert np.allclose(m.phi_p(z), 0)
    x = m.random_p(rng, 20, 1.0, sparse_fraction=0.0)
    phi = m.phi_p(x)
    # with the positive form -Re tr on k: <Phi(X), z0> = |[z0, X]|^2 > 0
    lhs = -m.inner(phi, m.z0)
    rhs = m.inner(m.bracket(m.z0, x), m.bracket(m.z0, x))
    assert np.allclose(lhs, rhs) and np.all(rhs > 0)
    k = m.random_k(rng, 20)
    kh = np.conj(np.swapaxes(k, -1, -2))
    assert np.max(np.abs(m.phi_p(k @ x @ kh) - k @ phi @ kh)) < 1e-9
    with pytest.raises(ValueError):
        m.phi_p(m.z0)


def test_moment_identity_and_orbit(any_pair):
    m = build_model(any_pair)
    lam = GENERIC[any_pair.spec]
    canon = np.array([float(x) for x in any_pair.canonical(lam)])
    e = np.eye(m.N, dtype=complex)[None]
    zero = np.zeros((1, m.N, m.N), complex)
    assert np.allclose(m.moment(e, m.embed_weight(lam), zero)[0], canon, atol=1e-10)
    k = m.random_k(RNG(3), 50)
    got = m.moment(k, m.embed_weight(lam), np.zeros((50, m.N, m.N), complex))
    if any_pair.sum_zero:
        got = got - got.mean(axis=1, keepdims=True)
    assert np.allclose(got, canon, atol=1e-9)


def test_samples_are_dominant(any_pair):
    m = build_model(any_pair)
    xi = m.moment_sample(GENERIC[any_pair.spec], RNG(4), 500, 2.0)
    simple = np.array([[float(c) for c in a] for a in any_pair.simple_compact_roots]).reshape(-1, any_pair.ncoords)
    if len(simple):
        assert np.all(xi @ simple.T >= -1e-9)


def _setup(spec, lam):
    from kirwan.rootdata import parse_spec
    p = parse_spec(spec)
    raw = instantiate(p, assemble(p), lam)
    return p, raw, prune(raw)


def test_validate_sp4_many_samples():
    p, raw, pr = _setup("sp:n=2", (3, 1))
    rep = validate(build_model(p), raw, (3, 1), n_samples=10**6, seed=11, facets=pr)
    assert rep["violations"] == 0 and rep["chamber_violations"] == 0
    assert rep["facets_approached"]
    assert all(f["min_slack"] < FACET_THRESHOLD for f in rep["per_facet_min_slack"])
    assert rep["zero_scale_in_orbit_hull"] and rep["samples_in_translated_cone"]


def test_validate_su21():
    p, raw, pr = _setup("su:p=2,q=1", (5, 2, -7))
    rep = validate(build_model(p), raw, (5, 2, -7), n_samples=20000, seed=1, facets=pr)
    assert rep["violations"] == 0 and rep["min_slack_overall"] >= -1e-9


def test_validate_empty_budget():
    p, raw, pr = _setup("sp:n=2", (3, 1))
    rep = validate(build_model(p), raw, (3, 1), n_samples=0, facets=pr)
    assert rep["n_samples"] == 0 and rep["violations"] == 0
    assert "facets_approached" not in rep
    assert all(f["min_slack"] is None for f in rep["per_facet_min_slack"])


def test_validate_deterministic():
    p, raw, pr = _setup("su:p=2,q=2", (7, 3, -2, -8))
    a = validate(build_model(p), raw, (7, 3, -2, -8), n_samples=5000, seed=5, facets=pr)
    b = validate(build_model(p), raw, (7, 3, -2, -8), n_samples=5000, seed=5, facets=pr)
    assert a == b


def test_flipped_sign_is_detected():
    # Phi_p with the opposite sign leaves Lambda + Cone(R_n^+) and breaks the system
    class Flipped(MatrixModel):
        def phi_p(self, x):
            return -super().phi_p(x)

    p, raw, pr = _setup("sp:n=2", (3, 1))
    m = Flipped(p, 4, 2)
    rep = validate(m, raw, (3, 1), n_samples=3000, seed=0, facets=pr)
    assert rep["violations"] > 0 and not rep["samples_in_translated_cone"]


def test_too_strong_system_is_detected():
    p, raw, pr = _setup("su:p=2,q=2", (7, 3, -2, -8))
    tight = HPolyhedron(pr.dim, tuple(Row(r.a, r.b - (1 if i == 4 else 0), r.source)
                                      for i, r in enumerate(pr.rows)), pr.sum_zero, pr.labels)
    rep = validate(build_model(p), tight, (7, 3, -2, -8), n_samples=20000, seed=0)
    assert rep["violations"] > 0
