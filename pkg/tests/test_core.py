"""Tests for the truncated tensor algebra: Hopf structure, Lyndon
bases, cyclic words, and serialization."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gtlie import (
    Alphabet,
    Context,
    ContextMismatch,
    NonAugmentedInput,
    NonGeneratorWord,
    NotGroupLike,
    TensorElt,
    TensorSq,
    antipode,
    coproduct,
    counit,
    cyclic_project,
    exp_truncated,
    inverse,
    is_group_like,
    lie_bracket,
    lyndon_basis,
    lyndon_tree,
    lyndon_words,
    min_rotation,
    require_group_like,
    tree_expand,
)


def ctx_xy(N=5):
    return Context(Alphabet(["x1", "y1"], [1, 1]), N)


def ctx_z3(N=5):
    return Context(Alphabet(["z1", "z2", "z3"], [1, 1, 1]), N)


def ctx_weighted(N=6):
    return Context(Alphabet(["a", "b", "t"], [1, 1, 2]), N)


def gen(ctx, name):
    return TensorElt.gen(ctx, name)


def sq(a, b):
    """Decomposable tensor a (x) b, truncated in total degree."""
    deg = a.ctx.alphabet.word_degree
    out = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            if deg(w1) + deg(w2) > a.ctx.N:
                continue
            key = (w1, w2)
            c = out.get(key, Fraction(0)) + c1 * c2
            if c:
                out[key] = c
            else:
                del out[key]
    return TensorSq(a.ctx, out)


def sq_mul(u, v):
    """Componentwise product on the tensor square."""
    deg = u.ctx.alphabet.word_degree
    N = u.ctx.N
    out = {}
    for (a1, b1), c1 in u.terms.items():
        for (a2, b2), c2 in v.terms.items():
            key = (a1 + a2, b1 + b2)
            if deg(key[0]) + deg(key[1]) > N:
                continue
            c = out.get(key, Fraction(0)) + c1 * c2
            if c:
                out[key] = c
            else:
                del out[key]
    return TensorSq(u.ctx, out)


def random_elt(ctx, rng, nterms=4, max_len=3):
    out = TensorElt.zero(ctx)
    n = len(ctx.alphabet)
    for _ in range(nterms):
        k = rng.randrange(0, max_len + 1)
        word = tuple(rng.randrange(n) for _ in range(k))
        coeff = Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))
        out = out + TensorElt.word(ctx, word, coeff)
    return out


# ---------------------------------------------------------------------------
# ring structure


def test_unit_and_zero():
    ctx = ctx_xy()
    one = TensorElt.unit(ctx)
    zero = TensorElt.zero(ctx)
    x = gen(ctx, "x1")
    assert one * x == x
    assert x * one == x
    assert zero * x == zero
    assert x + zero == x
    assert x - x == zero


def test_word_above_bound_is_zero():
    ctx = ctx_xy(3)
    w = TensorElt.word(ctx, (0, 0, 0, 0))
    assert w == TensorElt.zero(ctx)


def test_product_truncates():
    ctx = ctx_xy(2)
    x = gen(ctx, "x1")
    cube = x * x * x
    assert cube == TensorElt.zero(ctx)
    sq = x * x
    assert sq.degree() == 2


def test_associativity_random():
    rng = random.Random(11)
    ctx = ctx_z3(4)
    for _ in range(25):
        a = random_elt(ctx, rng)
        b = random_elt(ctx, rng)
        c = random_elt(ctx, rng)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_product_matches_oracle():
    rng = random.Random(7)
    ctx = ctx_weighted(5)
    degrees = list(ctx.alphabet.degrees)
    for _ in range(20):
        a = random_elt(ctx, rng)
        b = random_elt(ctx, rng)
        want = oracles.el_mul(dict(a.terms), dict(b.terms), degrees, ctx.N)
        assert dict((a * b).terms) == want


@given(st.integers(-20, 20), st.integers(1, 9))
def test_scalar_action(p, q):
    ctx = ctx_xy(3)
    c = Fraction(p, q)
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert c * (x + y) == c * x + c * y
    assert (x * c) == c * x
    assert -x == Fraction(-1) * x


def test_context_mismatch_raises():
    a = gen(ctx_xy(4), "x1")
    b = gen(ctx_xy(5), "x1")
    with pytest.raises(ContextMismatch):
        a + b


def test_gen_unknown_name_raises():
    ctx = ctx_xy()
    with pytest.raises(NonGeneratorWord):
        TensorElt.gen(ctx, "w9")


def test_truncate_reinterprets():
    ctx = ctx_xy(5)
    x = gen(ctx, "x1")
    e = exp_truncated(x)
    t = e.truncate(2)
    assert t.ctx.N == 2
    assert t.degree() == 2
    assert t.homogeneous_part(2) == TensorElt.word(t.ctx, (0, 0), Fraction(1, 2))


def test_homogeneous_parts_sum_back():
    rng = random.Random(3)
    ctx = ctx_weighted(5)
    a = random_elt(ctx, rng, nterms=6)
    total = TensorElt.zero(ctx)
    for d in range(0, ctx.N + 1):
        total = total + a.homogeneous_part(d)
    assert total == a


# ---------------------------------------------------------------------------
# Hopf structure


def test_coproduct_primitive_generator():
    ctx = ctx_xy()
    x = gen(ctx, "x1")
    one = TensorElt.unit(ctx)
    assert coproduct(x) == sq(x, one) + sq(one, x)


def test_coproduct_is_algebra_map():
    rng = random.Random(23)
    ctx = ctx_xy(4)
    for _ in range(10):
        a = random_elt(ctx, rng)
        b = random_elt(ctx, rng)
        assert coproduct(a * b) == sq_mul(coproduct(a), coproduct(b))


def test_coproduct_counit_axiom():
    rng = random.Random(5)
    ctx = ctx_z3(4)
    for _ in range(10):
        a = random_elt(ctx, rng)
        cp = coproduct(a)
        left = TensorElt.zero(ctx)
        right = TensorElt.zero(ctx)
        for (lw, rw), c in cp.terms.items():
            if not lw:
                right = right + TensorElt.word(ctx, rw, c)
            if not rw:
                left = left + TensorElt.word(ctx, lw, c)
        assert left == a
        assert right == a


def test_antipode_reverses_words():
    ctx = ctx_xy()
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert antipode(x * y) == y * x
    assert antipode(x) == -x
    assert antipode(x * y * x) == -(x * y * x)


def test_antipode_antihomomorphism_and_involution():
    rng = random.Random(17)
    ctx = ctx_xy(4)
    for _ in range(10):
        a = random_elt(ctx, rng)
        b = random_elt(ctx, rng)
        assert antipode(a * b) == antipode(b) * antipode(a)
        assert antipode(antipode(a)) == a


def test_antipode_convolution_inverse():
    # m (S (x) id) coproduct = unit counit
    rng = random.Random(29)
    ctx = ctx_xy(4)
    for _ in range(8):
        a = random_elt(ctx, rng)
        out = TensorElt.zero(ctx)
        for (lw, rw), c in coproduct(a).terms.items():
            out = out + c * (antipode(TensorElt.word(ctx, lw)) * TensorElt.word(ctx, rw))
        assert out == counit(a) * TensorElt.unit(ctx)


def test_counit():
    ctx = ctx_xy()
    x = gen(ctx, "x1")
    assert counit(x) == 0
    assert counit(TensorElt.unit(ctx)) == 1
    assert counit(3 * TensorElt.unit(ctx) + x) == 3


def test_lie_bracket_commutator():
    ctx = ctx_xy()
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert lie_bracket(x, y) == x * y - y * x


def test_lie_bracket_jacobi_random():
    rng = random.Random(41)
    ctx = ctx_z3(4)
    for _ in range(10):
        a = random_elt(ctx, rng)
        b = random_elt(ctx, rng)
        c = random_elt(ctx, rng)
        s = (
            lie_bracket(a, lie_bracket(b, c))
            + lie_bracket(b, lie_bracket(c, a))
            + lie_bracket(c, lie_bracket(a, b))
        )
        assert s == TensorElt.zero(ctx)


# ---------------------------------------------------------------------------
# exp, log-free group-likes, inverse


def test_exp_of_primitive_is_group_like():
    ctx = ctx_xy(5)
    x = gen(ctx, "x1")
    e = exp_truncated(x)
    assert is_group_like(e)
    assert coproduct(e) == sq(e, e)
    require_group_like(e)


def test_exp_coefficients():
    ctx = ctx_xy(4)
    x = gen(ctx, "x1")
    e = exp_truncated(x)
    assert e.homogeneous_part(3) == TensorElt.word(ctx, (0, 0, 0), Fraction(1, 6))
    assert e.homogeneous_part(0) == TensorElt.unit(ctx)


def test_exp_sum_of_primitives_group_like():
    ctx = ctx_xy(4)
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert is_group_like(exp_truncated(x + y))


def test_not_group_like():
    ctx = ctx_xy(4)
    x = gen(ctx, "x1")
    assert not is_group_like(x)
    assert not is_group_like(TensorElt.unit(ctx) + x * x)
    with pytest.raises(NotGroupLike):
        require_group_like(TensorElt.unit(ctx) + x * x)


def test_inverse():
    ctx = ctx_xy(5)
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    a = TensorElt.unit(ctx) + x + Fraction(1, 3) * y * x
    b = inverse(a)
    assert a * b == TensorElt.unit(ctx)
    assert b * a == TensorElt.unit(ctx)


def test_inverse_of_exp_is_exp_of_negative():
    ctx = ctx_xy(5)
    x = gen(ctx, "x1")
    assert inverse(exp_truncated(x)) == exp_truncated(-x)


def test_inverse_requires_unit_term():
    ctx = ctx_xy(4)
    x = gen(ctx, "x1")
    with pytest.raises(NonAugmentedInput):
        inverse(x)


# ---------------------------------------------------------------------------
# word counts and Lyndon bases against the oracles


@pytest.mark.parametrize(
    "degrees,D",
    [
        ([1, 1], 8),
        ([1, 1, 1], 6),
        ([1, 1, 2], 6),
        ([1, 2, 2, 3], 7),
    ],
)
def test_word_counts_match_oracle(degrees, D):
    names = ["g%d" % i for i in range(len(degrees))]
    alpha = Alphabet(names, degrees)
    want = oracles.word_counts(degrees, D)
    got = [sum(1 for _ in alpha.words_of_degree(d)) for d in range(D + 1)]
    assert got == want


@pytest.mark.parametrize(
    "degrees,D",
    [
        ([1, 1], 8),
        ([1, 1, 1], 6),
        ([1, 1, 2], 6),
        ([1, 1, 1, 1, 2, 2, 2], 5),
    ],
)
def test_lyndon_counts_match_witt_oracle(degrees, D):
    names = ["g%d" % i for i in range(len(degrees))]
    alpha = Alphabet(names, degrees)
    want = oracles.witt_dims(degrees, D)
    got = [len(lyndon_words(alpha, d)) for d in range(1, D + 1)]
    assert got == want


def test_lyndon_words_two_letters_degree_three():
    alpha = Alphabet(["x1", "y1"], [1, 1])
    words = lyndon_words(alpha, 3)
    assert len(words) == 2
    assert words == [(0, 0, 1), (0, 1, 1)]


def test_lyndon_basis_elements_expand():
    ctx = ctx_xy(4)
    basis = lyndon_basis(ctx.alphabet, 3, ctx)
    assert len(basis) == 2
    word, tree, elt = basis[0]
    assert word == (0, 0, 1)
    assert tree == lyndon_tree(word)
    assert elt == tree_expand(ctx, tree)
    # [x,[x,y]] = xxy - 2 xyx + yxx
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert elt == lie_bracket(x, lie_bracket(x, y))


def test_lyndon_basis_is_independent():
    # brute force: expand all basis elements of degree 4 and row reduce
    ctx = ctx_xy(4)
    basis = lyndon_basis(ctx.alphabet, 4, ctx)
    rows = [dict(elt.terms) for _, _, elt in basis]
    pivots = oracles._row_reduce(rows)
    assert len(pivots) == len(basis) == 3


def test_tree_expand_matches_oracle():
    degrees = [1, 1]
    for word in [(0, 1), (0, 0, 1), (0, 1, 1), (0, 0, 1, 1)]:
        tree = lyndon_tree(word)
        ctx = Context(Alphabet(["x1", "y1"], degrees), 5)
        got = dict(tree_expand(ctx, tree).terms)
        want = oracles.tree_expand(tree, degrees, 5)
        assert got == want


# ---------------------------------------------------------------------------
# cyclic words


def test_min_rotation():
    assert min_rotation((1, 0, 1)) == (0, 1, 1)
    assert min_rotation(()) == ()
    assert min_rotation((2, 1, 2, 1)) == (1, 2, 1, 2)


def test_min_rotation_is_rotation_invariant():
    rng = random.Random(2)
    for _ in range(40):
        word = tuple(rng.randrange(3) for _ in range(rng.randrange(1, 7)))
        k = rng.randrange(len(word))
        rotated = word[k:] + word[:k]
        assert min_rotation(word) == min_rotation(rotated)


def test_cyclic_projection_kills_commutators():
    # |ab - ba| = 0, checked exhaustively in low degree
    ctx = ctx_xy(5)
    words = [w for d in range(0, 6) for w in ctx.alphabet.words_of_degree(d)]
    for aw, bw in itertools.product(words, repeat=2):
        if ctx.alphabet.word_degree(aw) + ctx.alphabet.word_degree(bw) > 5:
            continue
        a = TensorElt.word(ctx, aw)
        b = TensorElt.word(ctx, bw)
        assert not cyclic_project(a * b - b * a)


def test_cyclic_projection_identifies_rotations():
    ctx = ctx_xy(5)
    a = TensorElt.word(ctx, (0, 1, 1))
    b = TensorElt.word(ctx, (1, 1, 0))
    assert cyclic_project(a) == cyclic_project(b)
    assert not cyclic_project(a - b)


def test_cyclic_text_and_lift():
    ctx = ctx_xy(5)
    cw = cyclic_project(TensorElt.word(ctx, (1, 0)))
    assert cw.text() == "|x1.y1|"
    assert cw.lift() == TensorElt.word(ctx, (0, 1))


# ---------------------------------------------------------------------------
# serialization and text


def test_tensor_json_round_trip():
    rng = random.Random(19)
    ctx = ctx_weighted(5)
    for _ in range(10):
        a = random_elt(ctx, rng)
        assert TensorElt.from_json(a.to_json(), ctx) == a


def test_cyclic_json_shape():
    ctx = ctx_xy(5)
    cw = cyclic_project(TensorElt.word(ctx, (0, 1), Fraction(3, 2)))
    blob = cw.to_json()
    assert blob["cyclic"] is True
    assert blob["terms"] == [{"word": ["x1", "y1"], "coeff": "3/2"}]


def test_json_rejects_other_bound():
    ctx = ctx_xy(5)
    a = TensorElt.gen(ctx, "x1")
    blob = a.to_json()
    with pytest.raises(ContextMismatch):
        TensorElt.from_json(blob, ctx_xy(4))


def test_text_formats():
    ctx = ctx_xy(5)
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    assert (x * y - y * x).text() == "x1.y1 - y1.x1"
    assert (-x).text() == "-x1"
    assert TensorElt.unit(ctx, Fraction(3, 2)).text() == "3/2"
    assert TensorElt.zero(ctx).text() == "0"


def test_sorted_terms_deterministic():
    ctx = ctx_xy(4)
    x = gen(ctx, "x1")
    y = gen(ctx, "y1")
    a = y + x + x * y
    terms = a.sorted_terms()
    assert [w for w, _ in terms] == [(0,), (1,), (0, 1)]
