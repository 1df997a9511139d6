"""Tests for relative cocycles, the extension bracket, and the defect
equations for maps carrying one Fox structure into another."""

import random
from fractions import Fraction

import pytest

from gtlie import (
    AlgebraMap,
    Alphabet,
    Context,
    ExtensionElement,
    FoxDerivative,
    FoxPairing,
    Framing,
    IncompatiblePair,
    QuasiDerivation,
    SurfaceContext,
    TensorElt,
    check_fox_morphism,
    check_relative_closed,
    e_functor,
    extension_bracket,
    exp_truncated,
    inverse,
    lie_bracket,
    make_inner_pairing,
    make_q_framing,
    make_rho_G,
    qder_eval,
)


def surface_pair(g=1, n=1, N=4, framing=None):
    ctx = SurfaceContext(g, n, N)
    if framing is None:
        framing = Framing.adapted()
    return ctx, make_q_framing(ctx, framing), make_rho_G(ctx)


def zero_pairing(ctx):
    z = TensorElt.zero(ctx)
    k = len(ctx.alphabet)
    return FoxPairing(ctx, {(i, j): z for i in range(k) for j in range(k)})


def zero_derivative(ctx, side):
    z = TensorElt.zero(ctx)
    return FoxDerivative(ctx, side,
                         {g: z for g in range(len(ctx.alphabet))})


# ---------------------------------------------------------------------------
# e_functor


def test_e_functor_omega_is_q():
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    for w in ctx.alphabet.words_up_to(3):
        a = TensorElt.word(ctx, w)
        assert z.omega(a) == qder_eval(q, a)


def test_e_functor_c_kills_left_diagonal():
    # both slots of c read off the opposite leg, so (x+0, y+0) pairs to zero
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    zero = TensorElt.zero(ctx)
    for name_a in ("x1", "y1", "z1"):
        for name_b in ("x1", "y1", "z1"):
            a = TensorElt.gen(ctx, name_a)
            b = TensorElt.gen(ctx, name_b)
            assert not z.c((a, zero), (b, zero))


def test_e_functor_c_alternating():
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    rng = random.Random(11)
    words = [w for w in ctx.alphabet.words_up_to(2) if w]
    for _ in range(12):
        v = (TensorElt.word(ctx, rng.choice(words)),
             TensorElt.word(ctx, rng.choice(words)))
        w = (TensorElt.word(ctx, rng.choice(words)),
             TensorElt.word(ctx, rng.choice(words)))
        assert not z.c(v, v)
        assert z.c(v, w) == -z.c(w, v)


def test_e_functor_rejects_mismatched_sigma():
    ctx, q, rho = surface_pair()
    with pytest.raises(IncompatiblePair):
        e_functor(q, make_inner_pairing(TensorElt.unit(ctx)))
    with pytest.raises(IncompatiblePair):
        e_functor(q, zero_pairing(ctx))


# ---------------------------------------------------------------------------
# closedness


def test_framing_cocycle_is_closed():
    for g, n, framing in [(1, 1, Framing.adapted()),
                          (0, 2, Framing.rotations((1, -2))),
                          (1, 1, Framing.rotations((2,)))]:
        ctx, q, rho = surface_pair(g, n, 4, framing)
        rep = check_relative_closed(e_functor(q, rho))
        assert rep, rep.witness


def test_zero_cocycle_is_closed():
    ctx = Context(Alphabet(["x1", "y1"], [1, 1]), 4)
    z = TensorElt.zero(ctx)
    q0 = QuasiDerivation(ctx, {0: z, 1: z}, zero_pairing(ctx))
    assert check_relative_closed(e_functor(q0, zero_pairing(ctx)))


def test_unmatched_sigma_fails_closedness():
    # claim c = 0 next to a q whose product law inserts rho_G: the pair
    # equation picks up rho(x1, y1) - rho(y1, x1) != 0
    ctx, q, rho = surface_pair()
    from gtlie import RelativeCocycle
    rep = check_relative_closed(RelativeCocycle(ctx, q, zero_pairing(ctx)))
    assert not rep
    assert rep.witness["check"] == "pair"
    assert rep.witness["value"] != "0"


def test_closedness_report_repr():
    ctx, q, rho = surface_pair()
    ok = check_relative_closed(e_functor(q, rho))
    assert "closed" in repr(ok)


# ---------------------------------------------------------------------------
# module action and extension bracket


def act(pair, a):
    return pair[0] * a - a * pair[1]


def test_pair_action_is_a_lie_action():
    ctx = Context(Alphabet(["x1", "y1"], [1, 1]), 5)
    rng = random.Random(23)
    words = [w for w in ctx.alphabet.words_up_to(1) if w]

    def rand():
        return TensorElt.word(ctx, rng.choice(words), rng.randint(-2, 2))

    for _ in range(10):
        p = (rand(), rand())
        r = (rand(), rand())
        a = TensorElt.word(ctx, rng.choice(words))
        lhs = act(p, act(r, a)) - act(r, act(p, a))
        rhs = act((lie_bracket(p[0], r[0]), lie_bracket(p[1], r[1])), a)
        assert lhs == rhs


def test_extension_bracket_action_term():
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    zero = TensorElt.zero(ctx)
    x = TensorElt.gen(ctx, "x1")
    a = TensorElt.word(ctx, (ctx.x(1), ctx.y(1)))
    u = ExtensionElement((x, zero), zero)
    v = ExtensionElement((zero, zero), a)
    got = extension_bracket(z, u, v)
    assert not got.pair[0] and not got.pair[1]
    assert got.tail == x * a
    assert extension_bracket(z, v, u).tail == -(x * a)


def test_extension_bracket_abelian_kernel():
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    zero = TensorElt.zero(ctx)
    one = TensorElt.unit(ctx)
    u = ExtensionElement((zero, zero), one)
    assert not extension_bracket(z, u, u)


def test_extension_bracket_antisymmetric():
    ctx, q, rho = surface_pair()
    z = e_functor(q, rho)
    rng = random.Random(5)
    words = [w for w in ctx.alphabet.words_up_to(1) if w]

    def rand_ext():
        return ExtensionElement(
            (TensorElt.word(ctx, rng.choice(words), rng.randint(-2, 2)),
             TensorElt.word(ctx, rng.choice(words), rng.randint(-2, 2))),
            TensorElt.word(ctx, rng.choice(words), rng.randint(-2, 2)))

    for _ in range(8):
        u, v = rand_ext(), rand_ext()
        assert extension_bracket(z, u, v) == -extension_bracket(z, v, u)


def test_extension_bracket_jacobi():
    ctx, q, rho = surface_pair(1, 1, 4)
    z = e_functor(q, rho)
    zero = TensorElt.zero(ctx)
    x = TensorElt.gen(ctx, "x1")
    y = TensorElt.gen(ctx, "y1")
    elts = [
        ExtensionElement((x, zero), TensorElt.unit(ctx)),
        ExtensionElement((y, x), zero),
        ExtensionElement((lie_bracket(x, y), y), x),
    ]
    for u in elts:
        for v in elts:
            for w in elts:
                total = (extension_bracket(z, extension_bracket(z, u, v), w)
                         + extension_bracket(z, extension_bracket(z, v, w), u)
                         + extension_bracket(z, extension_bracket(z, w, u), v))
                assert not total


# ---------------------------------------------------------------------------
# the defect equations


def test_fox_morphism_identity():
    ctx, q, rho = surface_pair()
    f = AlgebraMap.identity(ctx)
    assert check_fox_morphism(f, zero_derivative(ctx, "left"),
                              zero_derivative(ctx, "right"),
                              (q, rho), (q, rho), D_max=3)


def test_fox_morphism_rejects_perturbed_target():
    ctx, q, rho = surface_pair()
    f = AlgebraMap.identity(ctx)
    table = dict(q.table)
    x1 = ctx.x(1)
    table[x1] = table[x1] + TensorElt.word(ctx, (x1,))
    q2 = QuasiDerivation(ctx, table, q.sigma)
    assert not check_fox_morphism(f, zero_derivative(ctx, "left"),
                                  zero_derivative(ctx, "right"),
                                  (q, rho), (q2, rho), D_max=3)


def conjugation_morphism(ctx, q, rho, x):
    """The defect derivatives that exhibit conjugation by group-like x as
    a map carrying (q, rho) to itself."""
    xinv = inverse(x)
    images = {}
    for gi in range(len(ctx.alphabet)):
        images[gi] = xinv * TensorElt.word(ctx, (gi,)) * x
    h = AlgebraMap(ctx, images)
    w1 = -(xinv * qder_eval(q, x))
    w2 = -(qder_eval(q, xinv) * x)
    tl = {}
    tr = {}
    for gi in range(len(ctx.alphabet)):
        g = TensorElt.word(ctx, (gi,))
        tl[gi] = h(rho(g, xinv)) + h(g) * w1
        tr[gi] = h(rho(x, g)) + w2 * h(g)
    dL = FoxDerivative(ctx, "left", tl, twist=h)
    dR = FoxDerivative(ctx, "right", tr, twist=h)
    return h, dL, dR


def test_fox_morphism_conjugation():
    # a pairing whose table values never lose degree keeps every product
    # below the truncation exact, so the defect equations close on the nose
    ctx = Context(Alphabet(["x1", "y1"], [1, 1]), 5)
    xy = TensorElt.word(ctx, (0, 1))
    yx = TensorElt.word(ctx, (1, 0))
    zero = TensorElt.zero(ctx)
    rho = FoxPairing(ctx, {(0, 0): zero, (0, 1): xy,
                           (1, 0): -yx, (1, 1): zero})
    sigma = FoxPairing(ctx, {k: -v for k, v in rho.table.items()})
    q = QuasiDerivation(ctx, {0: TensorElt.word(ctx, (0, 0)), 1: zero},
                        sigma)

    x = exp_truncated(TensorElt.gen(ctx, "x1").scale(Fraction(1, 2)))
    h, dL, dR = conjugation_morphism(ctx, q, rho, x)
    assert check_fox_morphism(h, dL, dR, (q, rho), (q, rho), D_max=3)


def test_fox_morphism_conjugation_wrong_derivatives():
    ctx = Context(Alphabet(["x1", "y1"], [1, 1]), 5)
    xy = TensorElt.word(ctx, (0, 1))
    zero = TensorElt.zero(ctx)
    rho = FoxPairing(ctx, {(0, 0): zero, (0, 1): xy,
                           (1, 0): -xy, (1, 1): zero})
    sigma = FoxPairing(ctx, {k: -v for k, v in rho.table.items()})
    q = QuasiDerivation(ctx, {0: zero, 1: zero}, sigma)

    x = exp_truncated(TensorElt.gen(ctx, "x1"))
    h, dL, dR = conjugation_morphism(ctx, q, rho, x)
    assert not check_fox_morphism(h, zero_derivative(ctx, "left"),
                                  zero_derivative(ctx, "right"),
                                  (q, rho), (q, rho), D_max=3)
