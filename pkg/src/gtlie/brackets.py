"""Bracket and cobracket on cyclic words, induced by Fox pairings and
quasi-derivations.

The double bracket of a Fox pairing rho is, in Sweedler notation,

    {{a, b}} = b' S(rho(a'', b'')') a'  (x)  rho(a'', b'')''

The induced bracket on cyclic words multiplies the two legs and projects:

    [|a|, |b|] = | b' S(rho(a'', b'')') a' rho(a'', b'')'' |

The map d_q of a quasi-derivation q is

    d_q(a) = a' S(q(a'')')  (x)  q(a'')''

and the cobracket on cyclic words is delta_q = (|.| (x) |.|)(d_q + P d_{q^t}).

Besides the definitional forms, this module carries a collapsed
rotation-sum formula for the bracket of two single cyclic words; it is the
same map (the test suite compares the two on exhaustive low-degree sweeps
and on random pairings) and is much faster, which the verification sweeps
rely on.
"""

from fractions import Fraction

from .core import (TensorElt, TensorSq, CyclicElt, CyclicSq, coproduct,
                   antipode_word, min_rotation, word_splits, cyclic_project,
                   _require_same)
from .fox import transpose_qder


def double_bracket(rho, a, b):
    """{{a, b}}^rho as an element of A (x) A."""
    ctx = rho.ctx
    _require_same(ctx, a.ctx)
    _require_same(ctx, b.ctx)
    deg = ctx.alphabet.word_degree
    N = ctx.N
    out = {}
    for aw, ca in a.terms.items():
        for a1, a2 in word_splits(aw):
            if not a2:
                continue
            for bw, cb in b.terms.items():
                cab = ca * cb
                for b1, b2 in word_splits(bw):
                    if not b2:
                        continue
                    mid = rho.on_words(a2, b2)
                    if not mid:
                        continue
                    d_pre = deg(b1) + deg(a1)
                    for mw, cm in mid.terms.items():
                        for m1, m2 in word_splits(mw):
                            sign, rm1 = antipode_word(m1)
                            left = b1 + rm1 + a1
                            if d_pre + deg(mw) > N:
                                continue
                            key = (left, m2)
                            nc = out.get(key, Fraction(0)) + cab * cm * sign
                            if nc:
                                out[key] = nc
                            else:
                                del out[key]
    return TensorSq(ctx, out)


def bracket_lift(rho, a, b):
    """Apply the bracket formula to lifts and project cyclically."""
    return cyclic_project(double_bracket(rho, a, b).mult())


def bracket_cyclic(rho, ca, cb):
    """[|a|, |b|]^rho on cyclic elements (canonical lifts)."""
    return bracket_lift(rho, ca.lift(), cb.lift())


def dq_map(q, a):
    """d_q(a) = a' S(q(a'')') (x) q(a'')''."""
    ctx = q.ctx
    _require_same(ctx, a.ctx)
    deg = ctx.alphabet.word_degree
    N = ctx.N
    out = {}
    for aw, ca in a.terms.items():
        for a1, a2 in word_splits(aw):
            val = q.on_word(a2) if a2 else None
            if not val:
                continue
            d1 = deg(a1)
            for vw, cv in val.terms.items():
                if d1 + deg(vw) > N:
                    continue
                for v1, v2 in word_splits(vw):
                    sign, rv1 = antipode_word(v1)
                    key = (a1 + rv1, v2)
                    nc = out.get(key, Fraction(0)) + ca * cv * sign
                    if nc:
                        out[key] = nc
                    else:
                        del out[key]
    return TensorSq(ctx, out)


def cobracket_lift(q, a):
    """(|.| (x) |.|)(d_q + P d_{q^t}) applied to a lift a."""
    dq = dq_map(q, a)
    dqt = dq_map(transpose_qder(q), a)
    total = dq + dqt.swap()
    return CyclicSq(q.ctx, total.terms)


def cobracket_cyclic(q, ca):
    return cobracket_lift(q, ca.lift())


# ---------------------------------------------------------------------------
# collapsed single-word fast paths

class BracketFast:
    """Rotation-sum evaluator for [|u|, |v|]^rho on word pairs.

    For words u, v the bracket collapses to

        sum_{i,j} | vrot_j . S(rho(u_i, v_j)') . urot_i . rho(u_i, v_j)'' |

    with urot_i = u_{i+1}..u_m u_1..u_{i-1} and likewise vrot_j. The
    per-table-entry antipode splits are precomputed once.
    """

    def __init__(self, rho):
        self.rho = rho
        self.ctx = rho.ctx
        self.deg = self.ctx.alphabet.word_degree
        self._entry = {}

    def _entry_splits(self, g, h):
        got = self._entry.get((g, h))
        if got is None:
            got = []
            val = self.rho.on_words((g,), (h,))
            for w, c in val.terms.items():
                for w1, w2 in word_splits(w):
                    sign, rw1 = antipode_word(w1)
                    got.append((c * sign, rw1, w2))
            self._entry[(g, h)] = got
        return got

    def on_words(self, u, v, out=None, coeff=Fraction(1)):
        """Accumulate [|u|, |v|] into the dict out (word -> coeff)."""
        if out is None:
            out = {}
        N = self.ctx.N
        deg = self.deg
        du = deg(u)
        dv = deg(v)
        for i, gi in enumerate(u):
            urot = u[i + 1:] + u[:i]
            dpre = du - deg((gi,)) + dv
            for j, hj in enumerate(v):
                entries = self._entry_splits(gi, hj)
                if not entries:
                    continue
                vrot = v[j + 1:] + v[:j]
                base = dpre - deg((hj,))
                for c, rw1, w2 in entries:
                    if base + deg(rw1) + deg(w2) > N:
                        continue
                    word = min_rotation(vrot + rw1 + urot + w2)
                    nc = out.get(word, Fraction(0)) + coeff * c
                    if nc:
                        out[word] = nc
                    else:
                        del out[word]
        return out

    def cyclic(self, u, v):
        return CyclicElt(self.ctx, self.on_words(u, v), canonical=True)

    def on_cyclic(self, ca, cb):
        out = {}
        for u, cu in ca.terms.items():
            for v, cv in cb.terms.items():
                self.on_words(u, v, out, cu * cv)
        return CyclicElt(self.ctx, out, canonical=True)


class CobracketFast:
    """Cobracket evaluator with cached q-values, one cyclic word at a time."""

    def __init__(self, q):
        self.q = q
        self.qt = transpose_qder(q)
        self.ctx = q.ctx

    def on_word(self, w):
        lift = TensorElt.word(self.ctx, w)
        return cobracket_lift(self.q, lift)

    def on_cyclic(self, ca):
        out = CyclicSq.zero(self.ctx)
        for w, c in ca.terms.items():
            out = out + self.on_word(w).scale(c)
        return out


def adjoint_action(fast, ca, pair):
    """a . (u (x) v) = [a,u] (x) v + u (x) [a,v] on cyclic tensor squares,
    with the bracket taken from the BracketFast evaluator."""
    ctx = fast.ctx
    out = {}
    for (u, v), c in pair.terms.items():
        for w, cw in ca.terms.items():
            left = fast.on_words(w, u)
            for rw, rc in left.items():
                key = (rw, v)
                nc = out.get(key, Fraction(0)) + c * cw * rc
                if nc:
                    out[key] = nc
                else:
                    del out[key]
            right = fast.on_words(w, v)
            for rw, rc in right.items():
                key = (u, rw)
                nc = out.get(key, Fraction(0)) + c * cw * rc
                if nc:
                    out[key] = nc
                else:
                    del out[key]
    return CyclicSq(ctx, out, canonical=True)
