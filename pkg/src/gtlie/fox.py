"""Fox derivatives, Fox pairings and quasi-derivations on the truncated
tensor algebra.

A one-sided Fox derivative is determined by its values on generators:
    left  d(ab) = d(a) eps(b) + a d(b)   =>  d(w1..wk) = w1..w_{k-1} d(wk)
    right d(ab) = d(a) b + eps(a) d(b)   =>  d(w1..wk) = d(w1) w2..wk

A Fox pairing is left Fox in the first slot and right Fox in the second,
so it is determined by its generator-pair table:
    rho(u1..um, v1..vn) = u1..u_{m-1} table(um, v1) v2..vn
and vanishes when either word is empty.

A quasi-derivation stores a generator table together with a Fox pairing
sigma and evaluates by splitting at the first letter:
    q(uv) = q(u) v + u q(v) - sigma(u, v),  q(1) = 0.
The value is independent of the split point (tested, not assumed).

Maps can optionally be twisted by an algebra endomorphism f, meaning the
bimodule structure runs through f:
    left  d(ab) = d(a) eps(b) + f(a) d(b)
and correspondingly for the right side and for pairings.
"""

from fractions import Fraction

from .core import TensorElt, antipode, _require_same
from .errors import IncompleteTable, WrongSide


class AlgebraMap:
    """Algebra endomorphism given by its values on generators."""

    def __init__(self, ctx, images):
        self.ctx = ctx
        self.images = {}
        for g, elt in images.items():
            gi = ctx.alphabet.index(g) if isinstance(g, str) else g
            _require_same(ctx, elt.ctx)
            self.images[gi] = elt
        self._word_cache = {(): TensorElt.unit(ctx)}

    @staticmethod
    def identity(ctx):
        return AlgebraMap(ctx, {i: TensorElt.word(ctx, (i,))
                                for i in range(len(ctx.alphabet))})

    def on_word(self, word):
        got = self._word_cache.get(word)
        if got is None:
            if word[0] not in self.images:
                raise IncompleteTable("no image for generator index %d"
                                      % word[0])
            got = self.images[word[0]] * self.on_word(word[1:])
            self._word_cache[word] = got
        return got

    def __call__(self, a):
        _require_same(self.ctx, a.ctx)
        out = TensorElt.zero(self.ctx)
        for w, c in a.terms.items():
            out = out + self.on_word(w).scale(c)
        return out


class FoxDerivative:
    """One-sided Fox derivative with generator table (optionally twisted)."""

    def __init__(self, ctx, side, table, twist=None):
        if side not in ("left", "right"):
            raise WrongSide("side must be 'left' or 'right'")
        self.ctx = ctx
        self.side = side
        self.table = {}
        for g, elt in table.items():
            gi = ctx.alphabet.index(g) if isinstance(g, str) else g
            _require_same(ctx, elt.ctx)
            self.table[gi] = elt
        self.twist = twist
        if twist is not None:
            _require_same(ctx, twist.ctx)

    def _value(self, gi):
        try:
            return self.table[gi]
        except KeyError:
            raise IncompleteTable("no table entry for generator index %d"
                                  % gi)

    def _carry(self, word):
        if self.twist is None:
            return TensorElt.word(self.ctx, word)
        return self.twist.on_word(word)

    def on_word(self, word):
        if not word:
            return TensorElt.zero(self.ctx)
        if self.side == "left":
            return self._carry(word[:-1]) * self._value(word[-1])
        return self._value(word[0]) * self._carry(word[1:])

    def __call__(self, a):
        _require_same(self.ctx, a.ctx)
        out = TensorElt.zero(self.ctx)
        for w, c in a.terms.items():
            out = out + self.on_word(w).scale(c)
        return out


def fox_eval(derivative, a):
    return derivative(a)


def transpose_fox(derivative):
    """S d S: swaps sides; table entry g -> -S(d(g))."""
    if derivative.twist is not None:
        raise WrongSide("transpose of a twisted derivative is not defined")
    other = "right" if derivative.side == "left" else "left"
    table = {g: -antipode(v) for g, v in derivative.table.items()}
    return FoxDerivative(derivative.ctx, other, table)


class FoxPairing:
    """Fox pairing given by its generator-pair table.

    exactness, when known by construction, is recorded in .certificate as
    ("tau", dL, dR) or ("inner", e); plain tables carry None.
    """

    def __init__(self, ctx, table, certificate=None, twist=None):
        self.ctx = ctx
        self.table = {}
        for (g, h), elt in table.items():
            gi = ctx.alphabet.index(g) if isinstance(g, str) else g
            hi = ctx.alphabet.index(h) if isinstance(h, str) else h
            _require_same(ctx, elt.ctx)
            self.table[(gi, hi)] = elt
        self.certificate = certificate
        self.twist = twist

    def _carry(self, word):
        if self.twist is None:
            return TensorElt.word(self.ctx, word)
        return self.twist.on_word(word)

    def on_words(self, aw, bw):
        if not aw or not bw:
            return TensorElt.zero(self.ctx)
        try:
            mid = self.table[(aw[-1], bw[0])]
        except KeyError:
            raise IncompleteTable("no table entry for generator pair"
                                  " (%d, %d)" % (aw[-1], bw[0]))
        if not mid:
            return TensorElt.zero(self.ctx)
        return self._carry(aw[:-1]) * mid * self._carry(bw[1:])

    def __call__(self, a, b):
        _require_same(self.ctx, a.ctx)
        _require_same(self.ctx, b.ctx)
        out = TensorElt.zero(self.ctx)
        for aw, ca in a.terms.items():
            if not aw:
                continue
            for bw, cb in b.terms.items():
                if not bw:
                    continue
                out = out + self.on_words(aw, bw).scale(ca * cb)
        return out

    def __neg__(self):
        return FoxPairing(self.ctx, {k: -v for k, v in self.table.items()})

    def __add__(self, other):
        _require_same(self.ctx, other.ctx)
        table = dict(self.table)
        for k, v in other.table.items():
            table[k] = table[k] + v if k in table else v
        return FoxPairing(self.ctx, table)

    def is_skew(self):
        t = transpose_pairing(self)
        keys = set(self.table) | set(t.table)
        zero = TensorElt.zero(self.ctx)
        return all(t.table.get(k, zero) == -self.table.get(k, zero)
                   for k in keys)


def pairing_eval(pairing, a, b):
    return pairing(a, b)


def transpose_pairing(rho):
    """rho^t(a, b) = S rho(S b, S a); on tables (g,h) -> S(table(h,g))."""
    if rho.twist is not None:
        raise WrongSide("transpose of a twisted pairing is not defined")
    table = {(g, h): antipode(v)
             for (h, g), v in rho.table.items()}
    cert = None
    if rho.certificate is not None:
        kind = rho.certificate[0]
        if kind == "tau":
            _, dL, dR = rho.certificate
            cert = ("tau", transpose_fox(dR), transpose_fox(dL))
        elif kind == "inner":
            cert = ("inner", antipode(rho.certificate[1]))
    return FoxPairing(rho.ctx, table, certificate=cert)


def make_exact_pairing(dL, dR):
    """tau(dL + dR)(a, b) = dL(a) D(b) + D(a) dR(b), as a table pairing."""
    if dL.side != "left":
        raise WrongSide("first derivative must be left-sided")
    if dR.side != "right":
        raise WrongSide("second derivative must be right-sided")
    _require_same(dL.ctx, dR.ctx)
    ctx = dL.ctx
    table = {}
    n = len(ctx.alphabet)
    for g in range(n):
        for h in range(n):
            gv = TensorElt.word(ctx, (g,))
            hv = TensorElt.word(ctx, (h,))
            table[(g, h)] = dL.on_word((g,)) * hv + gv * dR.on_word((h,))
    return FoxPairing(ctx, table, certificate=("tau", dL, dR))


def make_inner_pairing(e):
    """inner(e)(a, b) = D(a) e D(b)."""
    ctx = e.ctx
    table = {}
    n = len(ctx.alphabet)
    for g in range(n):
        for h in range(n):
            table[(g, h)] = (TensorElt.word(ctx, (g,)) * e
                             * TensorElt.word(ctx, (h,)))
    return FoxPairing(ctx, table, certificate=("inner", e))


class QuasiDerivation:
    """Quasi-derivation: generator table plus its pairing sigma.

    Evaluates by splitting at the first letter with
    q(uv) = q(u) v + u q(v) - sigma(u, v); split-independence is a
    consequence of sigma being a Fox pairing (covered by tests).
    """

    def __init__(self, ctx, table, sigma, certificate=None):
        _require_same(ctx, sigma.ctx)
        self.ctx = ctx
        self.table = {}
        for g, elt in table.items():
            gi = ctx.alphabet.index(g) if isinstance(g, str) else g
            _require_same(ctx, elt.ctx)
            self.table[gi] = elt
        self.sigma = sigma
        self.certificate = certificate
        self._cache = {(): TensorElt.zero(ctx)}

    def on_word(self, word):
        got = self._cache.get(word)
        if got is not None:
            return got
        if word[0] not in self.table:
            raise IncompleteTable("no table entry for generator index %d"
                                  % word[0])
        head, tail = word[0], word[1:]
        if not tail:
            got = self.table[head]
        else:
            hv = TensorElt.word(self.ctx, (head,))
            tv = TensorElt.word(self.ctx, tail)
            got = (self.table[head] * tv + hv * self.on_word(tail)
                   - self.sigma.on_words((head,), tail))
        self._cache[word] = got
        return got

    def __call__(self, a):
        _require_same(self.ctx, a.ctx)
        out = TensorElt.zero(self.ctx)
        for w, c in a.terms.items():
            out = out + self.on_word(w).scale(c)
        return out

    def is_skew(self):
        t = transpose_qder(self)
        keys = set(self.table) | set(t.table)
        zero = TensorElt.zero(self.ctx)
        return all(t.table.get(k, zero) == -self.table.get(k, zero)
                   for k in keys)


def qder_eval(q, a):
    return q(a)


def transpose_qder(q):
    """q^t = S q S; table g -> -S(q(g)), sigma -> sigma^t."""
    table = {g: -antipode(v) for g, v in q.table.items()}
    return QuasiDerivation(q.ctx, table, transpose_pairing(q.sigma))


def make_exact_qder(dL, dR):
    """mu(dL + dR) = dL + dR as a quasi-derivation with sigma = tau(dL+dR)."""
    sigma = make_exact_pairing(dL, dR)
    ctx = dL.ctx
    table = {g: dL.on_word((g,)) + dR.on_word((g,))
             for g in range(len(ctx.alphabet))}
    return QuasiDerivation(ctx, table, sigma, certificate=("mu", dL, dR))


def fox_D(ctx, side="left"):
    """The distinguished derivative D(a) = a - eps(a); Fox on both sides."""
    table = {i: TensorElt.word(ctx, (i,)) for i in range(len(ctx.alphabet))}
    return FoxDerivative(ctx, side, table)


def D_map(a):
    return a.aug()


# ---------------------------------------------------------------------------
# solving for two-sided derivatives

def solve_two_sided_derivatives(alphabet, N):
    """Basis of generator tables whose left and right closed-form
    evaluations agree on every word of degree <= N.

    Table entries are restricted to degree <= N - 1: degree-N entries are
    invisible to all constraints (any product with a nonempty word
    truncates away), so they would only add truncation artifacts.

    Returns a list of tables, each mapping generator index to TensorElt.
    """
    from .core import Context
    ctx = Context(alphabet, N)
    value_words = [w for w in alphabet.words_up_to(N - 1)]
    unknowns = [(g, w) for g in range(len(alphabet)) for w in value_words]
    col = {key: i for i, key in enumerate(unknowns)}

    rows = []
    deg = alphabet.word_degree
    for word in alphabet.words_up_to(N):
        if len(word) < 2:
            continue
        # prefix * T(last) - T(first) * suffix = 0
        prefix, last = word[:-1], word[-1]
        first, suffix = word[0], word[1:]
        dpre, dsuf = deg(prefix), deg(suffix)
        row = {}
        for w in value_words:
            if dpre + deg(w) <= N:
                key = (prefix + w, col[(last, w)])
                nc = row.get(key, Fraction(0)) + 1
                if nc:
                    row[key] = nc
                else:
                    del row[key]
        for w in value_words:
            if deg(w) + dsuf <= N:
                key = (w + suffix, col[(first, w)])
                nc = row.get(key, Fraction(0)) - 1
                if nc:
                    row[key] = nc
                else:
                    del row[key]
        # reindex rows by (result word, unknown) -> coefficient matrix rows
        byword = {}
        for (rw, ci), c in row.items():
            byword.setdefault(rw, {})[ci] = c
        rows.extend(byword.values())

    # eliminate: find the nullspace of the stacked rows
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            key = min(row)
            if key in pivots:
                prow = pivots[key]
                factor = row[key]
                for k, v in prow.items():
                    nv = row.get(k, Fraction(0)) - factor * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                inv = Fraction(1) / row[key]
                pivots[key] = {k: v * inv for k, v in row.items()}
                break
    free_cols = [i for i in range(len(unknowns)) if i not in pivots]
    basis = []
    for fc in free_cols:
        vec = {fc: Fraction(1)}
        for pc in sorted(pivots, reverse=True):
            s = sum(v * vec.get(k, Fraction(0))
                    for k, v in pivots[pc].items() if k != pc)
            if s:
                vec[pc] = -s
        table = {}
        for g in range(len(alphabet)):
            terms = {}
            for w in value_words:
                cval = vec.get(col[(g, w)], Fraction(0))
                if cval:
                    terms[w] = cval
            table[g] = TensorElt(ctx, terms)
        basis.append(table)
    return basis
