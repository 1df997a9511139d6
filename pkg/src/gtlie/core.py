"""Truncated free tensor algebra with its Hopf structure, exact rationals.

Words are tuples of generator indices into a weighted alphabet; an element
is a finite rational combination of words of weighted degree at most N.
Every element carries its Context (alphabet + N) and operations refuse to
mix contexts. Coefficients are fractions.Fraction throughout; floating
point never appears.
"""

from fractions import Fraction

from .errors import (ContextMismatch, NonAugmentedInput, NonGeneratorWord,
                     InhomogeneousInput, NotGroupLike)


class Alphabet:
    """Ordered generator names with positive integer degrees."""

    def __init__(self, names, degrees):
        names = tuple(names)
        degrees = tuple(int(d) for d in degrees)
        if len(names) != len(degrees):
            raise ValueError("one degree per name")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        if any(d < 1 for d in degrees):
            raise ValueError("degrees must be positive")
        self.names = names
        self.degrees = degrees
        self._index = {s: i for i, s in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise NonGeneratorWord("unknown generator %r" % (name,))

    def word_degree(self, word):
        return sum(self.degrees[i] for i in word)

    def words_of_degree(self, d):
        """All words of weighted degree exactly d, lexicographic order."""
        if d == 0:
            yield ()
            return
        for i, gd in enumerate(self.degrees):
            if gd <= d:
                for tail in self.words_of_degree(d - gd):
                    yield (i,) + tail

    def words_up_to(self, D):
        for d in range(D + 1):
            yield from self.words_of_degree(d)

    def word_name(self, word):
        return ".".join(self.names[i] for i in word) if word else "1"

    def __eq__(self, other):
        return (isinstance(other, Alphabet) and self.names == other.names
                and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        return "Alphabet(%r)" % (list(zip(self.names, self.degrees)),)


class Context:
    """Alphabet plus truncation bound N; carried by every element."""

    def __init__(self, alphabet, N):
        if N < 0:
            raise ValueError("N must be >= 0")
        self.alphabet = alphabet
        self.N = int(N)

    def with_bound(self, N):
        return Context(self.alphabet, N)

    def __eq__(self, other):
        return (isinstance(other, Context) and self.alphabet == other.alphabet
                and self.N == other.N)

    def __hash__(self):
        return hash((self.alphabet, self.N))

    def __repr__(self):
        return "Context(%r, N=%d)" % (self.alphabet, self.N)


def _require_same(ctx1, ctx2):
    if ctx1 != ctx2:
        raise ContextMismatch("%r vs %r" % (ctx1, ctx2))


def _clean(terms):
    return {w: c for w, c in terms.items() if c}


class TensorElt:
    """Element of the degree-truncated tensor algebra."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = _clean(terms) if terms else {}

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(ctx):
        return TensorElt(ctx)

    @staticmethod
    def unit(ctx, coeff=1):
        return TensorElt(ctx, {(): Fraction(coeff)})

    @staticmethod
    def word(ctx, word, coeff=1):
        word = tuple(word)
        if ctx.alphabet.word_degree(word) > ctx.N:
            return TensorElt(ctx)
        return TensorElt(ctx, {word: Fraction(coeff)})

    @staticmethod
    def gen(ctx, name):
        return TensorElt.word(ctx, (ctx.alphabet.index(name),))

    # -- linear structure --------------------------------------------------
    def __add__(self, other):
        _require_same(self.ctx, other.ctx)
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = out.get(w, Fraction(0)) + c
            if nc:
                out[w] = nc
            else:
                del out[w]
        return TensorElt(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElt(self.ctx, {w: -c for w, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TensorElt(self.ctx)
        return TensorElt(self.ctx, {w: cc * c for w, cc in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        _require_same(self.ctx, other.ctx)
        deg = self.ctx.alphabet.word_degree
        N = self.ctx.N
        out = {}
        for w1, c1 in self.terms.items():
            d1 = deg(w1)
            for w2, c2 in other.terms.items():
                if d1 + deg(w2) > N:
                    continue
                w = w1 + w2
                nc = out.get(w, Fraction(0)) + c1 * c2
                if nc:
                    out[w] = nc
                else:
                    del out[w]
        return TensorElt(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        return (isinstance(other, TensorElt) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- structure maps ----------------------------------------------------
    def counit(self):
        return self.terms.get((), Fraction(0))

    def aug(self):
        """Kernel-of-counit part: a - eps(a) 1 (the map D)."""
        out = dict(self.terms)
        out.pop((), None)
        return TensorElt(self.ctx, out)

    def degree(self):
        """Top weighted degree of the support (None for zero)."""
        if not self.terms:
            return None
        deg = self.ctx.alphabet.word_degree
        return max(deg(w) for w in self.terms)

    def min_degree(self):
        if not self.terms:
            return None
        deg = self.ctx.alphabet.word_degree
        return min(deg(w) for w in self.terms)

    def is_homogeneous(self):
        return len({self.ctx.alphabet.word_degree(w)
                    for w in self.terms}) <= 1

    def homogeneous_part(self, d):
        deg = self.ctx.alphabet.word_degree
        return TensorElt(self.ctx,
                         {w: c for w, c in self.terms.items() if deg(w) == d})

    def truncate(self, N):
        """Reinterpret in a context with bound N, dropping high terms."""
        ctx = self.ctx.with_bound(N)
        deg = self.ctx.alphabet.word_degree
        return TensorElt(ctx, {w: c for w, c in self.terms.items()
                               if deg(w) <= N})

    # -- printing / serialization ------------------------------------------
    def sorted_terms(self):
        deg = self.ctx.alphabet.word_degree
        return sorted(self.terms.items(), key=lambda wc: (deg(wc[0]), wc[0]))

    def text(self):
        if not self.terms:
            return "0"
        names = self.ctx.alphabet.word_name
        parts = []
        for w, c in self.sorted_terms():
            mag = abs(c)
            word = names(w)
            if word == "1":
                body = str(mag)
            elif mag == 1:
                body = word
            else:
                body = "%s*%s" % (mag, word)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self):
        names = self.ctx.alphabet.names
        return {"max_degree": self.ctx.N,
                "terms": [{"word": [names[i] for i in w], "coeff": str(c)}
                          for w, c in self.sorted_terms()]}

    @staticmethod
    def from_json(data, ctx):
        if data.get("max_degree") != ctx.N:
            raise ContextMismatch("max_degree %r != %d"
                                  % (data.get("max_degree"), ctx.N))
        idx = ctx.alphabet.index
        terms = {}
        for t in data["terms"]:
            w = tuple(idx(s) for s in t["word"])
            terms[w] = terms.get(w, Fraction(0)) + Fraction(t["coeff"])
        return TensorElt(ctx, terms)

    def __repr__(self):
        return "<%s>" % self.text()


class TensorSq:
    """Element of the (truncated) tensor square A (x) A."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = _clean(terms) if terms else {}

    @staticmethod
    def zero(ctx):
        return TensorSq(ctx)

    def __add__(self, other):
        _require_same(self.ctx, other.ctx)
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, Fraction(0)) + c
            if nc:
                out[k] = nc
            else:
                del out[k]
        return TensorSq(self.ctx, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorSq(self.ctx, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TensorSq(self.ctx)
        return TensorSq(self.ctx, {k: cc * c for k, cc in self.terms.items()})

    def swap(self):
        """The flip map P(u (x) v) = v (x) u."""
        return TensorSq(self.ctx,
                        {(w2, w1): c for (w1, w2), c in self.terms.items()})

    def mult(self):
        """Multiply the two legs together."""
        deg = self.ctx.alphabet.word_degree
        N = self.ctx.N
        out = {}
        for (w1, w2), c in self.terms.items():
            if deg(w1) + deg(w2) > N:
                continue
            w = w1 + w2
            nc = out.get(w, Fraction(0)) + c
            if nc:
                out[w] = nc
            else:
                del out[w]
        return TensorElt(self.ctx, out)

    def left_mul(self, elt):
        """(a (x) b) -> (x a (x) b) for x = elt."""
        return self._leg_mul(elt, 0, left=True)

    def right_mul(self, elt):
        """(a (x) b) -> (a (x) b x)."""
        return self._leg_mul(elt, 1, left=False)

    def _leg_mul(self, elt, leg, left):
        _require_same(self.ctx, elt.ctx)
        deg = self.ctx.alphabet.word_degree
        N = self.ctx.N
        out = {}
        for (w1, w2), c in self.terms.items():
            base = deg(w1) + deg(w2)
            for w, ce in elt.terms.items():
                if base + deg(w) > N:
                    continue
                if leg == 0:
                    key = ((w + w1) if left else (w1 + w), w2)
                else:
                    key = (w1, (w + w2) if left else (w2 + w))
                nc = out.get(key, Fraction(0)) + c * ce
                if nc:
                    out[key] = nc
                else:
                    del out[key]
        return TensorSq(self.ctx, out)

    def __eq__(self, other):
        return (isinstance(other, TensorSq) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        deg = self.ctx.alphabet.word_degree
        return sorted(self.terms.items(),
                      key=lambda kc: (deg(kc[0][0]) + deg(kc[0][1]), kc[0]))

    def text(self):
        if not self.terms:
            return "0"
        names = self.ctx.alphabet.word_name
        parts = []
        for (w1, w2), c in self.sorted_terms():
            mag = abs(c)
            body = "%s (x) %s" % (names(w1), names(w2))
            if mag != 1:
                body = "%s*(%s)" % (mag, body)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self):
        names = self.ctx.alphabet.names
        return {"max_degree": self.ctx.N,
                "terms": [{"left": [names[i] for i in w1],
                           "right": [names[i] for i in w2],
                           "coeff": str(c)}
                          for (w1, w2), c in self.sorted_terms()]}

    def __repr__(self):
        return "<%s>" % self.text()


# ---------------------------------------------------------------------------
# Hopf structure

def product(a, b):
    return a * b


def _splits(word):
    """All order-preserving two-way splittings of a word."""
    out = [((), ())]
    for letter in word:
        nxt = []
        for l, r in out:
            nxt.append((l + (letter,), r))
            nxt.append((l, r + (letter,)))
        out = nxt
    return out


_SPLIT_CACHE = {}


def word_splits(word):
    got = _SPLIT_CACHE.get(word)
    if got is None:
        got = _splits(word)
        if len(word) <= 12:
            _SPLIT_CACHE[word] = got
    return got


def coproduct(a):
    """Shuffle-style coproduct: generators are primitive."""
    out = {}
    for w, c in a.terms.items():
        for l, r in word_splits(w):
            key = (l, r)
            nc = out.get(key, Fraction(0)) + c
            if nc:
                out[key] = nc
            else:
                del out[key]
    return TensorSq(a.ctx, out)


def antipode_word(word):
    """(sign, reversed word) for the antipode on one word."""
    return (-1) ** len(word), word[::-1]


def antipode(a):
    out = {}
    for w, c in a.terms.items():
        sign, rw = antipode_word(w)
        nc = out.get(rw, Fraction(0)) + sign * c
        if nc:
            out[rw] = nc
        else:
            del out[rw]
    return TensorElt(a.ctx, out)


def counit(a):
    return a.counit()


def lie_bracket(a, b):
    return a * b - b * a


def exp_truncated(a):
    """exp of an element with counit zero."""
    if a.counit():
        raise NonAugmentedInput("exp needs counit zero")
    out = TensorElt.unit(a.ctx)
    power = TensorElt.unit(a.ctx)
    fact = Fraction(1)
    for k in range(1, a.ctx.N + 1):
        power = power * a
        if not power:
            break
        fact *= k
        out = out + power.scale(Fraction(1, 1) / fact)
    return out


def inverse(a):
    """Multiplicative inverse, for counit-invertible elements."""
    c = a.counit()
    if not c:
        raise NonAugmentedInput("element with counit zero is not invertible")
    u = TensorElt.unit(a.ctx) - a.scale(Fraction(1) / c)
    out = TensorElt.unit(a.ctx)
    power = TensorElt.unit(a.ctx)
    for k in range(1, a.ctx.N + 1):
        power = power * u
        if not power:
            break
        out = out + power
    return out.scale(Fraction(1) / c)


def is_group_like(a):
    """Coproduct x (x) x and counit 1, compared inside the truncation."""
    if a.counit() != 1:
        return False
    deg = a.ctx.alphabet.word_degree
    want = {}
    for w1, c1 in a.terms.items():
        d1 = deg(w1)
        for w2, c2 in a.terms.items():
            if d1 + deg(w2) > a.ctx.N:
                continue
            key = (w1, w2)
            nc = want.get(key, Fraction(0)) + c1 * c2
            if nc:
                want[key] = nc
            else:
                del want[key]
    return coproduct(a).terms == want


def require_group_like(a):
    if not is_group_like(a):
        raise NotGroupLike("element is not group-like to degree %d" % a.ctx.N)


# ---------------------------------------------------------------------------
# Lyndon words and the free Lie basis

def _duval(n_letters, maxlen):
    """Lyndon words over 0..n_letters-1 of length <= maxlen (Duval)."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()


def lyndon_words(alphabet, d):
    """Lyndon words of weighted degree exactly d, lexicographic order."""
    out = [w for w in _duval(len(alphabet), d)
           if alphabet.word_degree(w) == d]
    out.sort()
    return out


def standard_factorization(word):
    """Standard split w = u v of a Lyndon word: v is the longest proper
    suffix that is itself Lyndon, equivalently the lexicographically least
    proper suffix."""
    best = None
    for i in range(1, len(word)):
        suf = word[i:]
        if best is None or suf < best[1]:
            best = (word[:i], suf)
    return best


def lyndon_tree(word):
    """Standard bracketing of a Lyndon word as a nested tuple tree."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (lyndon_tree(u), lyndon_tree(v))


def tree_expand(ctx, tree):
    """Expand a bracket tree into the tensor algebra."""
    if isinstance(tree, int):
        return TensorElt.word(ctx, (tree,))
    return lie_bracket(tree_expand(ctx, tree[0]), tree_expand(ctx, tree[1]))


def lyndon_basis(alphabet, d, ctx=None):
    """Ordered (word, tree, expansion) triples for degree-d Lie basis."""
    if ctx is None:
        ctx = Context(alphabet, d)
    out = []
    for w in lyndon_words(alphabet, d):
        tree = lyndon_tree(w)
        out.append((w, tree, tree_expand(ctx, tree)))
    return out


# ---------------------------------------------------------------------------
# cyclic words

def min_rotation(word):
    if len(word) <= 1:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


class CyclicElt:
    """Rational combination of cyclic words (words modulo rotation)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None, canonical=False):
        self.ctx = ctx
        if not terms:
            self.terms = {}
        elif canonical:
            self.terms = _clean(terms)
        else:
            out = {}
            for w, c in terms.items():
                k = min_rotation(w)
                nc = out.get(k, Fraction(0)) + c
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
            self.terms = out

    @staticmethod
    def zero(ctx):
        return CyclicElt(ctx)

    def __add__(self, other):
        _require_same(self.ctx, other.ctx)
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = out.get(w, Fraction(0)) + c
            if nc:
                out[w] = nc
            else:
                del out[w]
        return CyclicElt(self.ctx, out, canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CyclicElt(self.ctx, {w: -c for w, c in self.terms.items()},
                         canonical=True)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return CyclicElt(self.ctx)
        return CyclicElt(self.ctx,
                         {w: cc * c for w, cc in self.terms.items()},
                         canonical=True)

    def __eq__(self, other):
        return (isinstance(other, CyclicElt) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def lift(self):
        """Canonical representative back in the tensor algebra."""
        return TensorElt(self.ctx, dict(self.terms))

    def sorted_terms(self):
        deg = self.ctx.alphabet.word_degree
        return sorted(self.terms.items(), key=lambda wc: (deg(wc[0]), wc[0]))

    def text(self):
        if not self.terms:
            return "0"
        names = self.ctx.alphabet.word_name
        parts = []
        for w, c in self.sorted_terms():
            mag = abs(c)
            body = "|%s|" % names(w)
            if mag != 1:
                body = "%s*%s" % (mag, body)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self):
        names = self.ctx.alphabet.names
        return {"max_degree": self.ctx.N, "cyclic": True,
                "terms": [{"word": [names[i] for i in w], "coeff": str(c)}
                          for w, c in self.sorted_terms()]}

    def __repr__(self):
        return "<%s>" % self.text()


class CyclicSq:
    """Combination of pairs of cyclic words (target of the cobracket)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None, canonical=False):
        self.ctx = ctx
        if not terms:
            self.terms = {}
        elif canonical:
            self.terms = _clean(terms)
        else:
            out = {}
            for (w1, w2), c in terms.items():
                k = (min_rotation(w1), min_rotation(w2))
                nc = out.get(k, Fraction(0)) + c
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
            self.terms = out

    @staticmethod
    def zero(ctx):
        return CyclicSq(ctx)

    def __add__(self, other):
        _require_same(self.ctx, other.ctx)
        out = dict(self.terms)
        for k, c in other.terms.items():
            nc = out.get(k, Fraction(0)) + c
            if nc:
                out[k] = nc
            else:
                del out[k]
        return CyclicSq(self.ctx, out, canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CyclicSq(self.ctx, {k: -c for k, c in self.terms.items()},
                        canonical=True)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return CyclicSq(self.ctx)
        return CyclicSq(self.ctx, {k: cc * c for k, cc in self.terms.items()},
                        canonical=True)

    def swap(self):
        return CyclicSq(self.ctx,
                        {(w2, w1): c for (w1, w2), c in self.terms.items()},
                        canonical=True)

    def __eq__(self, other):
        return (isinstance(other, CyclicSq) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        deg = self.ctx.alphabet.word_degree
        return sorted(self.terms.items(),
                      key=lambda kc: (deg(kc[0][0]) + deg(kc[0][1]), kc[0]))

    def text(self):
        if not self.terms:
            return "0"
        names = self.ctx.alphabet.word_name
        parts = []
        for (w1, w2), c in self.sorted_terms():
            mag = abs(c)
            body = "|%s| (x) |%s|" % (names(w1), names(w2))
            if mag != 1:
                body = "%s*(%s)" % (mag, body)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self):
        names = self.ctx.alphabet.names
        return {"max_degree": self.ctx.N, "cyclic": True,
                "terms": [{"left": [names[i] for i in w1],
                           "right": [names[i] for i in w2],
                           "coeff": str(c)}
                          for (w1, w2), c in self.sorted_terms()]}

    def __repr__(self):
        return "<%s>" % self.text()


def cyclic_project(a):
    """|.| : A -> A / [A, A] cyclic quotient."""
    return CyclicElt(a.ctx, a.terms)
