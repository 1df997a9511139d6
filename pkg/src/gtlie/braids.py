"""Finitely presented graded Lie algebras with exact degreewise normal forms.

A Lie element over a generator alphabet is a tuple of (coefficient, tree)
pairs, where a tree is a generator index or a nested pair of trees.  A
GradedPresentation holds homogeneous relations on its alphabet and
realizes the quotient degree by degree: the degree-d slice is spanned by
candidates [g, b] with g a generator and b a lower-degree basis element
(plus the bare degree-d generators), and the relation instances together
with antisymmetry and Jacobi instances are row-reduced over the
candidates with exact rational arithmetic.  Surviving candidates form
the quotient basis; normal_form projects any homogeneous element onto
it.

On top of the engine: the framed Drinfeld-Kohno algebras t_n^f and their
genus-g relatives t_{g,n}^f, the operadic strand insertion, splitting
and deletion maps between them, presented models of the kernels of
strand deletion, and verify_phi, which checks the identification of the
two-strand deletion kernel with an extension of a doubled free Lie
algebra by its enveloping algebra.
"""

import itertools
from fractions import Fraction

from .core import Alphabet, Context, TensorElt, lie_bracket, lyndon_words
from .cocycles import ExtensionElement
from .errors import IndexOutOfRange, InhomogeneousInput, NotSurjective
from .fox import FoxPairing

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# Lie elements over a generator alphabet

def tree_degree(alphabet, tree):
    if isinstance(tree, int):
        return alphabet.degrees[tree]
    return tree_degree(alphabet, tree[0]) + tree_degree(alphabet, tree[1])


def tree_text(alphabet, tree):
    if isinstance(tree, int):
        return alphabet.names[tree]
    return "[%s, %s]" % (tree_text(alphabet, tree[0]),
                         tree_text(alphabet, tree[1]))


def _tree_support(tree, out):
    if isinstance(tree, int):
        out.add(tree)
    else:
        _tree_support(tree[0], out)
        _tree_support(tree[1], out)


def lie_combine(pairs):
    """Collect (coefficient, tree) pairs into a canonical element."""
    acc = {}
    for c, t in pairs:
        c = Fraction(c)
        if not c:
            continue
        acc[t] = acc.get(t, _F0) + c
    return tuple((c, t) for t, c in acc.items() if c)


def lie_add(*elts):
    return lie_combine(itertools.chain.from_iterable(elts))


def lie_scale(elt, c):
    c = Fraction(c)
    return lie_combine((c * c0, t) for c0, t in elt)


def lie_br(a, b):
    return lie_combine((ca * cb, (ta, tb)) for ca, ta in a for cb, tb in b)


def lie_equal(a, b):
    return dict((t, c) for c, t in lie_combine(a)) == \
        dict((t, c) for c, t in lie_combine(b))


def elt_degree(alphabet, elt):
    """Common degree of a homogeneous element, None for zero."""
    d = None
    for _, t in elt:
        td = tree_degree(alphabet, t)
        if d is None:
            d = td
        elif d != td:
            raise InhomogeneousInput(
                "mixed degrees %d and %d in one element" % (d, td))
    return d


def elt_support(elt):
    out = set()
    for _, t in elt:
        _tree_support(t, out)
    return out


def lie_text(alphabet, elt):
    if not elt:
        return "0"
    out = []
    for c, t in elt:
        s = tree_text(alphabet, t)
        if abs(c) != 1:
            s = "%s*%s" % (abs(c), s)
        if not out:
            out.append("-" + s if c < 0 else s)
        else:
            out.append(("- " if c < 0 else "+ ") + s)
    return " ".join(out)


# ---------------------------------------------------------------------------
# sparse exact row reduction

def _rref(rows):
    """Reduced row echelon form of sparse rational rows.

    rows are dicts {column: value}.  Returns {pivot_column: row} with each
    row normalized to 1 at its pivot and reduced against all other pivots.
    """
    pivots = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            if lead not in pivots:
                lv = row[lead]
                pivots[lead] = {c: v / lv for c, v in row.items()}
                break
            coef = row[lead]
            piv = pivots[lead]
            new = dict(row)
            for c, v in piv.items():
                w = new.get(c, _F0) - coef * v
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            row = new
    for p in sorted(pivots, reverse=True):
        prow = pivots[p]
        for c in [c for c in prow if c != p and c in pivots]:
            coef = prow[c]
            for c2, v in pivots[c].items():
                w = prow.get(c2, _F0) - coef * v
                if w:
                    prow[c2] = w
                elif c2 in prow:
                    del prow[c2]
    return pivots


def _acc(dst, src, scalar):
    for k, v in src.items():
        w = dst.get(k, _F0) + v * scalar
        if w:
            dst[k] = w
        elif k in dst:
            del dst[k]


# ---------------------------------------------------------------------------
# presented graded Lie algebras

class DegreeComponent:
    """One degree slice of a presented algebra.

    candidates are the spanning symbols of the slice, quotient_basis the
    indices of the surviving ones, basis_lifts free Lie elements mapping
    onto the basis, and ideal_span the reduced rows (over candidate
    indices) presenting the degree-d consequences of the relations.
    """

    __slots__ = ("degree", "dim", "free_dim", "candidates", "quotient_basis",
                 "basis_keys", "basis_lifts", "ideal_span")

    def __init__(self, degree, dim, free_dim, candidates, quotient_basis,
                 basis_keys, basis_lifts, ideal_span):
        self.degree = degree
        self.dim = dim
        self.free_dim = free_dim
        self.candidates = candidates
        self.quotient_basis = quotient_basis
        self.basis_keys = basis_keys
        self.basis_lifts = basis_lifts
        self.ideal_span = ideal_span

    def __repr__(self):
        return "<degree %d: dim %d of %d candidates>" % (
            self.degree, self.dim, len(self.candidates))


class _Round:
    __slots__ = ("candidates", "basis_keys", "basis_index", "basis_lifts",
                 "cand_repr", "pivots")

    def __init__(self, candidates, basis_keys, basis_index, basis_lifts,
                 cand_repr, pivots):
        self.candidates = candidates
        self.basis_keys = basis_keys
        self.basis_index = basis_index
        self.basis_lifts = basis_lifts
        self.cand_repr = cand_repr
        self.pivots = pivots


class GradedPresentation:
    """Graded Lie algebra given by generators, degrees and homogeneous
    relations.  central lists generators whose brackets with every other
    generator are added as relations."""

    def __init__(self, alphabet, relations=(), central=(), name=None,
                 meta=None):
        self.alphabet = alphabet
        self.name = name or "L<%s>" % ",".join(alphabet.names)
        self.meta = dict(meta) if meta else {}
        self.central = tuple(central)
        rels = []
        for rel in relations:
            rel = lie_combine(rel)
            if not rel:
                continue
            elt_degree(alphabet, rel)
            rels.append(rel)
        for cname in self.central:
            gi = alphabet.index(cname)
            for h in alphabet.names:
                if h != cname:
                    rels.append(lie_combine([(_F1, (gi, alphabet.index(h)))]))
        self.relations = tuple(rels)
        self._rounds = {}
        self._act = {}
        self._genrep = {}
        self._bb = {}
        self._bbc = {}
        self._top = 0

    def __repr__(self):
        return "<%s: %d generators, %d relations>" % (
            self.name, len(self.alphabet), len(self.relations))

    # -- degreewise computation ------------------------------------------

    def _ensure(self, D):
        for d in range(self._top + 1, D + 1):
            self._compute(d)

    def _bbc_get(self, d1, i, d2, j):
        """Bracket of basis elements as a candidate combination at degree
        d1 + d2, by structural recursion on the first slot."""
        key = (d1, i, d2, j)
        got = self._bbc.get(key)
        if got is not None:
            return got
        bkey = self._rounds[d1].basis_keys[i]
        if bkey[0] == "gen":
            out = {("br", bkey[1], j): _F1}
        else:
            _, gi, m = bkey
            gd = self.alphabet.degrees[gi]
            out = {}
            red = self._bb_get(d1 - gd, m, d2, j)
            for t, v in enumerate(red):
                if v:
                    _acc(out, {("br", gi, t): _F1}, v)
            act = self._act[(gi, d2)][j]
            for t, v in enumerate(act):
                if v:
                    _acc(out, self._bbc_get(d1 - gd, m, gd + d2, t), -v)
        self._bbc[key] = out
        return out

    def _bb_get(self, d1, i, d2, j):
        """Bracket of basis elements reduced to basis coordinates; only
        valid once degree d1 + d2 is computed."""
        key = (d1, i, d2, j)
        got = self._bb.get(key)
        if got is not None:
            return got
        rnd = self._rounds[d1 + d2]
        coords = [_F0] * len(rnd.basis_keys)
        for ckey, v in self._bbc_get(d1, i, d2, j).items():
            rep = rnd.cand_repr[ckey]
            for p, w in enumerate(rep):
                if w:
                    coords[p] += v * w
        out = tuple(coords)
        self._bb[key] = out
        return out

    def _ev_reduced(self, tree):
        """Basis coordinates of a bracket tree of degree <= computed top."""
        if isinstance(tree, int):
            return self._genrep[tree]
        d1 = tree_degree(self.alphabet, tree[0])
        d2 = tree_degree(self.alphabet, tree[1])
        u = self._ev_reduced(tree[0])
        v = self._ev_reduced(tree[1])
        coords = [_F0] * len(self._rounds[d1 + d2].basis_keys)
        for i, ci in enumerate(u):
            if not ci:
                continue
            for j, cj in enumerate(v):
                if not cj:
                    continue
                red = self._bb_get(d1, i, d2, j)
                s = ci * cj
                for p, w in enumerate(red):
                    if w:
                        coords[p] += s * w
        return tuple(coords)

    def _ev_cand(self, elt, d):
        """Candidate combination of a degree-d element, children reduced."""
        out = {}
        for c, tree in elt:
            if isinstance(tree, int):
                _acc(out, {("gen", tree): _F1}, c)
                continue
            d1 = tree_degree(self.alphabet, tree[0])
            d2 = tree_degree(self.alphabet, tree[1])
            u = self._ev_reduced(tree[0])
            v = self._ev_reduced(tree[1])
            for i, ci in enumerate(u):
                if not ci:
                    continue
                for j, cj in enumerate(v):
                    if cj:
                        _acc(out, self._bbc_get(d1, i, d2, j), c * ci * cj)
        return out

    def _compute(self, d):
        alpha = self.alphabet
        cands = []
        for gi, gd in enumerate(alpha.degrees):
            if gd == d:
                cands.append(("gen", gi))
        for gi, gd in enumerate(alpha.degrees):
            if gd < d:
                for j in range(len(self._rounds[d - gd].basis_keys)):
                    cands.append(("br", gi, j))
        col = {k: i for i, k in enumerate(cands)}
        rows = []

        def push(combo):
            row = {col[k]: v for k, v in combo.items() if v}
            if row:
                rows.append(row)

        # bare generators whose class was rewritten at their own degree
        for gi, gd in enumerate(alpha.degrees):
            if gd >= d:
                continue
            rep = self._genrep[gi]
            bidx = self._rounds[gd].basis_index.get(("gen", gi))
            if bidx is not None and all(
                    (v == 1 if k == bidx else v == 0)
                    for k, v in enumerate(rep)):
                continue
            for j in range(len(self._rounds[d - gd].basis_keys)):
                combo = {("br", gi, j): _F1}
                for k, v in enumerate(rep):
                    if v:
                        _acc(combo, self._bbc_get(gd, k, d - gd, j), -v)
                push(combo)

        # antisymmetry over basis pairs
        for d1 in range(1, d // 2 + 1):
            d2 = d - d1
            n1 = len(self._rounds[d1].basis_keys)
            n2 = len(self._rounds[d2].basis_keys)
            if d1 < d2:
                for i in range(n1):
                    for j in range(n2):
                        combo = dict(self._bbc_get(d1, i, d2, j))
                        _acc(combo, self._bbc_get(d2, j, d1, i), _F1)
                        push(combo)
            else:
                for i in range(n1):
                    for j in range(i, n1):
                        combo = dict(self._bbc_get(d1, i, d1, j))
                        if j > i:
                            _acc(combo, self._bbc_get(d1, j, d1, i), _F1)
                        push(combo)

        # Jacobi over unordered basis triples
        elems = [(dd, i) for dd in range(1, d - 1)
                 for i in range(len(self._rounds[dd].basis_keys))]
        for (a, b, cc) in itertools.combinations_with_replacement(elems, 3):
            if a[0] + b[0] + cc[0] != d:
                continue
            combo = {}
            for (x1, x2, x3) in ((a, b, cc), (b, cc, a), (cc, a, b)):
                red = self._bb_get(x2[0], x2[1], x3[0], x3[1])
                for m, v in enumerate(red):
                    if v:
                        _acc(combo,
                             self._bbc_get(x1[0], x1[1], x2[0] + x3[0], m), v)
            push(combo)

        # relation instances of this degree
        for rel in self.relations:
            if elt_degree(alpha, rel) == d:
                push(self._ev_cand(rel, d))

        pivots = _rref(rows)
        basis_cols = [i for i in range(len(cands)) if i not in pivots]
        basis_keys = [cands[i] for i in basis_cols]
        pos = {c: k for k, c in enumerate(basis_cols)}
        cand_repr = {}
        for i, key in enumerate(cands):
            if i in pivots:
                coords = [_F0] * len(basis_cols)
                for c, v in pivots[i].items():
                    if c != i:
                        coords[pos[c]] = -v
                cand_repr[key] = tuple(coords)
            else:
                coords = [_F0] * len(basis_cols)
                coords[pos[i]] = _F1
                cand_repr[key] = tuple(coords)
        lifts = []
        for key in basis_keys:
            if key[0] == "gen":
                lifts.append(((_F1, key[1]),))
            else:
                _, gi, j = key
                sub = self._rounds[d - alpha.degrees[gi]].basis_lifts[j]
                lifts.append(tuple((c, (gi, t)) for c, t in sub))
        self._rounds[d] = _Round(tuple(cands), tuple(basis_keys),
                                 {k: p for p, k in enumerate(basis_keys)},
                                 tuple(lifts), cand_repr, pivots)
        for gi, gd in enumerate(alpha.degrees):
            if gd < d:
                nb = len(self._rounds[d - gd].basis_keys)
                self._act[(gi, d - gd)] = [cand_repr[("br", gi, j)]
                                           for j in range(nb)]
            elif gd == d:
                self._genrep[gi] = cand_repr[("gen", gi)]
        self._top = d

    def to_json(self):
        return {
            "name": self.name,
            "generators": [{"name": n, "degree": d} for n, d in
                           zip(self.alphabet.names, self.alphabet.degrees)],
            "relations": [lie_text(self.alphabet, r) for r in self.relations],
            "central": list(self.central),
        }


def component(P, d):
    """Degree-d slice of the presented algebra, computed once and cached."""
    if d < 1:
        raise IndexOutOfRange("degree must be >= 1, got %d" % d)
    P._ensure(d)
    rnd = P._rounds[d]
    free_dim = len(lyndon_words(P.alphabet, d)) if len(P.alphabet) else 0
    span = tuple(sorted(
        (tuple(sorted(row.items())) for row in rnd.pivots.values())))
    quotient = tuple(i for i, k in enumerate(rnd.candidates)
                     if i not in rnd.pivots)
    return DegreeComponent(d, len(rnd.basis_keys), free_dim,
                           rnd.candidates, quotient, rnd.basis_keys,
                           rnd.basis_lifts, span)


def normal_form(P, a, d):
    """Coordinates of a degree-d element over the quotient basis."""
    a = lie_combine(a)
    P._ensure(d)
    if a:
        da = elt_degree(P.alphabet, a)
        if da != d:
            raise InhomogeneousInput(
                "element has degree %s, expected %d" % (da, d))
    coords = [_F0] * len(P._rounds[d].basis_keys)
    for c, tree in a:
        red = P._ev_reduced(tree)
        for p, w in enumerate(red):
            if w:
                coords[p] += c * w
    return tuple(coords)


def dims(P, D_max):
    """Quotient dimensions in degrees 1..D_max."""
    return [component(P, d).dim for d in range(1, D_max + 1)]


def dims_csv(P, D_max):
    lines = ["degree,dim"]
    for d, v in enumerate(dims(P, D_max), start=1):
        lines.append("%d,%d" % (d, v))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# homomorphisms

class LieHomomorphism:
    """Generator-image map between presented algebras.

    images maps each source generator name to a homogeneous element of
    the same degree over the target alphabet.
    """

    def __init__(self, source, target, images, name=None):
        self.source = source
        self.target = target
        self.name = name or "hom"
        imgs = {}
        for gname, gdeg in zip(source.alphabet.names,
                               source.alphabet.degrees):
            if gname not in images:
                raise KeyError("no image for generator %r" % gname)
            elt = lie_combine(images[gname])
            if elt and elt_degree(target.alphabet, elt) != gdeg:
                raise InhomogeneousInput(
                    "image of %s must have degree %d" % (gname, gdeg))
            imgs[gname] = elt
        self.images = imgs
        self._by_index = [imgs[n] for n in source.alphabet.names]
        self._memo = {}

    def _tree(self, tree):
        if isinstance(tree, int):
            return self._by_index[tree]
        got = self._memo.get(tree)
        if got is None:
            got = lie_br(self._tree(tree[0]), self._tree(tree[1]))
            self._memo[tree] = got
        return got

    def __call__(self, elt):
        return lie_add(*(lie_scale(self._tree(t), c) for c, t in elt)) \
            if elt else ()

    def then(self, other):
        """Composite map: first self, then other."""
        if other.source.alphabet != self.target.alphabet:
            raise InhomogeneousInput("composition alphabets do not match")
        images = {g: other(self.images[g]) for g in self.images}
        return LieHomomorphism(self.source, other.target, images,
                               name="%s;%s" % (self.name, other.name))

    def __repr__(self):
        return "<%s: %s -> %s>" % (self.name, self.source.name,
                                   self.target.name)


class HomCheck:
    def __init__(self, ok, witness=None):
        self.ok = ok
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "<all relations preserved>"
        return "<relation broken: %r>" % (self.witness,)


def check_homomorphism(h, D_max):
    """Do all source relations of degree <= D_max map to zero."""
    for rel in h.source.relations:
        d = elt_degree(h.source.alphabet, rel)
        if d is None or d > D_max:
            continue
        nf = normal_form(h.target, h(rel), d)
        if any(nf):
            return HomCheck(False, {
                "relation": lie_text(h.source.alphabet, rel),
                "degree": d,
                "value": nf,
            })
    return HomCheck(True)


# ---------------------------------------------------------------------------
# the strand algebras

def _t(i, j):
    return "t%d_%d" % (min(i, j), max(i, j))


def _x(i, a):
    return "x%d_%d" % (i, a)


def _y(i, a):
    return "y%d_%d" % (i, a)


def _pure_relation_list(n, framed):
    """Defining relations of the n-strand algebra over generator names."""
    if framed:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    else:
        pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    rels = []
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if not ({i, j} & {k, l}):
            rels.append([(_F1, (_t(i, j), _t(k, l)))])
    for (i, j) in pairs:
        for k in range(1, n + 1):
            if k in (i, j):
                continue
            rels.append([(_F1, (_t(i, j), _t(i, k))),
                         (_F1, (_t(i, j), _t(j, k)))])
    return rels


def _surface_relation_list(g, n):
    """Defining relations of the genus-g n-strand algebra."""
    rels = _pure_relation_list(n, framed=True)
    layers = range(1, g + 1)
    strands = range(1, n + 1)
    pairs = [(i, j) for i in strands for j in strands if i <= j]
    for i in strands:
        for j in strands:
            if i == j:
                continue
            for a in layers:
                for b in layers:
                    rel = [(_F1, (_x(i, a), _y(j, b)))]
                    if a == b:
                        rel.append((-_F1, _t(i, j)))
                    rels.append(rel)
    for i in strands:
        for j in strands:
            if i >= j:
                continue
            for a in layers:
                for b in layers:
                    rels.append([(_F1, (_x(i, a), _x(j, b)))])
                    rels.append([(_F1, (_y(i, a), _y(j, b)))])
    for i in strands:
        rel = [(_F1, (_x(i, a), _y(i, a))) for a in layers]
        for j in strands:
            if j != i:
                rel.append((_F1, _t(i, j)))
        rel.append((Fraction(2 * (g - 1)), _t(i, i)))
        rels.append(rel)
    for (i, j) in pairs:
        for k in strands:
            if k in (i, j):
                continue
            for a in layers:
                rels.append([(_F1, (_x(k, a), _t(i, j)))])
                rels.append([(_F1, (_y(k, a), _t(i, j)))])
    for (i, j) in pairs:
        for a in layers:
            if i == j:
                rels.append([(Fraction(2), (_x(i, a), _t(i, i)))])
                rels.append([(Fraction(2), (_y(i, a), _t(i, i)))])
            else:
                rels.append([(_F1, (_x(i, a), _t(i, j))),
                             (_F1, (_x(j, a), _t(i, j)))])
                rels.append([(_F1, (_y(i, a), _t(i, j))),
                             (_F1, (_y(j, a), _t(i, j)))])
    return rels


def _surface_names(g, n, strands=None):
    strands = list(strands) if strands is not None else \
        list(range(1, n + 1))
    names = []
    degrees = []
    for i in strands:
        for a in range(1, g + 1):
            names.append(_x(i, a))
            degrees.append(1)
    for i in strands:
        for a in range(1, g + 1):
            names.append(_y(i, a))
            degrees.append(1)
    return names, degrees


def _name_tree_to_idx(alphabet, tree):
    if isinstance(tree, str):
        return alphabet.index(tree)
    return (_name_tree_to_idx(alphabet, tree[0]),
            _name_tree_to_idx(alphabet, tree[1]))


def _name_rels_to_elts(alphabet, rels):
    return [[(c, _name_tree_to_idx(alphabet, t)) for c, t in rel]
            for rel in rels]


def dk_algebra(g, n, framed=True):
    """Presented n-strand algebra.

    g is None for the plain family (generators t_ij of degree 2, with
    diagonal generators when framed) and a genus g >= 0 for the surface
    family, which adds degree-1 generators x_i^a, y_i^a per strand and is
    always framed.
    """
    if n < 0:
        raise IndexOutOfRange("strand count must be >= 0, got %d" % n)
    if g is None:
        if framed:
            tnames = [_t(i, j) for i in range(1, n + 1)
                      for j in range(i, n + 1)]
        else:
            tnames = [_t(i, j) for i in range(1, n + 1)
                      for j in range(i + 1, n + 1)]
        alpha = Alphabet(tnames, [2] * len(tnames))
        rels = _name_rels_to_elts(alpha, _pure_relation_list(n, framed))
        label = "t_%d%s" % (n, "^f" if framed else "")
    else:
        if g < 0:
            raise IndexOutOfRange("genus must be >= 0, got %d" % g)
        if not framed:
            raise IndexOutOfRange("the surface family has no unframed form")
        names, degrees = _surface_names(g, n)
        tnames = [_t(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
        names += tnames
        degrees += [2] * len(tnames)
        alpha = Alphabet(names, degrees)
        rels = _name_rels_to_elts(alpha, _surface_relation_list(g, n))
        label = "t_{%d,%d}^f" % (g, n)
    return GradedPresentation(alpha, rels, name=label,
                              meta={"kind": "dk", "genus": g,
                                    "strands": n, "framed": framed})


# ---------------------------------------------------------------------------
# operadic maps between strand algebras

def _dk_meta(P):
    if P.meta.get("kind") != "dk":
        raise IndexOutOfRange("operadic maps need a strand algebra")
    return P.meta["genus"], P.meta["strands"], P.meta["framed"]


def dk_compose(P, k, m):
    """Insert an m-strand block at strand k of the n-strand algebra.

    Returns the map into the algebra on n + m - 1 strands: labels off k
    are shifted, t_kj spreads over the inserted block, and the diagonal
    t_kk goes to the sum over all (framed: not necessarily distinct)
    pairs inside the block.
    """
    g, n, framed = _dk_meta(P)
    if not 1 <= k <= n:
        raise IndexOutOfRange("strand %d not in 1..%d" % (k, n))
    if m < 0:
        raise IndexOutOfRange("inserted arity must be >= 0")
    target = dk_algebra(g, n + m - 1, framed)
    block = list(range(k, k + m))

    def sh(i):
        return i if i < k else i + m - 1

    def tt(i, j):
        return (_F1, target.alphabet.index(_t(i, j)))

    images = {}
    for name, deg in zip(P.alphabet.names, P.alphabet.degrees):
        if name.startswith("t"):
            i, j = (int(s) for s in name[1:].split("_"))
            if i != k and j != k:
                images[name] = [tt(sh(i), sh(j))]
            elif i == k and j == k:
                if framed:
                    images[name] = [tt(p, q) for p in block
                                    for q in block if p <= q]
                else:
                    images[name] = [tt(p, q) for p in block
                                    for q in block if p < q]
            elif i == k:
                images[name] = [tt(p, sh(j)) for p in block]
            else:
                images[name] = [tt(sh(i), p) for p in block]
        else:
            i, a = (int(s) for s in name[1:].split("_"))
            kind = name[0]
            mk = _x if kind == "x" else _y
            if i != k:
                images[name] = [(_F1, target.alphabet.index(mk(sh(i), a)))]
            else:
                images[name] = [(_F1, target.alphabet.index(mk(p, a)))
                                for p in block]
    return LieHomomorphism(P, target, images,
                           name="insert_%d@%d" % (m, k))


def string_split(P, k):
    """Split strand k in two (the face map duplicating a strand)."""
    return dk_compose(P, k, 2)


def string_delete(P, k):
    """Delete strand k (everything touching it goes to zero)."""
    return dk_compose(P, k, 0)


def face_map(P, i):
    """Face maps on arity n: 0 and n+1 are the two outer embeddings that
    add a fresh strand, 1..n split the corresponding strand."""
    g, n, framed = _dk_meta(P)
    if i < 0 or i > n + 1:
        raise IndexOutOfRange("face index %d not in 0..%d" % (i, n + 1))
    if 1 <= i <= n:
        return string_split(P, i)
    target = dk_algebra(g, n + 1, framed)
    off = 1 if i == 0 else 0

    def shifted(name):
        if name.startswith("t"):
            a, b = (int(s) for s in name[1:].split("_"))
            return _t(a + off, b + off)
        head, layer = name.split("_")
        return "%s%d_%s" % (head[0], int(head[1:]) + off, layer)

    images = {name: [(_F1, target.alphabet.index(shifted(name)))]
              for name in P.alphabet.names}
    return LieHomomorphism(P, target, images, name="face_%d" % i)


def kernel_dims(source, target, s, D_max):
    """Degreewise kernel dimensions of a degreewise surjective map.

    The rank of the image is computed exactly; if it falls short of the
    target dimension at some degree the map is not onto and
    NotSurjective is raised.  The kernel dimension is the nullity, which
    for a surjection agrees with dim source - dim target.
    """
    out = []
    for d in range(1, D_max + 1):
        sc = component(source, d)
        tc = component(target, d)
        rows = []
        for lift in sc.basis_lifts:
            nf = normal_form(target, s(lift), d)
            row = {i: v for i, v in enumerate(nf) if v}
            if row:
                rows.append(row)
        rank = len(_rref(rows))
        if rank < tc.dim:
            raise NotSurjective(
                "degree %d: image rank %d < target dimension %d"
                % (d, rank, tc.dim))
        out.append(sc.dim - rank)
    return out


# ---------------------------------------------------------------------------
# presented kernels of strand deletion

def presented_deletion_kernel(g, n, reduced=False):
    """Model of the kernel of deleting strand n from the genus-g algebra:
    free on the strand-n generators and t_in, modulo the strand-n framing
    relation, with central t_nn (killed when reduced)."""
    if n < 1:
        raise IndexOutOfRange("need at least one strand")
    if g < 0:
        raise IndexOutOfRange("genus must be >= 0, got %d" % g)
    names, degrees = _surface_names(g, n, strands=[n])
    tnames = [_t(i, n) for i in range(1, n + 1)]
    names += tnames
    degrees += [2] * len(tnames)
    alpha = Alphabet(names, degrees)
    rel = [(_F1, (_x(n, a), _y(n, a))) for a in range(1, g + 1)]
    for j in range(1, n):
        rel.append((_F1, _t(j, n)))
    rel.append((Fraction(2 * (g - 1)), _t(n, n)))
    rels = [rel]
    if reduced:
        rels.append([(_F1, _t(n, n))])
    rels = _name_rels_to_elts(alpha, rels)
    label = "k_{%d,%d}%s" % (g, n, "~" if reduced else "")
    return GradedPresentation(alpha, rels, central=(_t(n, n),), name=label)


def _supported(rels, keep):
    out = []
    for rel in rels:
        names = set()
        for _, t in rel:
            _collect_names(t, names)
        if names <= keep:
            out.append(rel)
    return out


def _collect_names(tree, out):
    if isinstance(tree, str):
        out.add(tree)
    else:
        _collect_names(tree[0], out)
        _collect_names(tree[1], out)


def presented_double_deletion_kernel(g, n, reduced=False):
    """Model of the kernel of deleting strands n-1 and n: generated by
    everything touching those strands, modulo all defining relation
    instances of the ambient algebra supported on those generators.
    reduced kills the two diagonal generators."""
    if n < 2:
        raise IndexOutOfRange("need at least two strands")
    if g < 0:
        raise IndexOutOfRange("genus must be >= 0, got %d" % g)
    names, degrees = _surface_names(g, n, strands=[n - 1, n])
    tnames = [_t(i, n - 1) for i in range(1, n + 1)]
    tnames += [_t(i, n) for i in range(1, n - 1)]
    tnames.append(_t(n, n))
    names += tnames
    degrees += [2] * len(tnames)
    alpha = Alphabet(names, degrees)
    rels = _supported(_surface_relation_list(g, n), set(names))
    if reduced:
        rels = rels + [[(_F1, _t(n - 1, n - 1))], [(_F1, _t(n, n))]]
    rels = _name_rels_to_elts(alpha, rels)
    label = "h_{%d,%d}%s" % (g, n, "~" if reduced else "")
    return GradedPresentation(alpha, rels, name=label)


def presented_pure_deletion_kernel(n, reduced=False):
    """Kernel of deleting strand n from the plain framed algebra: free on
    t_1n..t_nn with central t_nn, no framing relation."""
    if n < 1:
        raise IndexOutOfRange("need at least one strand")
    tnames = [_t(i, n) for i in range(1, n + 1)]
    alpha = Alphabet(tnames, [2] * len(tnames))
    rels = [[(_F1, _t(n, n))]] if reduced else []
    rels = _name_rels_to_elts(alpha, rels)
    label = "K_%d%s" % (n, "~" if reduced else "")
    return GradedPresentation(alpha, rels, central=(_t(n, n),), name=label)


def presented_pure_double_deletion_kernel(n, reduced=False):
    """Kernel of deleting strands n-1 and n from the plain framed
    algebra, presented by all supported relation instances."""
    if n < 2:
        raise IndexOutOfRange("need at least two strands")
    tnames = [_t(i, n - 1) for i in range(1, n + 1)]
    tnames += [_t(i, n) for i in range(1, n - 1)]
    tnames.append(_t(n, n))
    alpha = Alphabet(tnames, [2] * len(tnames))
    rels = _supported(_pure_relation_list(n, framed=True), set(tnames))
    if reduced:
        rels = rels + [[(_F1, _t(n - 1, n - 1))], [(_F1, _t(n, n))]]
    rels = _name_rels_to_elts(alpha, rels)
    label = "H_%d%s" % (n, "~" if reduced else "")
    return GradedPresentation(alpha, rels, name=label)


def bracket_square_quotient(P, gen_names, D_max):
    """Quotient of P by [J, J], where J is the ideal generated by the
    named generators, realized degreewise up to D_max.

    J's slices are computed inside P with lifts to the free algebra, and
    one relation [u, v] is adjoined per pair of slice basis elements with
    total degree <= D_max.
    """
    alpha = P.alphabet
    seeds = {}
    for nm in gen_names:
        gi = alpha.index(nm)
        seeds.setdefault(alpha.degrees[gi], []).append(gi)
    lo = min(seeds)
    jb = {}
    for d in range(lo, D_max - lo + 1):
        P._ensure(d)
        nb = len(P._rounds[d].basis_keys)
        pivots = {}

        def insert(vec, lift):
            row = {i: v for i, v in enumerate(vec) if v}
            while row:
                lead = min(row)
                if lead not in pivots:
                    lv = row[lead]
                    pivots[lead] = ({c: v / lv for c, v in row.items()},
                                    lie_scale(lift, 1 / lv))
                    return
                piv, plift = pivots[lead]
                coef = row[lead]
                new = dict(row)
                for c, v in piv.items():
                    w = new.get(c, _F0) - coef * v
                    if w:
                        new[c] = w
                    elif c in new:
                        del new[c]
                row = new
                lift = lie_add(lift, lie_scale(plift, -coef))

        for gi in seeds.get(d, ()):
            insert(P._genrep[gi], ((_F1, gi),))
        for gi, gd in enumerate(alpha.degrees):
            if gd >= d or (d - gd) not in jb:
                continue
            act = P._act[(gi, d - gd)]
            for vec, lift in jb[d - gd]:
                coords = [_F0] * nb
                for j, v in enumerate(vec):
                    if v:
                        for p, w in enumerate(act[j]):
                            if w:
                                coords[p] += v * w
                insert(coords, tuple((c, (gi, t)) for c, t in lift))
        jb[d] = [(tuple(pivots[lead][0].get(i, _F0) for i in range(nb)),
                  pivots[lead][1]) for lead in sorted(pivots)]
    extra = []
    for d1 in sorted(jb):
        for d2 in sorted(jb):
            if d2 < d1 or d1 + d2 > D_max:
                continue
            for i, (_, u) in enumerate(jb[d1]):
                for j, (_, v) in enumerate(jb[d2]):
                    if d1 == d2 and j <= i:
                        continue
                    rel = lie_br(u, v)
                    if rel:
                        extra.append(rel)
    return GradedPresentation(alpha, tuple(P.relations) + tuple(extra),
                              name=P.name + "/[J,J]", meta=P.meta)


# ---------------------------------------------------------------------------
# the two-sided extension target and the kernel identification

class ExtensionTarget:
    """Bracket evaluator for the extension of a doubled free Lie algebra
    by its enveloping algebra along the pairing 2-cocycle
    G(p, q) = rho(p1, q2) - rho(q1, p2), with the pair acting on tails by
    (p1, p2).a = a p2 - p1 a."""

    def __init__(self, ctx, rho):
        self.ctx = ctx
        self.rho = rho

    def zero(self):
        return ExtensionElement.zero(self.ctx)

    def primitive(self, name):
        return TensorElt.word(self.ctx, (self.ctx.alphabet.index(name),))

    def cocycle(self, p, q):
        return self.rho(p[0], q[1]) - self.rho(q[0], p[1])

    def act(self, pair, a):
        return a * pair[1] - pair[0] * a

    def bracket(self, u, v):
        pair = (lie_bracket(u.pair[0], v.pair[0]),
                lie_bracket(u.pair[1], v.pair[1]))
        tail = self.act(v.pair, u.tail) - self.act(u.pair, v.tail) \
            + self.cocycle(u.pair, v.pair)
        return ExtensionElement(pair, tail)


def goldman_extension_algebra(g, n, D_max=4):
    """Extension target for the two-strand deletion kernel: the doubled
    free Lie algebra on the boundary generators (genus 0) or on the
    genus generators plus one degree-2 generator per extra strand."""
    if g < 0 or n < 0:
        raise IndexOutOfRange("genus and boundary count must be >= 0")
    if g == 0:
        names = ["z%d" % j for j in range(1, n + 1)]
        degrees = [2] * n
    else:
        names = ["x%d" % a for a in range(1, g + 1)]
        names += ["y%d" % a for a in range(1, g + 1)]
        names += ["t%d" % j for j in range(2, n + 2)]
        degrees = [1] * (2 * g) + [2] * n
    ctx = Context(Alphabet(names, degrees), D_max)
    table = {}
    for gn in names:
        for hn in names:
            table[(gn, hn)] = TensorElt.zero(ctx)
    unit = TensorElt.word(ctx, ())
    for a in range(1, g + 1):
        table[("x%d" % a, "y%d" % a)] = unit
        table[("y%d" % a, "x%d" % a)] = -unit
    for nm in names:
        if nm[0] in "zt":
            table[(nm, nm)] = -TensorElt.word(
                ctx, (ctx.alphabet.index(nm),))
    return ExtensionTarget(ctx, FoxPairing(ctx, table))


def _phi_images(g, n, target):
    """Generator images of the kernel identification map."""
    ctx = target.ctx
    zero = TensorElt.zero(ctx)
    unit = TensorElt.word(ctx, ())
    images = {}
    if g == 0:
        p, q = n + 1, n + 2
        for j in range(1, n + 1):
            zj = target.primitive("z%d" % j)
            images[_t(j, p)] = ExtensionElement((zj, zero), zero)
            images[_t(j, q)] = ExtensionElement((zero, zj), zero)
    else:
        p, q = n + 2, n + 3
        w = TensorElt.zero(ctx)
        for a in range(1, g + 1):
            xa = target.primitive("x%d" % a)
            ya = target.primitive("y%d" % a)
            images[_x(p, a)] = ExtensionElement((xa, zero), zero)
            images[_y(p, a)] = ExtensionElement((ya, zero), zero)
            images[_x(q, a)] = ExtensionElement((zero, xa), zero)
            images[_y(q, a)] = ExtensionElement((zero, ya), zero)
            w = w + lie_bracket(xa, ya)
        for j in range(2, n + 2):
            tj = target.primitive("t%d" % j)
            images[_t(j, p)] = ExtensionElement((tj, zero), zero)
            images[_t(j, q)] = ExtensionElement((zero, tj), zero)
            w = w + tj
        images[_t(1, p)] = ExtensionElement((-w, zero), -unit)
        images[_t(1, q)] = ExtensionElement((zero, -w), -unit)
    images[_t(p, q)] = ExtensionElement((zero, zero), unit)
    images[_t(p, p)] = ExtensionElement.zero(ctx)
    images[_t(q, q)] = ExtensionElement.zero(ctx)
    return images


class PhiReport:
    def __init__(self, ok, witness, source_dims, target_dims):
        self.ok = ok
        self.witness = witness
        self.source_dims = source_dims
        self.target_dims = target_dims

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "<kernel identification holds: dims %r>" % (
                self.source_dims,)
        return "<kernel identification fails: %r>" % (self.witness,)


def _ext_coords(e, cols):
    """Sparse coordinates of an extension element."""
    row = {}
    for slot in (0, 1):
        for word, c in e.pair[slot].terms.items():
            if c:
                row[cols.setdefault(("pair", slot, word),
                                    len(cols))] = c
    for word, c in e.tail.terms.items():
        if c:
            row[cols.setdefault(("tail", word), len(cols))] = c
    return row


def verify_phi(g, n, D_max=4, images=None):
    """Check the presented two-strand deletion kernel against the
    extension target: the generator images must kill every relation, and
    the map must be a degreewise isomorphism up to D_max (dimension count
    plus exact rank).

    The genus-0 kernel sits in the plain framed algebra on n + 2 strands,
    the genus-g one in the genus-g algebra on n + 3 strands; in both
    cases the two distinguished diagonals are killed and the square of
    the ideal generated by the cross term t_pq is divided out.
    """
    if g == 0:
        m = n + 2
        base = presented_pure_double_deletion_kernel(m, reduced=True)
        p, q = n + 1, n + 2
    else:
        m = n + 3
        base = presented_double_deletion_kernel(g, m, reduced=True)
        p, q = n + 2, n + 3
    source = bracket_square_quotient(base, [_t(p, q)], D_max)
    target = goldman_extension_algebra(g, n, D_max)
    table = _phi_images(g, n, target)
    if images:
        table = dict(table)
        table.update(images)

    memo = {}

    def ev_tree(tree):
        if isinstance(tree, int):
            return table[source.alphabet.names[tree]]
        got = memo.get(tree)
        if got is None:
            got = target.bracket(ev_tree(tree[0]), ev_tree(tree[1]))
            memo[tree] = got
        return got

    def ev(elt):
        out = target.zero()
        for c, t in elt:
            out = out + ev_tree(t).scale(c)
        return out

    for rel in source.relations:
        d = elt_degree(source.alphabet, rel)
        if d is None or d > D_max:
            continue
        val = ev(rel)
        if val:
            return PhiReport(False, {
                "check": "relation",
                "relation": lie_text(source.alphabet, rel),
                "value": val.text(),
            }, None, None)

    talpha = target.ctx.alphabet
    source_dims = []
    target_dims = []
    for d in range(1, D_max + 1):
        sc = component(source, d)
        tdim = 2 * len(lyndon_words(talpha, d))
        if d >= 2:
            tdim += sum(1 for _ in talpha.words_of_degree(d - 2))
        source_dims.append(sc.dim)
        target_dims.append(tdim)
        if sc.dim != tdim:
            return PhiReport(False, {
                "check": "dimension",
                "degree": d,
                "source": sc.dim,
                "target": tdim,
            }, source_dims, target_dims)
        cols = {}
        rows = []
        for lift in sc.basis_lifts:
            val = target.zero()
            for c, t in lift:
                val = val + ev_tree(t).scale(c)
            row = _ext_coords(val, cols)
            if row:
                rows.append(row)
        rank = len(_rref(rows))
        if rank < sc.dim:
            return PhiReport(False, {
                "check": "injectivity",
                "degree": d,
                "rank": rank,
                "dim": sc.dim,
            }, source_dims, target_dims)
    return PhiReport(True, None, source_dims, target_dims)
