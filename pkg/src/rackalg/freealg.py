"""Free associative algebra over Q with a noncommutative Groebner engine.

Words are `bytes` of generator indices; the monomial order is
degree-lexicographic, realized as the tuple key (len(word), word).
Polynomials are dicts word -> nonzero Fraction, wrapped in FreePoly at the
API boundary.

The completion is Buchberger-style for two-sided ideals: the obstruction
queue holds proper overlaps of leading words (lowest common degree first),
the basis is kept monic and fully interreduced after every insertion, so a
completed run yields the unique reduced Groebner basis for the order.
"""

import heapq
from fractions import Fraction

from .braided import DegreeBudgetExceeded  # shared budget error

__all__ = [
    "FreePoly",
    "GroebnerBasis",
    "ResourceBudgetExceeded",
    "DegreeBudgetExceeded",
    "groebner",
    "normal_form",
    "quotient_dim",
    "hilbert_series",
    "is_trivial_quotient",
    "audit_obstructions",
    "QuotientAlgebra",
    "ideal_to_json",
    "ideal_from_json",
]

_NEG = bytes(255 - i for i in range(256))


def deglex_key(word):
    return (len(word), word)


def _negkey(word):
    """Key under which a min-heap pops the deglex-LARGEST word first."""
    return (-len(word), word.translate(_NEG))


def _lead_word(terms):
    return max(terms, key=deglex_key)


class FreePoly:
    """Element of the free algebra on ngens generators."""

    __slots__ = ("ngens", "terms")

    def __init__(self, ngens, terms=None):
        self.ngens = ngens
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[bytes(w)] = c

    @classmethod
    def zero(cls, ngens):
        return cls(ngens)

    @classmethod
    def one(cls, ngens, coeff=1):
        return cls(ngens, {b"": Fraction(coeff)})

    @classmethod
    def gen(cls, ngens, i):
        assert 0 <= i < ngens
        return cls(ngens, {bytes([i]): Fraction(1)})

    @classmethod
    def word(cls, ngens, indices, coeff=1):
        return cls(ngens, {bytes(indices): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def lead(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        w = _lead_word(self.terms)
        return w, self.terms[w]

    def degree(self):
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead()
        if c == 1:
            return self
        return FreePoly(self.ngens, {w: v / c for w, v in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w, Fraction(0)) + c
            if acc == 0:
                out.pop(w, None)
            else:
                out[w] = acc
        return FreePoly(self.ngens, out)

    def __neg__(self):
        return FreePoly(self.ngens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FreePoly(self.ngens)
            return FreePoly(
                self.ngens, {w: c * other for w, c in self.terms.items()}
            )
        other = self._coerce(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc = out.get(w, Fraction(0)) + c1 * c2
                if acc == 0:
                    out.pop(w, None)
                else:
                    out[w] = acc
        return FreePoly(self.ngens, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def _coerce(self, other):
        if isinstance(other, FreePoly):
            if other.ngens != self.ngens:
                raise ValueError("mixed alphabets")
            return other
        if isinstance(other, (int, Fraction)):
            return FreePoly.one(self.ngens, other)
        raise TypeError(f"cannot combine FreePoly with {type(other)!r}")

    def __eq__(self, other):
        return (
            isinstance(other, FreePoly)
            and self.ngens == other.ngens
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ngens, frozenset(self.terms.items())))

    def sorted_terms(self):
        """Terms in descending deglex order (canonical for printing)."""
        return sorted(
            self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True
        )

    def __repr__(self):
        if not self.terms:
            return "FreePoly(0)"
        bits = []
        for w, c in self.sorted_terms():
            name = "*".join(f"g{i}" for i in w) if w else "1"
            bits.append(f"{c}*{name}")
        return "FreePoly(" + " + ".join(bits) + ")"


class ResourceBudgetExceeded(Exception):
    """Basis grew past the configured size budget."""


def _reduce_terms(terms, basis_items):
    """Full normal form of a term dict against monic (lead, terms) pairs.

    Pops the deglex-largest live word; every replacement word is strictly
    smaller, so each word is handled once and irreducible words are final.
    """
    work = dict(terms)
    out = {}
    heap = [(_negkey(w), w) for w in work]
    heapq.heapify(heap)
    push = heapq.heappush
    while heap:
        _, w = heapq.heappop(heap)
        c = work.get(w)
        if not c:
            work.pop(w, None)
            continue
        hit = None
        for lead, poly in basis_items:
            k = w.find(lead)
            if k >= 0:
                hit = (lead, poly, k)
                break
        if hit is None:
            out[w] = c
            del work[w]
            continue
        lead, poly, k = hit
        left = w[:k]
        right = w[k + len(lead):]
        del work[w]
        for u, d in poly.items():
            if u == lead:
                continue
            nw = left + u + right
            acc = work.get(nw, Fraction(0)) - c * d
            if acc == 0:
                work.pop(nw, None)
            else:
                if nw not in work:
                    push(heap, (_negkey(nw), nw))
                work[nw] = acc
    return out


class GroebnerBasis:
    """Monic interreduced basis plus completion status."""

    __slots__ = ("ngens", "elements", "truncated_at")

    def __init__(self, ngens, elements, truncated_at=None):
        self.ngens = ngens
        self.elements = elements  # list of FreePoly, sorted by lead
        self.truncated_at = truncated_at

    @property
    def complete(self):
        return self.truncated_at is None

    @property
    def status(self):
        if self.complete:
            return "complete"
        return f"truncated-at-degree-{self.truncated_at}"

    def leads(self):
        return [p.lead()[0] for p in self.elements]

    def _items(self):
        return [(p.lead()[0], p.terms) for p in self.elements]


def normal_form(poly, gb):
    """Remainder of poly modulo the basis: no leading word divides any term."""
    if isinstance(gb, GroebnerBasis):
        if poly.ngens != gb.ngens:
            raise ValueError("mixed alphabets")
        items = gb._items()
    else:
        items = [(p.lead()[0], p.terms) for p in gb]
    return FreePoly(poly.ngens, _reduce_terms(poly.terms, items))


def _proper_overlaps(u, v):
    """Lengths k with a proper suffix of u of length k = prefix of v."""
    out = []
    top = min(len(u), len(v))
    for k in range(1, top):
        if u[-k:] == v[:k]:
            out.append(k)
    return out


def groebner(generators, max_deg=16, max_basis=20000):
    """Two-sided Groebner basis of the ideal the generators span.

    Completion runs lowest-obstruction-first; the basis stays monic and
    interreduced throughout.  Obstructions above max_deg truncate the run
    (status records the cutoff); a basis larger than max_basis raises.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return GroebnerBasis(0 if not generators else generators[0].ngens, [])
    ngens = gens[0].ngens
    for g in gens:
        if g.ngens != ngens:
            raise ValueError("mixed alphabets")

    basis = {}  # idx -> (lead, terms dict), monic
    next_idx = 0
    pair_heap = []  # (common len, common word, i, j, k)
    pending = [dict(g.terms) for g in gens]
    truncated_at = None

    def items():
        return [(lead, terms) for (lead, terms) in basis.values()]

    def add_pairs(i):
        u = basis[i][0]
        for j, (v, _) in list(basis.items()):
            for k in _proper_overlaps(u, v):
                w = u + v[k:]
                heapq.heappush(pair_heap, (len(w), w, i, j, k))
            if j != i:
                for k in _proper_overlaps(v, u):
                    w = v + u[k:]
                    heapq.heappush(pair_heap, (len(w), w, j, i, k))

    def insert(terms):
        nonlocal next_idx
        lead = _lead_word(terms)
        c = terms[lead]
        if c != 1:
            terms = {w: v / c for w, v in terms.items()}
        # retire basis elements whose lead contains the new lead
        for i, (ld, tm) in list(basis.items()):
            if ld.find(lead) >= 0:
                del basis[i]
                pending.append(tm)
        idx = next_idx
        next_idx += 1
        basis[idx] = (lead, terms)
        if len(basis) > max_basis:
            raise ResourceBudgetExceeded(f"basis exceeded {max_basis}")
        # tail-reduce every other element against the refreshed basis
        current = items()
        for i, (ld, tm) in list(basis.items()):
            if i == idx:
                continue
            tail = {w: v for w, v in tm.items() if w != ld}
            if not any(w.find(lead) >= 0 for w in tail):
                continue
            red = _reduce_terms(tail, current)
            red[ld] = Fraction(1)
            basis[i] = (ld, red)
            current = items()
        add_pairs(idx)

    while pending or pair_heap:
        if pending:
            terms = pending.pop()
            red = _reduce_terms(terms, items())
            if red:
                insert(red)
            continue
        deg, w, i, j, k = heapq.heappop(pair_heap)
        if i not in basis or j not in basis:
            continue
        if deg > max_deg:
            truncated_at = max_deg
            break
        u, fu = basis[i]
        v, fv = basis[j]
        if u[-k:] != v[:k] or u + v[k:] != w:
            continue  # stale: an element was replaced under the same index
        right = v[k:]
        left = u[:-k] if k else u
        s = {}
        for word, c in fu.items():
            nw = word + right
            acc = s.get(nw, Fraction(0)) + c
            if acc == 0:
                s.pop(nw, None)
            else:
                s[nw] = acc
        for word, c in fv.items():
            nw = left + word
            acc = s.get(nw, Fraction(0)) - c
            if acc == 0:
                s.pop(nw, None)
            else:
                s[nw] = acc
        red = _reduce_terms(s, items())
        if red:
            insert(red)

    elems = [FreePoly(ngens, terms) for _, terms in basis.values()]
    elems.sort(key=lambda p: deglex_key(p.lead()[0]))
    return GroebnerBasis(ngens, elems, truncated_at)


def audit_obstructions(gb):
    """Post-hoc confluence audit: every overlap S-element reduces to zero."""
    items = gb._items()
    n = len(items)
    for a in range(n):
        u, fu = items[a]
        for b in range(n):
            v, fv = items[b]
            for k in _proper_overlaps(u, v):
                right = v[k:]
                left = u[:-k] if k else u
                s = {}
                for word, c in fu.items():
                    nw = word + right
                    acc = s.get(nw, Fraction(0)) + c
                    if acc == 0:
                        s.pop(nw, None)
                    else:
                        s[nw] = acc
                for word, c in fv.items():
                    nw = left + word
                    acc = s.get(nw, Fraction(0)) - c
                    if acc == 0:
                        s.pop(nw, None)
                    else:
                        s[nw] = acc
                if _reduce_terms(s, items):
                    return False
    return True


def is_trivial_quotient(gb):
    """True iff the ideal contains a nonzero constant (quotient is 0)."""
    return any(p.lead()[0] == b"" for p in gb.elements)


def _lead_automaton(leads, ngens):
    """Deterministic automaton of words avoiding every lead as a subword.

    States are proper prefixes of the leads (plus the empty word); a
    missing transition means the extended word picked up a lead.
    """
    prefixes = {b""}
    for ld in leads:
        for k in range(1, len(ld)):
            prefixes.add(ld[:k])
    states = sorted(prefixes, key=deglex_key)
    index = {s: i for i, s in enumerate(states)}
    leadset = set(leads)
    trans = []
    for s in states:
        row = [-1] * ngens
        for a in range(ngens):
            t = s + bytes([a])
            if any(t[len(t) - k:] in leadset for k in range(1, len(t) + 1)):
                continue
            for k in range(len(t), -1, -1):
                suf = t[len(t) - k:]
                if suf in prefixes:
                    row[a] = index[suf]
                    break
        trans.append(row)
    return trans


def _reachable_has_cycle(trans):
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * len(trans)
    stack = [(0, 0)]
    color[0] = GRAY
    while stack:
        node, ptr = stack.pop()
        advanced = False
        for a in range(ptr, len(trans[node])):
            nxt = trans[node][a]
            if nxt < 0:
                continue
            if color[nxt] == GRAY:
                return True
            if color[nxt] == WHITE:
                stack.append((node, a + 1))
                color[nxt] = GRAY
                stack.append((nxt, 0))
                advanced = True
                break
        if not advanced:
            color[node] = BLACK
    return False


def quotient_dim(gb):
    """Dimension of the quotient algebra: int, "infinite", or "unknown"."""
    if is_trivial_quotient(gb):
        return 0
    if not gb.complete:
        return "unknown"
    trans = _lead_automaton(gb.leads(), gb.ngens)
    if gb.ngens and _reachable_has_cycle(trans):
        return "infinite"
    # post-order path count; on a DAG every visited child is finished
    # before its parent, so counts fill bottom-up
    order = []
    seen = [False] * len(trans)
    stack = [(0, 0)]
    seen[0] = True
    while stack:
        node, ptr = stack.pop()
        advanced = False
        for a in range(ptr, len(trans[node])):
            nxt = trans[node][a]
            if nxt >= 0 and not seen[nxt]:
                stack.append((node, a + 1))
                seen[nxt] = True
                stack.append((nxt, 0))
                advanced = True
                break
        if not advanced:
            order.append(node)
    counts = [0] * len(trans)
    for node in order:
        total = 1
        for nxt in trans[node]:
            if nxt >= 0:
                total += counts[nxt]
        counts[node] = total
    return counts[0]


def hilbert_series(gb, up_to):
    """Number of normal words in each degree 0..up_to."""
    if is_trivial_quotient(gb):
        return [0] * (up_to + 1)
    trans = _lead_automaton(gb.leads(), gb.ngens)
    vec = [0] * len(trans)
    vec[0] = 1
    counts = [1]
    for _ in range(up_to):
        nxt = [0] * len(trans)
        for s, alive in enumerate(vec):
            if not alive:
                continue
            for t in trans[s]:
                if t >= 0:
                    nxt[t] += alive
        vec = nxt
        counts.append(sum(vec))
    return counts


class QuotientAlgebra:
    """Finite-dimensional quotient by a completed basis, with a listed
    monomial basis of normal words and structure-constant products."""

    def __init__(self, gb):
        if not gb.complete:
            raise ValueError("need a complete basis")
        d = quotient_dim(gb)
        if not isinstance(d, int):
            raise ValueError("quotient is not finite dimensional")
        self.gb = gb
        self.words = self._normal_words()
        assert len(self.words) == d
        self.index = {w: i for i, w in enumerate(self.words)}

    def _normal_words(self):
        trans = _lead_automaton(self.gb.leads(), self.gb.ngens)
        words = []
        stack = [(0, b"")]
        while stack:
            s, w = stack.pop()
            words.append(w)
            for a in range(self.gb.ngens - 1, -1, -1):
                t = trans[s][a]
                if t >= 0:
                    stack.append((t, w + bytes([a])))
        words.sort(key=deglex_key)
        return words

    def nf_terms(self, terms):
        return _reduce_terms(terms, self.gb._items())

    def mul_words(self, u, v):
        """Product of two normal words, as a dict word -> coefficient."""
        return self.nf_terms({u + v: Fraction(1)})


def ideal_to_json(names, polys, status=None):
    doc = {
        "alphabet": list(names),
        "polys": [
            [
                {"word": list(w), "coeff": str(c)}
                for w, c in p.sorted_terms()
            ]
            for p in polys
        ],
    }
    if status is not None:
        doc["status"] = status
    return doc


def ideal_from_json(doc):
    names = [str(x) for x in doc["alphabet"]]
    ngens = len(names)
    polys = []
    for rec in doc["polys"]:
        terms = {}
        for t in rec:
            w = bytes(int(i) for i in t["word"])
            if any(i >= ngens for i in w):
                raise ValueError("word index out of alphabet range")
            c = Fraction(str(t["coeff"]))
            if c != 0:
                terms[w] = terms.get(w, Fraction(0)) + c
        polys.append(FreePoly(ngens, terms))
    return names, polys
