"""Permutations as tuples of images and closures of generator sets.

A permutation of degree n is a tuple p of length n with p[i] = image of i
(0-based everywhere).  Tuples are hashable, comparable and cheap, which is
all the group machinery here needs.
"""

from itertools import permutations as _all_perms


def identity(n):
    return tuple(range(n))


def compose(p, q):
    """(p*q)(i) = p(q(i)): apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p):
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    return tuple(inv)


def conjugate(g, x):
    """g x g^{-1}."""
    return compose(g, compose(x, inverse(g)))


def sign(p):
    """Parity of p as +1/-1, by counting cycles."""
    n = len(p)
    seen = [False] * n
    s = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def cycle_notation(p):
    """Human-readable cycle string with 1-based points, e.g. '(12)(34)'.

    The identity is rendered as 'e'.
    """
    n = len(p)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        out.append("(" + "".join(str(k) for k in cyc) + ")")
    return "".join(out) if out else "e"


def from_cycles(n, cycles):
    """Build a permutation of degree n from 1-based cycles, e.g. [(1,2),(3,4)]."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def mulclose(gens, cap=10 ** 6):
    """Closure of gens under composition; BFS from the identity.

    Returns a set of permutations.  Raises RuntimeError when the closure
    exceeds cap elements (the group axioms guarantee inverses come for free
    in a finite closure).
    """
    gens = list(gens)
    if not gens:
        return {()}
    n = len(gens[0])
    els = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                w = compose(g, h)
                if w not in els:
                    els.add(w)
                    new.append(w)
                    if len(els) > cap:
                        raise RuntimeError("closure cap exceeded (%d)" % cap)
        frontier = new
    return els


def symmetric_group(n):
    """All permutations of degree n, sorted lexicographically."""
    return [tuple(p) for p in _all_perms(range(n))]
