"""Group-side realizations of the rack braidings.

The braidings built in :mod:`rackalg.braided` do not need a group to
exist, but they all come from one: an action of a finite group G on the
rack, a map g: X -> G, and a family of scalars chi_x(t) reproduce the
cocycle via q[x][y] = chi_y(g_x).  This module builds such data for the
conjugacy racks, audits every axiom exhaustively, constructs the matrix
coefficients the braided space generates inside the group algebra kG or
inside the function algebra on G, checks the diagonal characters those
coefficients support, and forms smash products of finite dimensional
quotient algebras with kG or with functions on G.

Everything here is exact and finite: groups are small permutation
groups, scalars are Fractions, and audits enumerate their whole domain
rather than sampling.
"""

from fractions import Fraction

from . import perm
from .braided import make_braiding
from .catalog import builtin_rack
from .cocycle import chi_character_value, validate_cocycle

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RealizationError(ValueError):
    """The supplied data cannot form a group realization."""


class NotModuleAlgebra(ValueError):
    """The action or grading is incompatible with the multiplication.

    Carries a witness tuple describing the first failing instance.
    """


class FiniteGroup:
    """A finite permutation group with a fixed element order.

    Elements are image tuples, sorted lexicographically, so indexing,
    iteration and serialization are deterministic.  Closure, identity
    and inverses are checked on construction; full associativity is
    rechecked for orders up to 24 (composition of maps is associative,
    the recheck guards against corrupted element lists).
    """

    __slots__ = ("degree", "elements", "index", "generators")

    def __init__(self, degree, elements, generators=()):
        els = sorted(set(elements))
        if not els:
            raise RealizationError("a group needs at least the identity")
        for p in els:
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise RealizationError(
                    "not a permutation of degree %d: %r" % (degree, p)
                )
        self.degree = degree
        self.elements = tuple(els)
        self.index = {p: i for i, p in enumerate(self.elements)}
        self.generators = tuple(generators)
        ident = perm.identity(degree)
        if ident not in self.index:
            raise RealizationError("identity is missing")
        for p in self.elements:
            if perm.inverse(p) not in self.index:
                raise RealizationError(
                    "inverse of %s is missing" % perm.cycle_notation(p)
                )
            for q in self.elements:
                if perm.compose(p, q) not in self.index:
                    raise RealizationError(
                        "product %s * %s escapes the set"
                        % (perm.cycle_notation(p), perm.cycle_notation(q))
                    )
        for g in self.generators:
            if g not in self.index:
                raise RealizationError("generator outside the group")
        if len(self.elements) <= 24:
            for p in self.elements:
                for q in self.elements:
                    pq = perm.compose(p, q)
                    for r in self.elements:
                        if perm.compose(pq, r) != perm.compose(
                            p, perm.compose(q, r)
                        ):
                            raise RealizationError("associativity broke")

    @classmethod
    def symmetric(cls, n):
        gens = []
        if n >= 2:
            gens.append(perm.from_cycles(n, [(1, 2)]))
        if n >= 3:
            gens.append(perm.from_cycles(n, [tuple(range(1, n + 1))]))
        elif n == 2:
            pass
        return cls(n, perm.symmetric_group(n), gens)

    @property
    def identity(self):
        return perm.identity(self.degree)

    def mul(self, p, q):
        return perm.compose(p, q)

    def inv(self, p):
        return perm.inverse(p)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p):
        return p in self.index

    def is_symmetric(self):
        full = 1
        for k in range(2, self.degree + 1):
            full *= k
        return len(self.elements) == full


class PrincipalRealization:
    """A braiding presented by group data.

    Stores the group, the rack, the element map ``gmap`` (one group
    element per rack element), the scalars chi_x(t) and the group action
    on rack indices.  The defining laws are not assumed here; run
    :func:`validate_principal` to certify them.
    """

    __slots__ = ("group", "rack", "gmap", "chi_name", "_chi", "_act")

    def __init__(self, group, rack, gmap, chi_table, act_table, chi_name=None):
        if len(gmap) != rack.n:
            raise RealizationError("gmap must list one group element per rack element")
        for p in gmap:
            if p not in group:
                raise RealizationError(
                    "gmap value %s is not in the group" % perm.cycle_notation(p)
                )
        self.group = group
        self.rack = rack
        self.gmap = tuple(gmap)
        self.chi_name = chi_name
        self._chi = tuple(dict(row) for row in chi_table)
        self._act = {t: tuple(row) for t, row in act_table.items()}
        if len(self._chi) != rack.n:
            raise RealizationError("chi needs one row per rack element")
        for row in self._chi:
            if len(row) != len(group):
                raise RealizationError("chi rows must cover the whole group")
        if set(self._act) != set(group.elements):
            raise RealizationError("action must cover the whole group")

    def chi(self, x, t):
        """The scalar chi_x(t)."""
        return self._chi[x][t]

    def act(self, t, x):
        """The group action t . x as a rack index."""
        return self._act[t][x]

    def induced_cocycle(self):
        """The 2-cocycle q[x][y] = chi_y(g_x), validated on the rack."""
        n = self.rack.n
        q = [[self.chi(y, self.gmap[x]) for y in range(n)] for x in range(n)]
        return validate_cocycle(self.rack, q)

    def to_json(self):
        group = self.group
        if group.is_symmetric():
            gdoc = "S%d" % group.degree
        else:
            gdoc = {
                "degree": group.degree,
                "elements": [list(p) for p in group.elements],
            }
        doc = {
            "group": gdoc,
            "rack": self.rack.to_json(),
            "g": [list(p) for p in self.gmap],
        }
        if self.chi_name is not None:
            doc["chi"] = self.chi_name
        else:
            doc["chi"] = [
                [str(self._chi[x][t]) for t in group.elements]
                for x in range(self.rack.n)
            ]
        return doc

    @classmethod
    def from_json(cls, doc):
        from .rack import Rack

        gdoc = doc["group"]
        if isinstance(gdoc, str):
            if not gdoc.startswith("S"):
                raise RealizationError("unknown group name %r" % gdoc)
            group = FiniteGroup.symmetric(int(gdoc[1:]))
        else:
            group = FiniteGroup(
                int(gdoc["degree"]),
                [tuple(int(i) for i in p) for p in gdoc["elements"]],
            )
        rack = Rack.from_json(doc["rack"])
        gmap = [tuple(int(i) for i in p) for p in doc["g"]]
        chi = doc["chi"]
        if isinstance(chi, str):
            return principal_realization(rack, gmap, chi, group)
        table = [
            {t: Fraction(chi[x][i]) for i, t in enumerate(group.elements)}
            for x in range(rack.n)
        ]
        return principal_realization(rack, gmap, table, group)


def _conjugation_action(group, gmap):
    """Action table t . x = index of t g_x t^{-1} inside gmap.

    Raises RealizationError when conjugation leaves the listed set, or
    when gmap repeats an element (the index would be ambiguous).
    """
    pos = {}
    for x, p in enumerate(gmap):
        if p in pos:
            raise RealizationError(
                "gmap repeats %s; conjugation indices would be ambiguous"
                % perm.cycle_notation(p)
            )
        pos[p] = x
    table = {}
    for t in group.elements:
        row = []
        for p in gmap:
            c = perm.conjugate(t, p)
            if c not in pos:
                raise RealizationError(
                    "conjugate %s of %s leaves the class"
                    % (perm.cycle_notation(c), perm.cycle_notation(p))
                )
            row.append(pos[c])
        table[t] = tuple(row)
    return table


def _chi_rows(group, gmap, chi):
    """Expand a chi specification into one dict per rack element."""
    if chi == "sgn":
        rows = []
        for _ in gmap:
            rows.append({t: Fraction(perm.sign(t)) for t in group.elements})
        return rows, "sgn"
    if chi == "ms-chi":
        rows = []
        for p in gmap:
            support = tuple(i for i in range(len(p)) if p[i] != i)
            if len(support) != 2:
                raise RealizationError(
                    "ms-chi needs transpositions, got %s" % perm.cycle_notation(p)
                )
            rows.append(
                {t: chi_character_value(t, support) for t in group.elements}
            )
        return rows, "ms-chi"
    rows = []
    for raw in chi:
        row = {}
        for t, v in raw.items():
            row[t] = Fraction(v)
        if set(row) != set(group.elements):
            raise RealizationError("explicit chi row must cover the group")
        rows.append(row)
    return rows, None


def principal_realization(rack, gmap, chi="sgn", group=None):
    """Build a realization whose action is conjugation along gmap.

    ``chi`` is "sgn", "ms-chi" (the order character on transpositions),
    or an explicit list of dicts mapping group elements to scalars.
    """
    gmap = tuple(tuple(p) for p in gmap)
    if group is None:
        if not gmap:
            raise RealizationError("empty gmap")
        group = FiniteGroup.symmetric(len(gmap[0]))
    act = _conjugation_action(group, gmap)
    rows, name = _chi_rows(group, gmap, chi)
    return PrincipalRealization(group, rack, gmap, rows, act, chi_name=name)


def builtin_realization(rack_name, cocycle_spec):
    """The natural datum for a builtin rack and cocycle.

    The constant -1 cocycle is realized by the sign character, the chi
    cocycle by the order character.  Other constants have no builtin
    datum here.
    """
    rack, class_perms = builtin_rack(rack_name)
    if cocycle_spec == "chi":
        chi = "ms-chi"
    elif cocycle_spec == "const:-1":
        chi = "sgn"
    else:
        raise RealizationError(
            "no builtin realization for cocycle %r" % cocycle_spec
        )
    return principal_realization(rack, class_perms, chi)


def _wit(report, key, item, cap=5):
    entry = report[key]
    entry["ok"] = False
    if len(entry["witnesses"]) < cap:
        entry["witnesses"].append(item)


def validate_principal(realization, cocycle=None):
    """Exhaustive audit of the defining laws of a realization.

    Checks, over the whole group and rack: that the stored action is a
    left action, that gmap is equivariant, that acting by gmap[x]
    reproduces the rack, that chi satisfies the twisted multiplication
    rule chi_i(ht) = chi_i(t) chi_{t.i}(h), that no chi value vanishes,
    and (when a cocycle is supplied) that chi_y(g_x) matches it entry by
    entry.  Returns a report dict with a witness list per law.
    """
    r = realization
    group, rack = r.group, r.rack
    n = rack.n
    names = (
        "left_action",
        "equivariance",
        "rack_match",
        "cocycle_rule",
        "values_nonzero",
    )
    report = {k: {"ok": True, "checked": 0, "witnesses": []} for k in names}
    if cocycle is not None:
        report["q_match"] = {"ok": True, "checked": 0, "witnesses": []}

    ident = group.identity
    for x in range(n):
        report["left_action"]["checked"] += 1
        if r.act(ident, x) != x:
            _wit(report, "left_action", ("e", rack.labels[x]))
    for s in group.elements:
        for t in group.elements:
            st = group.mul(s, t)
            for x in range(n):
                report["left_action"]["checked"] += 1
                if r.act(st, x) != r.act(s, r.act(t, x)):
                    _wit(
                        report,
                        "left_action",
                        (
                            perm.cycle_notation(s),
                            perm.cycle_notation(t),
                            rack.labels[x],
                        ),
                    )

    for h in group.elements:
        for x in range(n):
            report["equivariance"]["checked"] += 1
            lhs = r.gmap[r.act(h, x)]
            rhs = perm.conjugate(h, r.gmap[x])
            if lhs != rhs:
                _wit(
                    report,
                    "equivariance",
                    (perm.cycle_notation(h), rack.labels[x]),
                )

    for x in range(n):
        for y in range(n):
            report["rack_match"]["checked"] += 1
            if r.act(r.gmap[x], y) != rack.act(x, y):
                _wit(report, "rack_match", (rack.labels[x], rack.labels[y]))

    for h in group.elements:
        for t in group.elements:
            ht = group.mul(h, t)
            for x in range(n):
                report["cocycle_rule"]["checked"] += 1
                if r.chi(x, ht) != r.chi(x, t) * r.chi(r.act(t, x), h):
                    _wit(
                        report,
                        "cocycle_rule",
                        (
                            perm.cycle_notation(h),
                            perm.cycle_notation(t),
                            rack.labels[x],
                        ),
                    )

    for x in range(n):
        for t in group.elements:
            report["values_nonzero"]["checked"] += 1
            if r.chi(x, t) == 0:
                _wit(
                    report,
                    "values_nonzero",
                    (rack.labels[x], perm.cycle_notation(t)),
                )

    if cocycle is not None:
        for x in range(n):
            for y in range(n):
                report["q_match"]["checked"] += 1
                if r.chi(y, r.gmap[x]) != cocycle(x, y):
                    _wit(report, "q_match", (rack.labels[x], rack.labels[y]))

    report["ok"] = all(report[k]["ok"] for k in report if k != "ok")
    return report


def dual_braiding_check(realization):
    """Compare both braidings derived from the group data with the
    table-built ones.

    On the group side c(v_x (x) v_y) = g_x . v_y (x) v_x, which must be
    the V braiding.  On the function side the coaction of v_x is
    sum_t chi_x(t^{-1}) delta_t (x) v_{t^{-1}.x} and delta_t picks the
    v_y with g_y^{-1} = t; contracting gives the W braiding.  Both sums
    are evaluated literally, term by term over the group.
    """
    r = realization
    group, rack = r.group, r.rack
    n = rack.n
    q = r.induced_cocycle()
    report = {
        "V": {"ok": True, "checked": 0, "witnesses": []},
        "W": {"ok": True, "checked": 0, "witnesses": []},
    }

    v_space = make_braiding(rack, q, "V")
    for x in range(n):
        for y in range(n):
            gx = r.gmap[x]
            derived = ((r.act(gx, y), x), r.chi(y, gx))
            report["V"]["checked"] += 1
            if derived != v_space.apply_pair(x, y):
                _wit(report, "V", (rack.labels[x], rack.labels[y]))

    w_space = make_braiding(rack, q, "W")
    for x in range(n):
        for y in range(n):
            acc = {}
            for t in group.elements:
                if t != group.inv(r.gmap[y]):
                    continue
                coeff = r.chi(x, group.inv(t))
                target = (y, r.act(group.inv(t), x))
                acc[target] = acc.get(target, _ZERO) + coeff
            acc = {k: v for k, v in acc.items() if v != 0}
            report["W"]["checked"] += 1
            expected_target, expected_coeff = w_space.apply_pair(x, y)
            if acc != {expected_target: expected_coeff}:
                _wit(report, "W", (rack.labels[x], rack.labels[y]))

    report["ok"] = report["V"]["ok"] and report["W"]["ok"]
    return report


# ---------------------------------------------------------------------------
# elements of kG and of the function algebra on G, as sparse dicts


def _strip(d):
    return {k: v for k, v in d.items() if v != 0}

def _scale(d, c):
    if c == 0:
        return {}
    return {k: c * v for k, v in d.items()}

def _add_into(acc, d, c=_ONE):
    for k, v in d.items():
        acc[k] = acc.get(k, _ZERO) + c * v

def _conv_mul(a, b):
    """Product in kG: group elements multiply, coefficients convolve."""
    out = {}
    for p, cp in a.items():
        for q_, cq in b.items():
            k = perm.compose(p, q_)
            out[k] = out.get(k, _ZERO) + cp * cq
    return _strip(out)

def _pointwise_mul(a, b):
    out = {}
    for t, v in a.items():
        w = b.get(t)
        if w is not None:
            out[t] = v * w
    return _strip(out)


def pointed_comatrix(realization):
    """Matrix coefficients of the braided space inside kG.

    Diagonal entries are the group elements gmap[x]; off-diagonal
    entries vanish because the coaction is by single group elements.
    """
    n = realization.rack.n
    e = {}
    for x in range(n):
        for y in range(n):
            e[(x, y)] = {realization.gmap[x]: _ONE} if x == y else {}
    return e


def copointed_comatrix(realization):
    """Matrix coefficients inside the function algebra on G.

    e[x][y] is the function t -> chi_x(t^{-1}) [t^{-1} . x == y], stored
    sparsely on its support.
    """
    r = realization
    group = r.group
    n = r.rack.n
    e = {}
    for x in range(n):
        for y in range(n):
            f = {}
            for t in group.elements:
                ti = group.inv(t)
                if r.act(ti, x) == y:
                    f[t] = r.chi(x, ti)
            e[(x, y)] = _strip(f)
    return e


def comatrix_action_audit(realization, side, cocycle=None):
    """Exhaustive audit of the comatrix coefficients on one side.

    side "pointed" works inside kG, side "copointed" inside functions
    on G.  Checks the action evaluations against the cocycle, the
    exchange law between coefficients, the compatibility between action
    and coaction over the whole group basis, the comatrix coproduct and
    counit, and the antipode (powers 0 and 1; the square is the
    identity on both sides, which is asserted too).  A deliberately
    wrong ``cocycle`` makes the evaluation checks fail with witnesses,
    which is the intended negative control.
    """
    r = realization
    group, rack = r.group, r.rack
    n = rack.n
    q = cocycle if cocycle is not None else r.induced_cocycle()

    if side == "pointed":
        return _pointed_audit(r, group, rack, n, q)
    if side == "copointed":
        return _copointed_audit(r, group, rack, n, q)
    raise ValueError("side must be 'pointed' or 'copointed'")


def _pointed_audit(r, group, rack, n, q):
    e = pointed_comatrix(r)
    names = ("action_eval", "exchange", "yd_compat", "coproduct", "counit",
             "antipode")
    report = {k: {"ok": True, "checked": 0, "witnesses": []} for k in names}

    def mu(x, y, elt):
        # coefficient of v_y in elt . v_x, for elt in kG
        total = _ZERO
        for t, c in elt.items():
            if r.act(t, x) == y:
                total += c * r.chi(x, t)
        return total

    for x in range(n):
        for y in range(n):
            for z in range(n):
                for t in range(n):
                    report["action_eval"]["checked"] += 1
                    expected = _ZERO
                    if z == t and y == rack.act(z, x):
                        expected = q(z, x)
                    if mu(x, y, e[(z, t)]) != expected:
                        _wit(report, "action_eval", (x, y, z, t))

    for s in range(n):
        for t in range(n):
            for x in range(n):
                for y in range(n):
                    report["exchange"]["checked"] += 1
                    lhs = _scale(_conv_mul(e[(s, t)], e[(x, y)]), q(t, y))
                    rhs = _scale(
                        _conv_mul(e[(rack.act(s, x), rack.act(t, y))], e[(s, t)]),
                        q(s, x),
                    )
                    if lhs != rhs:
                        _wit(report, "exchange", (s, t, x, y))

    # action and coaction must interlock over every group element h:
    # sum_y mu(x,y,h) e[y,z] h  ==  sum_y mu(y,z,h) h e[x,y]
    for x in range(n):
        for z in range(n):
            for h in group.elements:
                report["yd_compat"]["checked"] += 1
                lhs = {}
                rhs = {}
                hd = {h: _ONE}
                for y in range(n):
                    c = mu(x, y, hd)
                    if c != 0:
                        _add_into(lhs, _conv_mul(e[(y, z)], hd), c)
                    c = mu(y, z, hd)
                    if c != 0:
                        _add_into(rhs, _conv_mul(hd, e[(x, y)]), c)
                if _strip(lhs) != _strip(rhs):
                    _wit(
                        report,
                        "yd_compat",
                        (rack.labels[x], rack.labels[z], perm.cycle_notation(h)),
                    )

    for x in range(n):
        for y in range(n):
            report["coproduct"]["checked"] += 1
            lhs = {}
            for t, c in e[(x, y)].items():
                lhs[(t, t)] = lhs.get((t, t), _ZERO) + c
            rhs = {}
            for u in range(n):
                for s, cs in e[(x, u)].items():
                    for t, ct in e[(u, y)].items():
                        rhs[(s, t)] = rhs.get((s, t), _ZERO) + cs * ct
            if _strip(lhs) != _strip(rhs):
                _wit(report, "coproduct", (x, y))
            report["counit"]["checked"] += 1
            total = sum(e[(x, y)].values(), _ZERO)
            if total != (_ONE if x == y else _ZERO):
                _wit(report, "counit", (x, y))

    # antipode axiom on the comatrix, powers 0 and 1; S(g) = g^{-1} and
    # S^2 = id, so these two powers decide every power
    for x in range(n):
        for y in range(n):
            report["antipode"]["checked"] += 1
            left = {}
            right = {}
            for u in range(n):
                s_first = {group.inv(t): c for t, c in e[(x, u)].items()}
                _add_into(left, _conv_mul(s_first, e[(u, y)]))
                s_last = {group.inv(t): c for t, c in e[(u, y)].items()}
                _add_into(right, _conv_mul(e[(x, u)], s_last))
            expected = {group.identity: _ONE} if x == y else {}
            if _strip(left) != expected or _strip(right) != expected:
                _wit(report, "antipode", (x, y))
            for t in e[(x, y)]:
                if perm.inverse(perm.inverse(t)) != t:
                    _wit(report, "antipode", ("square", x, y))

    report["ok"] = all(report[k]["ok"] for k in report if k != "ok")
    return report


def _copointed_audit(r, group, rack, n, q):
    e = copointed_comatrix(r)
    names = ("action_eval", "exchange", "yd_compat", "coproduct", "counit",
             "antipode")
    report = {k: {"ok": True, "checked": 0, "witnesses": []} for k in names}

    def mu(z, t, f):
        # coefficient of w_z in f . w_z for f a function, zero unless z == t
        if z != t:
            return _ZERO
        return f.get(group.inv(r.gmap[z]), _ZERO)

    for z in range(n):
        for t in range(n):
            for x in range(n):
                for y in range(n):
                    report["action_eval"]["checked"] += 1
                    expected = _ZERO
                    if z == t and rack.act(z, x) == y:
                        expected = q(z, x)
                    if mu(z, t, e[(x, y)]) != expected:
                        _wit(report, "action_eval", (z, t, x, y))

    # the exchange coefficients pair the second factor's first index
    # with the first factor's indices: q(y,t) against q(x,s); any other
    # pairing breaks on the order character already over the rack of
    # transpositions
    for s in range(n):
        for t in range(n):
            for x in range(n):
                for y in range(n):
                    report["exchange"]["checked"] += 1
                    lhs = _scale(_pointwise_mul(e[(s, t)], e[(x, y)]), q(y, t))
                    rhs = _scale(
                        _pointwise_mul(
                            e[(x, y)], e[(rack.act(x, s), rack.act(y, t))]
                        ),
                        q(x, s),
                    )
                    if lhs != rhs:
                        _wit(report, "exchange", (s, t, x, y))

    # the delta-basis form of the action/coaction compatibility: for
    # every x, z and every group element g the two functions
    # e[x,z](g_x g) delta_{g_x g} and e[x,z](g g_z) delta_{g g_z} agree
    for x in range(n):
        for z in range(n):
            exz = e[(x, z)]
            gx = r.gmap[x]
            gz = r.gmap[z]
            for g in group.elements:
                report["yd_compat"]["checked"] += 1
                lk = group.mul(gx, g)
                rk = group.mul(g, gz)
                lhs = _strip({lk: exz.get(lk, _ZERO)})
                rhs = _strip({rk: exz.get(rk, _ZERO)})
                if lhs != rhs:
                    _wit(
                        report,
                        "yd_compat",
                        (rack.labels[x], rack.labels[z], perm.cycle_notation(g)),
                    )

    for x in range(n):
        for y in range(n):
            exy = e[(x, y)]
            for a in group.elements:
                for b in group.elements:
                    report["coproduct"]["checked"] += 1
                    lhs = exy.get(perm.compose(a, b), _ZERO)
                    rhs = _ZERO
                    for u in range(n):
                        rhs += e[(x, u)].get(a, _ZERO) * e[(u, y)].get(b, _ZERO)
                    if lhs != rhs:
                        _wit(
                            report,
                            "coproduct",
                            (x, y, perm.cycle_notation(a), perm.cycle_notation(b)),
                        )
            report["counit"]["checked"] += 1
            if exy.get(group.identity, _ZERO) != (_ONE if x == y else _ZERO):
                _wit(report, "counit", (x, y))

    def antipode(f):
        return _strip({perm.inverse(t): c for t, c in f.items()})

    for x in range(n):
        for y in range(n):
            exy = e[(x, y)]
            for z in range(n):
                report["antipode"]["checked"] += 1
                # power 0: acts by evaluation at g_z^{-1}
                got0 = exy.get(group.inv(r.gmap[z]), _ZERO)
                want0 = q(z, x) if rack.act(z, x) == y else _ZERO
                # power 1: S(f) evaluates f at g_z
                got1 = antipode(exy).get(group.inv(r.gmap[z]), _ZERO)
                want1 = 1 / q(z, y) if rack.act(z, y) == x else _ZERO
                if got0 != want0 or got1 != want1:
                    _wit(report, "antipode", (x, y, z))
            report["antipode"]["checked"] += 1
            if antipode(antipode(exy)) != exy:
                _wit(report, "antipode", ("square", x, y))
            left = {}
            right = {}
            for u in range(n):
                _add_into(left, _pointwise_mul(antipode(e[(x, u)]), e[(u, y)]))
                _add_into(right, _pointwise_mul(e[(x, u)], antipode(e[(u, y)])))
            expected = (
                {t: _ONE for t in group.elements} if x == y else {}
            )
            report["antipode"]["checked"] += 1
            if _strip(left) != expected or _strip(right) != expected:
                _wit(report, "antipode", ("axiom", x, y))

    report["ok"] = all(report[k]["ok"] for k in report if k != "ok")
    return report


def theta_characters(realization):
    """The diagonal characters carried by the copointed comatrix.

    theta_z sends e[x,y] to q(z,x) when z acts on x to give y, else to
    zero.  The audit identifies each theta_z with evaluation at
    gmap[z]^{-1}, checks multiplicativity on products of coefficients,
    verifies the exchange relation theta_z theta_t = theta_t theta_{t.z}
    twice (once by convolving evaluations over the whole group basis,
    once through the comatrix coproduct), and records whether the
    characters are pairwise distinct.  On a rack with repeated columns
    they are not, and the report says so rather than failing.
    """
    r = realization
    group, rack = r.group, r.rack
    n = rack.n
    q = r.induced_cocycle()
    e = copointed_comatrix(r)

    vals = [
        [
            [q(z, x) if rack.act(z, x) == y else _ZERO for y in range(n)]
            for x in range(n)
        ]
        for z in range(n)
    ]

    report = {
        "identified": {"ok": True, "checked": 0, "witnesses": []},
        "algebra_map": {"ok": True, "checked": 0, "witnesses": []},
        "exchange_convolution": {"ok": True, "checked": 0, "witnesses": []},
        "exchange_comatrix": {"ok": True, "checked": 0, "witnesses": []},
    }

    evaluation_points = []
    for z in range(n):
        point = group.inv(r.gmap[z])
        evaluation_points.append(point)
        matches = []
        for a in group.elements:
            if all(
                e[(x, y)].get(a, _ZERO) == vals[z][x][y]
                for x in range(n)
                for y in range(n)
            ):
                matches.append(a)
        report["identified"]["checked"] += 1
        if point not in matches:
            _wit(report, "identified", rack.labels[z])

    for z in range(n):
        a = evaluation_points[z]
        for x in range(n):
            for y in range(n):
                for s in range(n):
                    for t in range(n):
                        report["algebra_map"]["checked"] += 1
                        prod = _pointwise_mul(e[(x, y)], e[(s, t)])
                        if prod.get(a, _ZERO) != vals[z][x][y] * vals[z][s][t]:
                            _wit(report, "algebra_map", (z, x, y, s, t))

    for z in range(n):
        for t in range(n):
            tz = rack.act(t, z)
            report["exchange_convolution"]["checked"] += 1
            lhs = {}
            rhs = {}
            for g in group.elements:
                left = _ZERO
                right = _ZERO
                for a in group.elements:
                    b = group.mul(group.inv(a), g)
                    left += (_ONE if a == evaluation_points[z] else _ZERO) * (
                        _ONE if b == evaluation_points[t] else _ZERO
                    )
                    right += (_ONE if a == evaluation_points[t] else _ZERO) * (
                        _ONE if b == evaluation_points[tz] else _ZERO
                    )
                if left:
                    lhs[g] = left
                if right:
                    rhs[g] = right
            if lhs != rhs:
                _wit(
                    report,
                    "exchange_convolution",
                    (rack.labels[z], rack.labels[t]),
                )

            report["exchange_comatrix"]["checked"] += 1
            ok = True
            for x in range(n):
                for y in range(n):
                    left = sum(
                        (vals[z][x][u] * vals[t][u][y] for u in range(n)),
                        _ZERO,
                    )
                    right = sum(
                        (vals[t][x][u] * vals[tz][u][y] for u in range(n)),
                        _ZERO,
                    )
                    if left != right:
                        ok = False
            if not ok:
                _wit(
                    report,
                    "exchange_comatrix",
                    (rack.labels[z], rack.labels[t]),
                )

    collisions = []
    for z in range(n):
        for t in range(z + 1, n):
            if vals[z] == vals[t]:
                collisions.append((rack.labels[z], rack.labels[t]))
    report["distinct"] = not collisions
    report["collisions"] = collisions
    report["gmap_injective"] = len(set(r.gmap)) == n
    report["ok"] = all(
        report[k]["ok"]
        for k in (
            "identified",
            "algebra_map",
            "exchange_convolution",
            "exchange_comatrix",
        )
    )
    return report


# ---------------------------------------------------------------------------
# finite dimensional algebras and smash products


class FiniteDimAlgebra:
    """An algebra given by structure constants on an indexed basis.

    ``table[i][j]`` is the product of basis elements i and j as a sparse
    dict index -> coefficient, and ``unit`` is the unit element in the
    same encoding.  ``labels`` is optional and only used in reports.
    """

    __slots__ = ("dim", "table", "unit", "labels")

    def __init__(self, dim, table, unit, labels=None):
        if len(table) != dim or any(len(row) != dim for row in table):
            raise ValueError("table must be dim x dim")
        self.dim = dim
        self.table = table
        self.unit = _strip(dict(unit))
        self.labels = tuple(labels) if labels is not None else None

    def multiply(self, a, b):
        out = {}
        for i, ci in a.items():
            row = self.table[i]
            for j, cj in b.items():
                _add_into(out, row[j], ci * cj)
        return _strip(out)

    def label(self, i):
        return self.labels[i] if self.labels else str(i)

    def unit_audit(self):
        report = {"ok": True, "checked": 0, "witnesses": []}
        for i in range(self.dim):
            basis = {i: _ONE}
            report["checked"] += 2
            if self.multiply(self.unit, basis) != basis:
                report["ok"] = False
                if len(report["witnesses"]) < 5:
                    report["witnesses"].append(("left", self.label(i)))
            if self.multiply(basis, self.unit) != basis:
                report["ok"] = False
                if len(report["witnesses"]) < 5:
                    report["witnesses"].append(("right", self.label(i)))
        return report

    def associativity_audit(self):
        """Check (ab)c == a(bc) on every basis triple.

        Runs the full cube; empty products short-circuit, which keeps
        the loop fast on sparse tables like the smash products.
        """
        d = self.dim
        T = self.table
        report = {"ok": True, "checked": 0, "witnesses": []}
        for i in range(d):
            Ti = T[i]
            for j in range(d):
                P = Ti[j]
                Tj = T[j]
                for k in range(d):
                    Q = Tj[k]
                    report["checked"] += 1
                    if not P and not Q:
                        continue
                    lhs = {}
                    for m, c in P.items():
                        _add_into(lhs, T[m][k], c)
                    rhs = {}
                    for m, c in Q.items():
                        _add_into(rhs, Ti[m], c)
                    if _strip(lhs) != _strip(rhs):
                        report["ok"] = False
                        if len(report["witnesses"]) < 5:
                            report["witnesses"].append(
                                (self.label(i), self.label(j), self.label(k))
                            )
        return report


def scalar_algebra():
    return FiniteDimAlgebra(1, [[{0: _ONE}]], {0: _ONE}, labels=("1",))


def algebra_from_quotient(quotient):
    """Wrap a freealg.QuotientAlgebra as structure constants."""
    words = quotient.words
    index = quotient.index
    dim = len(words)
    table = []
    for u in words:
        row = []
        for v in words:
            prod = quotient.mul_words(u, v)
            row.append({index[w]: c for w, c in prod.items() if c != 0})
        table.append(row)
    labels = tuple(
        "*".join(str(a) for a in w) if w else "1" for w in words
    )
    return FiniteDimAlgebra(dim, table, {index[b""]: _ONE}, labels=labels)


def quotient_group_action(realization, quotient):
    """Extend the basis action g . v_x = chi_x(g) v_{g.x} to a quotient.

    Acts letterwise on normal words and reduces back to normal form.
    Returns a dict group element -> list of sparse images, one per basis
    word.  Whether this respects the multiplication is a separate audit.
    """
    r = realization
    index = quotient.index
    act = {}
    for g in r.group.elements:
        images = []
        for w in quotient.words:
            coeff = _ONE
            target = []
            for a in w:
                coeff *= r.chi(a, g)
                target.append(r.act(g, a))
            reduced = quotient.nf_terms({bytes(target): coeff})
            images.append(
                {index[u]: c for u, c in reduced.items() if c != 0}
            )
        act[g] = images
    return act


def module_algebra_audit_group(algebra, group, action):
    """Does the group action respect unit and products, exhaustively."""
    report = {"ok": True, "checked": 0, "witnesses": []}

    def apply(g, elt):
        out = {}
        images = action[g]
        for i, c in elt.items():
            _add_into(out, images[i], c)
        return _strip(out)

    for g in group.elements:
        report["checked"] += 1
        if apply(g, algebra.unit) != algebra.unit:
            report["ok"] = False
            if len(report["witnesses"]) < 5:
                report["witnesses"].append(("unit", perm.cycle_notation(g)))
        for i in range(algebra.dim):
            gi = _strip(dict(action[g][i]))
            for j in range(algebra.dim):
                report["checked"] += 1
                lhs = apply(g, algebra.table[i][j])
                rhs = algebra.multiply(gi, _strip(dict(action[g][j])))
                if lhs != rhs:
                    report["ok"] = False
                    if len(report["witnesses"]) < 5:
                        report["witnesses"].append(
                            (
                                perm.cycle_notation(g),
                                algebra.label(i),
                                algebra.label(j),
                            )
                        )
    return report


def smash_with_group(algebra, group, action):
    """The smash product A # kG for a G-module algebra A.

    Basis a_i (x) g with product (a (x) g)(b (x) h) = a (g.b) (x) gh.
    Raises NotModuleAlgebra with the first witness when the action does
    not respect the multiplication.
    """
    check = module_algebra_audit_group(algebra, group, action)
    if not check["ok"]:
        raise NotModuleAlgebra(check["witnesses"][0])
    order = len(group)
    dim = algebra.dim * order
    elems = group.elements

    def bindex(i, gi):
        return i * order + gi

    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for i in range(algebra.dim):
        for gi, g in enumerate(elems):
            row_src = bindex(i, gi)
            for j in range(algebra.dim):
                moved = action[g][j]
                for hi, h in enumerate(elems):
                    gh = group.index[group.mul(g, h)]
                    out = {}
                    for m, cm in moved.items():
                        _add_into(out, algebra.table[i][m], cm)
                    table[row_src][bindex(j, hi)] = {
                        bindex(m, gh): c for m, c in _strip(out).items()
                    }
    unit = {}
    egi = group.index[group.identity]
    for i, c in algebra.unit.items():
        unit[bindex(i, egi)] = c
    labels = None
    if algebra.labels:
        labels = tuple(
            "%s#%s" % (algebra.labels[i], perm.cycle_notation(elems[gi]))
            for i in range(algebra.dim)
            for gi in range(order)
        )
    return FiniteDimAlgebra(dim, table, unit, labels=labels)


def quotient_grading(realization, quotient):
    """Degrees of normal words for the function-algebra side.

    A letter x carries degree gmap[x]^{-1}; a word multiplies the
    degrees of its letters left to right.
    """
    r = realization
    degs = []
    for w in quotient.words:
        d = r.group.identity
        for a in w:
            d = r.group.mul(d, r.group.inv(r.gmap[a]))
        degs.append(d)
    return tuple(degs)


def module_algebra_audit_grading(algebra, group, degrees):
    """Is the grading multiplicative, exhaustively.

    Every nonzero product of homogeneous basis elements must again be
    homogeneous, of the product degree, and the unit must sit in the
    identity component.
    """
    report = {"ok": True, "checked": 0, "witnesses": []}
    ident = group.identity
    for i in algebra.unit:
        report["checked"] += 1
        if degrees[i] != ident:
            report["ok"] = False
            report["witnesses"].append(("unit", algebra.label(i)))
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            report["checked"] += 1
            want = group.mul(degrees[i], degrees[j])
            for m in algebra.table[i][j]:
                if degrees[m] != want:
                    report["ok"] = False
                    if len(report["witnesses"]) < 5:
                        report["witnesses"].append(
                            (algebra.label(i), algebra.label(j), algebra.label(m))
                        )
                    break
    return report


def smash_with_dual(algebra, group, degrees):
    """The smash product A # (functions on G) for a G-graded A.

    Basis a_i (x) delta_g with product
    (a (x) delta_g)(b (x) delta_h) = [g == deg(b) h] (ab (x) delta_h).
    Raises NotModuleAlgebra when the grading is not multiplicative.
    """
    check = module_algebra_audit_grading(algebra, group, degrees)
    if not check["ok"]:
        raise NotModuleAlgebra(check["witnesses"][0])
    order = len(group)
    dim = algebra.dim * order
    elems = group.elements

    def bindex(i, gi):
        return i * order + gi

    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for j in range(algebra.dim):
        dj = degrees[j]
        for hi, h in enumerate(elems):
            gi = group.index[group.mul(dj, h)]
            col = bindex(j, hi)
            for i in range(algebra.dim):
                table[bindex(i, gi)][col] = {
                    bindex(m, hi): c for m, c in algebra.table[i][j].items()
                }
    unit = {}
    for i, c in algebra.unit.items():
        for gi in range(order):
            unit[bindex(i, gi)] = c
    labels = None
    if algebra.labels:
        labels = tuple(
            "%s#d(%s)" % (algebra.labels[i], perm.cycle_notation(elems[gi]))
            for i in range(algebra.dim)
            for gi in range(order)
        )
    return FiniteDimAlgebra(dim, table, unit, labels=labels)


def rational_characters(group):
    """All multiplicative characters of the group with rational values.

    Rational values of finite order are 1 and -1, so candidates are sign
    assignments on the generators, extended by multiplicativity and
    rejected on conflict.  Returns dicts keyed by group element, sorted
    deterministically.
    """
    gens = list(group.generators) if group.generators else list(group.elements)
    found = {}
    for mask in range(1 << len(gens)):
        assign = {
            gens[k]: (_ONE if mask >> k & 1 == 0 else -_ONE)
            for k in range(len(gens))
        }
        values = {group.identity: _ONE}
        frontier = [group.identity]
        ok = True
        while frontier and ok:
            new = []
            for h in frontier:
                for g, vg in assign.items():
                    w = group.mul(g, h)
                    v = vg * values[h]
                    if w in values:
                        if values[w] != v:
                            ok = False
                            break
                    else:
                        values[w] = v
                        new.append(w)
                if not ok:
                    break
            frontier = new
        if ok and len(values) == len(group):
            key = tuple(values[t] for t in group.elements)
            found[key] = values
    return tuple(found[k] for k in sorted(found))


def character_span_obstruction(group, rack):
    """A counting obstruction to realizing a braiding over functions on G.

    A realization of the group-side flavor inside the function algebra
    would attach to every rack element a one dimensional grading piece,
    that is a rational character of G, and rack elements with different
    action rows need different characters.  When the rack has more
    distinct rows than G has characters, no such realization exists.
    The report only ever certifies the negative direction.
    """
    rows = {tuple(rack.act(x, y) for y in range(rack.n)) for x in range(rack.n)}
    chars = rational_characters(group)
    return {
        "characters_available": len(chars),
        "distinct_rows_needed": len(rows),
        "obstructed": len(chars) < len(rows),
    }
