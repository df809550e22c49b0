"""Deformed quadratic ideals, their parameter spaces, and lifting data.

Three named families of deformations over the transposition racks of S3/S4
and the 4-cycle rack, plus a generic family b_C - lambda_C driven by a
rack+cocycle.  Verification is by exact rational specialization: seeded
samples feed the Groebner engine, which certifies nontriviality and (on
the admissible parameter sets) flatness of the dimension.
"""

from fractions import Fraction

from . import catalog, perm, quadrel
from .freealg import (
    FreePoly,
    groebner,
    is_trivial_quotient,
    normal_form,
    quotient_dim,
)


class IndexMismatch(ValueError):
    """Parameter labels do not line up with the rack."""


class NonzeroCheckFailed(AssertionError):
    """A sampled specialization came out trivial or non-flat."""


class ConditionViolated(ValueError):
    """A class element collides with a generator comatrix element."""


class NormalizationViolated(ValueError):
    """Copointed scalars break their normalization constraints."""


EMINUS = "Eminus"
ECHI = "Echi"
ETILDE = "Etilde"
GENERIC = "GenericLambda"


def transposition_pairs(n):
    """(i, j) with i < j, 1-based, aligned with transposition_rack(n)."""
    _, perms = catalog.transposition_rack(n)
    out = []
    for p in perms:
        moved = tuple(i + 1 for i in range(len(p)) if p[i] != i)
        assert len(moved) == 2
        out.append(moved)
    return out


def fourcycle_inverses():
    """idx -> idx of the inverse 4-cycle, on the o44 rack order."""
    _, perms = catalog.builtin_rack("o44")
    index = {p: i for i, p in enumerate(perms)}
    return tuple(index[perm.inverse(p)] for p in perms)


def _normalize_scalars(raw, labels, what):
    """Accept a scalar, a label-keyed dict, or a full sequence."""
    m = len(labels)
    if isinstance(raw, dict):
        vals = [None] * m
        label_index = {lab: i for i, lab in enumerate(labels)}
        for key, v in raw.items():
            if key in label_index:
                vals[label_index[key]] = Fraction(v)
            elif isinstance(key, int) and 0 <= key < m:
                vals[key] = Fraction(v)
            else:
                raise IndexMismatch(f"unknown {what} label {key!r}")
        if any(v is None for v in vals):
            missing = [labels[i] for i, v in enumerate(vals) if v is None]
            raise IndexMismatch(f"missing {what} values for {missing}")
        return tuple(vals)
    if isinstance(raw, (list, tuple)):
        if len(raw) != m:
            raise IndexMismatch(f"{what} needs {m} values, got {len(raw)}")
        return tuple(Fraction(v) for v in raw)
    return (Fraction(raw),) * m


class DeformParams:
    """One parameter point of a deformation family."""

    __slots__ = ("family", "n", "rack_name", "cocycle_spec", "data")

    def __init__(self, family, n=None, rack_name=None, cocycle_spec=None,
                 data=None):
        self.family = family
        self.n = n
        self.rack_name = rack_name
        self.cocycle_spec = cocycle_spec
        self.data = data or {}

    @classmethod
    def eminus(cls, n, alpha, mu1=0, mu2=0):
        rack, _ = catalog.transposition_rack(n)
        return cls(
            EMINUS,
            n=n,
            data={
                "alpha": _normalize_scalars(alpha, rack.labels, "alpha"),
                "mu1": Fraction(mu1),
                "mu2": Fraction(mu2),
            },
        )

    @classmethod
    def echi(cls, n, alpha, mu=0):
        rack, _ = catalog.transposition_rack(n)
        return cls(
            ECHI,
            n=n,
            data={
                "alpha": _normalize_scalars(alpha, rack.labels, "alpha"),
                "mu": Fraction(mu),
            },
        )

    @classmethod
    def etilde(cls, beta, mu1=0, mu2=0):
        rack, _ = catalog.builtin_rack("o44")
        return cls(
            ETILDE,
            data={
                "beta": _normalize_scalars(beta, rack.labels, "beta"),
                "mu1": Fraction(mu1),
                "mu2": Fraction(mu2),
            },
        )

    @classmethod
    def generic(cls, rack_name, cocycle_spec, lam):
        rack, _ = catalog.builtin_rack(rack_name)
        q = catalog.builtin_cocycle(rack_name, cocycle_spec)
        rprime = quadrel.select_Rprime(quadrel.enumerate_classes(rack), q)
        pairs = [c.base_pair for c in rprime]
        lam = {tuple(k): Fraction(v) for k, v in lam.items()}
        if set(lam) != set(pairs):
            raise IndexMismatch(
                "lambda must be keyed by the base pairs of R'"
            )
        return cls(
            GENERIC,
            rack_name=rack_name,
            cocycle_spec=cocycle_spec,
            data={"lam": lam},
        )

    def rack(self):
        if self.family in (EMINUS, ECHI):
            return catalog.transposition_rack(self.n)[0]
        if self.family == ETILDE:
            return catalog.builtin_rack("o44")[0]
        return catalog.builtin_rack(self.rack_name)[0]

    def to_json(self):
        d = {"family": self.family}
        rack = self.rack()
        if self.family in (EMINUS, ECHI):
            d["n"] = self.n
            d["params"] = {
                "alpha": {
                    rack.labels[i]: str(v)
                    for i, v in enumerate(self.data["alpha"])
                },
            }
            if self.family == EMINUS:
                d["params"]["mu1"] = str(self.data["mu1"])
                d["params"]["mu2"] = str(self.data["mu2"])
            else:
                d["params"]["mu"] = str(self.data["mu"])
        elif self.family == ETILDE:
            d["params"] = {
                "beta": {
                    rack.labels[i]: str(v)
                    for i, v in enumerate(self.data["beta"])
                },
                "mu1": str(self.data["mu1"]),
                "mu2": str(self.data["mu2"]),
            }
        else:
            d["rack"] = self.rack_name
            d["cocycle"] = self.cocycle_spec
            d["params"] = {
                "lambda": {
                    f"{a},{b}": str(v)
                    for (a, b), v in sorted(self.data["lam"].items())
                }
            }
        return d

    @classmethod
    def from_json(cls, doc):
        family = doc["family"]
        p = doc.get("params", {})
        if family == EMINUS:
            return cls.eminus(
                int(doc["n"]),
                {k: Fraction(v) for k, v in p["alpha"].items()},
                Fraction(p.get("mu1", 0)),
                Fraction(p.get("mu2", 0)),
            )
        if family == ECHI:
            return cls.echi(
                int(doc["n"]),
                {k: Fraction(v) for k, v in p["alpha"].items()},
                Fraction(p.get("mu", 0)),
            )
        if family == ETILDE:
            return cls.etilde(
                {k: Fraction(v) for k, v in p["beta"].items()},
                Fraction(p.get("mu1", 0)),
                Fraction(p.get("mu2", 0)),
            )
        if family == GENERIC:
            lam = {}
            for key, v in p["lambda"].items():
                a, b = key.split(",")
                lam[(int(a), int(b))] = Fraction(v)
            return cls.generic(doc["rack"], doc["cocycle"], lam)
        raise ValueError(f"unknown family {family!r}")


def _pair_index(n):
    pairs = transposition_pairs(n)
    return pairs, {p: i for i, p in enumerate(pairs)}


def build_deformed_ideal(params):
    """Generators of the deformation ideal at a rational parameter point."""
    fam = params.family
    if fam == EMINUS:
        return _eminus_ideal(params)
    if fam == ECHI:
        return _echi_ideal(params)
    if fam == ETILDE:
        return _etilde_ideal(params)
    if fam == GENERIC:
        return _generic_ideal(params)
    raise ValueError(f"unknown family {fam!r}")


def _eminus_ideal(params):
    n = params.n
    alpha = params.data["alpha"]
    mu1, mu2 = params.data["mu1"], params.data["mu2"]
    pairs, idx = _pair_index(n)
    m = len(pairs)
    rels = []
    for t in range(m):
        rels.append(FreePoly.word(m, [t, t]) - alpha[t])
    for t in range(m):
        for u in range(t + 1, m):
            if not set(pairs[t]) & set(pairs[u]):
                rels.append(
                    FreePoly.word(m, [t, u]) + FreePoly.word(m, [u, t]) - mu1
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                a, b, c = idx[(i, j)], idx[(i, k)], idx[(j, k)]
                rels.append(
                    FreePoly.word(m, [a, b])
                    + FreePoly.word(m, [b, c])
                    + FreePoly.word(m, [c, a])
                    - mu2
                )
                rels.append(
                    FreePoly.word(m, [b, a])
                    + FreePoly.word(m, [a, c])
                    + FreePoly.word(m, [c, b])
                    - mu2
                )
    return rels


def _echi_ideal(params):
    # The orientation of the two 3-term relations matters: this is the one
    # whose homogeneous parts span the degree-2 symmetrizer kernel, so the
    # family stays flat.  Other orientations collapse the quotient.
    n = params.n
    alpha = params.data["alpha"]
    mu = params.data["mu"]
    pairs, idx = _pair_index(n)
    m = len(pairs)
    rels = []
    for t in range(m):
        rels.append(FreePoly.word(m, [t, t]) - alpha[t])
    for t in range(m):
        for u in range(t + 1, m):
            if not set(pairs[t]) & set(pairs[u]):
                rels.append(
                    FreePoly.word(m, [t, u]) - FreePoly.word(m, [u, t])
                )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                a, b, c = idx[(i, j)], idx[(i, k)], idx[(j, k)]
                rels.append(
                    FreePoly.word(m, [a, c])
                    - FreePoly.word(m, [b, a])
                    - FreePoly.word(m, [c, b])
                    - mu
                )
                rels.append(
                    FreePoly.word(m, [c, a])
                    - FreePoly.word(m, [a, b])
                    - FreePoly.word(m, [b, c])
                    - mu
                )
    return rels


def _etilde_ideal(params):
    """4-cycle family; triple relations are deduplicated (each cyclic sum
    arises from three (sigma, tau) choices)."""
    beta = params.data["beta"]
    mu1, mu2 = params.data["mu1"], params.data["mu2"]
    rack, _ = catalog.builtin_rack("o44")
    inv = fourcycle_inverses()
    m = rack.n
    rels = []
    for s in range(m):
        rels.append(FreePoly.word(m, [s, s]) - mu1)
    for s in range(m):
        rels.append(
            FreePoly.word(m, [s, inv[s]])
            + FreePoly.word(m, [inv[s], s])
            - beta[s]
        )
    seen = set()
    for s in range(m):
        for t in range(m):
            if t == s or t == inv[s]:
                continue
            v = rack.act(s, t)
            poly = (
                FreePoly.word(m, [s, t])
                + FreePoly.word(m, [v, s])
                + FreePoly.word(m, [t, v])
                - mu2
            )
            key = frozenset(poly.terms.items())
            if key not in seen:
                seen.add(key)
                rels.append(poly)
    return rels


def _generic_ideal(params):
    rack, _ = catalog.builtin_rack(params.rack_name)
    q = catalog.builtin_cocycle(params.rack_name, params.cocycle_spec)
    lam = params.data["lam"]
    rprime = quadrel.select_Rprime(quadrel.enumerate_classes(rack), q)
    rels = []
    for c in rprime:
        rels.append(
            quadrel.relation_poly(c, "V", rack.n) - lam[c.base_pair]
        )
    return rels


def is_admissible(params):
    """Whether the point sits in the union of the two lifting images.

    Constant first-order scalars with free mu's come from the pointed
    side; arbitrary first-order scalars with vanishing mu's from the
    copointed side.  For the 4-cycle family the scalars must in addition
    be constant on inverse pairs (otherwise the ideal even contains a
    constant).
    """
    fam = params.family
    if fam == EMINUS:
        alpha = params.data["alpha"]
        return len(set(alpha)) == 1 or (
            params.data["mu1"] == 0 and params.data["mu2"] == 0
        )
    if fam == ECHI:
        alpha = params.data["alpha"]
        return len(set(alpha)) == 1 or params.data["mu"] == 0
    if fam == ETILDE:
        beta = params.data["beta"]
        inv = fourcycle_inverses()
        if any(beta[i] != beta[inv[i]] for i in range(len(beta))):
            return False
        return len(set(beta)) == 1 or (
            params.data["mu1"] == 0 and params.data["mu2"] == 0
        )
    if fam == GENERIC:
        rack, _ = catalog.builtin_rack(params.rack_name)
        q = catalog.builtin_cocycle(params.rack_name, params.cocycle_spec)
        space = quadrel.pointed_lambda_space(rack, q)
        lam = params.data["lam"]
        for i, c in enumerate(space.classes):
            root, ratio = space.uf.find(i)
            if root in space.uf.zero_roots:
                if lam[c.base_pair] != 0:
                    return False
            else:
                root_pair = space.classes[root].base_pair
                if lam[c.base_pair] != ratio * lam[root_pair]:
                    return False
        return True
    raise ValueError(f"unknown family {fam!r}")


_ZERO_DIM_CACHE = {}


def zero_parameter_dim(params, max_deg=16, max_basis=20000):
    """Quotient dimension of the family at the all-zero parameter point."""
    fam = params.family
    key = (fam, params.n, params.rack_name, params.cocycle_spec)
    if key in _ZERO_DIM_CACHE:
        return _ZERO_DIM_CACHE[key]
    if fam == EMINUS:
        zero = DeformParams.eminus(params.n, 0, 0, 0)
    elif fam == ECHI:
        zero = DeformParams.echi(params.n, 0, 0)
    elif fam == ETILDE:
        zero = DeformParams.etilde(0, 0, 0)
    else:
        lam = {p: 0 for p in params.data["lam"]}
        zero = DeformParams.generic(
            params.rack_name, params.cocycle_spec, lam
        )
    gb = groebner(build_deformed_ideal(zero), max_deg, max_basis)
    dim = quotient_dim(gb)
    _ZERO_DIM_CACHE[key] = dim
    return dim


def _rand_frac(rng, allow_zero=True):
    num = rng.randint(-6, 6)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-6, 6)
    return Fraction(num, rng.randint(1, 3))


def sample_params(template, count, seed):
    """Seeded parameter points of the template's family.

    Samples rotate through three branches: pointed-shaped (constant
    first-order scalars, free mu's), copointed-shaped (arbitrary scalars,
    zero mu's), and fully generic.  The 4-cycle family always samples
    beta constant on inverse pairs; the generic-lambda family samples
    inside its admissible space.
    """
    import random

    rng = random.Random(seed)
    fam = template.family
    out = []
    for s in range(count):
        branch = s % 3
        if fam == EMINUS:
            rack, _ = catalog.transposition_rack(template.n)
            m = rack.n
            if branch == 0:
                alpha = [_rand_frac(rng)] * m
                mu1, mu2 = _rand_frac(rng), _rand_frac(rng)
            elif branch == 1:
                alpha = [_rand_frac(rng) for _ in range(m)]
                mu1 = mu2 = Fraction(0)
            else:
                alpha = [_rand_frac(rng) for _ in range(m)]
                mu1, mu2 = _rand_frac(rng), _rand_frac(rng)
            out.append(DeformParams.eminus(template.n, alpha, mu1, mu2))
        elif fam == ECHI:
            rack, _ = catalog.transposition_rack(template.n)
            m = rack.n
            if branch == 0:
                alpha = [_rand_frac(rng)] * m
                mu = _rand_frac(rng)
            elif branch == 1:
                alpha = [_rand_frac(rng) for _ in range(m)]
                mu = Fraction(0)
            else:
                alpha = [_rand_frac(rng) for _ in range(m)]
                mu = _rand_frac(rng)
            out.append(DeformParams.echi(template.n, alpha, mu))
        elif fam == ETILDE:
            inv = fourcycle_inverses()
            m = len(inv)
            if branch == 0:
                beta = [_rand_frac(rng)] * m
                mu1, mu2 = _rand_frac(rng), _rand_frac(rng)
            else:
                beta = [None] * m
                for i in range(m):
                    if beta[i] is None:
                        v = _rand_frac(rng)
                        beta[i] = v
                        beta[inv[i]] = v
                if branch == 1:
                    mu1 = mu2 = Fraction(0)
                else:
                    mu1, mu2 = _rand_frac(rng), _rand_frac(rng)
            out.append(DeformParams.etilde(beta, mu1, mu2))
        elif fam == GENERIC:
            rack, _ = catalog.builtin_rack(template.rack_name)
            q = catalog.builtin_cocycle(
                template.rack_name, template.cocycle_spec
            )
            space = quadrel.pointed_lambda_space(rack, q)
            roots = {
                c.base_pair: _rand_frac(rng) for c in space.free_classes()
            }
            out.append(
                DeformParams.generic(
                    template.rack_name,
                    template.cocycle_spec,
                    space.value_map(roots),
                )
            )
        else:
            raise ValueError(f"unknown family {fam!r}")
    return out


def verify_nonzero(params, samples=0, seed=0, max_deg=16, max_basis=20000):
    """Nontriviality (and flatness on admissible points) by sampling.

    Runs the given point plus `samples` seeded ones.  A trivial quotient,
    or an admissible point whose dimension moves, raises
    NonzeroCheckFailed; anything else is reported.
    """
    runs = [params] + sample_params(params, samples, seed)
    expected = zero_parameter_dim(params, max_deg, max_basis)
    report = {
        "family": params.family,
        "seed": seed,
        "samples": samples,
        "expected_dim": expected,
        "runs": [],
    }
    if params.family in (EMINUS, ECHI):
        report["n"] = params.n
    for p in runs:
        gb = groebner(build_deformed_ideal(p), max_deg, max_basis)
        trivial = is_trivial_quotient(gb)
        if trivial:
            raise NonzeroCheckFailed(
                f"trivial quotient at {p.to_json()['params']}"
            )
        dim = quotient_dim(gb)
        adm = is_admissible(p)
        if adm and dim != expected:
            raise NonzeroCheckFailed(
                f"dimension {dim} != {expected} at admissible point "
                f"{p.to_json()['params']}"
            )
        report["runs"].append(
            {
                "params": p.to_json()["params"],
                "admissible": adm,
                "trivial": trivial,
                "dim": dim,
                "basis_size": len(gb.elements),
                "status": gb.status,
            }
        )
    report["all_nonzero"] = True
    report["flat_on_admissible"] = True
    return report


def appendix_printed_elements(alpha, mu1, mu2):
    """The extra basis elements printed for the n=4 minus-family, with
    scalars specialized.

    Sums of scalar products directly in front of a word are read as one
    parenthesized coefficient; the membership audit is the check of this
    reading.
    """
    rack, _ = catalog.transposition_rack(4)
    a = _normalize_scalars(alpha, rack.labels, "alpha")
    m1, m2 = Fraction(mu1), Fraction(mu2)
    pairs, idx = _pair_index(4)
    i12, i13, i14 = idx[(1, 2)], idx[(1, 3)], idx[(1, 4)]
    i23, i24, i34 = idx[(2, 3)], idx[(2, 4)], idx[(3, 4)]
    a12, a13, a14 = a[i12], a[i13], a[i14]
    a23, a24, a34 = a[i23], a[i24], a[i34]
    n = rack.n

    def w(*ids, c=1):
        return FreePoly.word(n, list(ids), c)

    def const(c):
        return FreePoly.one(n, c)

    els = []
    els.append(
        w(i13, i12, i13) - w(i12, i13, i12)
        + w(i23, c=(-a12 + a13)) - w(i13, c=m2) + w(i12, c=m2)
    )
    els.append(
        w(i14, i12, i14) - w(i12, i14, i12)
        + w(i24, c=(-a12 + a14)) - w(i14, c=m2) + w(i12, c=m2)
    )
    els.append(
        w(i14, i13, i12) + w(i14, i12, i23) - w(i23, i14, i13)
        - w(i14, c=m2) + w(i13, c=m1)
    )
    els.append(
        w(i14, i13, i23) + w(i14, i12, i13) - w(i23, i14, i12)
        - w(i14, c=m2) + w(i12, c=m1)
    )
    els.append(
        w(i14, i13, i14) - w(i13, i14, i13)
        + w(i34, c=(-a13 + a14)) - w(i14, c=m2) + w(i13, c=m2)
    )
    els.append(
        w(i24, i23, i14) - w(i14, i12, i23) - w(i12, i24, i23)
        - w(i24, c=m1) + w(i23, c=m2)
    )
    els.append(
        w(i24, i23, i24) - w(i23, i24, i23)
        + w(i34, c=(-a23 + a24)) - w(i24, c=m2) + w(i23, c=m2)
    )
    els.append(
        w(i14, i12, i13, i23) - w(i23, i14, i12, i23)
        + w(i14, i13, c=a23) + w(i23, i14, c=m2) + w(i12, i23, c=m1)
        - const(m1 * m2)
    )
    els.append(
        w(i14, i12, i13, i14) + w(i13, i14, i12, i13)
        + w(i12, i13, i14, i12)
        + w(i24, i34, c=(a13 - a14)) + w(i14, i13, c=m1)
        - w(i14, i12, c=m2) + w(i23, i24, c=(-a12 + a13))
        - w(i13, i14, c=m2) + w(i13, i12, c=m1) + w(i12, i14, c=m1)
        - w(i12, i13, c=m2)
        + const(-a13 * m2 - m1 * m2 + m2 * m2)
    )
    els.append(
        w(i14, i12, i23, i14) + w(i12, i14, i12, i23)
        + w(i24, i23, c=(a12 - a14)) - w(i14, i12, c=m1)
        - w(i23, i14, c=m2) - w(i12, i23, c=m2)
        + const(m1 * m2)
    )
    els.append(
        w(i14, i12, i13, i12, i23) - w(i23, i14, i12, i13, i12)
        - w(i14, i12, i13, c=m2) - w(i23, i14, i13, c=m2)
        + w(i23, i14, i12, c=m2) + w(i12, i13, i12, c=m1)
        + w(i14, c=(a12 * a13 + a12 * a23 - a13 * a23))
        + w(i13, c=m1 * m2) - w(i12, c=m1 * m2)
    )
    els.append(
        w(i14, i12, i13, i12, i14, i12) + w(i13, i14, i12, i13, i12, i14)
        + w(i14, i13, i24, i34, c=(a13 - a14))
        + w(i14, i12, i13, i24, c=(a12 - a13))
        - w(i14, i12, i13, i12, c=m2)
        + w(i23, i14, i12, i24, c=(-a12 + a13))
        - w(i13, i14, i12, i13, c=m2)
        - w(i13, i12, i14, i13, c=m1)
        - w(i13, i12, i14, i12, c=m2)
        + w(i12, i14, i13, i34, c=(-a13 + a14))
        + w(i12, i14, i12, i23, c=m1)
        - w(i12, i23, i14, i13, c=m1)
        - w(i12, i13, i14, i12, c=m2)
        - w(i12, i13, i12, i14, c=m2)
        + w(i24, i34, c=(-a13 * m2 + a14 * m2))
        + w(i24, i23, c=(a12 * m1 - a14 * m1))
        + w(i14, i34, c=(-a13 * m1 + a14 * m1))
        + w(i14, i24, c=(a13 * m2 - a14 * m2))
        + w(i14, i12, c=(a12 * m1 - m1 * m1 + m2 * m2))
        + w(i23, i34, c=(a13 * m1 - a14 * m1))
        + w(i23, i24, c=(a12 * m2 - a13 * m2))
        + w(i13, i34, c=(a13 * m2 - a14 * m2))
        + w(i13, i24, c=(-a12 * m2 + a14 * m2))
        + w(i13, i14, c=(a12 * m1 - m1 * m1))
        + w(i13, i12, c=m2 * m2)
        + w(i12, i24, c=(a12 * m1 - a13 * m1))
        + w(i12, i14, c=(-a14 * m2 - m1 * m2 + m2 * m2))
        + w(i12, i13, c=(a12 * a14 + m2 * m2))
        + const(
            -a12 * a14 * m2 - a12 * m1 * m2 + a13 * m1 * m2
            + a14 * m2 * m2 + m1 * m1 * m2 - m2 * m2 * m2
        )
    )
    els.append(
        w(i14, i12, i13, i12, i14, i13) + w(i12, i14, i12, i13, i12, i14)
        + w(i14, i12, i24, i23, c=(-a12 + a14))
        + w(i14, i12, i23, i34, c=(-a13 + a14))
        - w(i14, i12, i13, i12, c=m2)
        + w(i13, i14, i12, i24, c=(-a12 + a14))
        - w(i13, i14, i12, i13, c=m1)
        - w(i13, i12, i14, i13, c=m2)
        + w(i12, i14, i12, i23, c=m2)
        - w(i12, i14, i12, i13, c=m2)
        - w(i12, i23, i14, i13, c=m2)
        - w(i12, i13, i14, i12, c=m1)
        - w(i12, i13, i12, i14, c=m2)
        + w(i24, i34, c=(-a13 * m1 + a14 * m1))
        + w(i24, i23, c=(a12 * m2 - a14 * m2))
        + w(i14, i24, c=(-a12 * m1 + a14 * m1))
        + w(i14, i13, c=(a12 * m1 - m1 * m1))
        + w(i14, i12, c=(-a14 * m2 + m2 * m2))
        + w(i23, i34, c=(a13 * m2 - a14 * m2))
        + w(i23, i24, c=(a12 * m1 - a13 * m1))
        + w(i13, i24, c=(a12 * m2 - a14 * m2))
        + w(i13, i12, c=(a12 * a14 - m1 * m1 + m2 * m2))
        + w(i12, i14, c=(a12 * m1 - m1 * m1))
        + w(i12, i13, c=(m1 * m2 + m2 * m2))
        + const(
            -a12 * a14 * m2 - a12 * m1 * m2 + a13 * m1 * m2
            + a14 * m2 * m2 + m1 * m1 * m2 - m2 * m2 * m2
        )
    )
    return els


def appendix_membership_audit(params, gb=None, max_deg=16, max_basis=20000):
    """normal_form == 0 for every printed extra basis element."""
    if params.family != EMINUS or params.n != 4:
        raise ValueError("the printed basis belongs to the n=4 minus family")
    if gb is None:
        gb = groebner(build_deformed_ideal(params), max_deg, max_basis)
    els = appendix_printed_elements(
        params.data["alpha"], params.data["mu1"], params.data["mu2"]
    )
    out = []
    for i, e in enumerate(els):
        nf = normal_form(e, gb)
        out.append(
            {"index": i, "degree": e.degree(), "member": nf.is_zero()}
        )
    return {
        "elements": out,
        "all_member": all(r["member"] for r in out),
        "gb_status": gb.status,
    }


def pointed_lifting_generators(realization, lam_free):
    """Lifting generator data b_C - lambda_C (1 - g_C) over a group.

    lam_free assigns values to the free classes of the pointed parameter
    space; everything else is spelled out through the ties.  The group
    element g_C is the product of the realization images over the base
    pair; the classes' g_C must avoid every generator's image (otherwise
    the lifting ansatz breaks and ConditionViolated reports the clashes).
    """
    rack = realization.rack
    q = realization.induced_cocycle()
    space = quadrel.pointed_lambda_space(rack, q)
    lam_free = {tuple(k): Fraction(v) for k, v in lam_free.items()}
    free_pairs = {c.base_pair for c in space.free_classes()}
    if set(lam_free) != free_pairs:
        raise IndexMismatch(
            f"need values exactly for free classes {sorted(free_pairs)}"
        )
    lam = space.value_map(lam_free)
    clashes = []
    records = []
    for c in space.classes:
        i2, i1 = c.base_pair
        g_c = realization.group.mul(
            realization.gmap[i2], realization.gmap[i1]
        )
        for x in range(rack.n):
            if g_c == realization.gmap[x]:
                clashes.append((c.base_pair, x))
        records.append(
            {
                "class": c,
                "b": quadrel.relation_poly(c, "V", rack.n),
                "lam": lam[c.base_pair],
                "g": g_c,
            }
        )
    if clashes:
        raise ConditionViolated(clashes)
    return records


class CopointedLambda:
    """Scalars for a copointed lifting family, with their normalizations."""

    FAMILIES = ("TranspMinus", "TranspChi", "FourCycles")

    __slots__ = ("family", "lam")

    def __init__(self, family, lam):
        if family not in self.FAMILIES:
            raise ValueError(f"unknown copointed family {family!r}")
        self.family = family
        rack = self.rack()
        lam = _normalize_scalars(lam, rack.labels, "lambda")
        if sum(lam) != 0:
            raise NormalizationViolated("lambda values must sum to zero")
        if family == "FourCycles":
            inv = fourcycle_inverses()
            for i in range(len(lam)):
                if lam[i] != lam[inv[i]]:
                    raise NormalizationViolated(
                        "lambda must agree on inverse pairs"
                    )
        self.lam = lam

    def rack(self):
        if self.family == "FourCycles":
            return catalog.builtin_rack("o44")[0]
        return catalog.builtin_rack("o24")[0]


def function_part(cl):
    """The deforming functions f_x: group element -> scalar, per x."""
    if cl.family == "FourCycles":
        _, perms = catalog.builtin_rack("o44")
    else:
        _, perms = catalog.builtin_rack("o24")
    index = {p: i for i, p in enumerate(perms)}
    group = perm.symmetric_group(4)
    out = []
    for x, px in enumerate(perms):
        f = {}
        for g in group:
            conj = perm.conjugate(perm.inverse(g), px)
            val = cl.lam[x] - cl.lam[index[conj]]
            if val != 0:
                f[g] = val
        out.append(f)
    return out


def copointed_lifting_generators(cl):
    """Structured generator set: fixed quadratics plus deformed relations.

    The deformed entries pair the quadratic part (a square for the
    transposition families, an inverse-pair anticommutator for the
    4-cycle family) with its function-algebra right-hand side f_x.
    """
    rack = cl.rack()
    m = rack.n
    fs = function_part(cl)
    if cl.family in ("TranspMinus", "TranspChi"):
        base = (
            DeformParams.eminus(4, 0, 0, 0)
            if cl.family == "TranspMinus"
            else DeformParams.echi(4, 0, 0)
        )
        quadratic = [
            p for p in build_deformed_ideal(base)
            if p.lead()[0] not in {bytes([t, t]) for t in range(m)}
        ]
        deformed = [
            {"x": x, "poly": FreePoly.word(m, [x, x]), "f": fs[x]}
            for x in range(m)
        ]
    else:
        base = DeformParams.etilde(0, 0, 0)
        inv = fourcycle_inverses()
        anticomm = {
            frozenset((s, inv[s])) for s in range(m)
        }
        quadratic = []
        for p in build_deformed_ideal(base):
            lead = p.lead()[0]
            if len(lead) == 2 and frozenset(lead) in anticomm and \
                    len(p.terms) == 2:
                continue
            quadratic.append(p)
        deformed = [
            {
                "x": s,
                "poly": FreePoly.word(m, [s, inv[s]])
                + FreePoly.word(m, [inv[s], s]),
                "f": fs[s],
            }
            for s in range(m)
        ]
    return {"rack": rack, "quadratic": quadratic, "deformed": deformed}


def automorphism_conjugators():
    """All of Aut(S4) as conjugation maps; they are pairwise distinct."""
    group = perm.symmetric_group(4)
    maps = {}
    for t in group:
        tinv = perm.inverse(t)
        maps[t] = tuple(
            perm.compose(t, perm.compose(g, tinv)) for g in group
        )
    assert len(set(maps.values())) == 24
    return maps


def iso_class_equal(lam_a, lam_b, family):
    """Equality of lifting isomorphism classes, with a witness.

    Pointed families compare projectively.  Copointed families search the
    scaling-and-automorphism orbit; conjugation permutes the rack, scaling
    is settled by ratio normalization.
    """
    if family == "pointed":
        a = [Fraction(v) for v in lam_a]
        b = [Fraction(v) for v in lam_b]
        if len(a) != len(b):
            raise IndexMismatch("length mismatch")
        if all(v == 0 for v in a) and all(v == 0 for v in b):
            return True, {"mu": "any"}
        ratio = None
        for u, v in zip(a, b):
            if (u == 0) != (v == 0):
                return False, None
            if u != 0:
                r = v / u
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False, None
        if ratio is None or ratio == 0:
            return (ratio is None), ({"mu": "any"} if ratio is None else None)
        return True, {"mu": str(ratio)}
    if family not in CopointedLambda.FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "FourCycles":
        rack, perms = catalog.builtin_rack("o44")
    else:
        rack, perms = catalog.builtin_rack("o24")
    index = {p: i for i, p in enumerate(perms)}
    a = [Fraction(v) for v in lam_a]
    b = [Fraction(v) for v in lam_b]
    if len(a) != rack.n or len(b) != rack.n:
        raise IndexMismatch("wrong number of lambda values")
    for t in perm.symmetric_group(4):
        tinv = perm.inverse(t)
        relabeled = [
            a[index[perm.compose(t, perm.compose(perms[i], tinv))]]
            for i in range(rack.n)
        ]
        ratio = None
        ok = True
        for u, v in zip(relabeled, b):
            if (u == 0) != (v == 0):
                ok = False
                break
            if u != 0:
                r = v / u
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    ok = False
                    break
        if ok:
            witness = {
                "theta": perm.cycle_notation(t),
                "mu": str(ratio) if ratio is not None else "any",
            }
            return True, witness
    return False, None
