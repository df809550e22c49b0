import itertools
from fractions import Fraction

import pytest

from rackalg import perm
from rackalg.catalog import builtin_cocycle, builtin_rack
from rackalg.deform import (
    CopointedLambda,
    ConditionViolated,
    DeformParams,
    IndexMismatch,
    NonzeroCheckFailed,
    NormalizationViolated,
    appendix_membership_audit,
    appendix_printed_elements,
    automorphism_conjugators,
    build_deformed_ideal,
    copointed_lifting_generators,
    fourcycle_inverses,
    function_part,
    is_admissible,
    iso_class_equal,
    pointed_lifting_generators,
    sample_params,
    verify_nonzero,
    zero_parameter_dim,
)
from rackalg.freealg import groebner, normal_form, quotient_dim
from rackalg.grouprealize import builtin_realization
from rackalg.linalg import row_space_equal
from rackalg.quadrel import pointed_lambda_space

F = Fraction


def full_scalars(labels, default=0, **overrides):
    vals = {lab: F(default) for lab in labels}
    for lab, v in overrides.items():
        vals[lab] = F(v)
    return vals


def ideal_rows(polys, m):
    basis = (
        [b""]
        + [bytes([i]) for i in range(m)]
        + [bytes([i, j]) for i in range(m) for j in range(m)]
    )
    pos = {w: k for k, w in enumerate(basis)}
    rows = []
    for p in polys:
        v = [F(0)] * len(basis)
        for w, c in p.terms.items():
            v[pos[w]] = c
        rows.append(v)
    return rows


def test_zero_parameter_dimensions():
    assert zero_parameter_dim(DeformParams.eminus(3, 0)) == 12
    assert zero_parameter_dim(DeformParams.eminus(4, 0)) == 576
    assert zero_parameter_dim(DeformParams.echi(4, 0)) == 576
    assert zero_parameter_dim(DeformParams.etilde(0)) == 576


def test_deformed_dimensions_match_zero_fiber():
    points = [
        DeformParams.eminus(4, 1, F(1, 2), 2),
        DeformParams.echi(4, 3, F(-2, 3)),
        DeformParams.etilde(1, 2, 3),
    ]
    for p in points:
        gb = groebner(build_deformed_ideal(p))
        assert gb.complete
        assert quotient_dim(gb) == 576, p.family


def test_minus_family_matches_generic_relations():
    rack, _ = builtin_rack("o24")
    q = builtin_cocycle("o24", "const:-1")
    space = pointed_lambda_space(rack, q)
    alpha, mu1, mu2 = F(2), F(3), F(5)
    by_size = {c.size: c.base_pair for c in space.free_classes()}
    roots = {by_size[1]: alpha, by_size[2]: mu1, by_size[3]: mu2}
    generic = DeformParams.generic("o24", "const:-1", space.value_map(roots))
    named = DeformParams.eminus(4, alpha, mu1, mu2)
    assert row_space_equal(
        ideal_rows(build_deformed_ideal(named), 6),
        ideal_rows(build_deformed_ideal(generic), 6),
    )


def test_chi_family_matches_generic_relations():
    rack, _ = builtin_rack("o24")
    q = builtin_cocycle("o24", "chi")
    space = pointed_lambda_space(rack, q)
    alpha, mu = F(2), F(7)
    by_size = {c.size: c.base_pair for c in space.free_classes()}
    # the 3-term scalar enters with the opposite sign to the square one
    roots = {by_size[1]: alpha, by_size[3]: -mu}
    generic = DeformParams.generic("o24", "chi", space.value_map(roots))
    named = DeformParams.echi(4, alpha, mu)
    assert row_space_equal(
        ideal_rows(build_deformed_ideal(named), 6),
        ideal_rows(build_deformed_ideal(generic), 6),
    )


def test_fourcycle_family_matches_generic_relations():
    rack, _ = builtin_rack("o44")
    q = builtin_cocycle("o44", "const:-1")
    space = pointed_lambda_space(rack, q)
    beta, mu1, mu2 = F(2), F(3), F(5)
    by_size = {c.size: c.base_pair for c in space.free_classes()}
    roots = {by_size[2]: beta, by_size[1]: mu1, by_size[3]: mu2}
    generic = DeformParams.generic("o44", "const:-1", space.value_map(roots))
    named = DeformParams.etilde(beta, mu1, mu2)
    assert row_space_equal(
        ideal_rows(build_deformed_ideal(named), 6),
        ideal_rows(build_deformed_ideal(generic), 6),
    )


def test_admissibility_branches():
    labels24 = builtin_rack("o24")[0].labels
    assert is_admissible(DeformParams.eminus(4, 1, 2, 3))
    varied = full_scalars(labels24, default=1, **{"(34)": 2})
    assert is_admissible(DeformParams.eminus(4, varied, 0, 0))
    assert not is_admissible(DeformParams.eminus(4, varied, 1, 0))
    assert is_admissible(DeformParams.echi(4, 1, 5))
    assert not is_admissible(DeformParams.echi(4, varied, 5))
    assert is_admissible(DeformParams.etilde(1, 2, 3))
    # inverse-pair-constant but not globally constant, zero mus
    inv = fourcycle_inverses()
    rack, _ = builtin_rack("o44")
    beta = full_scalars(
        rack.labels,
        **{rack.labels[0]: 1, rack.labels[inv[0]]: 1},
    )
    assert is_admissible(DeformParams.etilde(beta, 0, 0))
    assert not is_admissible(DeformParams.etilde(beta, 1, 0))
    # breaking the inverse-pair symmetry is never admissible
    broken = full_scalars(rack.labels, **{rack.labels[0]: 1})
    assert not is_admissible(DeformParams.etilde(broken, 0, 0))


def test_generic_admissibility_follows_ties():
    rack, _ = builtin_rack("o24")
    q = builtin_cocycle("o24", "chi")
    space = pointed_lambda_space(rack, q)
    roots = {c.base_pair: F(1) for c in space.free_classes()}
    good = DeformParams.generic("o24", "chi", space.value_map(roots))
    assert is_admissible(good)
    bad_lam = dict(space.value_map(roots))
    zero_pair = space.zero_classes()[0].base_pair
    bad_lam[zero_pair] = F(1)
    assert not is_admissible(DeformParams.generic("o24", "chi", bad_lam))


def test_generic_requires_full_lambda_keying():
    with pytest.raises(IndexMismatch):
        DeformParams.generic("o24", "chi", {(0, 0): 1})


def test_verify_nonzero_small_family():
    report = verify_nonzero(DeformParams.eminus(3, 1, 1, 1), samples=4, seed=2)
    assert report["expected_dim"] == 12
    assert len(report["runs"]) == 5
    assert report["all_nonzero"] and report["flat_on_admissible"]
    for run in report["runs"]:
        assert not run["trivial"]
        if run["admissible"]:
            assert run["dim"] == 12


def test_asymmetric_fourcycle_scalars_collapse():
    rack, _ = builtin_rack("o44")
    # value differs from the one at the inverse label
    beta = full_scalars(rack.labels, **{rack.labels[0]: 1})
    params = DeformParams.etilde(beta, 0, 0)
    with pytest.raises(NonzeroCheckFailed):
        verify_nonzero(params)


def test_sampling_is_deterministic():
    template = DeformParams.echi(4, 1, 1)
    a = [p.to_json() for p in sample_params(template, 5, 13)]
    b = [p.to_json() for p in sample_params(template, 5, 13)]
    assert a == b
    assert len(a) == 5


def test_params_json_round_trip():
    for p in (
        DeformParams.eminus(4, 1, F(1, 2), 0),
        DeformParams.echi(3, 2, 1),
        DeformParams.etilde(2, 0, 1),
        DeformParams.generic(
            "o24",
            "chi",
            {
                c.base_pair: F(0)
                for c in pointed_lambda_space(
                    builtin_rack("o24")[0], builtin_cocycle("o24", "chi")
                ).classes
            },
        ),
    ):
        doc = p.to_json()
        back = DeformParams.from_json(doc)
        assert back.to_json() == doc


def test_printed_elements_reduce_to_zero():
    for alpha, mu1, mu2 in [
        (F(1), F(0), F(0)),
        (F(1), F(1), F(1)),
        (F(2), F(-1), F(1, 2)),
    ]:
        params = DeformParams.eminus(4, alpha, mu1, mu2)
        report = appendix_membership_audit(params)
        assert report["all_member"], (alpha, mu1, mu2)
        assert report["gb_status"] == "complete"


def test_printed_elements_flag_wrong_point():
    good = DeformParams.eminus(4, 1, 1, 1)
    gb_other = groebner(
        build_deformed_ideal(DeformParams.eminus(4, 2, 1, 1))
    )
    report = appendix_membership_audit(good, gb=gb_other)
    assert not report["all_member"]


def test_printed_element_count_and_degrees():
    els = appendix_printed_elements(F(1), F(1), F(1))
    assert len(els) == 13
    assert sorted({e.degree() for e in els}) == [3, 4, 5, 6]


def test_copointed_normalizations():
    labels24 = builtin_rack("o24")[0].labels
    labels44 = builtin_rack("o44")[0].labels
    with pytest.raises(NormalizationViolated):
        CopointedLambda(
            "TranspMinus", full_scalars(labels24, **{"(12)": 1})
        )
    with pytest.raises(NormalizationViolated):
        # sums to zero but breaks the inverse-pair rule
        CopointedLambda(
            "FourCycles",
            full_scalars(labels44, **{"(1234)": 1, "(1243)": -1}),
        )
    with pytest.raises(ValueError):
        CopointedLambda("NoSuchFamily", {})
    cl = CopointedLambda(
        "TranspMinus", full_scalars(labels24, **{"(12)": 1, "(34)": -1})
    )
    assert sum(cl.lam) == 0


def fourcycle_lambda():
    rack, _ = builtin_rack("o44")
    inv = fourcycle_inverses()
    lam = [F(0)] * 6
    lam[0] = lam[inv[0]] = F(2)
    lam[1] = lam[inv[1]] = F(-2)
    return CopointedLambda(
        "FourCycles", {rack.labels[i]: lam[i] for i in range(6)}
    )


def test_copointed_generator_counts():
    labels24 = builtin_rack("o24")[0].labels
    cl = CopointedLambda(
        "TranspMinus", full_scalars(labels24, **{"(12)": 1, "(34)": -1})
    )
    gens = copointed_lifting_generators(cl)
    assert len(gens["quadratic"]) == 11
    assert len(gens["deformed"]) == 6
    chi = CopointedLambda(
        "TranspChi", full_scalars(labels24, **{"(13)": 2, "(24)": -2})
    )
    gens_chi = copointed_lifting_generators(chi)
    assert len(gens_chi["quadratic"]) == 11
    assert len(gens_chi["deformed"]) == 6
    gens4 = copointed_lifting_generators(fourcycle_lambda())
    assert len(gens4["quadratic"]) == 14
    assert len(gens4["deformed"]) == 6


def test_function_part_values():
    labels24 = builtin_rack("o24")[0].labels
    cl = CopointedLambda(
        "TranspMinus", full_scalars(labels24, **{"(12)": 1, "(34)": -1})
    )
    fs = function_part(cl)
    ident = perm.identity(4)
    for f in fs:
        # the counit of every deforming function vanishes
        assert ident not in f
    # conjugating (12) by (12) fixes it; by (13) moves it to (23)
    rack, perms = builtin_rack("o24")
    x12 = rack.labels.index("(12)")
    g13 = perm.from_cycles(4, [(1, 3)])
    f12 = fs[x12]
    # lam[(12)] - lam[(23)] = 1 - 0
    assert f12[g13] == 1


def test_function_part_agrees_on_inverse_pairs():
    fs = function_part(fourcycle_lambda())
    inv = fourcycle_inverses()
    for s in range(6):
        assert fs[s] == fs[inv[s]]


def test_automorphism_conjugators_all_distinct():
    maps = automorphism_conjugators()
    assert len(maps) == 24
    assert len(set(maps.values())) == 24


def test_iso_class_pointed():
    ok, wit = iso_class_equal([1, 2, 0], [2, 4, 0], "pointed")
    assert ok and wit == {"mu": "2"}
    ok, _ = iso_class_equal([1, 2], [2, 5], "pointed")
    assert not ok
    ok, wit = iso_class_equal([0, 0], [0, 0], "pointed")
    assert ok and wit == {"mu": "any"}
    ok, _ = iso_class_equal([0, 1], [1, 1], "pointed")
    assert not ok
    with pytest.raises(IndexMismatch):
        iso_class_equal([1], [1, 2], "pointed")


def test_iso_class_copointed_scaling():
    lam = [1, -1, 0, 0, 0, 0]
    doubled = [2, -2, 0, 0, 0, 0]
    ok, wit = iso_class_equal(lam, doubled, "TranspMinus")
    assert ok
    assert wit["theta"] == "e" and wit["mu"] == "2"


def test_iso_class_copointed_relabelling():
    rack, perms = builtin_rack("o24")
    lam = [F(1), F(2), F(-3), F(0), F(0), F(0)]
    t = perm.from_cycles(4, [(1, 3, 2)])
    tinv = perm.inverse(t)
    index = {p: i for i, p in enumerate(perms)}
    moved = [F(0)] * 6
    for i in range(6):
        j = index[perm.compose(t, perm.compose(perms[i], tinv))]
        moved[j] = lam[i]
    ok, wit = iso_class_equal(lam, moved, "TranspMinus")
    assert ok
    assert wit["mu"] == "1"


def test_iso_class_copointed_distinct():
    a = [1, -1, 0, 0, 0, 0]
    b = [2, -1, -1, 0, 0, 0]
    ok, wit = iso_class_equal(a, b, "TranspMinus")
    assert not ok and wit is None


def test_pointed_lifting_generators_all_families():
    for rack_name, spec in [
        ("o24", "const:-1"),
        ("o24", "chi"),
        ("o44", "const:-1"),
    ]:
        real = builtin_realization(rack_name, spec)
        rack = real.rack
        q = real.induced_cocycle()
        space = pointed_lambda_space(rack, q)
        lam_free = {c.base_pair: F(1) for c in space.free_classes()}
        records = pointed_lifting_generators(real, lam_free)
        assert len(records) == 17
        values = space.value_map(lam_free)
        for rec in records:
            assert rec["b"].degree() == 2
            assert rec["lam"] == values[rec["class"].base_pair]
            i2, i1 = rec["class"].base_pair
            assert rec["g"] == perm.compose(
                real.gmap[i2], real.gmap[i1]
            )


def test_pointed_lifting_rejects_clashing_group_data():
    real = builtin_realization("o24", "const:-1")

    class Doctored:
        def __init__(self, base, gmap):
            self.rack = base.rack
            self.group = base.group
            self.gmap = gmap
            self._base = base

        def induced_cocycle(self):
            return self._base.induced_cocycle()

    c = perm.from_cycles(4, [(1, 2, 3, 4)])
    c2 = perm.compose(c, c)
    gmap = [c] * 6
    gmap[3] = c2  # now some class product c*c equals this entry
    fake = Doctored(real, tuple(gmap))
    space = pointed_lambda_space(real.rack, real.induced_cocycle())
    lam_free = {cl.base_pair: F(1) for cl in space.free_classes()}
    with pytest.raises(ConditionViolated):
        pointed_lifting_generators(fake, lam_free)


def test_pointed_lifting_requires_free_class_keys():
    real = builtin_realization("o24", "chi")
    with pytest.raises(IndexMismatch):
        pointed_lifting_generators(real, {(0, 0): F(1)})


def test_copointed_deformed_squares_are_consistent():
    # the deformed relation x_s^2 = f_s must reduce to the quadratic ideal
    # when lambda = 0
    cl = CopointedLambda(
        "TranspMinus", {label: 0 for label in builtin_rack("o24")[0].labels}
    )
    gens = copointed_lifting_generators(cl)
    for rec in gens["deformed"]:
        assert rec["f"] == {}
