import pytest

from helpers import p1, p2, square_fan
from toricbundles import (
    BasePresentation,
    TwistingClasses,
    build_bundle_ring,
    build_ring,
    chern_numbers,
    chern_numbers_bundle,
    compare,
    integrate_bundle,
    make_plmap,
    presentation_from_fan,
    principal_classes,
    total_chern_general,
    total_chern_intrinsic,
    twisting_from_principal,
)
from toricbundles.bundlering import fiber_restriction
from toricbundles.cohomology import RingConsistencyError
from toricbundles.corpus import corpus_instances


def p1_presentation():
    """Z[h]/(h^2) with c(TB) = 1 + 2h."""
    return BasePresentation(
        name="P1",
        generators=[("h", 2)],
        relations=[{(2,): 1}],
        basis={0: [(0,)], 1: [(1,)]},
        top_degree=2,
        integration=1,
        chern={(0,): 1, (1,): 2},
    )


def p2_presentation():
    """Z[h]/(h^3) with c(TB) = 1 + 3h + 3h^2."""
    return BasePresentation(
        name="P2",
        generators=[("h", 2)],
        relations=[{(3,): 1}],
        basis={0: [(0,)], 1: [(1,)], 2: [(2,)]},
        top_degree=4,
        integration=1,
        chern={(0,): 1, (1,): 3, (2,): 3},
    )


def test_presentation_rejects_wrong_basis_claim():
    with pytest.raises(RingConsistencyError):
        BasePresentation(
            name="bad",
            generators=[("h", 2)],
            relations=[{(2,): 1}],
            basis={0: [(0,)], 1: []},  # claims rank 0 in degree 2
            top_degree=2,
            integration=1,
            chern={(0,): 1},
        )
    with pytest.raises(RingConsistencyError):
        BasePresentation(
            name="bad2",
            generators=[("h", 2)],
            relations=[],  # no relation, so degree-2 rank is 1, not 0
            basis={0: [(0,)], 1: [(1,)]},
            top_degree=2,
            integration=2,  # also not a unit
            chern={(0,): 1},
        )


def test_presentation_rejects_inhomogeneous_relation():
    with pytest.raises(ValueError):
        BasePresentation(
            name="bad3",
            generators=[("h", 2)],
            relations=[{(2,): 1, (1,): 1}],
            basis={0: [(0,)], 1: [(1,)]},
            top_degree=2,
            integration=1,
            chern={(0,): 1},
        )


def test_bundle_relations_match_hirzebruch():
    # base P1, lambda = a*h, fiber P1: x0 - x1 + a*h = 0 and x0*x1 = 0,
    # so x0 reduces to the basis monomial x1 minus a*h
    base = p1_presentation()
    a = 2
    lam = TwistingClasses(classes=(base.reduce_poly({(1,): a}),))
    ring = build_bundle_ring(base, lam, p1())
    x0 = ring.reduce_raw({1: {ring._degrees[1][1][(1, 0)]: base.unit()}})
    x1 = ring.reduce_raw({1: {ring._degrees[1][1][(0, 1)]: base.unit()}})
    minus_ah = ring.reduce_raw(
        {0: {0: base.reduce_poly({(1,): -a})}}
    )
    assert x0 == x1 + minus_ah
    assert (1, 1) not in ring._degrees[2][1]  # x0*x1 is not a face monomial


def test_zero_twist_gives_product_ring():
    base = p1_presentation()
    lam = TwistingClasses(classes=(base.zero(),))
    ring = build_bundle_ring(base, lam, p1())
    x0 = ring.reduce_raw({1: {ring._degrees[1][1][(1, 0)]: base.unit()}})
    x1 = ring.reduce_raw({1: {ring._degrees[1][1][(0, 1)]: base.unit()}})
    assert x0 == x1


def test_bundle_ring_is_free_of_fiber_rank():
    base = p2_presentation()
    lam = TwistingClasses(classes=(base.reduce_poly({(1,): 1}),))
    ring = build_bundle_ring(base, lam, p1())
    assert [ring.rank(d) for d in range(2)] == [1, 1]
    fiber2 = p2()
    lam2 = TwistingClasses(classes=(
        base.reduce_poly({(1,): 1}), base.reduce_poly({(1,): 0}),
    ))
    ring2 = build_bundle_ring(base, lam2, fiber2)
    assert sum(ring2.rank(d) for d in range(3)) == len(fiber2.max_cones)
    # per-degree bases coincide with the fiber's ordinary ring
    for d in range(fiber2.dim + 1):
        assert ring2.basis_monomials(d) == tuple(
            ring2.fiber_ring.basis_monomials(d)
        )


def test_hirzebruch_numbers_from_presented_base():
    base = p1_presentation()
    for a in range(4):
        lam = TwistingClasses(classes=(base.reduce_poly({(1,): a}),))
        ring = build_bundle_ring(base, lam, p1())
        numbers = chern_numbers_bundle(ring, total_chern_general(ring))
        assert numbers == {(1, 1): 8, (2,): 4}


def test_p2_base_zero_twist_euler():
    base = p2_presentation()
    lam = TwistingClasses(classes=(base.zero(),))
    ring = build_bundle_ring(base, lam, p1())
    numbers = chern_numbers_bundle(ring, total_chern_general(ring))
    assert numbers[(3,)] == 6  # chi = 3 * 2


def test_integrate_bundle_point_and_degree_mismatch():
    base = p1_presentation()
    lam = TwistingClasses(classes=(base.reduce_poly({(1,): 1}),))
    ring = build_bundle_ring(base, lam, p1())
    point = ring.reduce_raw(
        {1: {ring._degrees[1][1][(1, 0)]: base.reduce_poly({(1,): 1})}}
    )
    assert integrate_bundle(ring, point) == 1
    with pytest.raises(ValueError):
        integrate_bundle(ring, ring.unit())


def test_cross_mode_agreement_on_corpus():
    for inst in corpus_instances():
        pres = presentation_from_fan(inst.base)
        lam = twisting_from_principal(pres, principal_classes(inst.phi))
        ring = build_bundle_ring(pres, lam, inst.fiber)
        numbers = chern_numbers_bundle(ring, total_chern_general(ring))
        report = compare(inst.base, inst.fiber, inst.phi, inst.name)
        assert numbers == report.intrinsic_numbers, inst.name


def test_hand_presentation_matches_generated_one():
    hand = p2_presentation()
    generated = presentation_from_fan(p2())
    phi = make_plmap(1, [[1], [0], [0]])
    lam_gen = twisting_from_principal(generated, principal_classes(phi))
    # by linear relations x0 = x2 and x1 = x2, lambda = x0 is h in the
    # hand-written presentation
    lam_hand = TwistingClasses(classes=(hand.reduce_poly({(1,): 1}),))
    ring_gen = build_bundle_ring(generated, lam_gen, p1())
    ring_hand = build_bundle_ring(hand, lam_hand, p1())
    a = chern_numbers_bundle(ring_gen, total_chern_general(ring_gen))
    b = chern_numbers_bundle(ring_hand, total_chern_general(ring_hand))
    assert a == b


def test_fiber_restriction_recovers_fiber_chern_class():
    base = p2_presentation()
    for fiber in (p1(), p2()):
        lam = TwistingClasses(classes=tuple(
            base.reduce_poly({(1,): k}) for k in range(1, fiber.dim + 1)
        ))
        ring = build_bundle_ring(base, lam, fiber)
        total = total_chern_general(ring)
        assert fiber_restriction(ring, total) == total_chern_intrinsic(
            ring.fiber_ring
        )


def test_twisting_classes_must_be_degree_two():
    base = p2_presentation()
    with pytest.raises(ValueError):
        TwistingClasses(classes=(base.reduce_poly({(2,): 1}),))


def test_arity_mismatch_rejected():
    base = p1_presentation()
    lam = TwistingClasses(classes=(base.zero(), base.zero()))
    with pytest.raises(ValueError):
        build_bundle_ring(base, lam, p1())
