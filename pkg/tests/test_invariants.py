"""Cup-length, zero-divisor cup-length, witnesses, and their cross-checks."""

import pytest

from zclkit import (
    AlgebraPresentation,
    builtin_algebra,
    cup_length,
    cup_length_oracle,
    tensor_power,
    validate_algebra,
    verify_witness,
    witness_extend,
    zcl_bounds,
    zcl_exact,
    zcl_oracle,
)
from zclkit.errors import ResourceLimitError, ValidationError, WitnessInvariantError
from zclkit.fields import GF3, QQ
from zclkit.invariants import Witness


def _alg(name, field, basis, products=None):
    return validate_algebra(AlgebraPresentation.from_labels(name, field, basis, products))


def point():
    return _alg("k", QQ, [("1", 0)])


def exterior_line():
    return _alg("ext", QQ, [("1", 0), ("a", 1)])


def truncated_height3():
    return _alg(
        "t3", QQ, [("1", 0), ("x", 2), ("xx", 4)], {("x", "x"): [(1, "xx")]}
    )


def even_sphere():
    return _alg("s2", QQ, [("1", 0), ("a", 2)])


# -- cup-length ------------------------------------------------------------------


def test_cup_length_stanley(stanley):
    res = cup_length(stanley)
    assert res.value == 1
    assert len(res.chain) == 1
    assert not res.chain[0].is_zero


def test_cup_length_point():
    res = cup_length(point())
    assert res.value == 0
    assert res.chain == ()


def test_cup_length_truncated_polynomial():
    # x*x = xx is nonzero, x*x*x dies
    assert cup_length(truncated_height3()).value == 2


def test_cup_length_chain_product_is_nonzero(corpus):
    for alg in corpus[:30]:
        res = cup_length(alg)
        if res.value == 0:
            continue
        prod = res.chain[0]
        for e in res.chain[1:]:
            prod = prod * e
        assert not prod.is_zero
        assert all(e.degree() > 0 for e in res.chain)


def test_cup_length_oracle_examples(stanley):
    assert cup_length_oracle(stanley) == 1
    assert cup_length_oracle(point()) == 0
    two_odds = _alg(
        "ext2", QQ, [("1", 0), ("a", 1), ("b", 1), ("ab", 2)], {("a", "b"): [(1, "ab")]}
    )
    assert cup_length_oracle(two_odds) == 2


def test_cup_length_oracle_guard():
    big = tensor_power(builtin_algebra("stanley-p3"), 4)
    with pytest.raises(ResourceLimitError):
        cup_length_oracle(big)


def test_cup_length_matches_oracle_on_corpus_prefix(corpus):
    for alg in corpus[:40]:
        assert cup_length(alg).value == cup_length_oracle(alg)


# -- zcl exact ---------------------------------------------------------------------


def test_zcl_exact_stanley_r2(stanley):
    res = zcl_exact(stanley, 2)
    assert (res.value, res.method, res.lower, res.upper) == (2, "exact", 2, 2)
    assert len(res.witness.factors) == 2


def test_zcl_exact_stanley_r3(stanley):
    assert zcl_exact(stanley, 3).value == 3


def test_zcl_exact_exterior_kernel_squares_to_zero():
    # kernel basis {a x 1 - 1 x a, a x a}; all pairwise products vanish
    assert zcl_exact(exterior_line(), 2).value == 1


def test_zcl_exact_point_is_zero():
    res = zcl_exact(point(), 2)
    assert (res.value, res.upper, res.witness) == (0, 0, None)


def test_zcl_exact_requires_r_at_least_two(stanley):
    with pytest.raises(ValidationError):
        zcl_exact(stanley, 1)


def test_zcl_exact_respects_ceiling(stanley):
    with pytest.raises(ResourceLimitError):
        zcl_exact(stanley, 4, max_dim=100)


# -- zcl bounds ---------------------------------------------------------------------


def test_zcl_bounds_stanley_r7(stanley):
    res = zcl_bounds(stanley, 7)
    assert (res.lower, res.upper, res.value, res.method) == (7, 7, 7, "bounds")
    assert len(res.witness.factors) == 7
    assert verify_witness(stanley, res.witness).ok


def test_zcl_bounds_point():
    res = zcl_bounds(point(), 5)
    assert (res.lower, res.upper, res.value) == (0, 0, 0)


def test_zcl_bounds_even_truncated_r2():
    res = zcl_bounds(even_sphere(), 2)
    assert (res.lower, res.upper, res.value) == (2, 2, 2)


def test_zcl_bounds_without_feasible_seed(stanley):
    res = zcl_bounds(stanley, 3, max_seed_dim=8)
    assert res.value is None
    assert (res.lower, res.upper) == (0, 3)
    assert res.witness is None


def test_zcl_bounds_matches_exact_where_both_run(corpus):
    for alg in corpus[:20]:
        if alg.dim < 2 or alg.dim ** 2 > 81:
            continue
        exact = zcl_exact(alg, 2, max_dim=81)
        bounds = zcl_bounds(alg, 2)
        assert bounds.lower <= exact.value <= bounds.upper


# -- witness extension -----------------------------------------------------------------


def test_witness_extend_stanley(stanley):
    seed = zcl_exact(stanley, 2)
    chain = cup_length(stanley).chain
    extended = witness_extend(stanley, seed.witness, chain)
    assert extended.r == 3
    assert len(extended.factors) == 3
    assert not extended.product.is_zero
    assert verify_witness(stanley, extended).ok


def test_witness_extend_rejects_empty_chain(stanley):
    seed = zcl_exact(stanley, 2)
    with pytest.raises(ValidationError):
        witness_extend(stanley, seed.witness, ())


def test_witness_extend_rejects_empty_witness(stanley):
    sq = tensor_power(stanley, 2)
    empty = Witness(2, (), sq.one_element())
    with pytest.raises(ValidationError):
        witness_extend(stanley, empty, cup_length(stanley).chain)


def test_witness_extend_even_truncated_cube():
    # base k[a]/(a^3): r=2 witness (abar, abar), chain (a); lands in the dim-27 cube
    alg = truncated_height3()
    sq = tensor_power(alg, 2)
    abar = sq.element_from_labels({"x⊗1": 1, "1⊗x": -1})
    square = abar * abar
    assert not square.is_zero
    seed = Witness(2, (abar, abar), square)
    chain = (alg.element_from_labels({"x": 1}),)
    extended = witness_extend(alg, seed, chain)
    assert extended.r == 3
    assert extended.factors[0].algebra.dim == 27
    assert len(extended.factors) == 3
    assert not extended.product.is_zero
    assert verify_witness(alg, extended).ok


# -- witness verification ----------------------------------------------------------------


def test_verify_witness_accepts_exact_output(stanley):
    res = zcl_exact(stanley, 2)
    report = verify_witness(stanley, res.witness)
    assert report.ok
    assert report.problems == ()


def test_verify_witness_rejects_tampered_factor(stanley):
    res = zcl_exact(stanley, 2)
    sq = tensor_power(stanley, 2)
    tampered = Witness(
        2, (res.witness.factors[0], sq.one_element()), res.witness.product
    )
    report = verify_witness(stanley, tampered)
    assert not report.ok
    assert any("zero divisor" in p for p in report.problems)


def test_verify_witness_rejects_wrong_product(stanley):
    res = zcl_exact(stanley, 2)
    sq = tensor_power(stanley, 2)
    forged = Witness(2, res.witness.factors, sq.one_element())
    report = verify_witness(stanley, forged)
    assert not report.ok
    assert any("differs" in p for p in report.problems)


def test_projection_of_extended_witness_matches_parent_up_to_sign(stanley):
    seed = zcl_exact(stanley, 2)
    chain = cup_length(stanley).chain
    extended = witness_extend(stanley, seed.witness, chain)
    # collapse the last slot with the functional dual to the chain product
    yprod = chain[0]
    for y in chain[1:]:
        yprod = yprod * y
    cstar, lam = yprod.items()[0]
    field = stanley.field
    inv_lam = field.inv(lam)
    d = stanley.dim
    sq = tensor_power(stanley, 2)
    collapsed = [field.zero] * sq.dim
    for idx, c in extended.product.items():
        q, s = divmod(idx, d)
        if s == cstar:
            collapsed[q] = field.add(collapsed[q], field.mul(c, inv_lam))
    projected = sq.element(collapsed)
    assert projected == seed.witness.product or projected == -seed.witness.product
    assert not projected.is_zero


def test_every_returned_witness_verifies(corpus):
    checked = 0
    for alg in corpus[:25]:
        if alg.dim < 2 or alg.dim ** 2 > 81:
            continue
        res = zcl_exact(alg, 2, max_dim=81)
        if res.witness is None:
            continue
        assert verify_witness(alg, res.witness).ok
        checked += 1
        bounds = zcl_bounds(alg, 3)
        if bounds.witness is not None:
            assert verify_witness(alg, bounds.witness).ok
    assert checked > 5


def test_exterior_kernel_squares_to_zero_as_a_subspace():
    from zclkit import kernel_mu
    from zclkit.linalg import subspace_product

    alg = exterior_line()
    square = tensor_power(alg, 2)
    kernel = kernel_mu(alg, 2)
    assert kernel.dim == 2
    product = subspace_product(
        kernel, kernel, square.multiply_coords, product_items=square.product_items
    )
    assert product.is_zero


def test_builtin_cup_lengths():
    assert cup_length(builtin_algebra("point")).value == 0
    assert cup_length(builtin_algebra("surface:1")).value == 2
    assert cup_length(builtin_algebra("surface:3")).value == 2
    assert cup_length(builtin_algebra("sphere-odd:5")).value == 1


# -- brute-force agreement -----------------------------------------------------------------


def test_zcl_oracle_guard(stanley):
    with pytest.raises(ResourceLimitError):
        zcl_oracle(stanley, 4)


def test_zcl_exact_matches_oracle_small(stanley):
    assert zcl_exact(stanley, 2).value == zcl_oracle(stanley, 2)
    assert zcl_exact(exterior_line(), 2).value == zcl_oracle(exterior_line(), 2)
    assert zcl_exact(even_sphere(), 3).value == zcl_oracle(even_sphere(), 3)
