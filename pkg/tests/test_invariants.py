"""Tests for the invariant evaluation routes, lens space values, fusion
dimensions and output normalizations."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from seifert_rt.invariants import (
    METHODS,
    NORMALIZATIONS,
    ComplexityCap,
    InvariantResult,
    MissingBetti,
    convert_normalization,
    tau_compact,
    tau_cs11,
    tau_generic,
    tau_graph_sum,
    tau_lens,
    tau_lens_routes,
    tau_section5,
    verlinde_dim,
)
from seifert_rt.modular import MissingEpsilon, ModularDatum, sl2_datum
from seifert_rt.seifert import (
    LensSpace,
    UnsupportedBase,
    normalize,
    parse_seifert,
    reverse_orientation,
    seifert_from_lens,
)

POINCARE = parse_seifert("o;g=0;b=-1;2/1,3/1,5/1")
S3_PLUS = parse_seifert("o;g=0;b=1;")
S3_MINUS = parse_seifert("o;g=0;b=-1;")
S1_S2 = parse_seifert("o;g=0;b=0;")


def all_route_values(data, r, cf_style="minus"):
    datum = sl2_datum(r)
    out = [
        tau_generic(datum, data, cf_style).value,
        tau_cs11(r, data).value,
        tau_compact(r, data).value,
    ]
    if data.base == "o":
        out.append(tau_section5(datum, data, cf_style).value)
        out.append(tau_graph_sum(datum, data, cf_style).value)
    return out


def spread(values):
    return max(
        abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]
    )


# ------------------------------------------------------ reference values


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_sphere_value_every_route(r):
    expected = math.sqrt(2.0 / r) * math.sin(math.pi / r)
    for data in (S3_PLUS, S3_MINUS):
        for val in all_route_values(data, r):
            assert abs(val - expected) < 1e-12


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_product_value_every_route(r):
    for val in all_route_values(S1_S2, r):
        assert abs(val - 1.0) < 1e-12


def test_poincare_frozen_values():
    got5 = tau_cs11(5, POINCARE).value
    assert abs(got5 - (-0.30075047750377215 + 0.925614793410957j)) < 1e-12
    got7 = tau_cs11(7, POINCARE).value
    assert abs(got7 - (-0.8460344491024053 + 0.04478304252582149j)) < 1e-12


def test_routes_agree_on_seeded_sample():
    from seifert_rt.cli import random_seifert

    rng = random.Random(314)
    for _ in range(12):
        data = random_seifert(rng)
        for r in (3, 5, 7):
            values = all_route_values(data, r)
            assert spread(values) < 1e-9, (data, r)


def test_cs11_invariant_under_normalization():
    from seifert_rt.cli import random_seifert

    rng = random.Random(99)
    for _ in range(10):
        data = random_seifert(rng)
        norm = normalize(data)
        for r in (4, 6):
            a = tau_cs11(r, data).value
            b = tau_cs11(r, norm).value
            assert abs(a - b) < 1e-10


def test_orientation_reversal_conjugates():
    from seifert_rt.cli import random_seifert

    rng = random.Random(500)
    for _ in range(15):
        data = normalize(random_seifert(rng))
        rev = reverse_orientation(data)
        for r in (3, 5):
            a = tau_cs11(r, data).value
            b = tau_cs11(r, rev).value
            assert abs(b - a.conjugate()) < 1e-10


# ------------------------------------------------------------ lens spaces


def test_lens_frozen_values():
    assert (
        abs(
            tau_lens(5, LensSpace(5, 4)).value
            - (-0.41562693777745346 - 0.5720614028176843j)
        )
        < 1e-12
    )
    assert (
        abs(
            tau_lens(5, LensSpace(7, 3)).value
            - (-0.35355339059327373 + 0.4866244947338651j)
        )
        < 1e-12
    )


@pytest.mark.parametrize("r", [3, 5, 8])
def test_lens_unit_cases(r):
    d_inv = math.sqrt(2.0 / r) * math.sin(math.pi / r)
    for p, q in [(1, 0), (-1, 0), (1, 1)]:
        assert abs(tau_lens(r, LensSpace(p, q)).value - d_inv) < 1e-12
    assert abs(tau_lens(r, LensSpace(0, 1)).value - 1.0) < 1e-12


def test_lens_internal_routes_agree():
    for p in range(2, 9):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            for r in (3, 6):
                v1, v2, _ = tau_lens_routes(r, LensSpace(p, q))
                assert abs(v1 - v2) < 1e-10, (p, q, r)


def test_lens_matches_fibered_presentation():
    for p, q in [(5, 4), (7, 3), (4, 1), (9, 2)]:
        data = seifert_from_lens(LensSpace(p, q))
        for r in (4, 7):
            direct = tau_lens(r, LensSpace(p, q)).value
            via_fibration = tau_cs11(r, data).value
            assert abs(direct - via_fibration) < 1e-10


# ------------------------------------------------------- guards and caps


def test_graph_sum_caps():
    d = sl2_datum(5)
    with pytest.raises(ComplexityCap):
        tau_graph_sum(d, POINCARE, chain_cap=2)
    with pytest.raises(ComplexityCap):
        tau_graph_sum(sl2_datum(12), S3_PLUS, r_cap=10)
    with pytest.raises(ComplexityCap):
        tau_graph_sum(d, POINCARE, max_terms=10)


def test_nonorientable_base_unsupported_routes():
    kb = parse_seifert("n;g=1;b=0;")
    d = sl2_datum(5)
    with pytest.raises(UnsupportedBase):
        tau_graph_sum(d, kb)
    with pytest.raises(UnsupportedBase):
        tau_section5(d, kb)


def no_eps_datum(r):
    d = sl2_datum(r)
    return ModularDatum(
        d.n_labels,
        np.array(d.S),
        np.array(d.v),
        np.array(d.dims),
        d.D,
        d.delta,
        d.dual,
        (None,) * d.n_labels,
    )


def test_missing_epsilon_only_when_consumed():
    d = sl2_datum(5)
    bare = no_eps_datum(5)
    odd = parse_seifert("n;g=1;b=0;")
    even = parse_seifert("n;g=2;b=0;")
    with pytest.raises(MissingEpsilon):
        tau_generic(bare, odd)
    a = tau_generic(d, even).value
    b = tau_generic(bare, even).value
    assert a == b


def test_result_validation():
    with pytest.raises(ValueError):
        InvariantResult(1 + 0j, 5, "other", None, None, 1e-12)
    with pytest.raises(ValueError):
        InvariantResult(1 + 0j, 1, "cs11", None, None, 1e-12)
    with pytest.raises(ValueError):
        InvariantResult(1 + 0j, 5, "cs11", None, None, 0.0)
    assert set(METHODS) >= {"generic", "cs11", "compact"}


def test_result_route_metadata():
    res = tau_generic(sl2_datum(5), POINCARE)
    assert res.method == "generic"
    assert res.sigma_used == 2
    assert res.cf_style == "minus"
    assert res.tolerance_estimate > 0
    res2 = tau_cs11(5, POINCARE)
    assert res2.sigma_used is None
    assert res2.cf_style is None


# ------------------------------------------------------ fusion dimensions


def test_verlinde_frozen():
    d5 = sl2_datum(5)
    assert abs(verlinde_dim(d5, 2) - 20.0) < 1e-9
    assert abs(verlinde_dim(d5, 0, (1, 1)) - 1.0) < 1e-9
    assert abs(verlinde_dim(sl2_datum(4), 1, (2,)) - 1.0) < 1e-9
    assert abs(verlinde_dim(d5, 0, (1, 2, 3)) - 1.0) < 1e-9


@pytest.mark.parametrize("r", range(3, 10))
def test_verlinde_torus_counts_labels(r):
    assert abs(verlinde_dim(sl2_datum(r), 1) - (r - 1)) < 1e-8


def test_verlinde_integrality():
    rng = random.Random(8)
    for r in range(3, 10):
        d = sl2_datum(r)
        for g in range(4):
            colors = tuple(
                rng.randrange(d.n_labels) for _ in range(rng.randint(0, 2))
            )
            val = verlinde_dim(d, g, colors)
            assert val > -1e-6
            assert abs(val - round(val)) < 1e-6, (r, g, colors, val)


# --------------------------------------------------------- normalizations


def test_convert_normalization_formulas():
    d = sl2_datum(5)
    res = tau_cs11(5, POINCARE)
    tau = res.value
    assert convert_normalization(res, "tau", d) == tau
    assert abs(convert_normalization(res, "tau_d", d) - d.D * tau) < 1e-12
    framed = convert_normalization(res, "framed", d, b1=0)
    assert abs(framed - d.D * tau) < 1e-12
    lescop = convert_normalization(res, "lescop", d, b1=0)
    assert abs(lescop - d.D * tau) < 1e-12
    lescop2 = convert_normalization(res, "lescop", d, b1=2)
    assert abs(lescop2 - d.D**3 * tau) < 1e-12
    assert tuple(NORMALIZATIONS) == ("tau", "tau_d", "framed", "lescop")


def test_convert_normalization_sphere_lands_on_one():
    d = sl2_datum(6)
    res = tau_cs11(6, S3_PLUS)
    assert abs(convert_normalization(res, "tau_d", d) - 1.0) < 1e-12


def test_convert_normalization_errors():
    d = sl2_datum(5)
    res = tau_cs11(5, POINCARE)
    with pytest.raises(MissingBetti):
        convert_normalization(res, "framed", d)
    with pytest.raises(MissingBetti):
        convert_normalization(res, "lescop", d)
    with pytest.raises(ValueError):
        convert_normalization(res, "other", d)
