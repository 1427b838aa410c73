from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from diotrans.errors import (
    HypothesisViolated,
    NoWitnesses,
    NonCollinearRequired,
    Only3D,
)
from diotrans.functions import power_spec
from diotrans.geometry import Box, System, best_approx_table, box_contains
from diotrans.presets import get_preset
from diotrans.radicals import Radical
from diotrans.sectiondual import improved_mahler_factor
from diotrans.transfer import (
    Certificate,
    alphas_core,
    cube_section_bound_squared,
    mahler_transfer,
    mahler_transfer_asymmetric,
    main_lemma_hypothesis,
    main_lemma_transfer,
    main_lemma_transfer_3d,
    products_inequality,
    semicore,
    transference_parameters,
    verify_certificate,
)


def _half() -> System:
    return System(1, 1, ((Fraction(1, 2),),))


def test_transference_parameters_exact():
    # d=2: factor = Delta_2^{-1} = 1, Y = X^m/(d-1)... = X, V = U
    system = _half()
    Y, V = transference_parameters(system, Fraction(2), Fraction(1, 2))
    assert Y == 2 and V == Fraction(1, 2)


def test_transference_parameters_d3_radical():
    system = System(1, 2, ((Fraction(1, 3), Fraction(1, 5)),))
    Y, V = transference_parameters(system, Fraction(4), Fraction(1, 4))
    f = improved_mahler_factor(3)
    # Y = f * X^(m/(d-1)) U^((1-m)/(d-1)) = f * 4 * 4^(1/2) = 8f
    assert Y == f * 8


def test_mahler_transfer_produces_verified_certificate():
    system = _half()
    cert = mahler_transfer(system, Fraction(2), Fraction(1, 100))
    assert cert.all_ok()
    ok, results = verify_certificate(cert)
    assert ok, results


def test_mahler_requires_populated_primal_box():
    system = _half()
    with pytest.raises(NoWitnesses):
        mahler_transfer(system, Fraction(1, 3), Fraction(1, 100))


def test_asymmetric_every_coordinate():
    system = System(1, 2, ((Fraction(1, 3), Fraction(2, 7)),))
    for k in range(system.d):
        cert = mahler_transfer_asymmetric(system, Fraction(3), Fraction(1, 2), k)
        assert cert.all_ok()
        assert verify_certificate(cert)[0]


def test_asymmetric_k_out_of_range():
    with pytest.raises(ValueError):
        mahler_transfer_asymmetric(_half(), 2, Fraction(1, 2), 5)


def test_certificate_json_roundtrip():
    cert = mahler_transfer(_half(), Fraction(2), Fraction(1, 100))
    back = Certificate.from_json(cert.to_json())
    assert back.to_dict() == cert.to_dict()
    assert verify_certificate(back)[0]


def test_tampered_certificate_fails_verification():
    cert = mahler_transfer(_half(), Fraction(2), Fraction(1, 100))
    cert.output_point = tuple(v + 1000 for v in cert.output_point)
    ok, results = verify_certificate(cert)
    assert not ok


def test_main_lemma_hand_instance():
    system = System(1, 2, ((Fraction(0), Fraction(0)),))
    v1, v2 = (1, 0, 0), (0, 1, 0)
    ok, vals = main_lemma_hypothesis(system, v1, v2, 4, 1, Fraction(1, 12))
    assert ok and vals["h1"] == 0 and vals["r1"] == 1
    cert = main_lemma_transfer(system, v1, v2, 4, 1)
    assert cert.all_ok()
    assert verify_certificate(cert)[0]
    # the output is orthogonal to both inputs by construction
    z = cert.output_point
    assert z[0] == z[1] == 0 and z[2] != 0


def test_main_lemma_rejects_collinear():
    system = System(1, 2, ((Fraction(0), Fraction(0)),))
    with pytest.raises(NonCollinearRequired):
        main_lemma_transfer(system, (1, 0, 0), (2, 0, 0), 4, 1)


def test_main_lemma_rejects_small_products():
    system = System(1, 2, ((Fraction(1, 3), Fraction(1, 5)),))
    with pytest.raises(HypothesisViolated):
        main_lemma_transfer(system, (1, 0, 0), (0, 1, 0), Fraction(1, 100), Fraction(1, 100))


def test_3d_variant_needs_dimension_three():
    with pytest.raises(Only3D):
        main_lemma_transfer_3d(_half(), (1, 0), (0, 1), 1, 1)


def test_3d_gap_instance_separates_constants():
    # scaled until the general 1/(2 sqrt(3)) constant fails but the 3D 1/2
    # constant holds
    system = System(1, 2, ((Fraction(0), Fraction(0)),))
    v1, v2 = (1, 0, 0), (0, 1, 0)
    h = Fraction(3)  # sqrt(12) > 3 > 2: between the two thresholds
    ok_general, _ = main_lemma_hypothesis(system, v1, v2, h, 1, Fraction(1, 12))
    ok_sharp, _ = main_lemma_hypothesis(system, v1, v2, h, 1, Fraction(1, 4))
    assert not ok_general and ok_sharp
    with pytest.raises(HypothesisViolated):
        main_lemma_transfer(system, v1, v2, h, 1)
    cert = main_lemma_transfer_3d(system, v1, v2, h, 1)
    assert cert.all_ok() and verify_certificate(cert)[0]


def test_cube_section_bound_dominates_wedge():
    system = System(1, 2, ((Fraction(1, 3), Fraction(1, 7)),))
    b = cube_section_bound_squared(system, (1, 2, 3), (0, 1, -1))
    assert b > 0  # the internal assertion already checked wedge <= bound


@given(
    st.fractions(min_value=Fraction(1, 20), max_value=20),
    st.fractions(min_value=Fraction(1, 20), max_value=20),
    st.fractions(min_value=Fraction(1, 20), max_value=20),
    st.fractions(min_value=Fraction(1, 20), max_value=20),
)
def test_products_inequality_always_holds(h1, r1, h2, r2):
    assert products_inequality(h1, r1, h2, r2)


def test_semicore_two_witness_step():
    system = get_preset("plastic").build()
    table = best_approx_table(system, "primal", 5)
    phi_val = table.records[0].psi
    psi_val = table.records[1].psi
    cert = semicore(system, 3, phi_val, psi_val, 1, budget=10**6)
    assert cert.kind.startswith("semicore")
    assert cert.all_ok() and verify_certificate(cert)[0]


def test_semicore_requires_ordered_bounds():
    system = get_preset("plastic").build()
    with pytest.raises(HypothesisViolated):
        semicore(system, 3, Fraction(1, 10), Fraction(1, 2), 1)


def test_alphas_core_route_mahler():
    system = get_preset("plastic").build()
    cert = alphas_core(
        system, power_spec(1, Fraction(-1, 2)), power_spec(Fraction(1, 100), -2), 20
    )
    assert cert.params["route"] == "mahler"
    assert cert.all_ok() and verify_certificate(cert)[0]


def test_alphas_core_route_dilation():
    # two independent near-rational directions: the starred box is empty,
    # the minimal dilation pair is (3,0,*) and (0,5,*), and the lambda
    # product is far below the threshold
    system = System(
        1,
        2,
        ((Fraction(1, 3) + Fraction(1, 10**7), Fraction(1, 5) + Fraction(1, 10**12)),),
    )
    cert = alphas_core(
        system,
        power_spec(Fraction(533, 100), -1),
        power_spec(Fraction(1, 100), -2),
        10**4,
        budget=10**6,
    )
    assert cert.params["route"] == "dilation"
    assert cert.params["lambda2"] == "5"
    assert cert.all_ok() and verify_certificate(cert)[0]


def test_alphas_core_growth_hypothesis_enforced():
    system = get_preset("plastic").build()
    with pytest.raises(HypothesisViolated):
        alphas_core(system, power_spec(1, Fraction(-1, 2)), power_spec(1, -2), 20)


def test_output_lands_in_inflated_dual_box():
    system = _half()
    cert = mahler_transfer(system, Fraction(2), Fraction(1, 100))
    Y, V = transference_parameters(system, Fraction(2), Fraction(1, 100))
    box = Box(system, Y, V, "dual")
    assert box_contains(box, cert.output_point) is True
