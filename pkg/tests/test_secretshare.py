import math

import numpy as np
import pytest

from qlocc import (
    FamilyParams,
    IntegrityError,
    a_basis,
    decode_full_collaboration,
    encode_2bit,
    hermitian_eigenvalues,
    strong_pair_shares,
    theta_basis,
)
from qlocc.secretshare import (
    ShareSet,
    mixed_share_eigenvalues,
    share_set_from_json,
    share_set_to_json,
    strong_pair_to_json,
)

PI_4 = math.pi / 4


def strong_basis():
    return a_basis(FamilyParams(alpha=0.3, beta=0.9, gamma=PI_4))


def test_encode_produces_three_copies_of_selected_state():
    b = strong_basis()
    s = encode_2bit(2, b)
    for copy in s.copies:
        assert copy.close_to(b[2], atol=1e-15)
    assert s.party_assignment == ("A1", "B1", "A2", "B2", "A3", "B3")
    assert s.security_warning is None


def test_encode_warns_on_two_copy_distinguishable_basis():
    with pytest.warns(UserWarning):
        s = encode_2bit(1, theta_basis(PI_4))
    assert s.security_warning is not None


def test_encode_rejects_out_of_range_message():
    with pytest.raises(ValueError):
        encode_2bit(5, strong_basis())
    with pytest.raises(ValueError):
        encode_2bit(-1, strong_basis())


def test_roundtrip_all_messages_strong_basis():
    b = strong_basis()
    for m in range(4):
        assert decode_full_collaboration(encode_2bit(m, b), b) == m


def test_roundtrip_all_messages_bell_basis():
    b = theta_basis(PI_4)
    for m in range(4):
        with pytest.warns(UserWarning):
            s = encode_2bit(m, b)
        assert decode_full_collaboration(s, b) == m


def test_corrupted_shares_rejected():
    b = strong_basis()
    s = encode_2bit(1, b)
    tampered = ShareSet(message=1, copies=(s.copies[0], b[2], s.copies[2]))
    with pytest.raises(IntegrityError):
        decode_full_collaboration(tampered, b)


def test_strong_pair_security_pass_on_strong_basis():
    out = strong_pair_shares(strong_basis(), 0, 2, 0.5, 0.5)
    assert out.security_pass
    assert not out.certificate_pair.is_separable
    assert not out.certificate_complement.is_separable
    assert out.complement == (1, 3)


def test_strong_pair_orthogonal_supports():
    out = strong_pair_shares(strong_basis(), 0, 2, 0.5, 0.5)
    assert out.cross_trace < 1e-12
    assert abs(np.trace(out.share.sigma).real - 1.0) < 1e-12


def test_strong_pair_security_fail_on_bell_pair():
    out = strong_pair_shares(theta_basis(PI_4), 0, 1, 0.5, 0.5)
    assert not out.security_pass
    assert out.certificate_pair.is_separable


def test_strong_pair_rejects_bad_weights():
    b = strong_basis()
    with pytest.raises(ValueError):
        strong_pair_shares(b, 0, 2, 0.0, 0.5)
    with pytest.raises(ValueError):
        strong_pair_shares(b, 0, 2, 0.5, 1.0)
    with pytest.raises(ValueError):
        strong_pair_shares(b, 2, 2, 0.5, 0.5)


def test_mixed_share_spectrum():
    lam, mu = 0.3, 0.7
    out = strong_pair_shares(strong_basis(), 0, 2, lam, mu)
    ev_sigma, ev_perp = mixed_share_eigenvalues(out.share)
    assert np.allclose(ev_sigma, [0.0, 0.0, lam, 1 - lam], atol=1e-10)
    assert np.allclose(ev_perp, [0.0, 0.0, 1 - mu, mu], atol=1e-10)


def test_share_set_json_roundtrip():
    b = strong_basis()
    s = encode_2bit(3, b)
    text = share_set_to_json(s, b)
    again, basis_again = share_set_from_json(text)
    assert again.message == 3
    assert decode_full_collaboration(again, basis_again) == 3


def test_strong_pair_json_fields():
    import json

    out = strong_pair_shares(strong_basis(), 0, 2, 0.5, 0.5)
    doc = json.loads(strong_pair_to_json(out))
    assert doc["schema"] == "shares.v1"
    assert doc["kind"] == "strong_pair"
    assert doc["security"] == "PASS"
    assert doc["certificates"]["pair_projector"]["is_separable"] is False
    assert len(doc["sigma"]) == 4 and len(doc["sigma"][0]) == 4


def test_decode_recovers_even_under_nonuniform_mixture_weights():
    # the spectrum {lam, 1-lam} never touches the decode path, which uses
    # pure three-copy shares; this guards the two schemes stay independent
    b = strong_basis()
    s = encode_2bit(0, b)
    assert decode_full_collaboration(s, b) == 0


def test_share_eigenvalue_sum_is_one():
    out = strong_pair_shares(strong_basis(), 1, 3, 0.25, 0.75)
    assert abs(hermitian_eigenvalues(out.share.sigma).sum() - 1.0) < 1e-12
