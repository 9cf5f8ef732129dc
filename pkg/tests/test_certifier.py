import dataclasses
from fractions import Fraction

import pytest

from semimat import (CapExceededError, CertBlock, Factorization,
                     FingerprintError, Morphism, Semiring, boolean_semiring,
                     certify, column_preorder, compose, enumerate_hom,
                     factor_through, identity, pad_identity, parse_certificate,
                     render_certificate, tropical_semiring, verify_certificate,
                     verify_preorder_map)

BOOL = boolean_semiring()
TROP1 = tropical_semiring(1)


def test_column_preorder_examples():
    f = Morphism(1, 2, ((0, 1),))
    assert column_preorder(BOOL, f).entries == ((1, 1), (0, 1))
    same = Morphism(2, 2, ((1, 1), (0, 0)))  # both columns equal
    assert column_preorder(BOOL, same).entries == ((1, 1), (1, 1))
    empty = Morphism(0, 3, ())  # d = 0: vacuously all ones
    assert column_preorder(BOOL, empty).entries == ((1, 1, 1),) * 3


def test_column_preorder_has_unit_diagonal_and_is_transitive():
    for sr, d, x in [(BOOL, 1, 3), (BOOL, 2, 2), (TROP1, 1, 3)]:
        for f in enumerate_hom(sr, d, x):
            s = column_preorder(sr, f)
            one = sr.one
            for i in range(x):
                assert s.entries[i][i] == one
            for i in range(x):
                for j in range(x):
                    for k in range(x):
                        if s.entries[i][j] == one and s.entries[j][k] == one:
                            assert s.entries[i][k] == one


def test_factor_through_example():
    m = Morphism(2, 2, ((1, 1), (0, 1)))
    fact = factor_through(BOOL, m, 2)
    assert fact.left.entries == ((1, 1), (0, 1))
    assert fact.right == identity(BOOL, 2)
    assert fact.pad == 0
    assert fact.product(BOOL) == m
    d_full, e_full = fact.expand(BOOL)
    assert compose(BOOL, d_full, e_full) == m


def test_factor_through_single_distinct_column():
    m = Morphism(2, 2, ((1, 1), (1, 1)))
    fact = factor_through(BOOL, m, 3)
    assert fact.width == 1
    assert fact.pad == 2
    assert fact.product(BOOL) == m
    d_full, e_full = fact.expand(BOOL)
    assert d_full.signature == (2, 3)
    assert e_full.signature == (3, 2)
    assert compose(BOOL, d_full, e_full) == m


def test_factor_through_identity():
    fact = factor_through(BOOL, identity(BOOL, 2), 2)
    assert fact.product(BOOL) == identity(BOOL, 2)


def test_factor_through_bound_violation():
    with pytest.raises(ValueError, match="distinct columns"):
        factor_through(BOOL, identity(BOOL, 2), 1)


def test_factor_through_reproduces_every_column_preorder():
    # v never exceeds n^d, so factoring through n^d always succeeds
    for sr, d, x in [(BOOL, 1, 3), (TROP1, 1, 4)]:
        y = sr.size ** d
        for f in enumerate_hom(sr, d, x):
            s = column_preorder(sr, f)
            fact = factor_through(sr, s, y)
            assert fact.width <= y
            assert fact.product(sr) == s


def test_pad_identity():
    fact = pad_identity(BOOL, 2, 2)
    assert fact.left == identity(BOOL, 2) and fact.right == identity(BOOL, 2)
    fact = pad_identity(BOOL, 1, 2)
    d_full, e_full = fact.expand(BOOL)
    assert d_full.entries == ((1, 0),)
    assert e_full.entries == ((1,), (0,))
    assert compose(BOOL, d_full, e_full) == identity(BOOL, 1)
    empty = pad_identity(BOOL, 0, 3)
    assert empty.product(BOOL) == identity(BOOL, 0)
    with pytest.raises(ValueError):
        pad_identity(BOOL, 3, 2)


def test_verify_preorder_map_boolean():
    hom = enumerate_hom(BOOL, 1, 2)
    report = verify_preorder_map(BOOL, hom, lambda f: column_preorder(BOOL, f))
    assert report.passed
    assert report.fixed_point_checks == 4
    assert report.inflation_checks == 16


def test_verify_preorder_map_tropical():
    hom = enumerate_hom(TROP1, 1, 2)
    report = verify_preorder_map(TROP1, hom, {f: column_preorder(TROP1, f) for f in hom})
    assert report.passed
    assert report.fixed_point_checks == 9
    assert report.inflation_checks == 81


def test_verify_preorder_map_identity_map_passes():
    hom = enumerate_hom(BOOL, 1, 2)
    report = verify_preorder_map(BOOL, hom, lambda f: identity(BOOL, 2))
    assert report.passed


def test_verify_preorder_map_reports_counterexample():
    hom = enumerate_hom(BOOL, 1, 1)
    zero_map = lambda f: Morphism(1, 1, ((0,),))
    report = verify_preorder_map(BOOL, hom, zero_map)
    assert not report.passed
    assert report.fixed_point_failure is not None


def test_certify_pad_branch_boolean():
    cert = certify(BOOL, 1, 2)
    assert cert.branch == "pad"
    assert cert.y == 2
    assert cert.pad is not None
    assert cert.pad.product(BOOL) == identity(BOOL, 2)
    assert dict(cert.checks)["identity-action-is-identity"]
    assert verify_certificate(BOOL, cert).passed


def test_certify_pad_branch_tropical():
    cert = certify(TROP1, 1, 2)  # n^d = 3 >= 2
    assert cert.branch == "pad"
    assert cert.y == 3
    assert verify_certificate(TROP1, cert).passed


def test_certify_pad_branch_higher_probe():
    cert = certify(BOOL, 2, 1)  # 1 <= 4
    assert cert.branch == "pad"
    assert cert.y == 4
    assert verify_certificate(BOOL, cert).passed


def test_certify_construct_branch():
    cert = certify(BOOL, 1, 3)
    assert cert.branch == "construct"
    assert len(cert.blocks) == 8
    assert all(ok for _, ok in cert.checks)
    assert all(blk.factor.product(BOOL) == blk.s for blk in cert.blocks)
    assert cert.det_x != 0
    assert verify_certificate(BOOL, cert).passed


def test_certify_degenerate_objects():
    for sr, d, x in [(BOOL, 0, 0), (BOOL, 0, 1), (BOOL, 1, 0), (TROP1, 0, 0)]:
        cert = certify(sr, d, x)
        assert cert.branch == "pad"  # n^0 = 1 >= x here, or x = 0
        assert verify_certificate(sr, cert).passed
    # d = 0 with x = 2 exceeds n^0 = 1 and must take the construct route
    cert = certify(BOOL, 0, 2)
    assert cert.branch == "construct"
    assert len(cert.order) == 1
    assert cert.det_x == 1
    assert verify_certificate(BOOL, cert).passed


def test_certify_one_element_semiring():
    unit = Semiring(1, ("e",), 0, 0, ((0,),), ((0,),))
    cert = certify(unit, 1, 3)  # n^d = 1 < 3
    assert cert.branch == "construct"
    assert len(cert.order) == 1
    assert verify_certificate(unit, cert).passed


def test_certify_caps():
    with pytest.raises(CapExceededError):
        certify(BOOL, 2, 4, cap_hom=100)
    with pytest.raises(CapExceededError):
        certify(BOOL, 13, 1, cap_cols=4096)
    with pytest.raises(ValueError):
        certify(BOOL, -1, 2)


def test_verify_certificate_fingerprint_mismatch():
    cert = certify(BOOL, 1, 2)
    with pytest.raises(FingerprintError):
        verify_certificate(TROP1, cert)


def zero_coefficient(cert, i):
    coeffs = list(cert.coefficients)
    coeffs[i] = Fraction(0)
    return dataclasses.replace(cert, coefficients=tuple(coeffs))


def flip_left_entry(cert, b, i=0, k=0):
    blk = cert.blocks[b]
    rows = [list(r) for r in blk.factor.left.entries]
    rows[i][k] = 1 - rows[i][k]
    left = Morphism(blk.factor.left.src, blk.factor.left.dst, tuple(tuple(r) for r in rows))
    fact = Factorization(left=left, pad=blk.factor.pad, right=blk.factor.right)
    blocks = list(cert.blocks)
    blocks[b] = CertBlock(s=blk.s, factor=fact, v=blk.v)
    return dataclasses.replace(cert, blocks=tuple(blocks))


def swap_order(cert, i, j):
    order = list(cert.order)
    order[i], order[j] = order[j], order[i]
    return dataclasses.replace(cert, order=tuple(order))


def test_verify_certificate_rejects_mutations():
    cert = certify(BOOL, 1, 3)
    mutants = {
        "coefficient-zeroed": zero_coefficient(cert, 0),
        "left-entry-flipped": flip_left_entry(cert, 3),
        "order-swapped": swap_order(cert, 1, 2),
        "det-altered": dataclasses.replace(cert, det_x=cert.det_x + 1),
        "diag-altered": dataclasses.replace(
            cert, x_diagonal=(Fraction(5),) + cert.x_diagonal[1:]),
        "y-altered": dataclasses.replace(cert, y=3),
        "branch-flipped": dataclasses.replace(cert, branch="pad"),
        "check-flag-flipped": dataclasses.replace(
            cert, checks=(("fixed-points", False),) + cert.checks[1:]),
    }
    for name, mutant in mutants.items():
        report = verify_certificate(BOOL, mutant)
        assert not report.passed, f"mutation {name} was accepted"


def test_certificate_file_round_trip():
    for cert in (certify(BOOL, 1, 3), certify(BOOL, 1, 2), certify(TROP1, 1, 2)):
        text = render_certificate(cert)
        assert parse_certificate(text) == cert


def test_certificate_rendering_is_deterministic():
    a = render_certificate(certify(BOOL, 1, 3))
    b = render_certificate(certify(BOOL, 1, 3))
    assert a == b


def test_parsed_certificate_verifies():
    cert = certify(BOOL, 1, 3)
    parsed = parse_certificate(render_certificate(cert))
    assert verify_certificate(BOOL, parsed).passed


def test_parse_certificate_errors():
    from semimat import ParseError
    good = render_certificate(certify(BOOL, 1, 2))
    with pytest.raises(ParseError):
        parse_certificate("not a certificate\n")
    with pytest.raises(ParseError):
        parse_certificate(good.replace("branch pad", "branch sideways"))
    with pytest.raises(ParseError):
        parse_certificate(good + "trailing\n")
    truncated = "\n".join(good.splitlines()[:-3]) + "\n"
    with pytest.raises(ParseError):
        parse_certificate(truncated)


def test_parse_certificate_tolerates_comments():
    good = render_certificate(certify(BOOL, 1, 2))
    commented = "# produced by the certify command\n\n" + good
    assert parse_certificate(commented) == certify(BOOL, 1, 2)


def test_parse_certificate_rejects_negative_dimensions():
    from semimat import ParseError
    good = render_certificate(certify(BOOL, 1, 2))
    with pytest.raises(ParseError, match="nonnegative"):
        parse_certificate(good.replace("d 1", "d -1"))


def test_verify_reports_invalid_on_out_of_range_entries():
    # hostile certificates must produce a negative report, not a crash
    cert = certify(BOOL, 1, 3)
    blk = cert.blocks[0]
    rows = [list(r) for r in blk.s.entries]
    rows[0][0] = 9
    bad_s = Morphism(blk.s.src, blk.s.dst, tuple(tuple(r) for r in rows))
    blocks = (CertBlock(s=bad_s, factor=blk.factor, v=blk.v),) + cert.blocks[1:]
    mutant = dataclasses.replace(cert, blocks=blocks)
    report = verify_certificate(BOOL, mutant)
    assert not report.passed
    assert "layout" in report.failures
