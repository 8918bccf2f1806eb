from fractions import Fraction

import pytest

from symsos.certificates import round_certificate, sos_lower_bound, \
    verify_certificate
from symsos.fileio import certificate_from_text, certificate_to_text
from symsos.fixtures import (robinson_dihedral, s3_published_certificate,
                             symmetric_quartic)
from symsos.poly import parse_polynomial


class TestCertificateFormat:
    def test_invariant_mode_round_trip(self):
        f = robinson_dihedral()
        _, cert = sos_lower_bound(f, "dihedral:4")
        exact = round_certificate(cert, f)
        text = certificate_to_text(exact)
        back = certificate_from_text(text)
        assert back.lam == exact.lam
        assert back.mode == "invariant"
        ok, report = verify_certificate(back, f)
        assert ok, report

    def test_plain_mode_round_trip(self):
        f = parse_polynomial("x^4 + 2*x^2 + 3", ["x"])
        _, cert = sos_lower_bound(f, "trivial:1")
        exact = round_certificate(cert, f)
        back = certificate_from_text(certificate_to_text(exact))
        assert back.mode == "plain"
        assert verify_certificate(back, f)[0]

    def test_published_certificate_round_trips(self):
        cert = s3_published_certificate()
        back = certificate_from_text(certificate_to_text(cert))
        assert back.lam == Fraction(-2113, 1000)
        assert verify_certificate(back, symmetric_quartic())[0]

    def test_tampered_file_fails_verification(self):
        cert = s3_published_certificate()
        text = certificate_to_text(cert)
        bad = text.replace("2113/1000", "2114/1000", 1)
        back = certificate_from_text(bad)
        ok, report = verify_certificate(back, symmetric_quartic())
        assert not ok

    def test_float_certificate_not_serializable(self):
        f = robinson_dihedral()
        _, cert = sos_lower_bound(f, "dihedral:4")
        with pytest.raises(ValueError, match="exact"):
            certificate_to_text(cert)

    def test_non_certificate_rejected(self):
        with pytest.raises(ValueError):
            certificate_from_text("not a certificate\n")
