"""Exact sign certificates for the gradient-term coefficients of the pinching estimates."""

from .coefficients import (CASES, GradientFrame, Jet2, UnsupportedCase, a2_from_a1, coeff_a1,
                           general_Z, gradient_frame, gradient_Z, pinching_g_jet, rescaled_a1)
from .engine import (THEOREM_ENDPOINTS, ScanReport, SignCertificate, TheoremSummary, alpha_convexity,
                     anchored_derivative, case_label, certify_all, certify_endpoint, certify_theorem,
                     falsification_scan, format_certificates)
from .poly import RationalPoly, UPoly, alpha, k1, k2, nonpositive_on

__all__ = [
    "CASES", "GradientFrame", "Jet2", "UnsupportedCase", "a2_from_a1", "coeff_a1", "general_Z",
    "gradient_frame", "gradient_Z", "pinching_g_jet", "rescaled_a1",
    "THEOREM_ENDPOINTS", "ScanReport", "SignCertificate", "TheoremSummary", "alpha_convexity",
    "anchored_derivative", "case_label", "certify_all", "certify_endpoint", "certify_theorem",
    "falsification_scan", "format_certificates",
    "RationalPoly", "UPoly", "alpha", "k1", "k2", "nonpositive_on",
]
