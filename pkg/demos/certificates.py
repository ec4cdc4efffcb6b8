"""Sign certificates for the gradient coefficient at the alpha endpoints.

Prints the certificate summary of every case with a polynomial coefficient,
then shows that just outside the range for the mean-power flow an exact
rational counterexample is found.
"""

from fractions import Fraction

from curvflow.certify import certify_all, certify_endpoint, coeff_a1, format_certificates
from curvflow.speeds import SpeedKind

print(format_certificates(certify_all()))
p = coeff_a1(SpeedKind.MEAN_POW, -1)
for a in (Fraction(1, 5), Fraction(6)):
    cert = certify_endpoint(p, a, "hyperbolic")
    witness = next(b.counterexample for b in cert.branches if b.counterexample)
    (x, y), value = witness
    print(f"alpha = {a}: {cert.status}, a1({x}, {y}) = {value}")
