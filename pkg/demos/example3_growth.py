"""Degree growth of h + a*diag on P^2, and why its dynamical degrees are not log-concave.

For a rational map the sequence lam_0, lam_1, lam_2 is log-concave.  Adding a
multiple of the diagonal shifts every lam_p by the same amount, which breaks
that.  The script prints the sequences, the exact growth rates and the check.
"""

import sys

from dyndeg import Correspondence, diagonal, power_map
from dyndeg.degrees import degree_sequence, dyn_degrees
from dyndeg.exact import format_exact
from dyndeg.rings import Projective
from dyndeg.verify import check_log_concavity


def main(d: int = 2, a: int = 1, N: int = 10):
    P2 = Projective(2)
    F = Correspondence.from_terms(P2, [(power_map(P2, d), 1), (diagonal(P2), a)])
    print(f"F = {F}")
    for p in range(3):
        seq = degree_sequence(F, p, N)
        print(f"  deg_{p}(F^n), n=1..{N}: {seq}")
    lam = dyn_degrees(F, N)
    print("lambda =", tuple(format_exact(lam[p].exact_value) for p in range(3)))
    print(f"expected (1+a, d+a, d^2+a) = ({1 + a}, {d + a}, {d * d + a})")
    print(check_log_concavity(F, N).summary)


if __name__ == "__main__":
    args = [int(x) for x in sys.argv[1:]]
    main(*args)
