"""When the base map is not a multiple of a rational map, the weak product
inequality lam_0(g) lam_p(f) >= ... can fail.

The counterexample lives on a reducible space: one component carries a map
fibred over a curve, the other a diagonal-like correspondence of degree d2.
With d1 = 2, d2 = 5 (so d1^3 > d2 > d1^2) the two sides are 25 and 40.
Doubling the first base piece restores the inequality, with minimal constant
equal to lam_0(g).
"""

from dyndeg.cli import render_table
from dyndeg.scenarios import run_scenario


def main():
    print(render_table(run_scenario("remark1pt6")))


if __name__ == "__main__":
    main()
