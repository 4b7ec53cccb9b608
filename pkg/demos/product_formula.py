"""Relative dynamical degrees for a product map fibred over its second factor.

f = h_2 x g_3 on P^2 x P^1 is semi-conjugate to g_3 by the second projection.
The degrees of f split as max_j lam_j(g) lam_{p-j}(f|pi); the relative degrees
are those of h_2 on the fibre.  The script also runs the simplicity check on
the class matrices of f.
"""

from dyndeg import Correspondence, power_map, product_atom
from dyndeg.algebra import combined_matrix
from dyndeg.cli import render_table
from dyndeg.relative import make_projection_semiconj
from dyndeg.rings import Product, Projective
from dyndeg.verify import check_product_formula, check_simplicity


def main():
    P1, P2 = Projective(1), Projective(2)
    X = Product(P2, P1)
    f = Correspondence.atom(product_atom(power_map(P2, 2), power_map(P1, 3)))
    sc = make_projection_semiconj(X, f, [1])
    print(f"f = {f}; pi o f = {sc.multiplier} (g o pi) with g = {sc.g}")
    print(render_table([check_product_formula(sc)]))
    print(render_table([check_simplicity(combined_matrix(f, 1), combined_matrix(f, 2), "N^1 vs N^2 of f")]))


if __name__ == "__main__":
    main()
