"""Exceptional Jacobi polynomials: the limit from the Hahn side, quadrature norms,
and the comparison with exceptional Legendre polynomials.

Run with ``python3 demos/jacobi_limits_and_legendre.py``.
"""
from fractions import Fraction

from xhahnjacobi import FamilySpec
from xhahnjacobi import exceptional_jacobi as xj
from xhahnjacobi.legendre import legendre_matches


def main():
    spec = FamilySpec(ax=-2, bx=-2, F=(2, 3), M={0: 2, 1: 3})
    print("Omega(x) =", xj.omega_jacobi(spec), "| root free on [-1, 1]:", xj.omega_rootfree(spec))

    n = spec.degrees(spec.uF + 4)[1]
    print(f"Hahn -> Jacobi error for degree {n} at x = 1/3:")
    previous = None
    for N in (50, 100, 200, 400):
        err = xj.hahn_to_xjacobi_limit_error(n, spec, N, Fraction(1, 3))
        ratio = "" if previous is None else f"  ratio {float(err / previous):.3f}"
        print(f"  N = {N:3d}  error {float(err):.3e}{ratio}")
        previous = err

    report = xj.verify_xjacobi_orthogonality(spec, spec.uF + 8, nodes=200)
    print(f"quadrature: orthogonality {report.orthogonality_residual:.1e}, "
          f"norms {report.norm_residual:.1e}, doubled nodes agree: {report.passed}")

    for m1 in (1, 2):
        for match in legendre_matches(m1, Fraction(1, 2), count=4):
            print(f"  m1={m1} index {match.index}: degree {match.degree}, "
                  f"Jacobi member {match.jacobi_degree}, ratio {match.ratio}")


if __name__ == "__main__":
    main()
