"""Build an exceptional Hahn family and check its defining properties exactly.

Run with ``python3 demos/hahn_family_tour.py``.
"""
from fractions import Fraction

from xhahnjacobi import FamilySpec
from xhahnjacobi import exceptional_hahn as xh
from xhahnjacobi.krall import KrallSpec, nu_measure


def main():
    spec = FamilySpec(ax=-2, bx=-1, F=(1, 2), M={0: Fraction(2)}, N=8)
    print("spec:", spec.to_json())
    print("degree set up to 10:", spec.degrees(10))

    for n in spec.degrees(5):
        print(f"  h_{n}(x) =", xh.xhahn(n, spec))

    print("admissible:", xh.admissible(spec), "| via Omega:", xh.admissible_via_omega(spec),
          "| Krall measure positive:", nu_measure(KrallSpec.from_family(spec)).is_positive())

    residuals = [xh.eigen_residual(n, spec).is_zero() for n in spec.degrees(8)]
    print("difference equation holds for every member up to degree 8:", all(residuals))

    measure = xh.orthogonality_measure(spec)
    degrees = xh.sigma_N(spec)
    gram = measure.gram([xh.xhahn(n, spec) for n in degrees])
    diagonal = all(gram[i][j] == 0 for i in range(len(degrees)) for j in range(len(degrees)) if i != j)
    norms = all(gram[i][i] == xh.xhahn_norm(n, spec) for i, n in enumerate(degrees))
    print(f"Gram matrix over {len(measure)} nodes diagonal: {diagonal}; closed-form norms: {norms}")

    flipped = spec.with_M({0: Fraction(-1, 2)})
    print("with M_0 = -1/2 the family is admissible:", xh.admissible(flipped))


if __name__ == "__main__":
    main()
