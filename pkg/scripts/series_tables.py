"""Poincare series for a few signatures and the E_infinity dimensions of the bigraded check."""

import argparse

from vrprimes.stabledim import general_field_series, hs_degeneration_check, koszul_series_identity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maxdeg", type=int, default=24)
    args = ap.parse_args()
    D = args.maxdeg

    for r1, r2 in ((1, 0), (0, 1), (2, 0), (1, 1)):
        coeffs = general_field_series(r1, r2, D).coeffs
        print(f"(r1, r2) = ({r1}, {r2}): even coefficients {coeffs[::2]}")
    report = hs_degeneration_check(min(D, 40))
    print("E_inf dims:", report.einf_dims, "matches" if report.matches else "MISMATCH")
    for deg, names in sorted(report.einf_basis.items()):
        print(f"  degree {deg}: {', '.join(names)}")
    print("Koszul identity to degree 64:", koszul_series_identity(64))


if __name__ == "__main__":
    main()
