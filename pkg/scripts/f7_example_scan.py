"""Scan y^3 = x(x-1)(x-alpha)^2 over F_p for p = 1 mod 3 and compare the split
equation system with the point-count p-rank."""
import argparse

from jacrank import criteria, ff, zeta
from jacrank.curves import family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="7,13,19,31")
    args = ap.parse_args()
    print("p\talpha\tequations_zero\tcriterion_prank\toracle_prank")
    for p in map(int, args.primes.split(",")):
        F = ff.make_field(p)
        for al in range(2, p):
            C = family(F, 3, (1, 1, 2), [al])
            S = criteria.prank0_equations(C)
            print(f"{p}\t{al}\t{int(S.prank0)}\t{criteria.criterion_prank(C)}\t{zeta.zeta_numerator(C).prank}")


if __name__ == "__main__":
    main()
