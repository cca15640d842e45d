"""Genus-2 curves y^2 = x(x-1)(x-a1)(x-a2)(x-a3): Cartier-Manin rank, character-sum
identities and the point-count p-rank."""
import argparse
import itertools

from jacrank import cartier, ff, zeta
from jacrank.curves import projective_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-p", type=int, default=7)
    args = ap.parse_args()
    F = ff.make_field(args.p)
    print("alphas\tsum1\tsum2\tcartier_prank\toracle_prank\tidentities")
    for al in itertools.combinations(range(2, args.p), 3):
        C = projective_cover(F, 2, (1,) * 5, [0, 1, *al])
        M = cartier.verify_eq_match(C)
        A = cartier.cartier_matrix(cartier.hyperelliptic_poly(C), args.p)
        print(f"{','.join(map(str, al))}\t{M.sum1}\t{M.sum2_literal}\t{cartier.semilinear_prank(A)}"
              f"\t{zeta.zeta_numerator(C).prank}\t{M.ok}")


if __name__ == "__main__":
    main()
