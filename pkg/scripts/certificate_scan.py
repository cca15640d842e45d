"""How often the exponent tests certify non-supersingular or nonzero p-rank,
and whether point counting ever contradicts them."""
import argparse
import itertools

from jacrank import criteria, cyclo, ff, zeta
from jacrank.curves import projective_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-m", type=int, default=5)
    ap.add_argument("--primes", default="11,31,2,3")
    ap.add_argument("-d", type=int, default=3)
    args = ap.parse_args()
    m = args.m
    print("p\ta\tnot_ss_cert\tnot_prank0_cert\tgenus\tprank\tsupersingular")
    for p in map(int, args.primes.split(",")):
        F = ff.make_field(p, cyclo._order(p, m))
        pts = list(F.elements())[:args.d]
        for a in itertools.combinations_with_replacement(range(1, m), args.d):
            C = projective_cover(F, m, a, pts)
            E = criteria.curve_exponent_data(C)
            Z = zeta.zeta_numerator(C, extra=False)
            print(f"{p}\t{','.join(map(str, a))}\t{int(criteria.not_supersingular_test(E))}"
                  f"\t{int(criteria.not_prank0_test(E))}\t{Z.genus}\t{Z.prank}\t{int(Z.supersingular)}")


if __name__ == "__main__":
    main()
