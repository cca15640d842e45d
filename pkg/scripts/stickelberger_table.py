"""Valuations of Jacobi sums at the primes above p next to the predicted orbit sums.

Only tuples with a_1 + ... + a_d prime to m are listed; otherwise the
valuations drop by h at every prime."""
import argparse
import itertools

from jacrank import charsum, criteria, cyclo, ff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-m", type=int, default=5)
    ap.add_argument("-p", type=int, default=11)
    ap.add_argument("-d", type=int, default=3)
    args = ap.parse_args()
    m, p = args.m, args.p
    fact = cyclo.factor_p(m, p)
    F = ff.make_field(p, fact.h)
    print("a\tvaluations\tpredicted\tabs_square")
    for a in itertools.product(range(1, m), repeat=args.d):
        if sum(a) % m == 0:
            continue
        J = charsum.jacobi_sum(F, m, a)
        pred = criteria.stickelberger_valuations(criteria.exponent_data(m, a, p))
        print(f"{','.join(map(str, a))}\t{cyclo.valuations(J, p)}\t{pred}\t{cyclo.abs_square(J)}")


if __name__ == "__main__":
    main()
