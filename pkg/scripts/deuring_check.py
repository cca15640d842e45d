"""Roots of the Deuring polynomial against supersingular Legendre curves found by point counting."""
import argparse

from jacrank import criteria, ff, zeta
from jacrank.curves import projective_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5,7,11,13,17")
    args = ap.parse_args()
    print("p\troots\tsupersingular\tagree")
    for p in map(int, args.primes.split(",")):
        E = ff.make_field(p, 2)
        roots = set(criteria.deuring(p).roots)
        ss = set()
        for lam in E.elements():
            if lam in (E.zero(), E.one()):
                continue
            if zeta.zeta_numerator(projective_cover(E, 2, (1, 1, 1), [E.zero(), E.one(), lam])).supersingular:
                ss.add(lam)
        print(f"{p}\t{len(roots)}\t{len(ss)}\t{roots == ss}")


if __name__ == "__main__":
    main()
