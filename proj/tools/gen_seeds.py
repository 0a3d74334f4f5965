#!/usr/bin/env python3
"""Generate holomorphic Kohnen plus-space seed expansions with PARI/GP.

This is a one-off oracle run. Its output under data/seeds/ is committed and
re-validated by the C++ library (Sturm-bound membership, plus-space support,
integrality), so the library never trusts these files blindly.

For each level 4p (and level 4) and each weight s+1/2 in the configured
range, the script:
  1. builds the full space M_{s+1/2}(Gamma0(4p)) with mfinit,
  2. cuts out the plus space as the kernel of the coefficients at exponents
     n with n != 0, (-1)^s mod 4,
  3. saturates the resulting lattice (matrixqz) and puts it in reduced
     echelon form keyed by leading exponent,
  4. cross-checks the dimension against dim M_{2s}(Gamma0(p)) (Kohnen's
     isomorphism),
and writes one file per basis element:
  data/seeds/<level>/<weight2>/<index>.qs

Requires cypari2 (e.g. `pip install passagemath-pari`).
"""
import argparse
import os
import sys
import tempfile

import cypari2

GP_CODE = r"""
plusbasis(N, k2, T) = {
  my(k = k2/2, s = (k2-1)/2, mf = mfinit([N,k],4), M = mfcoefs(mf, T-1), sg = (-1)^s, bad, R, K, P, E);
  bad = [n | n<-[0..T-1], n%4!=0 && (n-sg)%4!=0];
  R = matrix(#bad, matsize(M)[2], i,j, M[bad[i]+1,j]);
  K = matker(R); P = M*K;
  E = matrixqz(P, -2);
  vector(matsize(E)[2], j, E[,j]);
}
echelon(V, T) = {
  my(M = matconcat(V), n = #V, piv = List(), r = 0, c, row);
  M = M~;
  for(col = 1, T,
    if(r == n, break);
    row = 0;
    for(i = r+1, n, if(M[i,col] != 0, row = i; break));
    if(!row, next);
    r++;
    if(row != r, my(tmp = M[r,]); M[r,] = M[row,]; M[row,] = tmp);
    M[r,] = M[r,] / M[r,col];
    for(i = 1, n, if(i != r && M[i,col] != 0, M[i,] = M[i,] - M[i,col]*M[r,]));
    listput(piv, col-1));
  [vector(r, i, M[i,]), Vec(piv)];
}
"""

# level -> (p, s range); p = 1 denotes level 4
LEVELS = {
    12: (3, range(5, 11)),
    20: (5, range(5, 9)),
    28: (7, range(5, 11)),
    52: (13, range(3, 15)),
    4: (1, range(12, 24)),
}


def write_series(path, level, k2, row, lead):
    T = len(row)
    with open(path, "w") as fh:
        fh.write(f"#meta weight2={k2} level={level} plus=1\n")
        fh.write(f"#qseries lead={lead} trunc={T}\n")
        for n, c in enumerate(row):
            if c == 0:
                continue
            num, den = int(c.numerator()), int(c.denominator())
            fh.write(f"{n} {num}/{den}\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "seeds"))
    ap.add_argument("--terms", type=int, default=600)
    ap.add_argument("--levels", type=int, nargs="*", default=sorted(LEVELS))
    args = ap.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(6 * 10**9)
    with tempfile.NamedTemporaryFile("w", suffix=".gp", delete=False) as fh:
        fh.write(GP_CODE)
    pari(f'read("{fh.name}")')
    os.remove(fh.name)

    for level in args.levels:
        p, srange = LEVELS[level]
        for s in srange:
            k2 = 2 * s + 1
            pari(f"E = echelon(plusbasis({level}, {k2}, {args.terms}), {args.terms});")
            rows = pari("E[1]")
            pivots = [int(x) for x in pari("E[2]")]
            expect = int(pari(f"mfdim([{p}, {2*s}], 4)")) if p > 1 else int(pari(f"mfdim([1, {2*s}], 4)"))
            if len(rows) != expect:
                sys.exit(f"level {level} weight {k2}/2: plus dim {len(rows)} != Kohnen dim {expect}")
            d = os.path.join(args.out, str(level), str(k2))
            os.makedirs(d, exist_ok=True)
            for old in os.listdir(d):
                os.remove(os.path.join(d, old))
            for idx, (row, lead) in enumerate(zip(rows, pivots)):
                write_series(os.path.join(d, f"{idx}.qs"), level, k2, list(row), lead)
            print(f"level {level} weight2 {k2}: dim {len(rows)} leads {pivots}", flush=True)


if __name__ == "__main__":
    main()
